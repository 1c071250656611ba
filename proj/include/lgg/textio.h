#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace lgg::textio {

// Reads the whole stream/file, rejecting a UTF-8 BOM and any malformed
// UTF-8 (throws utf8::DecodeError, or std::runtime_error for I/O failures).
std::string read_stream(std::istream& in);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Splits on '\n', dropping a trailing '\r' per line (CRLF tolerated).
std::vector<std::string> split_lines(std::string_view text);

struct Tok {
  std::string text;
  bool quoted = false;
};

// Whitespace-separated tokens; "..." groups with \" \\ \n \t escapes;
// an unquoted '#' starts a comment. Throws std::runtime_error on an
// unterminated quote.
std::vector<Tok> tokenize(std::string_view line);

// Renders s as a double-quoted token tokenize() can read back.
std::string quote(std::string_view s);

}  // namespace lgg::textio
