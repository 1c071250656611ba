#include "lgg/textio.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lgg/utf8.h"

namespace lgg::textio {

std::string read_stream(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("stream read failure");
  std::string content = buf.str();
  if (content.rfind("\xEF\xBB\xBF", 0) == 0)
    throw std::runtime_error("UTF-8 BOM is not allowed");
  utf8::boundaries(content);  // validate
  return content;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_stream(in);
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failure on " + path.string());
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    std::string_view line = (nl == std::string_view::npos)
                                ? text.substr(start)
                                : text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (!lines.empty() && lines.back().empty() && !text.empty() &&
      text.back() == '\n')
    lines.pop_back();
  return lines;
}

std::vector<Tok> tokenize(std::string_view line) {
  std::vector<Tok> toks;
  size_t i = 0;
  auto is_ws = [](char c) { return c == ' ' || c == '\t'; };
  while (i < line.size()) {
    if (is_ws(line[i])) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    if (line[i] == '"') {
      std::string text;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        char c = line[i];
        if (c == '\\') {
          if (i + 1 >= line.size())
            throw std::runtime_error("dangling escape in quoted string");
          char e = line[i + 1];
          switch (e) {
            case '"': text.push_back('"'); break;
            case '\\': text.push_back('\\'); break;
            case 'n': text.push_back('\n'); break;
            case 't': text.push_back('\t'); break;
            default:
              throw std::runtime_error(std::string("unknown escape \\") + e);
          }
          i += 2;
        } else if (c == '"') {
          ++i;
          closed = true;
          break;
        } else {
          text.push_back(c);
          ++i;
        }
      }
      if (!closed) throw std::runtime_error("unterminated quoted string");
      toks.push_back({std::move(text), true});
    } else {
      size_t start = i;
      while (i < line.size() && !is_ws(line[i]) && line[i] != '"' &&
             line[i] != '#')
        ++i;
      toks.push_back({std::string(line.substr(start, i - start)), false});
    }
  }
  return toks;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

}  // namespace lgg::textio
