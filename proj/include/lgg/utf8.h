#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgg::utf8 {

struct DecodeError : std::runtime_error {
  size_t byte_offset;
  DecodeError(const std::string& msg, size_t off)
      : std::runtime_error(msg + " at byte " + std::to_string(off)),
        byte_offset(off) {}
};

// Byte offsets of codepoint boundaries: front()==0, back()==s.size(),
// size()==codepoint count + 1. Throws DecodeError on malformed input
// (overlong forms, surrogates and out-of-range scalars included).
std::vector<size_t> boundaries(std::string_view s);

std::vector<char32_t> decode(std::string_view s);
bool valid(std::string_view s) noexcept;
size_t length(std::string_view s);
void append(std::string& out, char32_t cp);
std::string encode(char32_t cp);
bool is_space(char32_t cp) noexcept;

// Codepoint-addressed view over external UTF-8 text.
class Index {
 public:
  Index() = default;
  explicit Index(std::string_view s) : text_(s), bounds_(boundaries(s)) {}

  size_t size() const { return bounds_.size() - 1; }
  size_t byte_at(size_t cp) const { return bounds_.at(cp); }
  std::string_view slice(size_t cp_begin, size_t cp_end) const {
    return text_.substr(bounds_.at(cp_begin),
                        bounds_.at(cp_end) - bounds_.at(cp_begin));
  }

 private:
  std::string_view text_;
  std::vector<size_t> bounds_{0};
};

}  // namespace lgg::utf8
