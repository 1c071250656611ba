#include "lgg/utf8.h"

namespace lgg::utf8 {

namespace {

// Decodes one scalar at byte offset i, returns (codepoint, length).
std::pair<char32_t, int> decode_at(std::string_view s, size_t i) {
  auto byte = [&](size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char lead = byte(i);
  if (lead < 0x80) return {lead, 1};

  int len;
  char32_t cp;
  if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    throw DecodeError("invalid UTF-8 lead byte", i);
  }
  if (i + len > s.size()) throw DecodeError("truncated UTF-8 sequence", i);
  for (int k = 1; k < len; ++k) {
    unsigned char c = byte(i + k);
    if ((c & 0xC0) != 0x80)
      throw DecodeError("invalid UTF-8 continuation byte", i + k);
    cp = (cp << 6) | (c & 0x3F);
  }
  static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len]) throw DecodeError("overlong UTF-8 sequence", i);
  if (cp >= 0xD800 && cp <= 0xDFFF)
    throw DecodeError("UTF-8 encoded surrogate", i);
  if (cp > 0x10FFFF) throw DecodeError("codepoint out of range", i);
  return {cp, len};
}

}  // namespace

std::vector<size_t> boundaries(std::string_view s) {
  std::vector<size_t> out;
  out.reserve(s.size() / 2 + 2);
  out.push_back(0);
  size_t i = 0;
  while (i < s.size()) {
    i += decode_at(s, i).second;
    out.push_back(i);
  }
  return out;
}

std::vector<char32_t> decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size() / 2 + 1);
  size_t i = 0;
  while (i < s.size()) {
    auto [cp, len] = decode_at(s, i);
    out.push_back(cp);
    i += len;
  }
  return out;
}

bool valid(std::string_view s) noexcept {
  try {
    size_t i = 0;
    while (i < s.size()) i += decode_at(s, i).second;
    return true;
  } catch (const DecodeError&) {
    return false;
  }
}

size_t length(std::string_view s) { return boundaries(s).size() - 1; }

void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode(char32_t cp) {
  std::string s;
  append(s, cp);
  return s;
}

bool is_space(char32_t cp) noexcept {
  return cp == U' ' || cp == U'\t' || cp == U'\r' || cp == U'\n' ||
         cp == U'　';
}

}  // namespace lgg::utf8
