#include "syngauntlet/utf8.hpp"

#include <stdexcept>

namespace syngauntlet::utf8 {

namespace {

struct Range {
  char32_t lo;
  char32_t hi;
};

// Inclusive ranges of word characters beyond ASCII.
constexpr Range kWordRanges[] = {
    {0x00AA, 0x00AA}, {0x00B2, 0x00B3}, {0x00B5, 0x00B5}, {0x00B9, 0x00BA},
    {0x00BC, 0x00BE}, {0x00C0, 0x00D6}, {0x00D8, 0x00F6}, {0x00F8, 0x02AF},
    {0x02B0, 0x02C1}, {0x0300, 0x036F}, {0x0370, 0x0373}, {0x0376, 0x037D},
    {0x0386, 0x0386}, {0x0388, 0x03FF}, {0x0400, 0x0481}, {0x0483, 0x052F},
    {0x0531, 0x0556}, {0x0561, 0x0587}, {0x0591, 0x05BD}, {0x05D0, 0x05EA},
    {0x0610, 0x061A}, {0x0620, 0x0669}, {0x066E, 0x06D3}, {0x06D5, 0x06DC},
    {0x0900, 0x0963}, {0x0966, 0x096F}, {0x0980, 0x0DFF}, {0x0E01, 0x0E3A},
    {0x0E40, 0x0E4E}, {0x0E50, 0x0E59}, {0x10A0, 0x10FF}, {0x1100, 0x11FF},
    {0x1E00, 0x1FFF}, {0x3041, 0x3096}, {0x30A1, 0x30FA}, {0x3400, 0x4DBF},
    {0x4E00, 0x9FFF}, {0xAC00, 0xD7A3}, {0xF900, 0xFAFF}, {0xFF10, 0xFF19},
    {0xFF21, 0xFF3A}, {0xFF41, 0xFF5A},
};

}  // namespace

std::u32string decode(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const auto b0 = static_cast<unsigned char>(bytes[i]);
    char32_t cp = 0;
    std::size_t extra = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      extra = 1;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      extra = 2;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      extra = 3;
    } else {
      throw std::invalid_argument("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + extra >= bytes.size() && extra > 0) {
      throw std::invalid_argument("truncated UTF-8 sequence at offset " + std::to_string(i));
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) {
        throw std::invalid_argument("invalid UTF-8 continuation byte at offset " + std::to_string(i + k));
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    const bool overlong = (extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) || (extra == 3 && cp < 0x10000);
    if (overlong || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw std::invalid_argument("invalid UTF-8 scalar value at offset " + std::to_string(i));
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

void append(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::string encode(std::u32string_view chars) {
  std::string out;
  out.reserve(chars.size());
  for (char32_t c : chars) append(out, c);
  return out;
}

std::size_t length(std::string_view bytes) { return decode(bytes).size(); }

bool is_valid(std::string_view bytes) noexcept {
  try {
    decode(bytes);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

bool is_space(char32_t c) noexcept {
  switch (c) {
    case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

bool is_word_char(char32_t c) noexcept {
  if (c < 0x80) {
    return (c >= U'0' && c <= U'9') || (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z');
  }
  for (const auto& r : kWordRanges) {
    if (c < r.lo) return false;
    if (c <= r.hi) return true;
  }
  return false;
}

bool is_line_break(char32_t c) noexcept {
  return c == U'\n' || c == U'\r' || c == 0x0B || c == 0x0C || c == 0x85 || c == 0x2028 || c == 0x2029;
}

std::string capitalize_first(std::string_view text) {
  std::u32string chars = decode(text);
  if (chars.empty()) return std::string(text);
  char32_t& c = chars.front();
  if (c >= U'a' && c <= U'z') {
    c -= 0x20;
  } else if (c >= 0xE0 && c <= 0xFE && c != 0xF7) {
    c -= 0x20;
  }
  return encode(chars);
}

}  // namespace syngauntlet::utf8
