#pragma once

#include <cstddef>
#include <string>
#include <string_view>

// UTF-8 helpers. Every character offset in the library counts Unicode scalar
// values, never bytes.
namespace syngauntlet::utf8 {

/// Decodes UTF-8; throws std::invalid_argument on malformed input.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view chars);
void append(std::string& out, char32_t c);

/// Number of scalar values in `bytes` (validates like decode).
std::size_t length(std::string_view bytes);

bool is_valid(std::string_view bytes) noexcept;

bool is_space(char32_t c) noexcept;

/// Letters, digits and combining marks: the characters that glue into word
/// tokens. Covers Latin, Greek, Cyrillic, Hebrew, Arabic, Indic, CJK and Hangul
/// blocks; everything else non-space is punctuation-like.
bool is_word_char(char32_t c) noexcept;

bool is_line_break(char32_t c) noexcept;

/// Upper-cases the first character when it is an ASCII or Latin-1 lower-case
/// letter. Other text is returned unchanged.
std::string capitalize_first(std::string_view text);

}  // namespace syngauntlet::utf8
