#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace multibpe::unicode {

using CodePoint = char32_t;

// Position of the first invalid byte, or nullopt if `text` is valid UTF-8.
std::optional<std::size_t> find_invalid_utf8(std::string_view text);

// Decodes valid UTF-8. Invalid sequences decode as U+FFFD.
std::vector<CodePoint> decode(std::string_view text);

void append_utf8(std::string& out, CodePoint cp);

// Splits into one string per code point.
std::vector<std::string> split_code_points(std::string_view text);

// General category L* or N*.
bool is_letter_or_digit(CodePoint cp);

bool is_whitespace(CodePoint cp);

// Full Unicode lowercase mapping (root locale).
std::string to_lower(std::string_view text);

}  // namespace multibpe::unicode
