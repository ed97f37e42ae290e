#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace multibpe {

using Tokens = std::vector<std::string>;

// Reads an LF-separated UTF-8 file. A final line terminator is optional; an
// empty file has zero lines. Throws IoError / DecodeError (1-based line).
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Writes every line followed by LF.
void write_lines(const std::filesystem::path& path,
                 const std::vector<std::string>& lines);

void write_text(const std::filesystem::path& path, std::string_view text);

// Splits on ASCII blanks (space, tab, CR, VT, FF); drops empty fields.
Tokens split_blanks(std::string_view line);

std::string join(const Tokens& tokens, std::string_view separator = " ");

}  // namespace multibpe
