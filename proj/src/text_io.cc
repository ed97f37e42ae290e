#include "multibpe/text_io.hpp"

#include <fstream>
#include <sstream>

#include "multibpe/error.hpp"
#include "multibpe/unicode.hpp"

namespace multibpe {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path.string());
  const std::string content = std::move(buffer).str();

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    std::string_view line(content.data() + start, end - start);
    if (const auto bad = unicode::find_invalid_utf8(line)) {
      throw DecodeError("invalid UTF-8 in " + path.string() + " at line " +
                            std::to_string(lines.size() + 1) + ", byte " +
                            std::to_string(*bad + 1),
                        lines.size() + 1);
    }
    lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("write failure on " + path.string());
}

void write_lines(const std::filesystem::path& path,
                 const std::vector<std::string>& lines) {
  std::string text;
  for (const auto& line : lines) {
    text += line;
    text += '\n';
  }
  write_text(path, text);
}

Tokens split_blanks(std::string_view line) {
  constexpr std::string_view kBlanks = " \t\r\v\f";
  Tokens tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    pos = line.find_first_not_of(kBlanks, pos);
    if (pos == std::string_view::npos) break;
    std::size_t end = line.find_first_of(kBlanks, pos);
    if (end == std::string_view::npos) end = line.size();
    tokens.emplace_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

std::string join(const Tokens& tokens, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += separator;
    out += tokens[i];
  }
  return out;
}

}  // namespace multibpe
