#include "multibpe/normalize.hpp"

#include <charconv>
#include <span>

#include "multibpe/error.hpp"
#include "multibpe/unicode.hpp"

namespace multibpe {

namespace {

using unicode::CodePoint;

bool is_word_joiner(CodePoint cp) {
  return cp == U'\'' || cp == U'’' || cp == U'-' || cp == U'‐';
}

std::string encode(CodePoint cp) {
  std::string out;
  unicode::append_utf8(out, cp);
  return out;
}

// Detaches non-alphanumeric edges, then splits at the first internal symbol
// that is not a word joiner and recurses on both sides, so every emitted
// token is a single symbol or starts and ends with a letter or digit.
void tokenize_chunk(std::span<const CodePoint> chunk, Tokens& out) {
  std::size_t begin = 0;
  std::size_t end = chunk.size();
  while (begin < end && !unicode::is_letter_or_digit(chunk[begin])) {
    out.push_back(encode(chunk[begin++]));
  }
  std::size_t trailing_start = end;
  while (trailing_start > begin && !unicode::is_letter_or_digit(chunk[trailing_start - 1])) {
    --trailing_start;
  }
  end = trailing_start;
  for (std::size_t i = begin; i < end; ++i) {
    const CodePoint cp = chunk[i];
    if (unicode::is_letter_or_digit(cp) || is_word_joiner(cp)) continue;
    tokenize_chunk(chunk.subspan(begin, i - begin), out);
    out.push_back(encode(cp));
    begin = i + 1;
    tokenize_chunk(chunk.subspan(begin, end - begin), out);
    begin = end;
    break;
  }
  if (begin < end) {
    std::string word;
    for (std::size_t i = begin; i < end; ++i) unicode::append_utf8(word, chunk[i]);
    out.push_back(std::move(word));
  }
  for (std::size_t i = trailing_start; i < chunk.size(); ++i) out.push_back(encode(chunk[i]));
}

bool attaches_left(std::string_view token) {
  static constexpr std::string_view kLeft[] = {
      ".", ",", "!", "?", ";", ":", ")", "]", "}", "»", "”", "’", "%"};
  for (auto t : kLeft)
    if (token == t) return true;
  return false;
}

bool attaches_right(std::string_view token) {
  static constexpr std::string_view kRight[] = {"(", "[", "{", "«", "“",
                                                "‘", "¿", "¡"};
  for (auto t : kRight)
    if (token == t) return true;
  return false;
}

}  // namespace

Tokens tokenize(std::string_view line) {
  Tokens out;
  std::vector<CodePoint> chunk;
  for (CodePoint cp : unicode::decode(line)) {
    if (unicode::is_whitespace(cp)) {
      if (!chunk.empty()) tokenize_chunk(chunk, out);
      chunk.clear();
    } else {
      chunk.push_back(cp);
    }
  }
  if (!chunk.empty()) tokenize_chunk(chunk, out);
  return out;
}

std::string detokenize(const Tokens& tokens) {
  std::string out;
  bool glue_next = true;
  bool inside_quote = false;
  for (const auto& token : tokens) {
    bool glue_left = attaches_left(token);
    bool glue_right = attaches_right(token);
    if (token == "\"") {
      glue_left = inside_quote;
      glue_right = !inside_quote;
      inside_quote = !inside_quote;
    }
    if (!glue_next && !glue_left) out += ' ';
    out += token;
    glue_next = glue_right;
  }
  return out;
}

void TruecaseModel::add(const std::string& surface, std::size_t count) {
  counts_[unicode::to_lower(surface)][surface] += count;
}

std::string TruecaseModel::best_casing(std::string_view word) const {
  const auto it = counts_.find(unicode::to_lower(word));
  if (it == counts_.end()) return {};
  const std::string* best = nullptr;
  std::size_t best_count = 0;
  // std::map iterates surfaces in ascending order, so strict > keeps the
  // smallest surface on ties.
  for (const auto& [surface, count] : it->second) {
    if (best == nullptr || count > best_count) {
      best = &surface;
      best_count = count;
    }
  }
  return best ? *best : std::string{};
}

TruecaseModel train_truecaser(const std::vector<Tokens>& sentences) {
  TruecaseModel model;
  for (const auto& sentence : sentences) {
    for (std::size_t i = 1; i < sentence.size(); ++i) model.add(sentence[i]);
  }
  return model;
}

Tokens truecase(const Tokens& tokens, const TruecaseModel& model) {
  Tokens out = tokens;
  if (out.empty()) return out;
  std::string best = model.best_casing(out.front());
  if (!best.empty()) out.front() = std::move(best);
  return out;
}

void save_truecase_model(const TruecaseModel& model,
                         const std::filesystem::path& path) {
  std::vector<std::string> lines;
  for (const auto& [key, casings] : model.counts()) {
    for (const auto& [surface, count] : casings) {
      lines.push_back(key + '\t' + surface + '\t' + std::to_string(count));
    }
  }
  write_lines(path, lines);
}

TruecaseModel load_truecase_model(const std::filesystem::path& path) {
  TruecaseModel model;
  const auto lines = read_lines(path);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    const auto bad = [&](const std::string& why) {
      return ParseError(path.string() + " line " + std::to_string(n + 1) +
                            ": " + why,
                        n + 1);
    };
    const auto tab1 = line.find('\t');
    const auto tab2 =
        tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos || line.find('\t', tab2 + 1) != std::string::npos)
      throw bad("expected three tab-separated fields");
    const std::string key = line.substr(0, tab1);
    const std::string surface = line.substr(tab1 + 1, tab2 - tab1 - 1);
    std::size_t count = 0;
    const char* first = line.data() + tab2 + 1;
    const char* last = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc{} || ptr != last || first == last)
      throw bad("invalid count");
    if (surface.empty() || unicode::to_lower(surface) != key)
      throw bad("surface form '" + surface + "' does not lowercase to '" +
                key + "'");
    model.add(surface, count);
  }
  return model;
}

}  // namespace multibpe
