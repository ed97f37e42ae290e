#include "multibpe/bpe.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <unordered_set>

#include "multibpe/error.hpp"
#include "multibpe/unicode.hpp"

namespace multibpe {

namespace {

constexpr std::string_view kZeroWidthSpace = "​";

std::uint64_t fnv1a(std::uint64_t hash, std::string_view bytes) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

// Symbols of an escaped token; the end-of-word marker is attached to the last.
std::vector<std::string> initial_symbols(const std::string& escaped) {
  std::vector<std::string> symbols = unicode::split_code_points(escaped);
  if (!symbols.empty()) symbols.back() += kEndOfWord;
  return symbols;
}

bool has_blank(std::string_view token) {
  return token.find_first_of(" \t\n\r\v\f") != std::string_view::npos;
}

// Incremental greedy learner. Symbols are interned; the candidate set is
// ordered by (count desc, left string, right string) so the first element is
// always the next merge.
class Learner {
 public:
  explicit Learner(const std::map<std::string, std::int64_t>& vocab) {
    for (const auto& [word, freq] : vocab) {
      std::vector<int> seq;
      for (auto& symbol : initial_symbols(word)) seq.push_back(intern(symbol));
      words_.push_back(std::move(seq));
      freqs_.push_back(freq);
    }
    for (std::size_t w = 0; w < words_.size(); ++w) add_pairs(w, +1);
  }

  std::vector<Merge> run(std::int64_t n_merges) {
    std::vector<Merge> merges;
    while (static_cast<std::int64_t>(merges.size()) < n_merges) {
      if (queue_.empty()) break;
      const Candidate best = *queue_.begin();
      if (best.count < 2) break;
      merges.push_back({symbols_[best.left], symbols_[best.right]});
      merge(best.left, best.right);
    }
    return merges;
  }

 private:
  struct Candidate {
    std::int64_t count;
    int left;
    int right;
  };

  struct CandidateOrder {
    const std::vector<std::string>* symbols;
    bool operator()(const Candidate& a, const Candidate& b) const {
      if (a.count != b.count) return a.count > b.count;
      const auto& sa = (*symbols)[a.left];
      const auto& sb = (*symbols)[b.left];
      if (sa != sb) return sa < sb;
      return (*symbols)[a.right] < (*symbols)[b.right];
    }
  };

  static std::uint64_t key(int left, int right) {
    return (static_cast<std::uint64_t>(left) << 32) |
           static_cast<std::uint32_t>(right);
  }

  int intern(const std::string& symbol) {
    const auto [it, inserted] =
        ids_.emplace(symbol, static_cast<int>(symbols_.size()));
    if (inserted) symbols_.push_back(symbol);
    return it->second;
  }

  void adjust(int left, int right, std::int64_t delta) {
    std::int64_t& count = counts_[key(left, right)];
    if (count > 0) queue_.erase({count, left, right});
    count += delta;
    if (count < 0) throw InvariantError("negative pair count during learning");
    if (count > 0) queue_.insert({count, left, right});
  }

  void add_pairs(std::size_t w, int sign) {
    const auto& seq = words_[w];
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      adjust(seq[i], seq[i + 1], sign * freqs_[w]);
      if (sign > 0) where_[key(seq[i], seq[i + 1])].push_back(w);
    }
  }

  void merge(int left, int right) {
    const int joined = intern(symbols_[left] + symbols_[right]);
    std::vector<std::size_t> affected = std::move(where_[key(left, right)]);
    where_.erase(key(left, right));
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()),
                   affected.end());
    for (std::size_t w : affected) {
      auto& seq = words_[w];
      bool present = false;
      for (std::size_t i = 0; i + 1 < seq.size() && !present; ++i)
        present = seq[i] == left && seq[i + 1] == right;
      if (!present) continue;
      add_pairs(w, -1);
      std::vector<int> merged;
      merged.reserve(seq.size());
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i + 1 < seq.size() && seq[i] == left && seq[i + 1] == right) {
          merged.push_back(joined);
          ++i;
        } else {
          merged.push_back(seq[i]);
        }
      }
      seq = std::move(merged);
      add_pairs(w, +1);
    }
  }

  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> ids_;
  std::vector<std::vector<int>> words_;
  std::vector<std::int64_t> freqs_;
  std::unordered_map<std::uint64_t, std::int64_t> counts_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> where_;
  std::set<Candidate, CandidateOrder> queue_{CandidateOrder{&symbols_}};
};

}  // namespace

MergeTable::MergeTable(std::vector<Merge> merges, std::string language,
                       std::uint64_t fingerprint)
    : merges_(std::move(merges)),
      language_(std::move(language)),
      fingerprint_(fingerprint) {
  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    const Merge& m = merges_[i];
    if (m.left.empty() || m.right.empty())
      throw InvariantError("merge " + std::to_string(i) + " has an empty symbol");
    if (!seen.emplace(m.left, m.right).second)
      throw InvariantError("merge (" + m.left + ", " + m.right +
                           ") appears twice");
  }
}

MergeTable MergeTable::truncated(std::size_t limit) const {
  if (limit > merges_.size()) {
    throw ConfigError("merge limit " + std::to_string(limit) +
                      " exceeds table size " + std::to_string(merges_.size()));
  }
  return MergeTable(
      std::vector<Merge>(merges_.begin(),
                         merges_.begin() + static_cast<std::ptrdiff_t>(limit)),
      language_, fingerprint_);
}

MergeTable learn_bpe(const std::vector<Tokens>& sentences,
                     std::int64_t n_merges, std::string language) {
  if (n_merges <= 0) {
    throw ConfigError("number of merges must be positive, got " +
                      std::to_string(n_merges));
  }
  std::map<std::string, std::int64_t> vocab;
  std::uint64_t fingerprint = 0xCBF29CE484222325ULL;
  for (const auto& sentence : sentences) {
    for (const auto& token : sentence) {
      if (token.empty()) continue;
      if (has_blank(token))
        throw ConfigError("token contains whitespace: '" + token + "'");
      ++vocab[escape_marker(token)];
      fingerprint = fnv1a(fingerprint, token);
      fingerprint = fnv1a(fingerprint, " ");
    }
    fingerprint = fnv1a(fingerprint, "\n");
  }
  if (vocab.empty()) throw ConfigError("cannot learn BPE on an empty corpus");
  return MergeTable(Learner(vocab).run(n_merges), std::move(language),
                    fingerprint);
}

std::string escape_marker(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (std::size_t i = 0; i < token.size(); ++i) {
    out += token[i];
    if (token[i] != '@' || i + 1 == token.size()) continue;
    const std::string_view rest = token.substr(i + 1);
    if (rest.front() == '@' || rest.starts_with(kZeroWidthSpace))
      out += kZeroWidthSpace;
  }
  return out;
}

std::string unescape_marker(std::string_view token) {
  std::string out;
  out.reserve(token.size());
  for (std::size_t i = 0; i < token.size(); ++i) {
    out += token[i];
    if (token[i] == '@' && token.substr(i + 1).starts_with(kZeroWidthSpace))
      i += kZeroWidthSpace.size();
  }
  return out;
}

std::size_t Segmenter::PairHash::operator()(
    const std::pair<std::string, std::string>& p) const {
  const std::size_t h = std::hash<std::string>{}(p.first);
  return h ^ (std::hash<std::string>{}(p.second) + 0x9E3779B97F4A7C15ULL +
              (h << 6) + (h >> 2));
}

Segmenter::Segmenter(const MergeTable& table, std::optional<std::size_t> limit)
    : limit_(limit.value_or(table.size())) {
  if (limit_ > table.size()) {
    throw ConfigError("merge limit " + std::to_string(limit_) +
                      " exceeds table size " + std::to_string(table.size()));
  }
  ranks_.reserve(limit_);
  for (std::size_t r = 0; r < limit_; ++r) {
    const Merge& m = table.merges()[r];
    ranks_.emplace(std::make_pair(m.left, m.right), r);
  }
}

// Replaying merges in table order is equivalent to repeatedly picking the
// lowest-ranked adjacent pair whose rank is above the last one applied and
// merging all of its occurrences left to right.
std::vector<std::string> Segmenter::segment(const std::string& token) const {
  std::vector<std::string> symbols = initial_symbols(escape_marker(token));
  std::size_t floor = 0;  // lowest rank still eligible
  std::pair<std::string, std::string> probe;
  while (symbols.size() > 1) {
    std::size_t best = limit_;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      probe.first = symbols[i];
      probe.second = symbols[i + 1];
      const auto it = ranks_.find(probe);
      if (it != ranks_.end() && it->second >= floor && it->second < best)
        best = it->second;
    }
    if (best == limit_) break;
    std::vector<std::string> merged;
    merged.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (i + 1 < symbols.size()) {
        const auto it = ranks_.find({symbols[i], symbols[i + 1]});
        if (it != ranks_.end() && it->second == best) {
          merged.push_back(symbols[i] + symbols[i + 1]);
          ++i;
          continue;
        }
      }
      merged.push_back(std::move(symbols[i]));
    }
    symbols = std::move(merged);
    floor = best + 1;
  }
  if (!symbols.empty()) {
    auto& last = symbols.back();
    last.resize(last.size() - kEndOfWord.size());
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i)
      symbols[i] += kContinuation;
  }
  return symbols;
}

void Segmenter::apply_token(const std::string& token, Tokens& out) {
  auto it = cache_.find(token);
  if (it == cache_.end()) it = cache_.emplace(token, segment(token)).first;
  out.insert(out.end(), it->second.begin(), it->second.end());
}

Tokens Segmenter::apply(const Tokens& tokens) {
  Tokens out;
  out.reserve(tokens.size() * 2);
  for (const auto& token : tokens) apply_token(token, out);
  return out;
}

Tokens apply_bpe(const Tokens& tokens, const MergeTable& table,
                 std::optional<std::size_t> limit) {
  return Segmenter(table, limit).apply(tokens);
}

RevertResult revert_bpe(const Tokens& subwords) {
  RevertResult result;
  std::string pending;
  bool open = false;
  for (const auto& subword : subwords) {
    if (subword.ends_with(kContinuation)) {
      pending.append(subword, 0, subword.size() - kContinuation.size());
      open = true;
      continue;
    }
    pending += subword;
    result.tokens.push_back(unescape_marker(pending));
    pending.clear();
    open = false;
  }
  if (open) {
    result.tokens.push_back(unescape_marker(pending));
    ++result.dangling_markers;
  }
  return result;
}

void save_table(const MergeTable& table, const std::filesystem::path& path) {
  std::vector<std::string> lines;
  lines.reserve(table.size() + 1);
  lines.push_back("#multibpe v" + std::to_string(kTableFormatVersion) +
                  " lang=" + table.language() +
                  " merges=" + std::to_string(table.size()));
  for (const auto& m : table.merges()) lines.push_back(m.left + ' ' + m.right);
  write_lines(path, lines);
}

MergeTable load_table(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  const std::string where = path.string();
  if (lines.empty() || !lines.front().starts_with("#multibpe "))
    throw VersionError(where + ": missing '#multibpe' header");

  const Tokens header = split_blanks(lines.front());
  const std::string expected_version = "v" + std::to_string(kTableFormatVersion);
  if (header.size() < 2 || header[1] != expected_version) {
    throw VersionError(where + ": unsupported table version '" +
                       (header.size() > 1 ? header[1] : std::string{}) +
                       "', expected " + expected_version);
  }
  const auto header_error = [&](const std::string& why) {
    return ParseError(where + " line 1: " + why, 1);
  };
  std::string language;
  std::optional<std::size_t> declared;
  for (std::size_t i = 2; i < header.size(); ++i) {
    const std::string& field = header[i];
    if (field.starts_with("lang=")) {
      language = field.substr(5);
    } else if (field.starts_with("merges=")) {
      std::size_t n = 0;
      const char* first = field.data() + 7;
      const char* last = field.data() + field.size();
      const auto [ptr, ec] = std::from_chars(first, last, n);
      if (ec != std::errc{} || ptr != last || first == last)
        throw header_error("invalid merges count '" + field + "'");
      declared = n;
    } else {
      throw header_error("unknown header field '" + field + "'");
    }
  }
  if (!declared) throw header_error("missing merges= field");

  std::vector<Merge> merges;
  merges.reserve(lines.size() - 1);
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const std::string& line = lines[n];
    const auto space = line.find(' ');
    if (space == std::string::npos || space == 0 || space + 1 == line.size() ||
        line.find(' ', space + 1) != std::string::npos) {
      throw ParseError(where + " line " + std::to_string(n + 1) +
                           ": expected 'left right', got '" + line + "'",
                       n + 1);
    }
    merges.push_back({line.substr(0, space), line.substr(space + 1)});
  }
  if (merges.size() != *declared) {
    throw ParseError(where + ": header declares " + std::to_string(*declared) +
                         " merges, file has " + std::to_string(merges.size()),
                     1);
  }
  try {
    return MergeTable(std::move(merges), std::move(language));
  } catch (const InvariantError& e) {
    throw ParseError(where + ": " + e.what(), 0);
  }
}

}  // namespace multibpe
