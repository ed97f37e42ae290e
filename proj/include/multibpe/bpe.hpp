#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "multibpe/text_io.hpp"

namespace multibpe {

inline constexpr std::string_view kEndOfWord = "</w>";
inline constexpr std::string_view kContinuation = "@@";
inline constexpr int kTableFormatVersion = 1;

struct Merge {
  std::string left;
  std::string right;

  friend bool operator==(const Merge&, const Merge&) = default;
};

// Ordered BPE merge rules. Immutable once built.
class MergeTable {
 public:
  MergeTable() = default;
  // Throws InvariantError on empty symbols or a repeated (left, right).
  MergeTable(std::vector<Merge> merges, std::string language,
             std::uint64_t fingerprint = 0);

  const std::vector<Merge>& merges() const { return merges_; }
  std::size_t size() const { return merges_.size(); }
  bool empty() const { return merges_.empty(); }
  const std::string& language() const { return language_; }
  // FNV-1a of the training side; 0 when unknown (tables read from disk).
  std::uint64_t fingerprint() const { return fingerprint_; }

  // First `limit` merges. Throws ConfigError if limit > size().
  MergeTable truncated(std::size_t limit) const;

  // Fingerprint is provenance only and not part of equality.
  friend bool operator==(const MergeTable& a, const MergeTable& b) {
    return a.merges_ == b.merges_ && a.language_ == b.language_;
  }

 private:
  std::vector<Merge> merges_;
  std::string language_;
  std::uint64_t fingerprint_ = 0;
};

// Greedy BPE over the frequency-weighted word list of `sentences`. Each
// iteration merges the most frequent adjacent pair; ties go to the
// lexicographically smaller (left, right). Stops early once no pair occurs
// at least twice. Throws ConfigError if n_merges <= 0 or there are no tokens.
MergeTable learn_bpe(const std::vector<Tokens>& sentences,
                     std::int64_t n_merges, std::string language = {});

// Literal "@@" inside raw tokens would collide with the continuation marker.
// After every '@' that is followed by '@' or U+200B, a U+200B is inserted;
// unescape drops one U+200B after each '@'. The mapping is a bijection and
// escaped text never contains "@@".
std::string escape_marker(std::string_view token);
std::string unescape_marker(std::string_view token);

// Applies the first `limit` merges of a table (all when absent). Reuses
// segmentations of previously seen tokens, so keep one per corpus pass.
// Not thread-safe; use one instance per thread.
class Segmenter {
 public:
  // Throws ConfigError if limit > table.size().
  explicit Segmenter(const MergeTable& table,
                     std::optional<std::size_t> limit = std::nullopt);

  // Segments every token; non-final subwords carry the "@@" suffix.
  Tokens apply(const Tokens& tokens);
  void apply_token(const std::string& token, Tokens& out);

  std::size_t limit() const { return limit_; }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<std::string, std::string>& p) const;
  };

  std::vector<std::string> segment(const std::string& token) const;

  std::size_t limit_;
  std::unordered_map<std::pair<std::string, std::string>, std::size_t,
                     PairHash>
      ranks_;
  std::unordered_map<std::string, std::vector<std::string>> cache_;
};

Tokens apply_bpe(const Tokens& tokens, const MergeTable& table,
                 std::optional<std::size_t> limit = std::nullopt);

struct RevertResult {
  Tokens tokens;
  // Sentences ending in a subword that still carries the continuation
  // marker; the marker is dropped and the partial token kept.
  std::size_t dangling_markers = 0;
};

RevertResult revert_bpe(const Tokens& subwords);

// Line 1: "#multibpe v1 lang=<tag> merges=<n>", then "left right" per merge.
void save_table(const MergeTable& table, const std::filesystem::path& path);
// Throws VersionError on a missing/unknown header, ParseError on bad lines.
MergeTable load_table(const std::filesystem::path& path);

}  // namespace multibpe
