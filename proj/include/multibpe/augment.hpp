#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "multibpe/bpe.hpp"
#include "multibpe/corpus.hpp"

namespace multibpe {

inline constexpr std::size_t kDefaultEvalBudget = 89500;
inline const std::set<std::size_t> kDefaultBudgets = {89500, 50000, 20000,
                                                      10000};

enum class AugmentMode { kTargetSide, kSourceSide, kBothSides };

std::string to_string(AugmentMode mode);
// Accepts "target_side", "source_side", "both_sides".
AugmentMode parse_mode(const std::string& text);

struct AugmentPlan {
  AugmentMode mode = AugmentMode::kTargetSide;
  std::set<std::size_t> source_limits;
  std::set<std::size_t> target_limits;
  bool remove_duplicates = false;

  // Grid for `mode` over `budgets`: the fixed side uses eval_budget.
  static AugmentPlan from_budgets(AugmentMode mode,
                                  const std::set<std::size_t>& budgets,
                                  std::size_t eval_budget,
                                  bool remove_duplicates);

  // Throws ConfigError naming the violated rule. Source-side plans must
  // include eval_budget among the source limits.
  void validate(std::size_t eval_budget = kDefaultEvalBudget) const;

  std::size_t cell_count() const {
    return source_limits.size() * target_limits.size();
  }
};

struct SplitPair {
  Tokens source;
  Tokens target;
  std::size_t block = 0;  // index into SplitCorpus::blocks

  friend bool operator==(const SplitPair&, const SplitPair&) = default;
};

struct Block {
  std::size_t source_limit = 0;
  std::size_t target_limit = 0;

  friend bool operator==(const Block&, const Block&) = default;
};

struct SplitCorpus {
  std::vector<SplitPair> pairs;
  std::vector<Block> blocks;

  std::size_t size() const { return pairs.size(); }
  std::size_t block_size(std::size_t block) const;

  friend bool operator==(const SplitCorpus&, const SplitCorpus&) = default;
};

struct DedupStats {
  std::size_t input = 0;
  std::size_t kept = 0;
  std::size_t removed = 0;
  // removed / input; 0 for empty input.
  double reduction_ratio() const {
    return input == 0 ? 0.0 : static_cast<double>(removed) / input;
  }
};

// Pair i = (apply_bpe(src_i, src_table, src_limit),
//           apply_bpe(tgt_i, tgt_table, tgt_limit)).
SplitCorpus make_variant(const ParallelCorpus& corpus,
                         const MergeTable& src_table,
                         const MergeTable& tgt_table, std::size_t src_limit,
                         std::size_t tgt_limit);

struct CombineResult {
  SplitCorpus split;
  std::optional<DedupStats> dedup;  // present iff the plan removes duplicates
  std::size_t pairs_before_dedup = 0;
};

// Concatenates make_variant for every cell of the plan in ascending source
// limit, then ascending target limit; then dedups globally if requested.
CombineResult combine(const ParallelCorpus& corpus, const MergeTable& src_table,
                      const MergeTable& tgt_table, const AugmentPlan& plan,
                      std::size_t eval_budget = kDefaultEvalBudget);

// Drops every pair whose (source, target) subword sequences equal an earlier
// kept pair. Blocks are retained even when emptied.
std::pair<SplitCorpus, DedupStats> dedup(const SplitCorpus& split);

struct BlockReport {
  Block cell;
  std::size_t pairs = 0;
  double mean_source_subwords = 0.0;
  double mean_target_subwords = 0.0;
};

struct AugmentReport {
  std::optional<AugmentPlan> plan;
  std::size_t variants = 0;
  std::size_t pairs = 0;
  std::vector<BlockReport> blocks;
  std::optional<DedupStats> dedup;
  std::size_t pairs_before_dedup = 0;

  // key=value lines, one per field; block fields are "block.<i>.<name>".
  std::string to_text() const;
};

AugmentReport augment_stats(const SplitCorpus& split,
                            const std::optional<DedupStats>& dedup = {},
                            const std::optional<AugmentPlan>& plan = {});

// Parallel files hold subword lines; block membership is not recoverable
// from them, so loaded corpora get a single block with unknown limits (0).
SplitCorpus load_split(const std::filesystem::path& src_path,
                       const std::filesystem::path& tgt_path);
void write_split(const SplitCorpus& split, const std::filesystem::path& src_path,
                 const std::filesystem::path& tgt_path);

}  // namespace multibpe
