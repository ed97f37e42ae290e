#include "multibpe/augment.hpp"

#include <cstdio>
#include <unordered_set>

#include "multibpe/error.hpp"

namespace multibpe {

namespace {

std::string join_limits(const std::set<std::size_t>& limits) {
  std::string out;
  for (auto limit : limits) {
    if (!out.empty()) out += ',';
    out += std::to_string(limit);
  }
  return out;
}

std::string fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

struct PairKeyHash {
  std::size_t operator()(const SplitPair* p) const {
    std::size_t h = 0xCBF29CE484222325ULL;
    const auto mix = [&h](const Tokens& side) {
      for (const auto& t : side) {
        h ^= std::hash<std::string>{}(t) + 0x9E3779B97F4A7C15ULL + (h << 6) +
             (h >> 2);
      }
      h ^= 0xFF51AFD7ED558CCDULL + side.size();
    };
    mix(p->source);
    mix(p->target);
    return h;
  }
};

struct PairKeyEqual {
  bool operator()(const SplitPair* a, const SplitPair* b) const {
    return a->source == b->source && a->target == b->target;
  }
};

}  // namespace

std::string to_string(AugmentMode mode) {
  switch (mode) {
    case AugmentMode::kTargetSide:
      return "target_side";
    case AugmentMode::kSourceSide:
      return "source_side";
    case AugmentMode::kBothSides:
      return "both_sides";
  }
  throw InvariantError("unknown augment mode");
}

AugmentMode parse_mode(const std::string& text) {
  if (text == "target_side") return AugmentMode::kTargetSide;
  if (text == "source_side") return AugmentMode::kSourceSide;
  if (text == "both_sides") return AugmentMode::kBothSides;
  throw ConfigError("unknown augment mode '" + text +
                    "' (expected target_side, source_side or both_sides)");
}

AugmentPlan AugmentPlan::from_budgets(AugmentMode mode,
                                      const std::set<std::size_t>& budgets,
                                      std::size_t eval_budget,
                                      bool remove_duplicates) {
  AugmentPlan plan;
  plan.mode = mode;
  plan.remove_duplicates = remove_duplicates;
  switch (mode) {
    case AugmentMode::kTargetSide:
      plan.source_limits = {eval_budget};
      plan.target_limits = budgets;
      break;
    case AugmentMode::kSourceSide:
      plan.source_limits = budgets;
      plan.target_limits = {eval_budget};
      break;
    case AugmentMode::kBothSides:
      plan.source_limits = budgets;
      plan.target_limits = budgets;
      break;
  }
  return plan;
}

void AugmentPlan::validate(std::size_t eval_budget) const {
  if (source_limits.empty() || target_limits.empty())
    throw ConfigError("plan needs at least one source and one target limit");
  if (source_limits.contains(0) || target_limits.contains(0))
    throw ConfigError("merge limits in a plan must be positive");
  switch (mode) {
    case AugmentMode::kTargetSide:
      if (source_limits.size() != 1) {
        throw ConfigError("target_side plan must fix exactly one source limit, got " +
                          std::to_string(source_limits.size()));
      }
      break;
    case AugmentMode::kSourceSide:
      if (target_limits.size() != 1) {
        throw ConfigError("source_side plan must fix exactly one target limit, got " +
                          std::to_string(target_limits.size()));
      }
      if (!source_limits.contains(eval_budget)) {
        throw ConfigError("source_side plan must include the evaluation budget " +
                          std::to_string(eval_budget) +
                          " among its source limits {" +
                          join_limits(source_limits) + "}");
      }
      break;
    case AugmentMode::kBothSides:
      break;
  }
}

std::size_t SplitCorpus::block_size(std::size_t block) const {
  std::size_t n = 0;
  for (const auto& pair : pairs) n += pair.block == block;
  return n;
}

SplitCorpus make_variant(const ParallelCorpus& corpus,
                         const MergeTable& src_table,
                         const MergeTable& tgt_table, std::size_t src_limit,
                         std::size_t tgt_limit) {
  const auto check = [](const char* side, std::size_t limit,
                        const MergeTable& table) {
    if (limit > table.size()) {
      throw ConfigError(std::string(side) + " merge limit " +
                        std::to_string(limit) + " exceeds the " + side +
                        " table size " + std::to_string(table.size()));
    }
  };
  check("source", src_limit, src_table);
  check("target", tgt_limit, tgt_table);

  Segmenter src(src_table, src_limit);
  Segmenter tgt(tgt_table, tgt_limit);
  SplitCorpus out;
  out.blocks.push_back({src_limit, tgt_limit});
  out.pairs.reserve(corpus.size());
  for (const auto& pair : corpus.pairs)
    out.pairs.push_back({src.apply(pair.source), tgt.apply(pair.target), 0});
  return out;
}

CombineResult combine(const ParallelCorpus& corpus, const MergeTable& src_table,
                      const MergeTable& tgt_table, const AugmentPlan& plan,
                      std::size_t eval_budget) {
  plan.validate(eval_budget);
  CombineResult result;
  for (auto src_limit : plan.source_limits) {
    for (auto tgt_limit : plan.target_limits) {
      SplitCorpus cell =
          make_variant(corpus, src_table, tgt_table, src_limit, tgt_limit);
      const std::size_t block = result.split.blocks.size();
      result.split.blocks.push_back(cell.blocks.front());
      for (auto& pair : cell.pairs) {
        pair.block = block;
        result.split.pairs.push_back(std::move(pair));
      }
    }
  }
  result.pairs_before_dedup = result.split.size();
  if (plan.remove_duplicates) {
    auto [kept, stats] = dedup(result.split);
    result.split = std::move(kept);
    result.dedup = stats;
  }
  return result;
}

std::pair<SplitCorpus, DedupStats> dedup(const SplitCorpus& split) {
  SplitCorpus out;
  out.blocks = split.blocks;
  std::unordered_set<const SplitPair*, PairKeyHash, PairKeyEqual> seen;
  seen.reserve(split.size());
  std::vector<const SplitPair*> kept;
  for (const auto& pair : split.pairs) {
    if (seen.insert(&pair).second) kept.push_back(&pair);
  }
  out.pairs.reserve(kept.size());
  for (const auto* pair : kept) out.pairs.push_back(*pair);

  DedupStats stats;
  stats.input = split.size();
  stats.kept = out.size();
  stats.removed = stats.input - stats.kept;
  return {std::move(out), stats};
}

AugmentReport augment_stats(const SplitCorpus& split,
                            const std::optional<DedupStats>& dedup,
                            const std::optional<AugmentPlan>& plan) {
  AugmentReport report;
  report.plan = plan;
  report.variants = split.blocks.size();
  report.pairs = split.size();
  report.dedup = dedup;
  report.pairs_before_dedup = dedup ? dedup->input : split.size();
  report.blocks.resize(split.blocks.size());
  std::vector<std::size_t> src_total(split.blocks.size());
  std::vector<std::size_t> tgt_total(split.blocks.size());
  for (std::size_t b = 0; b < split.blocks.size(); ++b)
    report.blocks[b].cell = split.blocks[b];
  for (const auto& pair : split.pairs) {
    if (pair.block >= split.blocks.size())
      throw InvariantError("pair refers to unknown block " +
                           std::to_string(pair.block));
    ++report.blocks[pair.block].pairs;
    src_total[pair.block] += pair.source.size();
    tgt_total[pair.block] += pair.target.size();
  }
  for (std::size_t b = 0; b < report.blocks.size(); ++b) {
    auto& block = report.blocks[b];
    if (block.pairs == 0) continue;
    block.mean_source_subwords = static_cast<double>(src_total[b]) / block.pairs;
    block.mean_target_subwords = static_cast<double>(tgt_total[b]) / block.pairs;
  }
  return report;
}

std::string AugmentReport::to_text() const {
  std::string out;
  const auto line = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  };
  if (plan) {
    line("plan.mode", to_string(plan->mode));
    line("plan.source_limits", join_limits(plan->source_limits));
    line("plan.target_limits", join_limits(plan->target_limits));
    line("plan.remove_duplicates", plan->remove_duplicates ? "true" : "false");
  }
  line("variants", std::to_string(variants));
  line("pairs_before_dedup", std::to_string(pairs_before_dedup));
  line("pairs", std::to_string(pairs));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string prefix = "block." + std::to_string(b) + '.';
    line(prefix + "source_limit", std::to_string(blocks[b].cell.source_limit));
    line(prefix + "target_limit", std::to_string(blocks[b].cell.target_limit));
    line(prefix + "pairs", std::to_string(blocks[b].pairs));
    line(prefix + "mean_source_subwords", fixed(blocks[b].mean_source_subwords, 4));
    line(prefix + "mean_target_subwords", fixed(blocks[b].mean_target_subwords, 4));
  }
  if (dedup) {
    line("dedup.input", std::to_string(dedup->input));
    line("dedup.kept", std::to_string(dedup->kept));
    line("dedup.removed", std::to_string(dedup->removed));
    line("dedup.ratio", fixed(dedup->reduction_ratio(), 6));
  }
  return out;
}

SplitCorpus load_split(const std::filesystem::path& src_path,
                       const std::filesystem::path& tgt_path) {
  const ParallelCorpus corpus = load_parallel(src_path, tgt_path);
  SplitCorpus split;
  split.blocks.push_back({0, 0});
  split.pairs.reserve(corpus.size());
  for (const auto& pair : corpus.pairs)
    split.pairs.push_back({pair.source, pair.target, 0});
  return split;
}

void write_split(const SplitCorpus& split, const std::filesystem::path& src_path,
                 const std::filesystem::path& tgt_path) {
  std::vector<std::string> src_lines;
  std::vector<std::string> tgt_lines;
  src_lines.reserve(split.size());
  tgt_lines.reserve(split.size());
  for (const auto& pair : split.pairs) {
    src_lines.push_back(join(pair.source));
    tgt_lines.push_back(join(pair.target));
  }
  write_lines(src_path, src_lines);
  write_lines(tgt_path, tgt_lines);
}

}  // namespace multibpe
