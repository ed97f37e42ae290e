#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "multibpe/augment.hpp"
#include "multibpe/normalize.hpp"

namespace multibpe {

inline constexpr std::string_view kToolkitVersion = "1.0.0";

// Seed streams passed to derive_seed() for each randomized stage.
inline constexpr std::uint64_t kShuffleStream = 1;
inline constexpr std::uint64_t kPartShuffleStreamBase = 100;

enum class ShuffleOrder { kAfterConcat, kBeforeConcat };

struct FilePair {
  std::filesystem::path source;
  std::filesystem::path target;
};

// Reads a plan object: {"mode", "remove_duplicates", "source_limits",
// "target_limits"}. Missing limits are filled from `budgets` via
// AugmentPlan::from_budgets (ConfigError if budgets are also absent).
AugmentPlan plan_from_json(const nlohmann::json& plan,
                           const std::optional<std::set<std::size_t>>& budgets,
                           std::size_t eval_budget);
nlohmann::json plan_to_json(const AugmentPlan& plan);

struct PipelineConfig {
  std::string source_lang = "src";
  std::string target_lang = "tgt";
  std::vector<FilePair> inputs;
  std::optional<FilePair> test;
  std::filesystem::path work_dir;
  std::uint64_t seed = 0;
  ShuffleOrder shuffle_order = ShuffleOrder::kAfterConcat;
  std::size_t dev_size = 1000;
  std::set<std::size_t> budgets = kDefaultBudgets;
  std::size_t eval_budget = kDefaultEvalBudget;
  AugmentPlan plan;
  bool truecase = true;

  // Relative paths resolve against base_dir. Validates before returning.
  static PipelineConfig from_json(const nlohmann::json& json,
                                  const std::filesystem::path& base_dir);
  static PipelineConfig load(const std::filesystem::path& path);

  // eval_budget among budgets, plan valid, plan limits drawn from budgets.
  void validate() const;
};

// Sentence-level normalization shared by the CLI and the pipeline.
std::vector<Tokens> tokenize_all(const std::vector<Tokens>& sentences);
std::vector<Tokens> truecase_all(const std::vector<Tokens>& sentences,
                                 const TruecaseModel& model);

struct PipelineResult {
  std::size_t train_pairs = 0;
  std::size_t dev_pairs = 0;
  AugmentReport train_report;
  AugmentReport dev_report;
  std::vector<std::filesystem::path> outputs;
};

// Stages, in order (each matches a CLI command):
//   1. load inputs, tokenize                         (tokenize)
//   2. shuffle (sub-seed kShuffleStream) and split   (shuffle-split)
//   3. truecase models per side on train, applied to train/dev/test
//                                                    (truecase)
//   4. one BPE table per side on train at max(budgets)
//                                                    (learn-bpe)
//   5. combine train and dev with the plan, write stats
//                                                    (augment)
//   6. test set, if given, at eval_budget on both sides
//                                                    (apply-bpe)
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace multibpe
