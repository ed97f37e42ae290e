#include "multibpe/pipeline.hpp"

#include <algorithm>
#include <fstream>

#include "multibpe/error.hpp"
#include "multibpe/prng.hpp"

namespace multibpe {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> known,
                         const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

std::set<std::size_t> limits_from_json(const json& value, const std::string& what) {
  if (!value.is_array()) throw ConfigError(what + " must be an array of integers");
  std::set<std::size_t> out;
  for (const auto& item : value) {
    if (!item.is_number_integer() || item.get<std::int64_t>() <= 0)
      throw ConfigError(what + " must contain positive integers");
    if (!out.insert(item.get<std::size_t>()).second)
      throw ConfigError(what + " lists " + item.dump() + " twice");
  }
  return out;
}

fs::path resolve(const fs::path& base, const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? p : base / p;
}

FilePair file_pair(const json& value, const fs::path& base, const std::string& what) {
  if (!value.is_object()) throw ConfigError(what + " must be an object");
  reject_unknown_keys(value, {"source", "target"}, what);
  return {resolve(base, value.at("source").get<std::string>()),
          resolve(base, value.at("target").get<std::string>())};
}

std::string dotted(const std::string& stem, const std::string& lang) {
  return stem + '.' + lang;
}

}  // namespace

AugmentPlan plan_from_json(const json& plan,
                           const std::optional<std::set<std::size_t>>& budgets,
                           std::size_t eval_budget) {
  try {
    if (!plan.is_object()) throw ConfigError("plan must be an object");
    reject_unknown_keys(plan, {"mode", "remove_duplicates", "source_limits", "target_limits"},
                        "plan");
    const AugmentMode mode = parse_mode(plan.at("mode").get<std::string>());
    const bool remove = plan.value("remove_duplicates", false);
    const bool has_src = plan.contains("source_limits");
    const bool has_tgt = plan.contains("target_limits");
    AugmentPlan out;
    if (budgets) {
      out = AugmentPlan::from_budgets(mode, *budgets, eval_budget, remove);
    } else if (!has_src || !has_tgt) {
      throw ConfigError("plan needs source_limits and target_limits when no budgets are given");
    }
    out.mode = mode;
    out.remove_duplicates = remove;
    if (has_src) out.source_limits = limits_from_json(plan["source_limits"], "plan.source_limits");
    if (has_tgt) out.target_limits = limits_from_json(plan["target_limits"], "plan.target_limits");
    return out;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid plan: ") + e.what());
  }
}

json plan_to_json(const AugmentPlan& plan) {
  return json{{"mode", to_string(plan.mode)},
              {"remove_duplicates", plan.remove_duplicates},
              {"source_limits", plan.source_limits},
              {"target_limits", plan.target_limits}};
}

PipelineConfig PipelineConfig::from_json(const json& config, const fs::path& base_dir) {
  PipelineConfig out;
  try {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown_keys(config,
                        {"source_lang", "target_lang", "inputs", "test", "work_dir", "seed",
                         "shuffle", "dev_size", "budgets", "eval_budget", "plan", "truecase"},
                        "config");
    out.source_lang = config.value("source_lang", out.source_lang);
    out.target_lang = config.value("target_lang", out.target_lang);
    const json& inputs = config.at("inputs");
    if (!inputs.is_array() || inputs.empty())
      throw ConfigError("inputs must be a non-empty array of {source, target}");
    for (std::size_t i = 0; i < inputs.size(); ++i)
      out.inputs.push_back(file_pair(inputs[i], base_dir, "inputs[" + std::to_string(i) + "]"));
    if (config.contains("test")) out.test = file_pair(config["test"], base_dir, "test");
    out.work_dir = resolve(base_dir, config.at("work_dir").get<std::string>());
    out.seed = config.value("seed", std::uint64_t{0});
    const std::string order = config.value("shuffle", std::string("after_concat"));
    if (order == "after_concat") {
      out.shuffle_order = ShuffleOrder::kAfterConcat;
    } else if (order == "before_concat") {
      out.shuffle_order = ShuffleOrder::kBeforeConcat;
    } else {
      throw ConfigError("shuffle must be after_concat or before_concat, got '" + order + "'");
    }
    if (config.contains("dev_size")) {
      const auto& dev = config["dev_size"];
      if (!dev.is_number_integer() || dev.get<std::int64_t>() <= 0)
        throw ConfigError("dev_size must be a positive integer");
      out.dev_size = dev.get<std::size_t>();
    }
    if (config.contains("budgets")) out.budgets = limits_from_json(config["budgets"], "budgets");
    if (config.contains("eval_budget")) {
      const auto& eval = config["eval_budget"];
      if (!eval.is_number_integer() || eval.get<std::int64_t>() <= 0)
        throw ConfigError("eval_budget must be a positive integer");
      out.eval_budget = eval.get<std::size_t>();
    }
    out.plan = plan_from_json(config.at("plan"), out.budgets, out.eval_budget);
    out.truecase = config.value("truecase", true);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  out.validate();
  return out;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json parsed;
  try {
    parsed = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return from_json(parsed, path.parent_path());
}

void PipelineConfig::validate() const {
  if (budgets.empty()) throw ConfigError("budgets must not be empty");
  if (!budgets.contains(eval_budget)) {
    throw ConfigError("eval_budget " + std::to_string(eval_budget) +
                      " is not among the configured budgets");
  }
  plan.validate(eval_budget);
  for (const auto* limits : {&plan.source_limits, &plan.target_limits}) {
    for (auto limit : *limits) {
      if (!budgets.contains(limit))
        throw ConfigError("plan limit " + std::to_string(limit) + " is not a configured budget");
    }
  }
  if (source_lang.empty() || target_lang.empty() || source_lang == target_lang)
    throw ConfigError("source_lang and target_lang must be distinct, non-empty tags");
}

std::vector<Tokens> tokenize_all(const std::vector<Tokens>& sentences) {
  std::vector<Tokens> out;
  out.reserve(sentences.size());
  for (const auto& sentence : sentences) out.push_back(tokenize(join(sentence)));
  return out;
}

std::vector<Tokens> truecase_all(const std::vector<Tokens>& sentences,
                                 const TruecaseModel& model) {
  std::vector<Tokens> out;
  out.reserve(sentences.size());
  for (const auto& sentence : sentences) out.push_back(truecase(sentence, model));
  return out;
}

namespace {

ParallelCorpus tokenized(ParallelCorpus corpus) {
  for (auto& pair : corpus.pairs) {
    pair.source = tokenize(join(pair.source));
    pair.target = tokenize(join(pair.target));
  }
  return corpus;
}

ParallelCorpus truecased(ParallelCorpus corpus, const TruecaseModel& src,
                         const TruecaseModel& tgt) {
  for (auto& pair : corpus.pairs) {
    pair.source = truecase(pair.source, src);
    pair.target = truecase(pair.target, tgt);
  }
  return corpus;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
  config.validate();
  std::error_code ec;
  fs::create_directories(config.work_dir, ec);
  if (ec) throw IoError("cannot create " + config.work_dir.string() + ": " + ec.message());
  const auto path = [&](const std::string& stem, const std::string& lang) {
    return config.work_dir / dotted(stem, lang);
  };
  const std::string& sl = config.source_lang;
  const std::string& tl = config.target_lang;
  PipelineResult result;

  std::vector<ParallelCorpus> parts;
  for (std::size_t i = 0; i < config.inputs.size(); ++i) {
    ParallelCorpus part = tokenized(
        load_parallel(config.inputs[i].source, config.inputs[i].target, sl, tl));
    if (config.shuffle_order == ShuffleOrder::kBeforeConcat)
      part = shuffle(part, derive_seed(config.seed, kPartShuffleStreamBase + i));
    parts.push_back(std::move(part));
  }
  ParallelCorpus all = concatenate(parts);
  if (config.shuffle_order == ShuffleOrder::kAfterConcat)
    all = shuffle(all, derive_seed(config.seed, kShuffleStream));
  auto [train, dev] = split(all, config.dev_size);
  write_parallel(train, path("train.tok", sl), path("train.tok", tl));
  write_parallel(dev, path("dev.tok", sl), path("dev.tok", tl));
  result.outputs.insert(result.outputs.end(), {path("train.tok", sl), path("train.tok", tl),
                                               path("dev.tok", sl), path("dev.tok", tl)});

  std::optional<ParallelCorpus> test;
  if (config.test) test = tokenized(load_parallel(config.test->source, config.test->target, sl, tl));

  if (config.truecase) {
    const TruecaseModel src_model = train_truecaser(train.source_side());
    const TruecaseModel tgt_model = train_truecaser(train.target_side());
    save_truecase_model(src_model, path("truecase", sl));
    save_truecase_model(tgt_model, path("truecase", tl));
    train = truecased(std::move(train), src_model, tgt_model);
    dev = truecased(std::move(dev), src_model, tgt_model);
    if (test) test = truecased(std::move(*test), src_model, tgt_model);
    write_parallel(train, path("train.tc", sl), path("train.tc", tl));
    write_parallel(dev, path("dev.tc", sl), path("dev.tc", tl));
    result.outputs.insert(result.outputs.end(), {path("truecase", sl), path("truecase", tl),
                                                 path("train.tc", sl), path("train.tc", tl),
                                                 path("dev.tc", sl), path("dev.tc", tl)});
  }

  const auto max_budget = static_cast<std::int64_t>(*config.budgets.rbegin());
  const MergeTable src_table = learn_bpe(train.source_side(), max_budget, sl);
  const MergeTable tgt_table = learn_bpe(train.target_side(), max_budget, tl);
  save_table(src_table, path("bpe", sl));
  save_table(tgt_table, path("bpe", tl));
  result.outputs.insert(result.outputs.end(), {path("bpe", sl), path("bpe", tl)});

  const auto augment_set = [&](const ParallelCorpus& corpus, const std::string& name) {
    CombineResult combined = combine(corpus, src_table, tgt_table, config.plan, config.eval_budget);
    write_split(combined.split, path(name + ".multi", sl), path(name + ".multi", tl));
    AugmentReport report = augment_stats(combined.split, combined.dedup, config.plan);
    write_text(config.work_dir / (name + ".stats"), report.to_text());
    result.outputs.insert(result.outputs.end(), {path(name + ".multi", sl),
                                                 path(name + ".multi", tl),
                                                 config.work_dir / (name + ".stats")});
    return report;
  };
  result.train_pairs = train.size();
  result.dev_pairs = dev.size();
  result.train_report = augment_set(train, "train");
  result.dev_report = augment_set(dev, "dev");

  if (test) {
    const SplitCorpus segmented =
        make_variant(*test, src_table, tgt_table, config.eval_budget, config.eval_budget);
    write_split(segmented, path("test.bpe", sl), path("test.bpe", tl));
    result.outputs.insert(result.outputs.end(), {path("test.bpe", sl), path("test.bpe", tl)});
  }
  return result;
}

}  // namespace multibpe
