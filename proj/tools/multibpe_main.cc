#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "multibpe/augment.hpp"
#include "multibpe/bpe.hpp"
#include "multibpe/corpus.hpp"
#include "multibpe/error.hpp"
#include "multibpe/eval.hpp"
#include "multibpe/normalize.hpp"
#include "multibpe/pipeline.hpp"
#include "multibpe/prng.hpp"

namespace fs = std::filesystem;
using namespace multibpe;

namespace {

std::vector<Tokens> read_token_lines(const fs::path& path) {
  std::vector<Tokens> out;
  for (const auto& line : read_lines(path)) out.push_back(split_blanks(line));
  return out;
}

void write_token_lines(const fs::path& path, const std::vector<Tokens>& sentences) {
  std::vector<std::string> lines;
  lines.reserve(sentences.size());
  for (const auto& s : sentences) lines.push_back(join(s));
  write_lines(path, lines);
}

// Reverts BPE when requested and reports dangling markers on stderr.
std::vector<Tokens> read_scoring_lines(const fs::path& path, bool revert) {
  if (!revert) return read_token_lines(path);
  std::vector<Tokens> out;
  std::size_t dangling = 0;
  for (const auto& line : read_lines(path)) {
    RevertResult r = postprocess(line);
    dangling += r.dangling_markers;
    out.push_back(std::move(r.tokens));
  }
  if (dangling)
    std::cerr << "warning: " << path.string() << ": " << dangling
              << " sentence(s) end with a dangling continuation marker\n";
  return out;
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
  } else {
    write_text(output, text);
  }
}

int cmd_learn_bpe(const fs::path& input, std::int64_t merges, const fs::path& output,
                  std::string lang) {
  if (lang.empty()) {
    lang = input.extension().string();
    if (!lang.empty()) lang.erase(0, 1);
  }
  const MergeTable table = learn_bpe(read_token_lines(input), merges, lang);
  save_table(table, output);
  std::cerr << "learned " << table.size() << " merges (requested " << merges << ")\n";
  return 0;
}

int cmd_apply_bpe(const fs::path& input, const fs::path& table_path,
                  std::optional<std::size_t> limit, const fs::path& output) {
  const MergeTable table = load_table(table_path);
  Segmenter segmenter(table, limit);
  std::vector<Tokens> out;
  for (const auto& sentence : read_token_lines(input)) out.push_back(segmenter.apply(sentence));
  write_token_lines(output, out);
  return 0;
}

int cmd_tokenize(const fs::path& input, const fs::path& output, bool reverse) {
  std::vector<std::string> out;
  for (const auto& line : read_lines(input))
    out.push_back(reverse ? detokenize(split_blanks(line)) : join(tokenize(line)));
  write_lines(output, out);
  return 0;
}

int cmd_truecase(bool train, bool apply, const fs::path& model_path, const fs::path& input,
                 const fs::path& output) {
  if (train == apply) throw ConfigError("truecase needs exactly one of --train or --apply");
  const auto sentences = read_token_lines(input);
  if (train) {
    save_truecase_model(train_truecaser(sentences), model_path);
    return 0;
  }
  if (output.empty()) throw ConfigError("truecase --apply needs --output");
  write_token_lines(output, truecase_all(sentences, load_truecase_model(model_path)));
  return 0;
}

int cmd_shuffle_split(const fs::path& src, const fs::path& tgt, const std::string& src_lang,
                      const std::string& tgt_lang, std::uint64_t seed, std::size_t dev_size,
                      const fs::path& out_dir) {
  const ParallelCorpus corpus = load_parallel(src, tgt, src_lang, tgt_lang);
  const std::string& sl = corpus.source_lang;
  const std::string& tl = corpus.target_lang;
  if (sl.empty() || tl.empty() || sl == tl)
    throw ConfigError("cannot derive distinct language tags from the file names; pass "
                      "--src-lang and --tgt-lang");
  auto [train, dev] = split(shuffle(corpus, derive_seed(seed, kShuffleStream)), dev_size);
  fs::create_directories(out_dir);
  write_parallel(train, out_dir / ("train." + sl), out_dir / ("train." + tl));
  write_parallel(dev, out_dir / ("dev." + sl), out_dir / ("dev." + tl));
  return 0;
}

int cmd_augment(const fs::path& config_path, const fs::path& out_dir) {
  std::ifstream in(config_path);
  if (!in) throw IoError("cannot open config " + config_path.string());
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(config_path.string() + ": " + e.what());
  }
  const fs::path base = config_path.parent_path();
  const auto resolve = [&base](const std::string& p) {
    return fs::path(p).is_absolute() ? fs::path(p) : base / p;
  };
  ParallelCorpus corpus;
  MergeTable src_table;
  MergeTable tgt_table;
  AugmentPlan plan;
  std::size_t eval_budget = kDefaultEvalBudget;
  std::string name = "train";
  try {
    for (const auto& [key, value] : config.items()) {
      static const std::set<std::string> known = {"corpus", "source_table", "target_table",
                                                  "plan", "budgets", "eval_budget", "name"};
      if (!known.contains(key)) throw ConfigError("unknown key '" + key + "' in augment config");
    }
    eval_budget = config.value("eval_budget", kDefaultEvalBudget);
    name = config.value("name", name);
    std::optional<std::set<std::size_t>> budgets;
    if (config.contains("budgets")) budgets = config["budgets"].get<std::set<std::size_t>>();
    plan = plan_from_json(config.at("plan"), budgets, eval_budget);
    plan.validate(eval_budget);
    const auto& files = config.at("corpus");
    corpus = load_parallel(resolve(files.at("source").get<std::string>()),
                           resolve(files.at("target").get<std::string>()));
    src_table = load_table(resolve(config.at("source_table").get<std::string>()));
    tgt_table = load_table(resolve(config.at("target_table").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid augment config: ") + e.what());
  }
  const CombineResult combined = combine(corpus, src_table, tgt_table, plan, eval_budget);
  fs::create_directories(out_dir);
  write_split(combined.split, out_dir / (name + ".multi." + corpus.source_lang),
              out_dir / (name + ".multi." + corpus.target_lang));
  const AugmentReport report = augment_stats(combined.split, combined.dedup, plan);
  write_text(out_dir / (name + ".stats"), report.to_text());
  std::cerr << name << ": " << report.variants << " blocks, " << report.pairs << " pairs\n";
  return 0;
}

int cmd_dedup(const fs::path& src, const fs::path& tgt, const fs::path& out_src,
              const fs::path& out_tgt, const fs::path& stats_path) {
  const SplitCorpus split = load_split(src, tgt);
  const auto [kept, stats] = dedup(split);
  write_split(kept, out_src, out_tgt);
  if (!stats_path.empty()) write_text(stats_path, augment_stats(kept, stats).to_text());
  std::cerr << "kept " << stats.kept << " of " << stats.input << " pairs\n";
  return 0;
}

int cmd_bleu(const fs::path& hyp, const fs::path& ref, bool revert, const std::string& output) {
  const BleuScore score =
      corpus_bleu(read_scoring_lines(hyp, revert), read_scoring_lines(ref, revert));
  emit(score.to_text(), output);
  return 0;
}

int cmd_significance(const fs::path& hyp_a, const fs::path& hyp_b, const fs::path& ref,
                     std::size_t samples, std::uint64_t seed, unsigned threads, bool revert,
                     const std::string& output) {
  const SignificanceResult result = paired_bootstrap(
      read_scoring_lines(hyp_a, revert), read_scoring_lines(hyp_b, revert),
      read_scoring_lines(ref, revert), samples, seed, threads);
  emit(result.to_text(), output);
  return 0;
}

int cmd_pipeline(const fs::path& config_path, const std::string& work_dir) {
  PipelineConfig config = PipelineConfig::load(config_path);
  if (!work_dir.empty()) config.work_dir = work_dir;
  const PipelineResult result = run_pipeline(config);
  std::cerr << "train: " << result.train_pairs << " pairs -> " << result.train_report.pairs
            << " in " << result.train_report.variants << " blocks\n"
            << "dev: " << result.dev_pairs << " pairs -> " << result.dev_report.pairs << " in "
            << result.dev_report.variants << " blocks\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-budget BPE segmentation and parallel corpus augmentation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("multibpe ") + std::string(kToolkitVersion) +
                                        " (merge-table format v" +
                                        std::to_string(kTableFormatVersion) +
                                        ", truecase model format v1)");
  std::function<int()> action;

  std::string input, output, table, model, config, out_dir, src, tgt, out_src, out_tgt, stats,
      hyp, ref, hyp_a, hyp_b, lang, work_dir, src_lang, tgt_lang;
  std::int64_t merges = 0;
  std::optional<std::size_t> limit;
  std::size_t samples = 1000, dev_size = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool train = false, apply = false, revert = false, reverse = false;

  auto* learn = app.add_subcommand("learn-bpe", "Learn a BPE merge table");
  learn->add_option("--input", input, "Tokenized text, one sentence per line")->required();
  learn->add_option("--merges", merges, "Number of merge operations")->required();
  learn->add_option("--output", output, "Merge table file")->required();
  learn->add_option("--lang", lang, "Language tag (default: input extension)");
  learn->callback([&] { action = [&] { return cmd_learn_bpe(input, merges, output, lang); }; });

  auto* apply_cmd = app.add_subcommand("apply-bpe", "Segment text with a merge table");
  apply_cmd->add_option("--input", input)->required();
  apply_cmd->add_option("--table", table)->required();
  apply_cmd->add_option("--limit", limit, "Use only the first K merges");
  apply_cmd->add_option("--output", output)->required();
  apply_cmd->callback([&] { action = [&] { return cmd_apply_bpe(input, table, limit, output); }; });

  auto* tok = app.add_subcommand("tokenize", "Tokenize (or detokenize) text");
  tok->add_option("--input", input)->required();
  tok->add_option("--output", output)->required();
  tok->add_flag("--detokenize", reverse);
  tok->callback([&] { action = [&] { return cmd_tokenize(input, output, reverse); }; });

  auto* tc = app.add_subcommand("truecase", "Train or apply a truecasing model");
  tc->add_flag("--train", train);
  tc->add_flag("--apply", apply);
  tc->add_option("--model", model)->required();
  tc->add_option("--input", input)->required();
  tc->add_option("--output", output);
  tc->callback([&] { action = [&] { return cmd_truecase(train, apply, model, input, output); }; });

  auto* ss = app.add_subcommand("shuffle-split", "Shuffle a parallel corpus and split off a dev set");
  ss->add_option("--src", src)->required();
  ss->add_option("--tgt", tgt)->required();
  ss->add_option("--src-lang", src_lang);
  ss->add_option("--tgt-lang", tgt_lang);
  ss->add_option("--seed", seed, "Run seed; the shuffle uses its sub-seed for stream 1");
  ss->add_option("--dev-size", dev_size);
  ss->add_option("--out-dir", out_dir)->required();
  ss->callback([&] {
    action = [&] { return cmd_shuffle_split(src, tgt, src_lang, tgt_lang, seed, dev_size, out_dir); };
  });

  auto* aug = app.add_subcommand("augment", "Build a multi-budget training set from a JSON config");
  aug->add_option("--config", config)->required();
  aug->add_option("--out-dir", out_dir)->required();
  aug->callback([&] { action = [&] { return cmd_augment(config, out_dir); }; });

  auto* dd = app.add_subcommand("dedup", "Remove repeated sentence pairs");
  dd->add_option("--src", src)->required();
  dd->add_option("--tgt", tgt)->required();
  dd->add_option("--out-src", out_src)->required();
  dd->add_option("--out-tgt", out_tgt)->required();
  dd->add_option("--stats", stats);
  dd->callback([&] { action = [&] { return cmd_dedup(src, tgt, out_src, out_tgt, stats); }; });

  auto* bleu = app.add_subcommand("bleu", "Corpus BLEU of a hypothesis file");
  bleu->add_option("--hyp", hyp)->required();
  bleu->add_option("--ref", ref)->required();
  bleu->add_flag("--revert-bpe", revert, "Join '@@ ' continuations before scoring");
  bleu->add_option("--output", output, "Write the record here instead of stdout");
  bleu->callback([&] { action = [&] { return cmd_bleu(hyp, ref, revert, output); }; });

  auto* sig = app.add_subcommand("significance", "Paired bootstrap resampling test");
  sig->add_option("--hyp-a", hyp_a)->required();
  sig->add_option("--hyp-b", hyp_b)->required();
  sig->add_option("--ref", ref)->required();
  sig->add_option("--samples", samples);
  sig->add_option("--seed", seed);
  sig->add_option("--threads", threads);
  sig->add_flag("--revert-bpe", revert);
  sig->add_option("--output", output);
  sig->callback([&] {
    action = [&] {
      return cmd_significance(hyp_a, hyp_b, ref, samples, seed, threads, revert, output);
    };
  });

  auto* pipe = app.add_subcommand("pipeline", "Run the full preparation pipeline");
  pipe->add_option("--config", config)->required();
  pipe->add_option("--work-dir", work_dir, "Override the configured work_dir");
  pipe->callback([&] { action = [&] { return cmd_pipeline(config, work_dir); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 4;
  }
}
