#include "multibpe/pipeline.hpp"

#include <sys/wait.h>

#include <cstdlib>

#include <gtest/gtest.h>

#include "multibpe/error.hpp"
#include "test_util.hpp"

namespace multibpe {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testutil::read_file;
using testutil::TempDir;

const fs::path kData = MULTIBPE_DATA_DIR;
const std::string kCli = MULTIBPE_CLI;

int run(const std::string& args, const fs::path& log = "/dev/null") {
  const int status = std::system((kCli + " " + args + " 2>" + log.string()).c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json mini_config() {
  std::ifstream in(kData / "pipeline.json");
  return json::parse(in);
}

TEST(PipelineConfig, ParsesBundledConfig) {
  const auto config = PipelineConfig::from_json(mini_config(), kData);
  EXPECT_EQ(config.budgets, (std::set<std::size_t>{10, 20, 50, 100}));
  EXPECT_EQ(config.eval_budget, 100u);
  EXPECT_EQ(config.plan.cell_count(), 16u);
  EXPECT_TRUE(config.plan.remove_duplicates);
  EXPECT_EQ(config.inputs.at(0).source, kData / "corpus.en");
}

TEST(PipelineConfig, Violations) {
  auto bad = mini_config();
  bad["eval_budget"] = 30;
  EXPECT_THROW(PipelineConfig::from_json(bad, kData), ConfigError);

  bad = mini_config();
  bad["plan"] = {{"mode", "source_side"}, {"source_limits", {50, 20}}, {"target_limits", {100}}};
  EXPECT_THROW(PipelineConfig::from_json(bad, kData), ConfigError);

  bad = mini_config();
  bad["colour"] = "blue";
  EXPECT_THROW(PipelineConfig::from_json(bad, kData), ConfigError);

  bad = mini_config();
  bad.erase("inputs");
  EXPECT_THROW(PipelineConfig::from_json(bad, kData), ConfigError);

  bad = mini_config();
  bad["budgets"] = {100, -5};
  EXPECT_THROW(PipelineConfig::from_json(bad, kData), ConfigError);

  bad = mini_config();
  bad["plan"]["target_limits"] = {100, 7};
  EXPECT_THROW(PipelineConfig::from_json(bad, kData), ConfigError);
}

TEST(Pipeline, MiniCorpusBuildsSixteenBlocks) {
  TempDir dir;
  auto config = PipelineConfig::from_json(mini_config(), kData);
  config.work_dir = dir.path();
  const auto result = run_pipeline(config);
  EXPECT_EQ(result.train_pairs, 900u);
  EXPECT_EQ(result.dev_pairs, 100u);
  EXPECT_EQ(result.train_report.variants, 16u);
  EXPECT_EQ(result.train_report.pairs_before_dedup, 900u * 16u);
  ASSERT_TRUE(result.train_report.dedup.has_value());
  EXPECT_GT(result.train_report.dedup->removed, 0u);
  EXPECT_EQ(result.dev_report.variants, 16u);
  for (const auto& out : result.outputs) EXPECT_TRUE(fs::exists(out)) << out;
  EXPECT_NE(read_file(dir / "train.stats").find("variants=16\n"), std::string::npos);
  EXPECT_TRUE(read_file(dir / "bpe.en").starts_with("#multibpe v1 lang=en merges=100\n"));
}

TEST(Pipeline, ShuffleBeforeConcatIsAlsoDeterministic) {
  TempDir a, b;
  auto json_config = mini_config();
  json_config["shuffle"] = "before_concat";
  json_config["inputs"].push_back({{"source", "test.en"}, {"target", "test.eo"}});
  auto config = PipelineConfig::from_json(json_config, kData);
  config.work_dir = a.path();
  const auto first = run_pipeline(config);
  EXPECT_EQ(first.train_pairs + first.dev_pairs, 1100u);
  config.work_dir = b.path();
  run_pipeline(config);
  EXPECT_EQ(read_file(a / "train.multi.eo"), read_file(b / "train.multi.eo"));
}

// The pipeline equals running the individual commands in documented order.
TEST(Pipeline, EqualsCompositionOfCommands) {
  TempDir pipe, steps;
  ASSERT_EQ(run("pipeline --config " + (kData / "pipeline.json").string() + " --work-dir " +
                pipe.path().string()),
            0);
  const fs::path s = steps.path();
  for (const std::string lang : {"en", "eo"}) {
    ASSERT_EQ(run("tokenize --input " + (kData / ("corpus." + lang)).string() + " --output " +
                  (s / ("tok." + lang)).string()),
              0);
  }
  ASSERT_EQ(run("shuffle-split --src " + (s / "tok.en").string() + " --tgt " +
                (s / "tok.eo").string() + " --seed 1234 --dev-size 100 --out-dir " + s.string()),
            0);
  for (const std::string lang : {"en", "eo"}) {
    EXPECT_EQ(read_file(s / ("train." + lang)), read_file(pipe / ("train.tok." + lang)));
    const std::string model = (s / ("truecase." + lang)).string();
    ASSERT_EQ(run("truecase --train --model " + model + " --input " +
                  (s / ("train." + lang)).string()),
              0);
    EXPECT_EQ(read_file(model), read_file(pipe / ("truecase." + lang)));
    for (const std::string set : {"train", "dev"}) {
      ASSERT_EQ(run("truecase --apply --model " + model + " --input " +
                    (s / (set + "." + lang)).string() + " --output " +
                    (s / (set + ".tc." + lang)).string()),
                0);
      EXPECT_EQ(read_file(s / (set + ".tc." + lang)), read_file(pipe / (set + ".tc." + lang)));
    }
    ASSERT_EQ(run("learn-bpe --merges 100 --input " + (s / ("train.tc." + lang)).string() +
                  " --output " + (s / ("bpe." + lang)).string()),
              0);
    EXPECT_EQ(read_file(s / ("bpe." + lang)), read_file(pipe / ("bpe." + lang)));
  }
  for (const std::string set : {"train", "dev"}) {
    const json augment = {
        {"corpus", {{"source", set + ".tc.en"}, {"target", set + ".tc.eo"}}},
        {"source_table", "bpe.en"},
        {"target_table", "bpe.eo"},
        {"budgets", {100, 50, 20, 10}},
        {"eval_budget", 100},
        {"name", set},
        {"plan", {{"mode", "both_sides"}, {"remove_duplicates", true}}}};
    testutil::write_file(s / (set + ".json"), augment.dump(2));
    ASSERT_EQ(run("augment --config " + (s / (set + ".json")).string() + " --out-dir " +
                  s.string()),
              0);
    EXPECT_EQ(read_file(s / (set + ".stats")), read_file(pipe / (set + ".stats")));
    EXPECT_EQ(read_file(s / (set + ".multi.en")), read_file(pipe / (set + ".multi.en")));
    EXPECT_EQ(read_file(s / (set + ".multi.eo")), read_file(pipe / (set + ".multi.eo")));
  }
}

TEST(Cli, BleuOfReferenceIsHundred) {
  TempDir dir;
  ASSERT_EQ(run("bleu --hyp " + (kData / "test.eo").string() + " --ref " +
                (kData / "test.eo").string() + " --output " + (dir / "bleu").string()),
            0);
  EXPECT_TRUE(read_file(dir / "bleu").starts_with("bleu=100.00\n"));
}

TEST(Cli, BleuRevertsBpe) {
  TempDir dir;
  testutil::write_file(dir / "hyp", "la ĉapel@@ isto venis\n");
  testutil::write_file(dir / "ref", "la ĉapelisto venis\n");
  ASSERT_EQ(run("bleu --revert-bpe --hyp " + (dir / "hyp").string() + " --ref " +
                (dir / "ref").string() + " --output " + (dir / "out").string()),
            0);
  EXPECT_TRUE(read_file(dir / "out").starts_with("bleu=100.00\n"));
}

TEST(Cli, SourceSidePlanWithoutEvalBudgetExitsTwo) {
  TempDir dir;
  const json augment = {
      {"corpus", {{"source", (kData / "test.en").string()}, {"target", (kData / "test.eo").string()}}},
      {"source_table", "missing.en"},
      {"target_table", "missing.eo"},
      {"plan",
       {{"mode", "source_side"}, {"source_limits", {50000, 10000}}, {"target_limits", {89500}}}}};
  testutil::write_file(dir / "aug.json", augment.dump());
  EXPECT_EQ(run("augment --config " + (dir / "aug.json").string() + " --out-dir " +
                    dir.path().string(),
                dir / "log"),
            2);
  EXPECT_NE(read_file(dir / "log").find("89500"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(run("--version"), 0);
  EXPECT_EQ(run("bleu --hyp"), 2);
  EXPECT_EQ(run("bleu --hyp " + (dir / "nope").string() + " --ref " + (dir / "nope").string()), 3);
  testutil::write_file(dir / "a", "x\ny\n");
  testutil::write_file(dir / "b", "x\n");
  EXPECT_EQ(run("bleu --hyp " + (dir / "a").string() + " --ref " + (dir / "b").string()), 3);
  EXPECT_EQ(run("learn-bpe --merges 0 --input " + (dir / "a").string() + " --output " +
                (dir / "t").string()),
            2);
}

TEST(Cli, ApplyAndSignificance) {
  TempDir dir;
  const std::string table = (dir / "bpe.eo").string();
  ASSERT_EQ(run("learn-bpe --merges 30 --input " + (kData / "corpus.eo").string() +
                " --output " + table),
            0);
  ASSERT_EQ(run("apply-bpe --limit 10 --table " + table + " --input " +
                (kData / "test.eo").string() + " --output " + (dir / "seg").string()),
            0);
  EXPECT_NE(read_file(dir / "seg").find("@@"), std::string::npos);
  EXPECT_EQ(run("apply-bpe --limit 31 --table " + table + " --input " +
                (kData / "test.eo").string() + " --output " + (dir / "seg").string()),
            2);
  ASSERT_EQ(run("significance --revert-bpe --samples 200 --seed 3 --hyp-a " +
                (dir / "seg").string() + " --hyp-b " + (kData / "test.en").string() +
                " --ref " + (kData / "test.eo").string() + " --output " +
                (dir / "sig").string()),
            0);
  const std::string sig = read_file(dir / "sig");
  EXPECT_NE(sig.find("bleu_a=100.00\n"), std::string::npos) << sig;
  EXPECT_NE(sig.find("p_value=0.000000\n"), std::string::npos) << sig;
}

TEST(Cli, DedupCommand) {
  TempDir dir;
  testutil::write_file(dir / "s", "a b\na b\nc\n");
  testutil::write_file(dir / "t", "x\nx\ny\n");
  ASSERT_EQ(run("dedup --src " + (dir / "s").string() + " --tgt " + (dir / "t").string() +
                " --out-src " + (dir / "os").string() + " --out-tgt " + (dir / "ot").string() +
                " --stats " + (dir / "st").string()),
            0);
  EXPECT_EQ(read_file(dir / "os"), "a b\nc\n");
  EXPECT_NE(read_file(dir / "st").find("dedup.ratio=0.333333\n"), std::string::npos);
}

}  // namespace
}  // namespace multibpe
