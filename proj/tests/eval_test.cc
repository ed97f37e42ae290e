#include "multibpe/eval.hpp"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "multibpe/error.hpp"
#include "oracles.hpp"

namespace multibpe {
namespace {

std::vector<Tokens> lines(std::initializer_list<const char*> text) {
  std::vector<Tokens> out;
  for (const char* t : text) out.push_back(split_blanks(t));
  return out;
}

std::vector<Tokens> random_sentences(std::mt19937_64& rng, std::size_t n, std::size_t vocab,
                                     std::size_t max_len) {
  std::vector<Tokens> out(n);
  for (auto& s : out)
    for (std::size_t k = rng() % (max_len + 1); k > 0; --k)
      s.push_back("w" + std::to_string(rng() % vocab));
  return out;
}

TEST(CorpusBleu, IdentityIsHundred) {
  const auto refs = lines({"the cat sat on the mat", "a b c d e"});
  const auto score = corpus_bleu(refs, refs);
  EXPECT_EQ(score.bleu, 100.0);
  EXPECT_EQ(score.brevity_penalty, 1.0);
  for (double p : score.precisions) EXPECT_EQ(p, 1.0);
  EXPECT_EQ(format_score(score.bleu), "100.00");
}

TEST(CorpusBleu, IdentityIsHundredForShortSentences) {
  const auto refs = lines({"a", "b c", ""});
  EXPECT_EQ(corpus_bleu(refs, refs).bleu, 100.0);
}

TEST(CorpusBleu, NoOverlapIsZero) {
  EXPECT_EQ(corpus_bleu(lines({"x y z w"}), lines({"a b c d"})).bleu, 0.0);
}

TEST(CorpusBleu, ClippedUnigramPrecision) {
  const auto score =
      corpus_bleu(lines({"the the the the the the"}), lines({"the cat sat on the mat"}));
  EXPECT_DOUBLE_EQ(score.precisions[0], 2.0 / 6.0);
  EXPECT_EQ(score.precisions[1], 0.0);
  EXPECT_EQ(score.bleu, 0.0);
}

TEST(CorpusBleu, BrevityPenalty) {
  const auto score = corpus_bleu(lines({"a b c d"}), lines({"a b c d e f"}));
  EXPECT_DOUBLE_EQ(score.brevity_penalty, std::exp(1.0 - 6.0 / 4.0));
  EXPECT_EQ(score.hyp_length, 4);
  EXPECT_EQ(score.ref_length, 6);
}

TEST(CorpusBleu, Errors) {
  EXPECT_THROW(corpus_bleu(lines({"a"}), lines({"a", "b"})), AlignmentError);
  EXPECT_THROW(corpus_bleu({}, {}), ConfigError);
}

TEST(CorpusBleu, MatchesBruteForceOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const auto refs = random_sentences(rng, n, 10, 9);
    auto hyps = random_sentences(rng, n, 10, 9);
    if (trial % 3 == 0) hyps = refs;  // near-identity cases exercise high orders
    if (trial % 3 == 0 && !hyps[0].empty()) hyps[0].pop_back();
    const double ours = corpus_bleu(hyps, refs).bleu / 100.0;
    ASSERT_NEAR(ours, oracle::bleu(hyps, refs), 1e-9) << "trial " << trial;
  }
}

TEST(CorpusBleu, JointPermutationInvariant) {
  std::mt19937_64 rng(2);
  auto refs = random_sentences(rng, 30, 6, 12);
  auto hyps = random_sentences(rng, 30, 6, 12);
  const double before = corpus_bleu(hyps, refs).bleu;
  std::vector<std::size_t> order(30);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Tokens> h2, r2;
  for (auto i : order) {
    h2.push_back(hyps[i]);
    r2.push_back(refs[i]);
  }
  EXPECT_EQ(corpus_bleu(h2, r2).bleu, before);
}

TEST(CorpusBleu, ShorterHypothesesLowerBrevityPenalty) {
  const auto refs = lines({"a b c d e f g h", "i j k l m n o p"});
  double previous = 2.0;
  for (std::size_t len = 8; len >= 1; --len) {
    std::vector<Tokens> hyps = refs;
    for (auto& h : hyps) h.resize(len);
    const double bp = corpus_bleu(hyps, refs).brevity_penalty;
    if (len < 8) EXPECT_LT(bp, previous);
    previous = bp;
  }
}

TEST(FormatScore, RoundsHalfUp) {
  EXPECT_EQ(format_score(12.345), "12.35");
  EXPECT_EQ(format_score(12.344999), "12.34");
  EXPECT_EQ(format_score(0.0), "0.00");
}

TEST(Postprocess, RevertsBpe) {
  EXPECT_EQ(postprocess("la ĉapel@@ isto").tokens, (Tokens{"la", "ĉapelisto"}));
  EXPECT_EQ(postprocess("no markers here").tokens, (Tokens{"no", "markers", "here"}));
  EXPECT_TRUE(postprocess("").tokens.empty());
}

TEST(PairedBootstrap, IdenticalSystems) {
  std::mt19937_64 rng(3);
  const auto refs = random_sentences(rng, 40, 8, 10);
  const auto hyps = random_sentences(rng, 40, 8, 10);
  const auto r = paired_bootstrap(hyps, hyps, refs, 200, 17);
  EXPECT_EQ(r.delta_bleu, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_FALSE(r.significant(0.01));
  EXPECT_FALSE(r.significant(0.05));
}

TEST(PairedBootstrap, PerfectVersusGarbage) {
  std::mt19937_64 rng(4);
  const auto refs = random_sentences(rng, 50, 20, 12);
  std::vector<Tokens> garbage(50, Tokens{"zzz", "qqq", "zzz", "qqq"});
  const auto r = paired_bootstrap(refs, garbage, refs, 1000, 5);
  EXPECT_EQ(r.p_value, 0.0);
  EXPECT_TRUE(r.significant(0.01));
  ASSERT_EQ(r.significant_at.size(), 2u);
  EXPECT_EQ(r.significant_at[1], (std::pair<double, bool>{0.01, true}));
}

TEST(PairedBootstrap, SeedDeterministicAcrossThreadCounts) {
  std::mt19937_64 rng(5);
  const auto refs = random_sentences(rng, 30, 5, 8);
  const auto a = random_sentences(rng, 30, 5, 8);
  const auto b = random_sentences(rng, 30, 5, 8);
  const auto one = paired_bootstrap(a, b, refs, 300, 99, 1);
  const auto four = paired_bootstrap(a, b, refs, 300, 99, 4);
  EXPECT_EQ(one.p_value, four.p_value);
  EXPECT_EQ(one.to_text(), four.to_text());
  EXPECT_EQ(one.to_text(), paired_bootstrap(a, b, refs, 300, 99, 1).to_text());
}

TEST(PairedBootstrap, SwapOnlyRelabels) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto refs = random_sentences(rng, 25, 4, 8);
    const auto a = random_sentences(rng, 25, 4, 8);
    const auto b = random_sentences(rng, 25, 4, 8);
    const auto ab = paired_bootstrap(a, b, refs, 200, trial);
    const auto ba = paired_bootstrap(b, a, refs, 200, trial);
    if (ab.bleu_a == ab.bleu_b) continue;
    EXPECT_EQ(ab.p_value, ba.p_value);
    EXPECT_EQ(ab.delta_bleu, -ba.delta_bleu);
    EXPECT_NE(ab.b_wins, ba.b_wins);
  }
}

TEST(PairedBootstrap, Errors) {
  const auto two = lines({"a", "b"});
  EXPECT_THROW(paired_bootstrap(two, lines({"a"}), two), AlignmentError);
  EXPECT_THROW(paired_bootstrap(lines({"a"}), lines({"a"}), lines({"a"})), ConfigError);
  EXPECT_THROW(paired_bootstrap(two, two, two, 0), ConfigError);
}

}  // namespace
}  // namespace multibpe
