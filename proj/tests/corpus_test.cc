#include "multibpe/corpus.hpp"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "multibpe/error.hpp"
#include "multibpe/prng.hpp"
#include "test_util.hpp"

namespace multibpe {
namespace {

using testutil::TempDir;
using testutil::write_file;

ParallelCorpus numbered(std::size_t n) {
  ParallelCorpus c;
  c.source_lang = "en";
  c.target_lang = "eo";
  for (std::size_t i = 0; i < n; ++i)
    c.pairs.push_back({{"s" + std::to_string(i)}, {"t" + std::to_string(i)}, i});
  return c;
}

TEST(Prng, SplitMixMatchesReference) {
  std::uint64_t state = 0;
  EXPECT_EQ(splitmix64(state), 0xE220A8397B1DCDAFULL);
}

// Values computed with an independent Python transcription of
// splitmix64-seeded xoshiro256**.
TEST(Prng, XoshiroKnownAnswers) {
  Xoshiro256 rng(42);
  EXPECT_EQ(rng(), 0x15780B2E0C2EC716ULL);
  EXPECT_EQ(rng(), 0x6104D9866D113A7EULL);
  EXPECT_EQ(rng(), 0xAE17533239E499A1ULL);
}

TEST(Prng, FisherYatesKnownPermutation) {
  std::vector<int> items{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  Xoshiro256 rng(7);
  fisher_yates(std::span<int>(items), rng);
  EXPECT_EQ(items, (std::vector<int>{8, 3, 9, 0, 7, 2, 1, 6, 5, 4}));
}

TEST(LoadParallel, PairsLinesInOrder) {
  TempDir dir;
  write_file(dir / "a.en", "Hello there\nsecond line\n");
  write_file(dir / "a.eo", "Saluton\ndua linio\n");
  const auto c = load_parallel(dir / "a.en", dir / "a.eo");
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c.pairs[0].source, (Tokens{"Hello", "there"}));
  EXPECT_EQ(c.pairs[1].target, (Tokens{"dua", "linio"}));
  EXPECT_EQ(c.pairs[1].origin_index, 1u);
  EXPECT_EQ(c.source_lang, "en");
  EXPECT_EQ(c.target_lang, "eo");
}

TEST(LoadParallel, MismatchNamesBothCounts) {
  TempDir dir;
  write_file(dir / "a.en", "1\n2\n3\n");
  write_file(dir / "a.eo", "1\n2\n");
  try {
    load_parallel(dir / "a.en", dir / "a.eo");
    FAIL() << "expected AlignmentError";
  } catch (const AlignmentError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("3 lines"), std::string::npos) << what;
    EXPECT_NE(what.find("has 2"), std::string::npos) << what;
  }
}

TEST(LoadParallel, EmptyFilesGiveEmptyCorpus) {
  TempDir dir;
  write_file(dir / "a.en", "");
  write_file(dir / "a.eo", "");
  EXPECT_TRUE(load_parallel(dir / "a.en", dir / "a.eo").empty());
}

TEST(LoadParallel, InvalidUtf8ReportsLine) {
  TempDir dir;
  write_file(dir / "a.en", "ok\nbad \xC3\x28 byte\n");
  write_file(dir / "a.eo", "ok\nok\n");
  try {
    load_parallel(dir / "a.en", dir / "a.eo");
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(LoadParallel, MissingFileIsIoError) {
  TempDir dir;
  EXPECT_THROW(load_parallel(dir / "nope.en", dir / "nope.eo"), IoError);
}

TEST(WriteParallel, EmptySentenceSurvivesRoundTrip) {
  TempDir dir;
  ParallelCorpus c = numbered(3);
  c.pairs[1].source.clear();
  write_parallel(c, dir / "o.en", dir / "o.eo");
  EXPECT_EQ(testutil::read_file(dir / "o.en"), "s0\n\ns2\n");
  EXPECT_EQ(load_parallel(dir / "o.en", dir / "o.eo"), c);
}

TEST(WriteParallel, ZeroPairsGiveEmptyFiles) {
  TempDir dir;
  write_parallel(numbered(0), dir / "o.en", dir / "o.eo");
  EXPECT_EQ(testutil::read_file(dir / "o.en"), "");
  EXPECT_EQ(testutil::read_file(dir / "o.eo"), "");
}

TEST(WriteParallel, RandomCorporaRoundTrip) {
  TempDir dir;
  std::mt19937_64 rng(11);
  const std::string printable = "abcXYZ019.,!?'-()\"";
  for (int trial = 0; trial < 50; ++trial) {
    ParallelCorpus c;
    c.source_lang = "en";
    c.target_lang = "eo";
    const std::size_t n = rng() % 20;
    for (std::size_t i = 0; i < n; ++i) {
      SentencePair p;
      p.origin_index = i;
      for (auto* side : {&p.source, &p.target}) {
        for (std::size_t k = rng() % 6; k > 0; --k) {
          std::string tok;
          for (std::size_t l = 1 + rng() % 5; l > 0; --l) tok += printable[rng() % printable.size()];
          tok += "ĉ";
          side->push_back(tok);
        }
      }
      c.pairs.push_back(p);
    }
    write_parallel(c, dir / "r.en", dir / "r.eo");
    ASSERT_EQ(load_parallel(dir / "r.en", dir / "r.eo"), c) << "trial " << trial;
  }
}

TEST(Shuffle, SameSeedSameOrder) {
  const auto c = numbered(100);
  EXPECT_EQ(shuffle(c, 5), shuffle(c, 5));
  EXPECT_NE(shuffle(c, 5), shuffle(c, 6));
}

TEST(Shuffle, EmptyStaysEmpty) { EXPECT_TRUE(shuffle(numbered(0), 1).empty()); }

TEST(Shuffle, IsPermutation) {
  const auto c = numbered(257);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = shuffle(c, seed);
    std::sort(s.pairs.begin(), s.pairs.end(),
              [](const auto& a, const auto& b) { return a.origin_index < b.origin_index; });
    ASSERT_EQ(s, c);
  }
}

TEST(Split, TakesDevFromTheEnd) {
  const auto [train, dev] = split(numbered(10), 3);
  ASSERT_EQ(train.size(), 7u);
  ASSERT_EQ(dev.size(), 3u);
  EXPECT_EQ(dev.pairs.front().origin_index, 7u);
  EXPECT_EQ(train.pairs.back().origin_index, 6u);
}

TEST(Split, PaperSizes) {
  const auto [train, dev] = split(numbered(303768), 1000);
  EXPECT_EQ(train.size(), 302768u);
  EXPECT_EQ(dev.size(), 1000u);
}

TEST(Split, RejectsDevAsLargeAsCorpus) {
  EXPECT_THROW(split(numbered(5), 5), SizeError);
  EXPECT_THROW(split(numbered(5), 0), SizeError);
}

TEST(Concatenate, OffsetsOriginIndices) {
  const auto c = concatenate({numbered(3), numbered(2)});
  ASSERT_EQ(c.size(), 5u);
  EXPECT_EQ(c.pairs[3].origin_index, 3u);
  EXPECT_EQ(c.pairs[4].origin_index, 4u);
  EXPECT_EQ(c.pairs[4].source, Tokens{"s1"});
}

}  // namespace
}  // namespace multibpe
