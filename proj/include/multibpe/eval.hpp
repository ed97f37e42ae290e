#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "multibpe/bpe.hpp"
#include "multibpe/text_io.hpp"

namespace multibpe {

inline constexpr int kBleuOrder = 4;

// Sufficient statistics of one or more hypothesis/reference pairs.
struct NgramStats {
  std::vector<std::int64_t> matches;  // clipped, per order 1..max_n
  std::vector<std::int64_t> totals;   // hypothesis n-grams per order
  std::vector<std::int64_t> ref_totals;
  std::int64_t hyp_length = 0;
  std::int64_t ref_length = 0;

  explicit NgramStats(int max_n = kBleuOrder)
      : matches(max_n, 0), totals(max_n, 0), ref_totals(max_n, 0) {}

  NgramStats& operator+=(const NgramStats& other);
};

NgramStats sentence_stats(const Tokens& hyp, const Tokens& ref,
                          int max_n = kBleuOrder);

struct BleuScore {
  double bleu = 0.0;  // 0..100, full precision
  std::vector<double> precisions;
  double brevity_penalty = 0.0;
  std::int64_t hyp_length = 0;
  std::int64_t ref_length = 0;

  // key=value lines; bleu rounded half-up to two decimals.
  std::string to_text() const;
};

// BLEU from accumulated statistics. Unsmoothed: any zero precision gives 0.
// An order with no n-grams on either side counts as precision 1, so a
// corpus scored against itself is always 100. brevity_penalty is
// exp(1 - r/c) for c < r, 1 otherwise, and 0 when c = 0 < r.
BleuScore bleu_from_stats(const NgramStats& stats);

// Throws AlignmentError if sizes differ, ConfigError if empty.
BleuScore corpus_bleu(const std::vector<Tokens>& hyps,
                      const std::vector<Tokens>& refs, int max_n = kBleuOrder);

// Half-up rounding to two decimals, formatted "%.2f".
std::string format_score(double bleu);

// Splits a subword line on blanks and joins continuation runs.
RevertResult postprocess(std::string_view line);

struct SignificanceResult {
  double bleu_a = 0.0;
  double bleu_b = 0.0;
  double delta_bleu = 0.0;  // bleu_a - bleu_b on the full set
  // True when the second system scored strictly higher on the full set; the
  // p-value then counts resamples where the first system catches up.
  bool b_wins = false;
  double p_value = 1.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<double, bool>> significant_at;

  bool significant(double alpha) const;
  std::string to_text() const;
};

inline const std::vector<double> kSignificanceLevels = {0.05, 0.01};

// Paired bootstrap resampling. Resample k draws corpus-size indices with
// replacement from xoshiro256** seeded with derive_seed(seed, k), so results
// do not depend on `threads`. p = #(loser BLEU >= winner BLEU) / n_samples;
// significant at alpha iff p < alpha.
SignificanceResult paired_bootstrap(const std::vector<Tokens>& hyps_a,
                                    const std::vector<Tokens>& hyps_b,
                                    const std::vector<Tokens>& refs,
                                    std::size_t n_samples = 1000,
                                    std::uint64_t seed = 0,
                                    unsigned threads = 1);

}  // namespace multibpe
