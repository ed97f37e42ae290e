#include "multibpe/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>

#include "multibpe/error.hpp"
#include "multibpe/prng.hpp"

namespace multibpe {

namespace {

using Ngram = std::vector<std::string_view>;

std::map<Ngram, std::int64_t> count_ngrams(const Tokens& tokens, int n) {
  std::map<Ngram, std::int64_t> counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[Ngram(tokens.begin() + i, tokens.begin() + i + n)];
  return counts;
}

std::string fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

void check_aligned(std::size_t hyps, std::size_t refs, const char* what) {
  if (hyps != refs) {
    throw AlignmentError(std::string(what) + ": " + std::to_string(hyps) +
                         " hypotheses but " + std::to_string(refs) +
                         " references");
  }
}

}  // namespace

NgramStats& NgramStats::operator+=(const NgramStats& other) {
  for (std::size_t n = 0; n < matches.size(); ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
    ref_totals[n] += other.ref_totals[n];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

NgramStats sentence_stats(const Tokens& hyp, const Tokens& ref, int max_n) {
  NgramStats stats(max_n);
  stats.hyp_length = static_cast<std::int64_t>(hyp.size());
  stats.ref_length = static_cast<std::int64_t>(ref.size());
  for (int n = 1; n <= max_n; ++n) {
    const auto hyp_counts = count_ngrams(hyp, n);
    const auto ref_counts = count_ngrams(ref, n);
    std::int64_t matched = 0;
    for (const auto& [gram, count] : hyp_counts) {
      const auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched += std::min(count, it->second);
    }
    stats.matches[n - 1] = matched;
    stats.totals[n - 1] =
        std::max<std::int64_t>(0, static_cast<std::int64_t>(hyp.size()) - n + 1);
    stats.ref_totals[n - 1] =
        std::max<std::int64_t>(0, static_cast<std::int64_t>(ref.size()) - n + 1);
  }
  return stats;
}

BleuScore bleu_from_stats(const NgramStats& stats) {
  BleuScore score;
  score.hyp_length = stats.hyp_length;
  score.ref_length = stats.ref_length;
  const std::size_t orders = stats.matches.size();
  score.precisions.resize(orders, 0.0);
  double log_sum = 0.0;
  bool zero = orders == 0;
  for (std::size_t n = 0; n < orders; ++n) {
    if (stats.totals[n] == 0 && stats.ref_totals[n] == 0) {
      score.precisions[n] = 1.0;
      continue;
    }
    if (stats.totals[n] == 0 || stats.matches[n] == 0) {
      zero = true;
      continue;
    }
    score.precisions[n] =
        static_cast<double>(stats.matches[n]) / static_cast<double>(stats.totals[n]);
    log_sum += std::log(score.precisions[n]);
  }
  if (stats.hyp_length == 0 && stats.ref_length > 0) {
    score.brevity_penalty = 0.0;
  } else if (stats.hyp_length >= stats.ref_length) {
    score.brevity_penalty = 1.0;
  } else {
    score.brevity_penalty =
        std::exp(1.0 - static_cast<double>(stats.ref_length) /
                           static_cast<double>(stats.hyp_length));
  }
  score.bleu =
      zero ? 0.0 : 100.0 * score.brevity_penalty * std::exp(log_sum / orders);
  return score;
}

BleuScore corpus_bleu(const std::vector<Tokens>& hyps,
                      const std::vector<Tokens>& refs, int max_n) {
  check_aligned(hyps.size(), refs.size(), "corpus_bleu");
  if (hyps.empty()) throw ConfigError("corpus_bleu: empty corpus");
  if (max_n <= 0) throw ConfigError("corpus_bleu: max n-gram order must be positive");
  NgramStats total(max_n);
  for (std::size_t i = 0; i < hyps.size(); ++i)
    total += sentence_stats(hyps[i], refs[i], max_n);
  return bleu_from_stats(total);
}

std::string format_score(double bleu) {
  // The epsilon absorbs representation error such as 12.345 -> 1234.4999...
  return fixed(std::floor(bleu * 100.0 + 0.5 + 1e-9) / 100.0, 2);
}

std::string BleuScore::to_text() const {
  std::string out = "bleu=" + format_score(bleu) + '\n';
  for (std::size_t n = 0; n < precisions.size(); ++n)
    out += "precision_" + std::to_string(n + 1) + '=' + fixed(precisions[n], 6) + '\n';
  out += "brevity_penalty=" + fixed(brevity_penalty, 6) + '\n';
  out += "hyp_length=" + std::to_string(hyp_length) + '\n';
  out += "ref_length=" + std::to_string(ref_length) + '\n';
  return out;
}

RevertResult postprocess(std::string_view line) {
  return revert_bpe(split_blanks(line));
}

bool SignificanceResult::significant(double alpha) const {
  return p_value < alpha;
}

std::string SignificanceResult::to_text() const {
  std::string out;
  out += "bleu_a=" + format_score(bleu_a) + '\n';
  out += "bleu_b=" + format_score(bleu_b) + '\n';
  out += "delta_bleu=" + fixed(delta_bleu, 4) + '\n';
  out += std::string("winner=") + (b_wins ? "b" : "a") + '\n';
  out += "p_value=" + fixed(p_value, 6) + '\n';
  out += "n_samples=" + std::to_string(n_samples) + '\n';
  out += "seed=" + std::to_string(seed) + '\n';
  for (const auto& [alpha, yes] : significant_at) {
    out += "significant_at_" + fixed(alpha, 2) + '=' + (yes ? "true" : "false") + '\n';
  }
  return out;
}

SignificanceResult paired_bootstrap(const std::vector<Tokens>& hyps_a,
                                    const std::vector<Tokens>& hyps_b,
                                    const std::vector<Tokens>& refs,
                                    std::size_t n_samples, std::uint64_t seed,
                                    unsigned threads) {
  check_aligned(hyps_a.size(), refs.size(), "paired_bootstrap (system a)");
  check_aligned(hyps_b.size(), refs.size(), "paired_bootstrap (system b)");
  if (refs.size() < 2)
    throw ConfigError("paired_bootstrap needs at least 2 sentences");
  if (n_samples == 0) throw ConfigError("paired_bootstrap needs n_samples > 0");

  const std::size_t n = refs.size();
  std::vector<NgramStats> stats_a;
  std::vector<NgramStats> stats_b;
  stats_a.reserve(n);
  stats_b.reserve(n);
  NgramStats full_a;
  NgramStats full_b;
  for (std::size_t i = 0; i < n; ++i) {
    stats_a.push_back(sentence_stats(hyps_a[i], refs[i]));
    stats_b.push_back(sentence_stats(hyps_b[i], refs[i]));
    full_a += stats_a.back();
    full_b += stats_b.back();
  }

  SignificanceResult result;
  result.bleu_a = bleu_from_stats(full_a).bleu;
  result.bleu_b = bleu_from_stats(full_b).bleu;
  result.delta_bleu = result.bleu_a - result.bleu_b;
  result.b_wins = result.bleu_b > result.bleu_a;
  result.n_samples = n_samples;
  result.seed = seed;

  const auto& winner = result.b_wins ? stats_b : stats_a;
  const auto& loser = result.b_wins ? stats_a : stats_b;

  std::vector<char> loser_holds(n_samples, 0);
  const auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      Xoshiro256 rng(derive_seed(seed, k));
      NgramStats w;
      NgramStats l;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pick = rng.below(n);
        w += winner[pick];
        l += loser[pick];
      }
      loser_holds[k] = bleu_from_stats(l).bleu >= bleu_from_stats(w).bleu;
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(
      threads, static_cast<unsigned>(n_samples)));
  if (workers == 1) {
    run_range(0, n_samples);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n_samples + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(n_samples, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
  }

  const auto holds = std::count(loser_holds.begin(), loser_holds.end(), 1);
  result.p_value = static_cast<double>(holds) / static_cast<double>(n_samples);
  for (double alpha : kSignificanceLevels)
    result.significant_at.emplace_back(alpha, result.significant(alpha));
  return result;
}

}  // namespace multibpe
