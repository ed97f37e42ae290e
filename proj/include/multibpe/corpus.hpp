#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "multibpe/text_io.hpp"

namespace multibpe {

struct SentencePair {
  Tokens source;
  Tokens target;
  // Line number (0-based) in the files the pair was loaded from.
  std::size_t origin_index = 0;

  friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

struct ParallelCorpus {
  std::vector<SentencePair> pairs;
  std::string source_lang;
  std::string target_lang;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }

  std::vector<Tokens> source_side() const;
  std::vector<Tokens> target_side() const;

  friend bool operator==(const ParallelCorpus&,
                         const ParallelCorpus&) = default;
};

// Pair i is (line i of src, line i of tgt), each split on blanks. Language
// tags default to the file extensions ("train.en" -> "en").
ParallelCorpus load_parallel(const std::filesystem::path& src_path,
                             const std::filesystem::path& tgt_path,
                             std::string source_lang = {},
                             std::string target_lang = {});

void write_parallel(const ParallelCorpus& corpus,
                    const std::filesystem::path& src_path,
                    const std::filesystem::path& tgt_path);

// Appends corpora in order; origin indices of later parts are offset by the
// total size of earlier parts so they stay unique.
ParallelCorpus concatenate(const std::vector<ParallelCorpus>& parts);

// Seeded Fisher-Yates over xoshiro256** (see prng.hpp).
ParallelCorpus shuffle(const ParallelCorpus& corpus, std::uint64_t seed);

struct TrainDevSplit {
  ParallelCorpus train;
  ParallelCorpus dev;
};

// dev = the last dev_size pairs. Throws SizeError unless 0 < dev_size < size.
TrainDevSplit split(const ParallelCorpus& corpus, std::size_t dev_size);

}  // namespace multibpe
