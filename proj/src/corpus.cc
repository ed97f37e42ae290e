#include "multibpe/corpus.hpp"

#include "multibpe/error.hpp"
#include "multibpe/prng.hpp"

namespace multibpe {

namespace {

std::string extension_tag(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  if (!ext.empty() && ext.front() == '.') ext.erase(0, 1);
  return ext;
}

}  // namespace

std::vector<Tokens> ParallelCorpus::source_side() const {
  std::vector<Tokens> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) out.push_back(pair.source);
  return out;
}

std::vector<Tokens> ParallelCorpus::target_side() const {
  std::vector<Tokens> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) out.push_back(pair.target);
  return out;
}

ParallelCorpus load_parallel(const std::filesystem::path& src_path,
                             const std::filesystem::path& tgt_path,
                             std::string source_lang,
                             std::string target_lang) {
  const auto src_lines = read_lines(src_path);
  const auto tgt_lines = read_lines(tgt_path);
  if (src_lines.size() != tgt_lines.size()) {
    throw AlignmentError("line count mismatch: " + src_path.string() + " has " +
                         std::to_string(src_lines.size()) + " lines, " +
                         tgt_path.string() + " has " +
                         std::to_string(tgt_lines.size()));
  }
  ParallelCorpus corpus;
  corpus.source_lang =
      source_lang.empty() ? extension_tag(src_path) : std::move(source_lang);
  corpus.target_lang =
      target_lang.empty() ? extension_tag(tgt_path) : std::move(target_lang);
  corpus.pairs.reserve(src_lines.size());
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    corpus.pairs.push_back(
        {split_blanks(src_lines[i]), split_blanks(tgt_lines[i]), i});
  }
  return corpus;
}

void write_parallel(const ParallelCorpus& corpus,
                    const std::filesystem::path& src_path,
                    const std::filesystem::path& tgt_path) {
  std::vector<std::string> src_lines;
  std::vector<std::string> tgt_lines;
  src_lines.reserve(corpus.size());
  tgt_lines.reserve(corpus.size());
  for (const auto& pair : corpus.pairs) {
    src_lines.push_back(join(pair.source));
    tgt_lines.push_back(join(pair.target));
  }
  write_lines(src_path, src_lines);
  write_lines(tgt_path, tgt_lines);
}

ParallelCorpus concatenate(const std::vector<ParallelCorpus>& parts) {
  ParallelCorpus out;
  if (!parts.empty()) {
    out.source_lang = parts.front().source_lang;
    out.target_lang = parts.front().target_lang;
  }
  std::size_t offset = 0;
  for (const auto& part : parts) {
    std::size_t max_origin = 0;
    for (const auto& pair : part.pairs) {
      out.pairs.push_back(pair);
      out.pairs.back().origin_index += offset;
      max_origin = std::max(max_origin, pair.origin_index + 1);
    }
    offset += std::max(max_origin, part.size());
  }
  return out;
}

ParallelCorpus shuffle(const ParallelCorpus& corpus, std::uint64_t seed) {
  ParallelCorpus out = corpus;
  Xoshiro256 rng(seed);
  fisher_yates(std::span<SentencePair>(out.pairs), rng);
  return out;
}

TrainDevSplit split(const ParallelCorpus& corpus, std::size_t dev_size) {
  if (dev_size == 0) throw SizeError("dev size must be positive");
  if (dev_size >= corpus.size()) {
    throw SizeError("dev size " + std::to_string(dev_size) +
                    " must be smaller than corpus size " +
                    std::to_string(corpus.size()));
  }
  TrainDevSplit result;
  result.train.source_lang = result.dev.source_lang = corpus.source_lang;
  result.train.target_lang = result.dev.target_lang = corpus.target_lang;
  const auto cut = corpus.pairs.begin() +
                   static_cast<std::ptrdiff_t>(corpus.size() - dev_size);
  result.train.pairs.assign(corpus.pairs.begin(), cut);
  result.dev.pairs.assign(cut, corpus.pairs.end());
  return result;
}

}  // namespace multibpe
