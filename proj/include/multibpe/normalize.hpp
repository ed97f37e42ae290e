#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "multibpe/text_io.hpp"

namespace multibpe {

// Rule-based tokenizer. A line is split on Unicode whitespace; from each
// chunk, leading and trailing characters that are not letters or digits
// (general categories L*, N*) are detached one per token. Inside the
// remaining word, apostrophes (' U+2019) and hyphens (- U+2010) stay
// attached; any other non-alphanumeric character becomes its own token.
Tokens tokenize(std::string_view line);

// Joins with single spaces, except: no space before . , ! ? ; : and closing
// brackets/quotes, no space after opening brackets/quotes. Straight double
// quotes alternate between opening and closing.
std::string detokenize(const Tokens& tokens);

// Surface-casing counts per lowercased form, collected from non-initial
// sentence positions only.
class TruecaseModel {
 public:
  using Casings = std::map<std::string, std::size_t>;

  void add(const std::string& surface, std::size_t count = 1);

  // Most frequent casing of `word`'s lowercase form; ties go to the
  // lexicographically smallest surface form. Empty if unknown.
  std::string best_casing(std::string_view word) const;

  const std::map<std::string, Casings>& counts() const { return counts_; }
  bool empty() const { return counts_.empty(); }

  friend bool operator==(const TruecaseModel&, const TruecaseModel&) = default;

 private:
  std::map<std::string, Casings> counts_;
};

TruecaseModel train_truecaser(const std::vector<Tokens>& sentences);

// Recases token 0 only; unknown words pass through.
Tokens truecase(const Tokens& tokens, const TruecaseModel& model);

// "lower<TAB>surface<TAB>count" per line, sorted by key then surface.
void save_truecase_model(const TruecaseModel& model,
                         const std::filesystem::path& path);
TruecaseModel load_truecase_model(const std::filesystem::path& path);

}  // namespace multibpe
