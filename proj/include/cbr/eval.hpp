#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cbr/similarity.hpp"
#include "cbr/vector_index.hpp"

namespace cbr {

/// Shuffles the whitespace-separated words of `title` (Fisher-Yates over a
/// mt19937_64 stream derived from seed and row) and rejoins them with single
/// spaces. Fully specified, so it gives the same output on every platform.
std::string permute_words(std::string_view title, std::uint64_t seed, std::size_t row);

struct EvalRow {
  std::string original_query;
  std::string permuted_query;
  std::size_t found_stage1 = 0;
  std::size_t found_stage2 = 0;
  double top_score_stage1 = 0.0;
  double top_score_stage2 = 0.0;
  /// The query equals an indexed title verbatim.
  bool in_corpus = false;
};

/// Word-order permutation experiment: each title is queried verbatim and then
/// with its words shuffled.
struct EvalReport {
  std::vector<EvalRow> rows;
  double mean_top_score = 0.0;  // over stage-2 rows
  std::uint64_t seed = 0;
  Scorer scorer = Scorer::kCosine;

  /// Found counts match across stages for every row, and every in-corpus
  /// title scores 1 within 1e-9 in stage 2.
  bool holds() const;
  std::vector<std::string> violations() const;
};

inline constexpr double kSelfMatchTolerance = 1e-9;

EvalReport run_permutation_eval(const Index& index, const std::vector<std::string>& titles,
                                std::uint64_t seed, Scorer scorer = Scorer::kCosine);

void print_eval_report(std::ostream& out, const EvalReport& report);

}  // namespace cbr
