#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cbr/vector_index.hpp"

namespace cbr {

/// Cosine of the angle between two nonnegative sparse weight vectors.
/// Zero when either vector is zero; clamped to [0, 1].
template <typename Scalar>
Scalar cosine_similarity(const SparseWeights<Scalar>& x, const SparseWeights<Scalar>& y) {
  const Scalar nx = x.norm();
  const Scalar ny = y.norm();
  if (nx == Scalar(0) || ny == Scalar(0)) return Scalar(0);
  const Scalar c = x.dot(y) / (nx * ny);
  return std::clamp(c, Scalar(0), Scalar(1));
}

/// Distinct term ids of a document or query, kept sorted.
class TermSet {
 public:
  TermSet() = default;
  explicit TermSet(std::vector<TermId> ids);

  static TermSet of_document(const DocumentVector& doc);

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  const std::vector<TermId>& ids() const noexcept { return ids_; }

  std::size_t intersection_size(const TermSet& other) const;

  /// 0/1 incidence vector of length `dimension`.
  template <typename Scalar = double>
  SparseWeights<Scalar> incidence(Eigen::Index dimension) const {
    SparseWeights<Scalar> v(dimension);
    v.reserve(static_cast<Eigen::Index>(ids_.size()));
    for (TermId t : ids_) v.insertBack(static_cast<Eigen::Index>(t)) = Scalar(1);
    return v;
  }

 private:
  std::vector<TermId> ids_;
};

/// |X ∩ Y| / (sqrt|X| * sqrt|Y|); zero when either set is empty.
double set_similarity(const TermSet& x, const TermSet& y);

struct QueryTermSet {
  TermSet terms;
  /// Out-of-vocabulary query tokens; sorted, unique.
  std::vector<std::string> dropped_terms;
};

QueryTermSet query_term_set(const Index& index, const TokenList& tokens);

enum class Scorer { kCosine, kSet };

const char* to_string(Scorer scorer) noexcept;
/// Accepts "cosine" or "set"; throws ConfigError otherwise.
Scorer parse_scorer(std::string_view name);

struct RankParams {
  Scorer scorer = Scorer::kCosine;
  /// Results must score strictly above this value.
  double threshold = 0.0;
  std::optional<std::size_t> top_k;
};

struct Match {
  std::string case_id;
  std::size_t doc = 0;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based
};

struct RankedResults {
  std::vector<Match> matches;
  /// Number of documents above threshold before top-k truncation.
  std::size_t total_matches = 0;
  Scorer scorer = Scorer::kCosine;
  double threshold = 0.0;
  std::vector<std::string> dropped_terms;
  /// True when nothing of the query survived vectorization; distinct from
  /// a scored query with zero matches.
  bool empty_query = false;
};

/// Weighted cosine ranking through the inverted postings of the query terms.
RankedResults rank(const Index& index, const QueryVector& query, const RankParams& params = {});

/// Set-overlap ranking through the inverted postings of the query terms.
RankedResults rank(const Index& index, const QueryTermSet& query, const RankParams& params = {});

/// Vectorizes `tokens` for params.scorer and ranks.
RankedResults rank_tokens(const Index& index, const TokenList& tokens, const RankParams& params = {});

}  // namespace cbr
