#include "cbr/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cbr/errors.hpp"

namespace cbr {

TermSet::TermSet(std::vector<TermId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

TermSet TermSet::of_document(const DocumentVector& doc) {
  TermSet s;
  s.ids_.reserve(doc.counts.size());
  for (const auto& entry : doc.counts) s.ids_.push_back(entry.first);
  return s;
}

std::size_t TermSet::intersection_size(const TermSet& other) const {
  std::size_t n = 0;
  auto a = ids_.begin();
  auto b = other.ids_.begin();
  while (a != ids_.end() && b != other.ids_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++n;
      ++a;
      ++b;
    }
  }
  return n;
}

namespace {

double overlap_score(std::size_t common, std::size_t x_size, std::size_t y_size) {
  if (x_size == 0 || y_size == 0) return 0.0;
  // One rounding in the denominator, so equal sets score exactly 1.
  const double s = static_cast<double>(common) / std::sqrt(static_cast<double>(x_size) * static_cast<double>(y_size));
  return std::min(s, 1.0);
}

void check_params(const RankParams& params) {
  if (!(params.threshold >= 0.0 && params.threshold < 1.0)) {
    throw ConfigError("threshold must lie in [0, 1)");
  }
}

// Keeps scores strictly above threshold, orders by descending score then
// ascending case id, and applies top-k after counting.
RankedResults finish(const Index& index, const std::vector<std::uint32_t>& touched,
                     const std::vector<double>& scores, const RankParams& params,
                     std::vector<std::string> dropped) {
  RankedResults out;
  out.scorer = params.scorer;
  out.threshold = params.threshold;
  out.dropped_terms = std::move(dropped);

  for (auto doc : touched) {
    if (scores[doc] > params.threshold) {
      out.matches.push_back({index.document(doc).id, doc, scores[doc], 0});
    }
  }
  std::sort(out.matches.begin(), out.matches.end(), [](const Match& a, const Match& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.case_id < b.case_id;
  });
  out.total_matches = out.matches.size();
  if (params.top_k && out.matches.size() > *params.top_k) out.matches.resize(*params.top_k);
  for (std::size_t i = 0; i < out.matches.size(); ++i) out.matches[i].rank = i + 1;
  return out;
}

}  // namespace

double set_similarity(const TermSet& x, const TermSet& y) {
  return overlap_score(x.intersection_size(y), x.size(), y.size());
}

QueryTermSet query_term_set(const Index& index, const TokenList& tokens) {
  std::vector<TermId> ids;
  std::set<std::string> dropped;
  for (const auto& tok : tokens) {
    if (const auto id = index.vocabulary().find(tok)) {
      ids.push_back(*id);
    } else {
      dropped.insert(tok);
    }
  }
  return {TermSet(std::move(ids)), {dropped.begin(), dropped.end()}};
}

const char* to_string(Scorer scorer) noexcept {
  switch (scorer) {
    case Scorer::kCosine:
      return "cosine";
    case Scorer::kSet:
      return "set";
  }
  return "?";
}

Scorer parse_scorer(std::string_view name) {
  if (name == "cosine") return Scorer::kCosine;
  if (name == "set") return Scorer::kSet;
  throw ConfigError("unknown scorer '" + std::string(name) + "' (expected cosine or set)");
}

RankedResults rank(const Index& index, const QueryVector& query, const RankParams& params) {
  check_params(params);
  if (query.empty()) {
    RankedResults out;
    out.scorer = Scorer::kCosine;
    out.threshold = params.threshold;
    out.dropped_terms = query.dropped_terms;
    out.empty_query = true;
    return out;
  }

  // Per-document dot products accumulate in ascending term id order.
  std::vector<double> dot(index.corpus_size(), 0.0);
  std::vector<char> hit(index.corpus_size(), 0);
  std::vector<std::uint32_t> touched;
  double q_squared = 0.0;
  for (SparseWeights<double>::InnerIterator it(query.weights); it; ++it) {
    const double qw = it.value();
    q_squared += qw * qw;
    for (const auto& p : index.postings(static_cast<TermId>(it.index()))) {
      if (p.weight == 0.0) continue;
      if (!hit[p.doc]) {
        hit[p.doc] = 1;
        touched.push_back(p.doc);
      }
      dot[p.doc] += qw * p.weight;
    }
  }
  const double q_norm = std::sqrt(q_squared);
  for (auto doc : touched) {
    const double d_norm = index.document(doc).l2_norm;
    dot[doc] = std::min(dot[doc] / (q_norm * d_norm), 1.0);
  }

  RankParams p = params;
  p.scorer = Scorer::kCosine;
  return finish(index, touched, dot, p, query.dropped_terms);
}

RankedResults rank(const Index& index, const QueryTermSet& query, const RankParams& params) {
  check_params(params);
  if (query.terms.empty()) {
    RankedResults out;
    out.scorer = Scorer::kSet;
    out.threshold = params.threshold;
    out.dropped_terms = query.dropped_terms;
    out.empty_query = true;
    return out;
  }

  std::vector<std::uint32_t> common(index.corpus_size(), 0);
  std::vector<std::uint32_t> touched;
  for (TermId t : query.terms.ids()) {
    for (const auto& p : index.postings(t)) {
      if (common[p.doc]++ == 0) touched.push_back(p.doc);
    }
  }
  std::vector<double> scores(index.corpus_size(), 0.0);
  for (auto doc : touched) {
    scores[doc] = overlap_score(common[doc], query.terms.size(), index.document(doc).distinct_terms());
  }

  RankParams p = params;
  p.scorer = Scorer::kSet;
  return finish(index, touched, scores, p, query.dropped_terms);
}

RankedResults rank_tokens(const Index& index, const TokenList& tokens, const RankParams& params) {
  switch (params.scorer) {
    case Scorer::kSet:
      return rank(index, query_term_set(index, tokens), params);
    case Scorer::kCosine:
      break;
  }
  return rank(index, vectorize_query(index, tokens), params);
}

}  // namespace cbr
