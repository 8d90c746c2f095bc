#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "cbr/errors.hpp"
#include "cbr/similarity.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace cbr;

namespace {

SparseWeights<double> sparse(Eigen::Index dim, std::initializer_list<std::pair<Eigen::Index, double>> entries) {
  SparseWeights<double> v(dim);
  for (const auto& [i, w] : entries) v.coeffRef(i) = w;
  return v;
}

std::vector<Case> three_docs() {
  return {{"d1", "a b", {}, {}}, {"d2", "a c", {}, {}}, {"d3", "b c", {}, {}}};
}

SparseWeights<double> random_sparse(std::mt19937_64& rng, Eigen::Index dim) {
  SparseWeights<double> v(dim);
  std::uniform_real_distribution<double> w(0.0, 3.0);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) v.coeffRef(i) = w(rng);
  }
  return v;
}

}  // namespace

TEST(CosineSimilarity, Identity) {
  const auto x = sparse(5, {{0, 0.3}, {3, 1.7}});
  EXPECT_NEAR(cosine_similarity(x, x), 1.0, 1e-15);
}

TEST(CosineSimilarity, DisjointSupports) {
  EXPECT_EQ(cosine_similarity(sparse(4, {{0, 1.0}}), sparse(4, {{1, 2.0}})), 0.0);
}

TEST(CosineSimilarity, HalfOverlap) {
  // {a:1,b:1} vs {a:1,c:1}: 1 / (sqrt2 * sqrt2)
  EXPECT_NEAR(cosine_similarity(sparse(3, {{0, 1}, {1, 1}}), sparse(3, {{0, 1}, {2, 1}})), 0.5, 1e-15);
}

TEST(CosineSimilarity, ZeroVector) {
  EXPECT_EQ(cosine_similarity(SparseWeights<double>(3), sparse(3, {{0, 1}})), 0.0);
}

TEST(CosineSimilarity, FloatScalar) {
  SparseWeights<float> x(2);
  x.coeffRef(0) = 1.0f;
  x.coeffRef(1) = 1.0f;
  SparseWeights<float> y(2);
  y.coeffRef(0) = 1.0f;
  EXPECT_NEAR(cosine_similarity(x, y), 0.70710677f, 1e-6f);
}

TEST(SetSimilarity, Examples) {
  EXPECT_EQ(set_similarity(TermSet({1, 2, 3}), TermSet({3, 2, 1})), 1.0);
  // {sistem, navigasi} vs {sistem, gedung}
  EXPECT_NEAR(set_similarity(TermSet({0, 1}), TermSet({0, 2})), 0.5, 1e-15);
  EXPECT_EQ(set_similarity(TermSet({0}), TermSet({1})), 0.0);
  EXPECT_EQ(set_similarity(TermSet(), TermSet({1})), 0.0);
}

TEST(TermSetType, DeduplicatesAndSorts) {
  const TermSet s({4, 1, 4, 2});
  EXPECT_EQ(s.ids(), (std::vector<TermId>{1, 2, 4}));
}

TEST(Rank, ExactTitleRanksFirstWithScoreOne) {
  const auto built = build_index(cbr::testing::synthetic_titles(40, 3));
  const auto& doc = built.index.document(17);
  const auto r = rank(built.index, vectorize_query(built.index, built.index.tokenize(doc.title)));
  ASSERT_FALSE(r.matches.empty());
  EXPECT_EQ(r.matches[0].case_id, doc.id);
  EXPECT_NEAR(r.matches[0].score, 1.0, 1e-12);
  EXPECT_EQ(r.matches[0].rank, 1u);
}

TEST(Rank, TieBrokenByAscendingId) {
  const auto built = build_index(three_docs());
  const auto r = rank(built.index, vectorize_query(built.index, {"a"}));
  ASSERT_EQ(r.matches.size(), 2u);
  EXPECT_EQ(r.matches[0].case_id, "d1");
  EXPECT_EQ(r.matches[1].case_id, "d2");
  EXPECT_EQ(r.matches[0].score, r.matches[1].score);
  EXPECT_NEAR(r.matches[0].score, 0.7071067811865476, 1e-15);
  EXPECT_EQ(r.total_matches, 2u);
}

TEST(Rank, OutOfVocabularyQuery) {
  const auto built = build_index(three_docs());
  const auto r = rank(built.index, vectorize_query(built.index, {"q"}));
  EXPECT_TRUE(r.matches.empty());
  EXPECT_TRUE(r.empty_query);
  EXPECT_EQ(r.dropped_terms, std::vector<std::string>{"q"});
}

TEST(Rank, ScoredQueryWithNoMatchesIsNotEmptyQuery) {
  const auto built = build_index(three_docs());
  RankParams p;
  p.threshold = 0.99;
  const auto r = rank(built.index, vectorize_query(built.index, {"a"}), p);
  EXPECT_TRUE(r.matches.empty());
  EXPECT_FALSE(r.empty_query);
}

TEST(Rank, TopKKeepsFullCount) {
  const auto built = build_index(cbr::testing::synthetic_titles(60, 11));
  RankParams p;
  p.top_k = 5;
  const auto tokens = built.index.tokenize("Sistem Informasi Aplikasi Monitoring");
  const auto full = rank_tokens(built.index, tokens);
  const auto cut = rank_tokens(built.index, tokens, p);
  ASSERT_GT(full.total_matches, 5u);
  EXPECT_EQ(cut.matches.size(), 5u);
  EXPECT_EQ(cut.total_matches, full.total_matches);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(cut.matches[i].case_id, full.matches[i].case_id);
}

TEST(Rank, ThresholdOutOfRangeRejected) {
  const auto built = build_index(three_docs());
  RankParams p;
  p.threshold = -0.1;
  EXPECT_THROW(rank(built.index, vectorize_query(built.index, {"a"}), p), ConfigError);
  p.threshold = 1.0;
  EXPECT_THROW(rank(built.index, vectorize_query(built.index, {"a"}), p), ConfigError);
}

TEST(Rank, SetScorer) {
  const auto built = build_index(three_docs());
  RankParams p;
  p.scorer = Scorer::kSet;
  const auto r = rank_tokens(built.index, {"a", "b", "zz"}, p);
  EXPECT_EQ(r.scorer, Scorer::kSet);
  ASSERT_EQ(r.matches.size(), 3u);
  EXPECT_EQ(r.matches[0].case_id, "d1");
  EXPECT_EQ(r.matches[0].score, 1.0);
  EXPECT_NEAR(r.matches[1].score, 0.5, 1e-15);
  EXPECT_EQ(r.dropped_terms, std::vector<std::string>{"zz"});
}

TEST(Rank, SetScorerKeepsZeroIdfTerms) {
  const auto built = build_index(std::vector<Case>{{"1", "a b", {}, {}}, {"2", "a", {}, {}}});
  RankParams p;
  p.scorer = Scorer::kSet;
  EXPECT_EQ(rank_tokens(built.index, {"a"}, p).total_matches, 2u);
  EXPECT_TRUE(rank_tokens(built.index, {"a"}).empty_query);
}

TEST(ParseScorer, Names) {
  EXPECT_EQ(parse_scorer("cosine"), Scorer::kCosine);
  EXPECT_EQ(parse_scorer("set"), Scorer::kSet);
  EXPECT_THROW(parse_scorer("bm25"), ConfigError);
}

class SimilarityProperties : public ::testing::Test {
 protected:
  std::mt19937_64 rng_{424242};
};

TEST_F(SimilarityProperties, RangeAndSymmetry) {
  for (int i = 0; i < 500; ++i) {
    const auto x = random_sparse(rng_, 12);
    const auto y = random_sparse(rng_, 12);
    const double c = cosine_similarity(x, y);
    ASSERT_GE(c, 0.0);
    ASSERT_LE(c, 1.0);
    ASSERT_NEAR(c, cosine_similarity(y, x), 1e-15);

    std::vector<TermId> a, b;
    for (TermId t = 0; t < 12; ++t) {
      if (rng_() % 2) a.push_back(t);
      if (rng_() % 3 == 0) b.push_back(t);
    }
    const double s = set_similarity(TermSet(a), TermSet(b));
    ASSERT_GE(s, 0.0);
    ASSERT_LE(s, 1.0);
    ASSERT_EQ(s, set_similarity(TermSet(b), TermSet(a)));
  }
}

TEST_F(SimilarityProperties, ScaleInvariance) {
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int i = 0; i < 500; ++i) {
    const auto x = random_sparse(rng_, 10);
    const auto y = random_sparse(rng_, 10);
    const SparseWeights<double> ax = scale(rng_) * x;
    const SparseWeights<double> by = scale(rng_) * y;
    ASSERT_NEAR(cosine_similarity(ax, by), cosine_similarity(x, y), 1e-12);
  }
}

TEST_F(SimilarityProperties, BinaryVectorsMatchSetOverlap) {
  for (int i = 0; i < 500; ++i) {
    std::vector<TermId> a, b;
    for (TermId t = 0; t < 30; ++t) {
      if (rng_() % 4 == 0) a.push_back(t);
      if (rng_() % 4 == 0) b.push_back(t);
    }
    const TermSet x(a), y(b);
    ASSERT_NEAR(set_similarity(x, y), cosine_similarity(x.incidence(30), y.incidence(30)), 1e-12);
  }
}

TEST_F(SimilarityProperties, RankAgreesWithDenseOracle) {
  for (int c = 0; c < 15; ++c) {
    const auto rc = cbr::testing::random_corpus(rng_);
    const auto built = build_index(rc.cases);
    const cbr::testing::DenseOracle oracle(rc.docs);
    for (const auto& q : rc.queries) {
      const auto got = rank(built.index, vectorize_query(built.index, q));
      const auto want = oracle.rank(q);
      ASSERT_EQ(got.matches.size(), want.size());
      for (std::size_t i = 0; i < want.size(); ++i) {
        ASSERT_EQ(got.matches[i].case_id, want[i].id);
        ASSERT_TRUE(cbr::testing::within_relative(got.matches[i].score, want[i].score, 1e-12));
      }
    }
  }
}

TEST_F(SimilarityProperties, PermutationInvariantBitExact) {
  for (int c = 0; c < 10; ++c) {
    const auto rc = cbr::testing::random_corpus(rng_);
    const auto built = build_index(rc.cases);
    for (auto q : rc.queries) {
      for (Scorer scorer : {Scorer::kCosine, Scorer::kSet}) {
        RankParams p;
        p.scorer = scorer;
        const auto base = rank_tokens(built.index, q, p);
        std::shuffle(q.begin(), q.end(), rng_);
        const auto shuffled = rank_tokens(built.index, q, p);
        ASSERT_EQ(base.total_matches, shuffled.total_matches);
        ASSERT_EQ(base.dropped_terms, shuffled.dropped_terms);
        for (std::size_t i = 0; i < base.matches.size(); ++i) {
          ASSERT_EQ(base.matches[i].case_id, shuffled.matches[i].case_id);
          ASSERT_EQ(base.matches[i].score, shuffled.matches[i].score);
        }
      }
    }
  }
}

TEST_F(SimilarityProperties, RaisingThresholdNeverAddsResults) {
  const auto rc = cbr::testing::random_corpus(rng_);
  const auto built = build_index(rc.cases);
  for (const auto& q : rc.queries) {
    std::vector<std::string> previous;
    bool first = true;
    for (double t : {0.0, 0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 0.95}) {
      RankParams p;
      p.threshold = t;
      const auto r = rank_tokens(built.index, q, p);
      std::vector<std::string> ids;
      for (const auto& m : r.matches) {
        ASSERT_GT(m.score, t);
        ids.push_back(m.case_id);
      }
      std::sort(ids.begin(), ids.end());
      if (!first) {
        ASSERT_TRUE(std::includes(previous.begin(), previous.end(), ids.begin(), ids.end()));
      }
      previous = ids;
      first = false;
    }
  }
}

TEST_F(SimilarityProperties, OrderingInvariants) {
  const auto rc = cbr::testing::random_corpus(rng_);
  const auto built = build_index(rc.cases);
  for (const auto& q : rc.queries) {
    const auto r = rank_tokens(built.index, q);
    for (std::size_t i = 0; i < r.matches.size(); ++i) {
      ASSERT_EQ(r.matches[i].rank, i + 1);
      if (i == 0) continue;
      const auto& prev = r.matches[i - 1];
      const auto& cur = r.matches[i];
      ASSERT_GE(prev.score, cur.score);
      if (prev.score == cur.score) {
        ASSERT_LT(prev.case_id, cur.case_id);
      }
    }
  }
}
