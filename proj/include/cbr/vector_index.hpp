#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "cbr/text_preprocess.hpp"

namespace cbr {

using TermId = std::uint32_t;

template <typename Scalar>
using SparseWeights = Eigen::SparseVector<Scalar>;

/// One stored case: the title is the problem description, the solution the
/// reusable part.
struct Case {
  std::string id;
  std::string title;
  std::optional<std::string> solution;
  std::map<std::string, std::string> meta;

  friend bool operator==(const Case&, const Case&) = default;
};

/// Term <-> dense id table with per-term document frequency.
class Vocabulary {
 public:
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  std::optional<TermId> find(std::string_view term) const;
  const std::string& term(TermId id) const { return terms_.at(id); }
  std::uint32_t document_frequency(TermId id) const { return document_frequency_.at(id); }

  std::span<const std::string> terms() const noexcept { return terms_; }

 private:
  friend class Index;
  friend class IndexAssembler;

  TermId intern(std::string_view term);

  std::vector<std::string> terms_;
  std::vector<std::uint32_t> document_frequency_;
  std::unordered_map<std::string, TermId> ids_;
};

struct DocumentVector {
  std::string id;
  std::string title;
  /// Raw (term id, occurrence count) pairs, ascending term id, counts > 0.
  std::vector<std::pair<TermId, std::uint32_t>> counts;
  /// Sum of raw counts; the term-frequency denominator.
  std::uint32_t token_total = 0;
  /// (count / token_total) * idf for every term in `counts`, zeros included.
  SparseWeights<double> weights;
  double l2_norm = 0.0;

  std::size_t distinct_terms() const noexcept { return counts.size(); }
};

struct Posting {
  std::uint32_t doc;  // ordinal into Index::documents()
  double weight;
};

/// Cases left out of an index build because their titles tokenize to nothing.
struct IngestReport {
  std::size_t indexed = 0;
  std::vector<std::string> skipped_ids;
  std::size_t vocabulary_size = 0;

  std::vector<std::string> warnings() const;
};

/// Immutable TF-IDF vector space over a case corpus.
///
/// Term ids are assigned in first-occurrence order over the input cases;
/// postings for each term list every document containing it (weight-0 entries
/// included) in document order.
class Index {
 public:
  static constexpr int kFormatVersion = 1;

  const PreprocessConfig& config() const noexcept { return config_; }
  const std::string& fingerprint() const noexcept { return fingerprint_; }
  const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
  std::size_t corpus_size() const noexcept { return documents_.size(); }
  std::span<const DocumentVector> documents() const noexcept { return documents_; }
  const DocumentVector& document(std::size_t ordinal) const { return documents_.at(ordinal); }
  std::span<const Posting> postings(TermId term) const { return postings_.at(term); }
  double idf(TermId term) const { return idf_.at(term); }

  std::optional<std::size_t> find_document(std::string_view id) const;

  /// Tokenizes with this index's own preprocess config.
  TokenList tokenize(std::string_view text) const { return cbr::tokenize(text, config_); }

 private:
  friend class IndexAssembler;

  PreprocessConfig config_;
  std::string fingerprint_;
  Vocabulary vocabulary_;
  std::vector<double> idf_;
  std::vector<DocumentVector> documents_;
  std::vector<std::vector<Posting>> postings_;
  std::unordered_map<std::string, std::size_t> ordinal_by_id_;
};

struct BuildResult {
  Index index;
  IngestReport report;
};

/// Throws DataError on a duplicate id or when no case yields any token.
BuildResult build_index(std::span<const Case> cases, const PreprocessConfig& config = {});

/// freq(term, doc) / token_total(doc); 0 when the term is absent.
/// Throws LookupError for an unknown doc id.
double term_frequency(const Index& index, std::string_view term, std::string_view doc_id);

/// log10(|D| / df(term)), or nullopt when the term is not indexed (df = 0).
std::optional<double> inverse_document_frequency(const Index& index, std::string_view term);

/// Stored TF-IDF weight of `term` in `doc_id`; 0 for absent terms.
double tfidf_weight(const Index& index, std::string_view term, std::string_view doc_id);

struct QueryVector {
  SparseWeights<double> weights;
  /// Query tokens that are out of vocabulary or have idf 0; sorted, unique.
  std::vector<std::string> dropped_terms;

  bool empty() const noexcept { return weights.nonZeros() == 0; }
};

QueryVector vectorize_query(const Index& index, const TokenList& tokens);

/// Deterministic textual form written by save_index.
std::string serialize_index(const Index& index);
Index deserialize_index(std::string_view text);

void save_index(const Index& index, const std::filesystem::path& path);
/// Throws IndexFormatError (unreadable, corrupt, unsupported version, checksum).
Index load_index(const std::filesystem::path& path);

}  // namespace cbr
