#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cbr/similarity.hpp"
#include "cbr/text_preprocess.hpp"
#include "cbr/vector_index.hpp"

namespace cbr {

/// The stored cases plus the index snapshot built from exactly those cases.
///
/// A CaseBase is a value: retain and revise return new bases and never touch
/// the snapshot an existing value (or any reader holding `snapshot()`) sees.
class CaseBase {
 public:
  CaseBase() = default;
  explicit CaseBase(PreprocessConfig config);

  /// Throws DataError as build_index does.
  static CaseBase build(std::vector<Case> cases, PreprocessConfig config = {});

  bool empty() const noexcept { return index_ == nullptr; }
  const std::vector<Case>& cases() const noexcept { return cases_; }
  const PreprocessConfig& config() const noexcept { return config_; }
  const IngestReport& ingest_report() const noexcept { return report_; }

  /// Throws StateError when the base is empty.
  const Index& index() const;
  std::shared_ptr<const Index> snapshot() const noexcept { return index_; }

  const Case* find(std::string_view id) const;

 private:
  std::vector<Case> cases_;
  PreprocessConfig config_;
  std::shared_ptr<const Index> index_;
  IngestReport report_;
};

struct RetrievalOutcome {
  RankedResults results;
  std::optional<Case> top_case;
};

/// Tokenize, vectorize and rank `query_text`; attaches the rank-1 case.
RetrievalOutcome retrieve(const CaseBase& base, std::string_view query_text,
                          const RankParams& params = {});

struct ReusedSolution {
  std::string case_id;
  std::string text;
  double score = 0.0;
  /// The case had no solution payload, so `text` is its title.
  bool title_only = false;
};

/// Throws StateError("nothing to reuse") when the outcome has no top case.
ReusedSolution reuse(const RetrievalOutcome& outcome);

/// Fields left empty are kept as they are. Setting `id` to anything other than
/// the revised case's id is an error.
struct CaseEdit {
  std::optional<std::string> id;
  std::optional<std::string> title;
  std::optional<std::string> solution;
  std::optional<std::map<std::string, std::string>> meta;
};

CaseBase revise(const CaseBase& base, std::string_view case_id, const CaseEdit& edit);

/// Appends `new_case` and rebuilds the index over the grown case list.
CaseBase retain(const CaseBase& base, Case new_case);

}  // namespace cbr
