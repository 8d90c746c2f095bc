#include "cbr/case_base.hpp"

#include <algorithm>

#include "cbr/errors.hpp"

namespace cbr {

CaseBase::CaseBase(PreprocessConfig config) : config_(std::move(config)) { config_.validate(); }

CaseBase CaseBase::build(std::vector<Case> cases, PreprocessConfig config) {
  CaseBase base(std::move(config));
  auto built = build_index(cases, base.config_);
  base.cases_ = std::move(cases);
  base.index_ = std::make_shared<const Index>(std::move(built.index));
  base.report_ = std::move(built.report);
  return base;
}

const Index& CaseBase::index() const {
  if (!index_) throw StateError("case base is empty");
  return *index_;
}

const Case* CaseBase::find(std::string_view id) const {
  const auto it = std::find_if(cases_.begin(), cases_.end(), [&](const Case& c) { return c.id == id; });
  return it == cases_.end() ? nullptr : &*it;
}

RetrievalOutcome retrieve(const CaseBase& base, std::string_view query_text, const RankParams& params) {
  const Index& index = base.index();
  RetrievalOutcome outcome;
  outcome.results = rank_tokens(index, index.tokenize(query_text), params);
  if (!outcome.results.matches.empty()) {
    const Case* top = base.find(outcome.results.matches.front().case_id);
    if (top) outcome.top_case = *top;
  }
  return outcome;
}

ReusedSolution reuse(const RetrievalOutcome& outcome) {
  if (!outcome.top_case || outcome.results.matches.empty()) throw StateError("nothing to reuse");
  const Case& top = *outcome.top_case;
  ReusedSolution out;
  out.case_id = top.id;
  out.score = outcome.results.matches.front().score;
  if (top.solution) {
    out.text = *top.solution;
  } else {
    out.text = top.title;
    out.title_only = true;
  }
  return out;
}

namespace {

void require_indexable_title(const Case& c, const PreprocessConfig& config) {
  if (tokenize(c.title, config).empty()) {
    throw DataError("case '" + c.id + "': title tokenizes to empty");
  }
}

}  // namespace

CaseBase revise(const CaseBase& base, std::string_view case_id, const CaseEdit& edit) {
  auto cases = base.cases();
  const auto it = std::find_if(cases.begin(), cases.end(), [&](const Case& c) { return c.id == case_id; });
  if (it == cases.end()) throw LookupError("unknown case id '" + std::string(case_id) + "'");
  if (edit.id && *edit.id != case_id) {
    throw DataError("cannot change id of case '" + std::string(case_id) + "' to '" + *edit.id + "'");
  }
  if (edit.title) it->title = *edit.title;
  if (edit.solution) it->solution = *edit.solution;
  if (edit.meta) it->meta = *edit.meta;
  require_indexable_title(*it, base.config());
  return CaseBase::build(std::move(cases), base.config());
}

CaseBase retain(const CaseBase& base, Case new_case) {
  if (new_case.id.empty()) throw DataError("case with empty id");
  if (base.find(new_case.id)) throw DataError("duplicate case id '" + new_case.id + "'");
  require_indexable_title(new_case, base.config());
  auto cases = base.cases();
  cases.push_back(std::move(new_case));
  return CaseBase::build(std::move(cases), base.config());
}

}  // namespace cbr
