#include "cbr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbr/case_base.hpp"
#include "cbr/corpus_io.hpp"
#include "cbr/errors.hpp"
#include "cbr/eval.hpp"
#include "cbr/similarity.hpp"
#include "cbr/vector_index.hpp"

namespace cbr::cli {
namespace {

struct IndexOptions {
  std::string input;
  std::string format = "record";
  std::string output;
  std::string stopwords;
  std::size_t min_token_length = 1;
};

struct QueryOptions {
  std::string index;
  std::string query;
  std::string scorer = "cosine";
  double threshold = 0.0;
  std::optional<std::size_t> top_k;
  std::string format = "table";
};

struct AddOptions {
  std::string index;
  std::string corpus;
  std::string format = "record";
  std::string id;
  std::string title;
  std::optional<std::string> solution;
};

struct EvalOptions {
  std::string index;
  std::string titles;
  std::uint64_t seed = 0;
  std::string scorer = "cosine";
};

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

int cmd_index(const IndexOptions& opt, std::ostream& out, std::ostream& err) {
  PreprocessConfig config;
  config.min_token_length = opt.min_token_length;
  if (!opt.stopwords.empty()) config.stopwords = load_stopwords(opt.stopwords);

  const auto cases = read_corpus(opt.input, parse_corpus_format(opt.format));
  const auto built = build_index(cases, config);
  save_index(built.index, opt.output);

  out << "cases indexed: " << built.report.indexed << "\n";
  out << "cases skipped: " << built.report.skipped_ids.size() << "\n";
  out << "vocabulary size: " << built.report.vocabulary_size << "\n";
  for (const auto& w : built.report.warnings()) {
    out << "warning: " << w << "\n";
    err << "warning: " << w << "\n";
  }
  out << "index written: " << opt.output << "\n";
  return kOk;
}

void print_table(std::ostream& out, const Index& index, const RankedResults& results) {
  std::size_t id_width = 2;
  for (const auto& m : results.matches) id_width = std::max(id_width, m.case_id.size());

  const auto pad = [](std::string s, std::size_t width) {
    s.resize(std::max(width, s.size()), ' ');
    return s;
  };
  if (!results.matches.empty()) {
    out << "rank  " << pad("id", id_width) << "  " << pad("score", 8) << "  title\n";
    for (const auto& m : results.matches) {
      char rank[16];
      std::snprintf(rank, sizeof rank, "%4zu  ", m.rank);
      const std::string row = rank + pad(m.case_id, id_width) + "  " + pad(fixed6(m.score), 8) + "  ";
      out << row << index.document(m.doc).title << "\n";
    }
  }
  out << "matches: " << results.total_matches << "\n";
  out << "dropped terms:";
  if (results.dropped_terms.empty()) out << " (none)";
  for (const auto& t : results.dropped_terms) out << ' ' << t;
  out << "\n";
  if (results.empty_query) out << "note: no query term is indexed with nonzero weight\n";
}

void print_records(std::ostream& out, const Index& index, const RankedResults& results) {
  for (const auto& m : results.matches) {
    nlohmann::ordered_json rec;
    rec["rank"] = m.rank;
    rec["id"] = m.case_id;
    rec["title"] = index.document(m.doc).title;
    rec["score"] = std::round(m.score * 1e6) / 1e6;
    rec["count"] = results.total_matches;
    out << rec.dump() << "\n";
  }
}

int cmd_query(const QueryOptions& opt, std::ostream& out) {
  const Index index = load_index(opt.index);
  RankParams params;
  params.scorer = parse_scorer(opt.scorer);
  params.threshold = opt.threshold;
  params.top_k = opt.top_k;
  const auto results = rank_tokens(index, index.tokenize(opt.query), params);
  if (opt.format == "records") {
    print_records(out, index, results);
  } else {
    print_table(out, index, results);
  }
  return kOk;
}

int cmd_add(const AddOptions& opt, std::ostream& out) {
  const Index index = load_index(opt.index);
  const auto format = parse_corpus_format(opt.format);
  auto cases = read_corpus(opt.corpus, format);
  const auto base = CaseBase::build(cases, index.config());
  if (serialize_index(base.index()) != serialize_index(index)) {
    throw DataError("index '" + opt.index + "' is out of sync with corpus '" + opt.corpus + "'");
  }
  if (format == CorpusFormat::kPlain && opt.id != std::to_string(cases.size() + 1)) {
    throw DataError("plain corpus ids are line numbers: expected id " + std::to_string(cases.size() + 1) +
                    ", got '" + opt.id + "'");
  }

  Case added{opt.id, opt.title, opt.solution, {}};
  const auto grown = retain(base, added);

  const std::filesystem::path index_path(opt.index);
  auto staged = index_path;
  staged += ".tmp";
  save_index(grown.index(), staged);
  append_corpus_case(opt.corpus, added, format);
  std::filesystem::rename(staged, index_path);

  out << "added case: " << added.id << "\n";
  out << "corpus size: " << grown.index().corpus_size() << "\n";
  return kOk;
}

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  const Index index = load_index(opt.index);
  const auto titles = read_nonblank_lines(opt.titles);
  const auto report = run_permutation_eval(index, titles, opt.seed, parse_scorer(opt.scorer));
  print_eval_report(out, report);
  if (!report.holds()) {
    for (const auto& v : report.violations()) err << "invariant violated: " << v << "\n";
    return kPropertyViolated;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Case-based retrieval of titles with TF-IDF and cosine similarity", "cbr-search"};
  app.require_subcommand(1);

  IndexOptions index_opt;
  auto* index_cmd = app.add_subcommand("index", "Build an index file from a corpus");
  index_cmd->add_option("--input", index_opt.input, "Corpus file")->required();
  index_cmd->add_option("--format", index_opt.format, "Corpus format")
      ->check(CLI::IsMember({"record", "plain"}))
      ->capture_default_str();
  index_cmd->add_option("--output", index_opt.output, "Index file to write")->required();
  index_cmd->add_option("--stopwords", index_opt.stopwords, "Stopword file, one word per line");
  index_cmd->add_option("--min-token-len", index_opt.min_token_length, "Minimum token length in characters")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  QueryOptions query_opt;
  auto* query_cmd = app.add_subcommand("query", "Rank indexed cases against a query");
  query_cmd->add_option("--index", query_opt.index, "Index file")->required();
  query_cmd->add_option("--query", query_opt.query, "Keywords or a full title")->required();
  query_cmd->add_option("--scorer", query_opt.scorer, "Similarity")
      ->check(CLI::IsMember({"cosine", "set"}))
      ->capture_default_str();
  query_cmd->add_option("--threshold", query_opt.threshold, "Keep scores strictly above this")
      ->check(CLI::Validator(
          [](std::string& v) -> std::string {
            double t = 0;
            if (!CLI::detail::lexical_cast(v, t) || !(t >= 0.0 && t < 1.0)) return "threshold must lie in [0, 1)";
            return {};
          },
          "[0,1)"))
      ->capture_default_str();
  query_cmd->add_option("--top-k", query_opt.top_k, "Print at most N results");
  query_cmd->add_option("--format", query_opt.format, "Output format")
      ->check(CLI::IsMember({"table", "records"}))
      ->capture_default_str();

  AddOptions add_opt;
  auto* add_cmd = app.add_subcommand("add", "Retain a new case and rebuild the index");
  add_cmd->add_option("--index", add_opt.index, "Index file")->required();
  add_cmd->add_option("--corpus", add_opt.corpus, "Corpus file the index was built from")->required();
  add_cmd->add_option("--format", add_opt.format, "Corpus format")
      ->check(CLI::IsMember({"record", "plain"}))
      ->capture_default_str();
  add_cmd->add_option("--id", add_opt.id, "New case id")->required();
  add_cmd->add_option("--title", add_opt.title, "New case title")->required();
  add_cmd->add_option("--solution", add_opt.solution, "Solution payload");

  EvalOptions eval_opt;
  auto* eval_cmd = app.add_subcommand("eval", "Two-stage word-order permutation experiment");
  eval_cmd->add_option("--index", eval_opt.index, "Index file")->required();
  eval_cmd->add_option("--titles", eval_opt.titles, "Query titles, one per line")->required();
  eval_cmd->add_option("--seed", eval_opt.seed, "Shuffle seed")->required();
  eval_cmd->add_option("--scorer", eval_opt.scorer, "Similarity")
      ->check(CLI::IsMember({"cosine", "set"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*index_cmd) return cmd_index(index_opt, out, err);
    if (*query_cmd) return cmd_query(query_opt, out);
    if (*add_cmd) return cmd_add(add_opt, out);
    if (*eval_cmd) return cmd_eval(eval_opt, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace cbr::cli
