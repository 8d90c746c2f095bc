#include "cbr/eval.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <unordered_set>

namespace cbr {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unbiased draw in [0, n) by rejecting the low 2^64 mod n values.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t reject_below = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= reject_below) return r % n;
  }
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const auto start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) words.emplace_back(text.substr(start, i - start));
  }
  return words;
}

std::string format_score(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

}  // namespace

std::string permute_words(std::string_view title, std::uint64_t seed, std::size_t row) {
  auto words = split_words(title);
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(row))));
  for (std::size_t i = words.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(draw_below(rng, i));
    std::swap(words[i - 1], words[j]);
  }
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

bool EvalReport::holds() const { return violations().empty(); }

std::vector<std::string> EvalReport::violations() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto row = "row " + std::to_string(i + 1) + ": ";
    if (r.found_stage1 != r.found_stage2) {
      out.push_back(row + "found count changed from " + std::to_string(r.found_stage1) + " to " +
                    std::to_string(r.found_stage2) + " under word permutation");
    }
    if (r.in_corpus && std::abs(r.top_score_stage2 - 1.0) > kSelfMatchTolerance) {
      out.push_back(row + "indexed title scored " + format_score(r.top_score_stage2) + " after permutation, expected 1");
    }
  }
  return out;
}

EvalReport run_permutation_eval(const Index& index, const std::vector<std::string>& titles, std::uint64_t seed,
                                Scorer scorer) {
  std::unordered_set<std::string_view> indexed_titles;
  for (const auto& d : index.documents()) indexed_titles.insert(d.title);

  RankParams params;
  params.scorer = scorer;

  EvalReport report;
  report.seed = seed;
  report.scorer = scorer;
  double score_sum = 0.0;
  for (std::size_t i = 0; i < titles.size(); ++i) {
    EvalRow row;
    row.original_query = titles[i];
    row.permuted_query = permute_words(titles[i], seed, i + 1);
    row.in_corpus = indexed_titles.contains(titles[i]);

    const auto stage1 = rank_tokens(index, index.tokenize(row.original_query), params);
    const auto stage2 = rank_tokens(index, index.tokenize(row.permuted_query), params);
    row.found_stage1 = stage1.total_matches;
    row.found_stage2 = stage2.total_matches;
    row.top_score_stage1 = stage1.matches.empty() ? 0.0 : stage1.matches.front().score;
    row.top_score_stage2 = stage2.matches.empty() ? 0.0 : stage2.matches.front().score;
    score_sum += row.top_score_stage2;
    report.rows.push_back(std::move(row));
  }
  report.mean_top_score = report.rows.empty() ? 0.0 : score_sum / static_cast<double>(report.rows.size());
  return report;
}

void print_eval_report(std::ostream& out, const EvalReport& report) {
  out << "seed: " << report.seed << "\n";
  out << "scorer: " << to_string(report.scorer) << "\n";
  char line[160];
  std::snprintf(line, sizeof line, "%4s  %12s  %12s  %16s  %s\n", "row", "found_stage1", "found_stage2",
                "top_score_stage2", "in_corpus");
  out << line;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    std::snprintf(line, sizeof line, "%4zu  %12zu  %12zu  %16s  %s\n", i + 1, r.found_stage1, r.found_stage2,
                  format_score(r.top_score_stage2).c_str(), r.in_corpus ? "yes" : "no");
    out << line;
    out << "      stage 1: " << r.original_query << "\n";
    out << "      stage 2: " << r.permuted_query << "\n";
  }
  out << "mean top score (stage 2): " << format_score(report.mean_top_score) << "\n";
  const auto problems = report.violations();
  out << "word-order invariance: " << (problems.empty() ? "holds" : "VIOLATED") << "\n";
  for (const auto& p : problems) out << "  " << p << "\n";
}

}  // namespace cbr
