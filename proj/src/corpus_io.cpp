#include "cbr/corpus_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cbr/errors.hpp"

namespace cbr {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

bool is_blank(std::string_view s) { return s.find_first_not_of(" \t\r\f\v") == std::string_view::npos; }

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("error reading file '" + path.string() + "'");
  return buf.str();
}

Case parse_record(const std::string& line, std::size_t line_no) {
  const auto where = "line " + std::to_string(line_no) + ": ";
  json rec;
  try {
    rec = json::parse(line);
  } catch (const json::parse_error& e) {
    throw DataError(where + "malformed record: " + e.what());
  }
  if (!rec.is_object()) throw DataError(where + "record is not an object");
  for (const auto& [key, value] : rec.items()) {
    if (key != "id" && key != "title" && key != "solution" && key != "meta") {
      throw DataError(where + "unknown field '" + key + "'");
    }
  }
  if (!rec.contains("id") || !rec["id"].is_string()) throw DataError(where + "missing string field 'id'");
  if (!rec.contains("title") || !rec["title"].is_string()) throw DataError(where + "missing string field 'title'");

  Case c;
  c.id = rec["id"].get<std::string>();
  c.title = rec["title"].get<std::string>();
  if (c.id.empty()) throw DataError(where + "empty id");
  if (rec.contains("solution") && !rec["solution"].is_null()) {
    if (!rec["solution"].is_string()) throw DataError(where + "field 'solution' must be a string");
    c.solution = rec["solution"].get<std::string>();
  }
  if (rec.contains("meta") && !rec["meta"].is_null()) {
    if (!rec["meta"].is_object()) throw DataError(where + "field 'meta' must be an object");
    for (const auto& [key, value] : rec["meta"].items()) {
      if (!value.is_string()) throw DataError(where + "meta value '" + key + "' must be a string");
      c.meta.emplace(key, value.get<std::string>());
    }
  }
  return c;
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "record") return CorpusFormat::kRecord;
  if (name == "plain") return CorpusFormat::kPlain;
  throw ConfigError("unknown corpus format '" + std::string(name) + "' (expected record or plain)");
}

std::vector<Case> parse_corpus(std::string_view text, CorpusFormat format) {
  std::vector<Case> cases;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (format == CorpusFormat::kPlain) {
      cases.push_back({std::to_string(i + 1), lines[i], std::nullopt, {}});
    } else if (!is_blank(lines[i])) {
      cases.push_back(parse_record(lines[i], i + 1));
    }
  }
  return cases;
}

std::vector<Case> read_corpus(const std::filesystem::path& path, CorpusFormat format) {
  try {
    return parse_corpus(slurp(path), format);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string to_record_line(const Case& c) {
  json rec;
  rec["id"] = c.id;
  rec["title"] = c.title;
  if (c.solution) rec["solution"] = *c.solution;
  if (!c.meta.empty()) rec["meta"] = c.meta;
  return rec.dump();
}

void append_corpus_case(const std::filesystem::path& path, const Case& c, CorpusFormat format) {
  const std::string existing = std::filesystem::exists(path) ? slurp(path) : std::string();
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw DataError("cannot write file '" + path.string() + "'");
  if (!existing.empty() && existing.back() != '\n') out << '\n';
  out << (format == CorpusFormat::kRecord ? to_record_line(c) : c.title) << '\n';
  out.flush();
  if (!out) throw DataError("error writing file '" + path.string() + "'");
}

std::vector<std::string> read_nonblank_lines(const std::filesystem::path& path) {
  std::vector<std::string> out;
  for (auto& line : split_lines(slurp(path))) {
    if (!is_blank(line)) out.push_back(std::move(line));
  }
  return out;
}

}  // namespace cbr
