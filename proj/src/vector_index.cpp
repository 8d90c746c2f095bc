#include "cbr/vector_index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "cbr/errors.hpp"
#include "fnv1a.hpp"

namespace cbr {

using json = nlohmann::ordered_json;

std::optional<TermId> Vocabulary::find(std::string_view term) const {
  const auto it = ids_.find(std::string(term));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

TermId Vocabulary::intern(std::string_view term) {
  auto [it, inserted] = ids_.try_emplace(std::string(term), static_cast<TermId>(terms_.size()));
  if (inserted) {
    terms_.emplace_back(term);
    document_frequency_.push_back(0);
  }
  return it->second;
}

std::vector<std::string> IngestReport::warnings() const {
  std::vector<std::string> out;
  out.reserve(skipped_ids.size());
  for (const auto& id : skipped_ids) {
    out.push_back("case '" + id + "' skipped: title tokenizes to empty");
  }
  return out;
}

std::optional<std::size_t> Index::find_document(std::string_view id) const {
  const auto it = ordinal_by_id_.find(std::string(id));
  if (it == ordinal_by_id_.end()) return std::nullopt;
  return it->second;
}

// Computes everything derivable from (config, vocabulary terms, raw counts):
// document frequencies, idf, weights, norms and postings. Both build and load
// go through here so a loaded index is the same computation as a fresh build.
class IndexAssembler {
 public:
  struct RawDocument {
    std::string id;
    std::string title;
    std::vector<std::pair<TermId, std::uint32_t>> counts;
  };

  static Index assemble(PreprocessConfig config, std::vector<std::string> terms,
                        std::vector<RawDocument> docs) {
    Index index;
    index.fingerprint_ = config.fingerprint();
    index.config_ = std::move(config);

    Vocabulary& vocab = index.vocabulary_;
    for (const auto& t : terms) vocab.intern(t);
    const auto vocab_size = static_cast<Eigen::Index>(vocab.size());

    for (const auto& d : docs) {
      for (const auto& [term, count] : d.counts) ++vocab.document_frequency_.at(term);
    }

    const auto n_docs = static_cast<double>(docs.size());
    index.idf_.resize(vocab.size());
    for (std::size_t t = 0; t < vocab.size(); ++t) {
      const auto df = vocab.document_frequency_[t];
      index.idf_[t] = df == 0 ? 0.0 : std::log10(n_docs / static_cast<double>(df));
    }

    index.postings_.resize(vocab.size());
    index.documents_.reserve(docs.size());
    for (auto& d : docs) {
      const auto ordinal = static_cast<std::uint32_t>(index.documents_.size());
      DocumentVector dv;
      dv.id = std::move(d.id);
      dv.title = std::move(d.title);
      dv.counts = std::move(d.counts);
      for (const auto& [term, count] : dv.counts) dv.token_total += count;

      dv.weights.resize(vocab_size);
      dv.weights.reserve(static_cast<Eigen::Index>(dv.counts.size()));
      double squared = 0.0;
      for (const auto& [term, count] : dv.counts) {
        const double tf = static_cast<double>(count) / static_cast<double>(dv.token_total);
        const double w = tf * index.idf_[term];
        dv.weights.insertBack(static_cast<Eigen::Index>(term)) = w;
        squared += w * w;
        index.postings_[term].push_back({ordinal, w});
      }
      dv.l2_norm = std::sqrt(squared);

      index.ordinal_by_id_.emplace(dv.id, ordinal);
      index.documents_.push_back(std::move(dv));
    }
    return index;
  }

  static std::string weight_checksum(const Index& index) {
    detail::Fnv1a64 h;
    for (std::size_t d = 0; d < index.documents_.size(); ++d) {
      const auto& w = index.documents_[d].weights;
      for (SparseWeights<double>::InnerIterator it(w); it; ++it) {
        h.u64(d);
        h.u64(static_cast<std::uint64_t>(it.index()));
        h.f64(it.value());
      }
    }
    return h.hex();
  }
};

BuildResult build_index(std::span<const Case> cases, const PreprocessConfig& config) {
  config.validate();

  std::unordered_set<std::string_view> seen;
  for (const auto& c : cases) {
    if (c.id.empty()) throw DataError("case with empty id");
    if (!seen.insert(c.id).second) throw DataError("duplicate case id '" + c.id + "'");
  }

  std::vector<std::string> terms;
  std::unordered_map<std::string, TermId> term_ids;
  std::vector<IndexAssembler::RawDocument> docs;
  IngestReport report;
  for (const auto& c : cases) {
    const auto tokens = tokenize(c.title, config);
    if (tokens.empty()) {
      report.skipped_ids.push_back(c.id);
      continue;
    }
    std::map<TermId, std::uint32_t> counts;
    for (const auto& tok : tokens) {
      const auto [it, inserted] = term_ids.try_emplace(tok, static_cast<TermId>(terms.size()));
      if (inserted) terms.push_back(tok);
      ++counts[it->second];
    }
    docs.push_back({c.id, c.title, {counts.begin(), counts.end()}});
  }
  if (docs.empty()) throw DataError("no indexable cases: every title tokenizes to empty");

  report.indexed = docs.size();
  report.vocabulary_size = terms.size();
  return {IndexAssembler::assemble(config, std::move(terms), std::move(docs)), std::move(report)};
}

namespace {

const DocumentVector& lookup_document(const Index& index, std::string_view doc_id) {
  const auto ordinal = index.find_document(doc_id);
  if (!ordinal) throw LookupError("unknown document id '" + std::string(doc_id) + "'");
  return index.document(*ordinal);
}

}  // namespace

double term_frequency(const Index& index, std::string_view term, std::string_view doc_id) {
  const auto& doc = lookup_document(index, doc_id);
  const auto id = index.vocabulary().find(term);
  if (!id) return 0.0;
  const auto it = std::lower_bound(doc.counts.begin(), doc.counts.end(), *id,
                                   [](const auto& entry, TermId t) { return entry.first < t; });
  if (it == doc.counts.end() || it->first != *id) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(doc.token_total);
}

std::optional<double> inverse_document_frequency(const Index& index, std::string_view term) {
  const auto id = index.vocabulary().find(term);
  if (!id) return std::nullopt;
  return index.idf(*id);
}

double tfidf_weight(const Index& index, std::string_view term, std::string_view doc_id) {
  const auto& doc = lookup_document(index, doc_id);
  const auto id = index.vocabulary().find(term);
  if (!id) return 0.0;
  return doc.weights.coeff(static_cast<Eigen::Index>(*id));
}

QueryVector vectorize_query(const Index& index, const TokenList& tokens) {
  QueryVector q;
  q.weights.resize(static_cast<Eigen::Index>(index.vocabulary().size()));
  if (tokens.empty()) return q;

  std::map<TermId, std::uint32_t> counts;
  std::set<std::string> dropped;
  for (const auto& tok : tokens) {
    const auto id = index.vocabulary().find(tok);
    if (!id || index.idf(*id) == 0.0) {
      dropped.insert(tok);
    } else {
      ++counts[*id];
    }
  }

  const auto total = static_cast<double>(tokens.size());
  q.weights.reserve(static_cast<Eigen::Index>(counts.size()));
  for (const auto& [term, count] : counts) {
    q.weights.insertBack(static_cast<Eigen::Index>(term)) =
        (static_cast<double>(count) / total) * index.idf(term);
  }
  q.dropped_terms.assign(dropped.begin(), dropped.end());
  return q;
}

// ---------------------------------------------------------------------------
// Persistence

std::string serialize_index(const Index& index) {
  const auto& cfg = index.config();
  json doc;
  doc["format_version"] = Index::kFormatVersion;
  doc["preprocess"] = {
      {"fingerprint", index.fingerprint()},
      {"casefold", cfg.casefold},
      {"min_token_length", cfg.min_token_length},
      {"stopwords", json(std::vector<std::string>(cfg.stopwords.begin(), cfg.stopwords.end()))},
  };
  doc["corpus_size"] = index.corpus_size();

  json vocab = json::array();
  const auto& v = index.vocabulary();
  for (TermId t = 0; t < v.size(); ++t) {
    vocab.push_back({{"term", v.term(t)}, {"term_id", t}, {"document_frequency", v.document_frequency(t)}});
  }
  doc["vocabulary"] = std::move(vocab);

  json docs = json::array();
  for (const auto& d : index.documents()) {
    json counts = json::array();
    for (const auto& [term, count] : d.counts) counts.push_back({term, count});
    docs.push_back({{"id", d.id}, {"title", d.title}, {"token_total", d.token_total}, {"counts", std::move(counts)}});
  }
  doc["documents"] = std::move(docs);
  doc["weight_checksum"] = IndexAssembler::weight_checksum(index);
  return doc.dump(1) + "\n";
}

namespace {

[[noreturn]] void corrupt(const std::string& why) {
  throw IndexFormatError(IndexFormatError::Kind::kCorrupt, "corrupt index: " + why);
}

void require(bool ok, const char* why) {
  if (!ok) corrupt(why);
}

}  // namespace

Index deserialize_index(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    corrupt(e.what());
  }
  require(doc.is_object(), "top level is not an object");
  require(doc.contains("format_version") && doc["format_version"].is_number_integer(),
          "missing format_version");
  const auto version = doc["format_version"].get<long long>();
  if (version != Index::kFormatVersion) {
    throw IndexFormatError(IndexFormatError::Kind::kUnsupportedVersion,
                           "unsupported index format version " + std::to_string(version) + " (expected " +
                               std::to_string(Index::kFormatVersion) + ")");
  }

  try {
    const auto& pre = doc.at("preprocess");
    PreprocessConfig config;
    config.casefold = pre.at("casefold").get<bool>();
    config.min_token_length = pre.at("min_token_length").get<std::size_t>();
    require(config.min_token_length >= 1, "min_token_length below 1");
    for (const auto& w : pre.at("stopwords")) config.stopwords.insert(w.get<std::string>());
    require(pre.at("fingerprint").get<std::string>() == config.fingerprint(), "preprocess fingerprint mismatch");

    std::vector<std::string> terms;
    std::vector<std::uint32_t> stored_df;
    std::unordered_set<std::string> seen_terms;
    for (const auto& entry : doc.at("vocabulary")) {
      require(entry.at("term_id").get<std::size_t>() == terms.size(), "term ids are not dense");
      auto term = entry.at("term").get<std::string>();
      require(!term.empty() && seen_terms.insert(term).second, "duplicate or empty vocabulary term");
      terms.push_back(std::move(term));
      stored_df.push_back(entry.at("document_frequency").get<std::uint32_t>());
    }

    std::vector<IndexAssembler::RawDocument> docs;
    std::unordered_set<std::string> seen_ids;
    for (const auto& entry : doc.at("documents")) {
      IndexAssembler::RawDocument d;
      d.id = entry.at("id").get<std::string>();
      d.title = entry.at("title").get<std::string>();
      require(!d.id.empty() && seen_ids.insert(d.id).second, "duplicate or empty document id");
      std::uint64_t sum = 0;
      for (const auto& pair : entry.at("counts")) {
        require(pair.is_array() && pair.size() == 2, "malformed count entry");
        const auto term = pair[0].get<std::size_t>();
        const auto count = pair[1].get<std::uint32_t>();
        require(term < terms.size(), "count references unknown term");
        require(count > 0, "zero count stored");
        require(d.counts.empty() || d.counts.back().first < term, "counts not in ascending term order");
        d.counts.emplace_back(static_cast<TermId>(term), count);
        sum += count;
      }
      require(!d.counts.empty(), "document without terms");
      require(sum == entry.at("token_total").get<std::uint64_t>(), "token_total disagrees with counts");
      docs.push_back(std::move(d));
    }
    require(doc.at("corpus_size").get<std::size_t>() == docs.size(), "corpus_size disagrees with documents");
    const auto stored_checksum = doc.at("weight_checksum").get<std::string>();

    Index index = IndexAssembler::assemble(std::move(config), std::move(terms), std::move(docs));
    for (TermId t = 0; t < index.vocabulary().size(); ++t) {
      require(index.vocabulary().document_frequency(t) == stored_df[t], "document_frequency disagrees with counts");
    }
    if (IndexAssembler::weight_checksum(index) != stored_checksum) {
      throw IndexFormatError(IndexFormatError::Kind::kChecksumMismatch,
                             "index weight checksum mismatch: recomputed weights differ from the stored table");
    }
    return index;
  } catch (const json::exception& e) {
    corrupt(e.what());
  }
}

void save_index(const Index& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write index file '" + path.string() + "'");
  out << serialize_index(index);
  out.flush();
  if (!out) throw DataError("error writing index file '" + path.string() + "'");
}

Index load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IndexFormatError(IndexFormatError::Kind::kUnreadable, "cannot read index file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IndexFormatError(IndexFormatError::Kind::kUnreadable, "error reading index file '" + path.string() + "'");
  }
  return deserialize_index(buf.str());
}

}  // namespace cbr
