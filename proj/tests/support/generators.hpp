#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cbr/vector_index.hpp"
#include "oracle.hpp"

namespace cbr::testing {

inline const std::vector<std::string>& title_words() {
  static const std::vector<std::string> words = {
      "sistem",     "informasi",  "aplikasi",    "perancangan", "implementasi", "monitoring", "pendukung",
      "keputusan",  "metode",     "algoritma",   "berbasis",    "web",          "android",    "karyawan",
      "evaluasi",   "kinerja",    "promosi",     "navigasi",    "gedung",       "djikstra",   "administrasi",
      "realisasi",  "kredit",     "briguna",     "reminder",    "pembayaran",   "tagihan",    "flexi",
      "home",       "inventaris", "barang",      "penggajian",  "pegawai",      "kehadiran",  "surat",
      "masuk",      "keluar",     "penjualan",   "stok",        "gudang",       "antrian",    "nasabah",
      "pelayanan",  "kampus",     "peta",        "digital",     "jaringan",     "komputer",   "kantor",
      "cabang",     "anggaran",   "kegiatan",    "jadwal",      "perawatan",    "kendaraan",  "dinas",
      "koperasi",   "produk",     "mobile",      "rute",        "terpendek",    "distribusi", "supplier",
      "pemilihan",  "transaksi",  "pencatatan",  "pengelolaan", "dan",          "dengan",     "untuk",
  };
  return words;
}

/// `count` distinct titles of 3..9 capitalized words.
inline std::vector<Case> synthetic_titles(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& words = title_words();
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> len(3, 9);
  std::set<std::string> seen;
  std::vector<Case> cases;
  while (cases.size() < count) {
    std::string title;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      auto w = words[pick(rng)];
      w[0] = static_cast<char>(w[0] - 'a' + 'A');
      if (!title.empty()) title += ' ';
      title += w;
    }
    if (!seen.insert(title).second) continue;
    cases.push_back({"t" + std::to_string(1000 + cases.size()), title, std::nullopt, {}});
  }
  return cases;
}

struct RandomCorpus {
  std::vector<Case> cases;
  std::vector<OracleDoc> docs;  // same content, tokenized by construction
  std::vector<std::vector<std::string>> queries;
};

/// Up to `max_docs` documents of up to `max_tokens` tokens over a vocabulary
/// of up to `max_vocab` terms "w0".."wN". Term draws are skewed so that some
/// terms are common (low idf) and a few appear in every document. Roughly one
/// document in forty is empty. Queries mix indexed and unseen terms.
inline RandomCorpus random_corpus(std::mt19937_64& rng, std::size_t max_docs = 200, std::size_t max_tokens = 30,
                                  std::size_t max_vocab = 60, std::size_t n_queries = 20) {
  RandomCorpus rc;
  const auto n_docs = std::uniform_int_distribution<std::size_t>(1, max_docs)(rng);
  const auto vocab = std::uniform_int_distribution<std::size_t>(1, max_vocab)(rng);
  std::geometric_distribution<std::size_t> skew(0.08);
  auto term = [&] { return "w" + std::to_string(skew(rng) % vocab); };

  for (std::size_t i = 0; i < n_docs; ++i) {
    std::size_t len = std::uniform_int_distribution<std::size_t>(1, max_tokens)(rng);
    if (std::uniform_int_distribution<int>(0, 39)(rng) == 0) len = 0;
    OracleDoc doc;
    doc.id = "d" + std::to_string(std::uniform_int_distribution<int>(0, 9)(rng)) + "-" + std::to_string(i);
    std::string title;
    for (std::size_t k = 0; k < len; ++k) {
      doc.tokens.push_back(term());
      if (!title.empty()) title += ' ';
      title += doc.tokens.back();
    }
    rc.cases.push_back({doc.id, title, std::nullopt, {}});
    rc.docs.push_back(std::move(doc));
  }
  if (std::all_of(rc.docs.begin(), rc.docs.end(), [](const OracleDoc& d) { return d.tokens.empty(); })) {
    rc.docs.front().tokens = {"w0"};
    rc.cases.front().title = "w0";
  }

  for (std::size_t qi = 0; qi < n_queries; ++qi) {
    const auto len = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    std::vector<std::string> q;
    for (std::size_t k = 0; k < len; ++k) {
      if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) {
        q.push_back("oov" + std::to_string(k));
      } else {
        q.push_back(term());
      }
    }
    rc.queries.push_back(std::move(q));
  }
  return rc;
}

}  // namespace cbr::testing
