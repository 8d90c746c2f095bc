#include "cbr/text_preprocess.hpp"

#include <fstream>
#include <string>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "cbr/errors.hpp"
#include "fnv1a.hpp"

namespace cbr {
namespace {

void append_utf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  U8_APPEND_UNSAFE(buf, len, c);
  out.append(buf, static_cast<std::size_t>(len));
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

void PreprocessConfig::validate() const {
  if (min_token_length < 1) throw ConfigError("min_token_length must be at least 1");
}

std::string PreprocessConfig::fingerprint() const {
  detail::Fnv1a64 h;
  h.bytes("casefold=");
  h.bytes(casefold ? "1" : "0");
  h.bytes(";min_token_length=");
  h.bytes(std::to_string(min_token_length));
  h.bytes(";stopwords=");
  for (const auto& w : stopwords) {
    h.u64(w.size());
    h.bytes(w);
  }
  return h.hex();
}

std::string casefold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto n = static_cast<int32_t>(text.size());
  for (int32_t i = 0; i < n;) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, n, c);
    if (c < 0) {
      out.append(text.substr(start, i - start));
    } else {
      append_utf8(out, u_tolower(c));
    }
  }
  return out;
}

TokenList tokenize(std::string_view text, const PreprocessConfig& config) {
  config.validate();
  TokenList tokens;
  std::string current;
  std::size_t current_len = 0;

  auto flush = [&] {
    if (current.empty()) return;
    if (current_len >= config.min_token_length && !config.stopwords.contains(current)) {
      tokens.push_back(std::move(current));
    }
    current.clear();
    current_len = 0;
  };

  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const auto n = static_cast<int32_t>(text.size());
  for (int32_t i = 0; i < n;) {
    UChar32 c;
    U8_NEXT(s, i, n, c);
    if (c >= 0 && u_isalnum(c)) {
      append_utf8(current, config.casefold ? u_tolower(c) : c);
      ++current_len;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::set<std::string> load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read stopword file '" + path.string() + "'");
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto word = trim(line);
    if (word.empty() || word.front() == '#') continue;
    words.insert(casefold(word));
  }
  if (in.bad()) throw ConfigError("error reading stopword file '" + path.string() + "'");
  return words;
}

}  // namespace cbr
