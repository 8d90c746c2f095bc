#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cbr {

/// Normalization applied identically to corpus titles and to queries.
///
/// Stopword entries must already be in normalized form (casefolded when
/// `casefold` is on); `load_stopwords` produces them that way.
struct PreprocessConfig {
  bool casefold = true;
  std::set<std::string> stopwords;
  std::size_t min_token_length = 1;

  /// Throws ConfigError if min_token_length is 0.
  void validate() const;

  /// Stable hex digest of the canonical form of this config.
  std::string fingerprint() const;

  friend bool operator==(const PreprocessConfig&, const PreprocessConfig&) = default;
};

using TokenList = std::vector<std::string>;

/// Splits on maximal runs of characters that are not Unicode letters or
/// digits, lowercases each piece (simple case mapping) when enabled, then
/// drops stopwords and tokens shorter than min_token_length code points.
/// Invalid UTF-8 bytes count as separators. Surface order is preserved.
TokenList tokenize(std::string_view text, const PreprocessConfig& config = {});

/// Simple per-code-point lowercase mapping of a UTF-8 string.
std::string casefold(std::string_view text);

/// One word per line; blank lines and `#` comments skipped; entries
/// trimmed and casefolded.
std::set<std::string> load_stopwords(const std::filesystem::path& path);

}  // namespace cbr
