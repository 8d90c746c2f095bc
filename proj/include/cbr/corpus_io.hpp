#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cbr/vector_index.hpp"

namespace cbr {

/// record: JSON Lines with fields id, title, solution?, meta?
/// plain: one title per line, id = 1-based line number.
enum class CorpusFormat { kRecord, kPlain };

CorpusFormat parse_corpus_format(std::string_view name);

std::vector<Case> parse_corpus(std::string_view text, CorpusFormat format);

/// Throws DataError naming the path when it cannot be read.
std::vector<Case> read_corpus(const std::filesystem::path& path, CorpusFormat format);

/// Single JSON line, no trailing newline.
std::string to_record_line(const Case& c);

/// Appends one case, starting a new line if the file lacks a trailing newline.
void append_corpus_case(const std::filesystem::path& path, const Case& c, CorpusFormat format);

/// Non-blank lines of a UTF-8 text file, CR stripped.
std::vector<std::string> read_nonblank_lines(const std::filesystem::path& path);

}  // namespace cbr
