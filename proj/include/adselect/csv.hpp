#pragma once

#include "adselect/dataset.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace adsel {

// Comma-separated, header row, '.' decimal separator, UTF-8, no quoting.
// Rows containing non-finite values are rejected. If label_column is given,
// that column is parsed as {0,1} labels and removed from the feature matrix.
Dataset load_dataset(const std::filesystem::path& path,
                     const std::optional<std::string>& label_column = std::nullopt);

// Writes features (and the label column, if present) with shortest
// round-trip number formatting, so save followed by load is bit-exact.
void save_dataset(const std::filesystem::path& path, const Dataset& ds,
                  const std::string& label_column = "label");

// Loads every *.csv in a directory (sorted by filename) as one corpus.
Corpus load_corpus_dir(const std::filesystem::path& dir,
                       const std::optional<std::string>& label_column);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);
// Strict full-field parse; throws ParseError on trailing garbage.
double parse_double(const std::string& field, const std::string& context);

} // namespace adsel
