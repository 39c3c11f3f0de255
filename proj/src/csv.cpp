#include "adselect/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace adsel {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& field, const std::string& context) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    // tolerate a leading '+' which from_chars rejects
    if (begin != end && *begin == '+') ++begin;
    double value{};
    auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end || begin == end) {
        throw ParseError(context + ": not a number: '" + field + "'");
    }
    return value;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

Dataset load_dataset(const std::filesystem::path& path,
                     const std::optional<std::string>& label_column) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open dataset file: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(path.string() + ": empty file, expected a header row");
    }
    const auto header = split_fields(line);
    std::ptrdiff_t label_idx = -1;
    if (label_column) {
        auto it = std::find(header.begin(), header.end(), *label_column);
        if (it == header.end()) {
            throw ParseError(path.string() + ": label column '" + *label_column + "' not found");
        }
        label_idx = it - header.begin();
    }
    const std::size_t n_cols = header.size();
    const std::size_t n_features = label_idx >= 0 ? n_cols - 1 : n_cols;
    if (n_features == 0) {
        throw ParseError(path.string() + ": no feature columns");
    }

    std::vector<double> data;
    std::vector<int> labels;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty() && in.eof()) break;
        ++row;
        const auto fields = split_fields(line);
        if (fields.size() != n_cols) {
            throw ParseError(path.string() + ": row " + std::to_string(row) + " has " +
                             std::to_string(fields.size()) + " fields, header has " +
                             std::to_string(n_cols));
        }
        for (std::size_t c = 0; c < n_cols; ++c) {
            const std::string where =
                path.string() + ": row " + std::to_string(row) + ", column '" + header[c] + "'";
            const double v = parse_double(fields[c], where);
            if (static_cast<std::ptrdiff_t>(c) == label_idx) {
                if (v != 0.0 && v != 1.0) {
                    throw ParseError(where + ": label value outside {0,1}");
                }
                labels.push_back(static_cast<int>(v));
            } else {
                if (!std::isfinite(v)) {
                    throw ParseError(where + ": non-finite value");
                }
                data.push_back(v);
            }
        }
    }

    const std::size_t n_rows = data.size() / n_features;
    Dataset ds;
    ds.name = path.stem().string();
    ds.X = Eigen::Map<const RowMatrix>(data.data(), static_cast<Eigen::Index>(n_rows),
                                       static_cast<Eigen::Index>(n_features));
    if (label_idx >= 0) {
        ds.labels = std::move(labels);
    }
    validate_dataset(ds);
    return ds;
}

void save_dataset(const std::filesystem::path& path, const Dataset& ds,
                  const std::string& label_column) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write dataset file: " + path.string());
    }
    for (Eigen::Index c = 0; c < ds.dim(); ++c) {
        if (c) out << ',';
        out << 'f' << c;
    }
    if (ds.labels) out << ',' << label_column;
    out << '\n';
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        for (Eigen::Index c = 0; c < ds.dim(); ++c) {
            if (c) out << ',';
            out << format_double(ds.X(i, c));
        }
        if (ds.labels) out << ',' << (*ds.labels)[static_cast<std::size_t>(i)];
        out << '\n';
    }
    if (!out) {
        throw IoError("failed while writing: " + path.string());
    }
}

Corpus load_corpus_dir(const std::filesystem::path& dir,
                       const std::optional<std::string>& label_column) {
    if (!std::filesystem::is_directory(dir)) {
        throw IoError("not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw IoError("no .csv files in " + dir.string());
    }
    Corpus corpus;
    for (const auto& f : files) {
        corpus.add(load_dataset(f, label_column));
    }
    return corpus;
}

} // namespace adsel
