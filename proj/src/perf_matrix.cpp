#include "adselect/perf_matrix.hpp"

#include "adselect/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace adsel {

std::size_t PerformanceMatrix::row_index(const std::string& dataset) const {
    auto it = std::find(dataset_names.begin(), dataset_names.end(), dataset);
    if (it == dataset_names.end()) {
        throw ValidationError("matrix has no dataset '" + dataset + "'");
    }
    return static_cast<std::size_t>(it - dataset_names.begin());
}

std::size_t PerformanceMatrix::col_index(const std::string& detector) const {
    auto it = std::find(detector_ids.begin(), detector_ids.end(), detector);
    if (it == detector_ids.end()) {
        throw ValidationError("matrix has no detector '" + detector + "'");
    }
    return static_cast<std::size_t>(it - detector_ids.begin());
}

std::pair<PerformanceMatrix, PerformanceMatrix> build_matrices(
    const Corpus& corpus, const std::vector<DetectorSpec>& detectors, ExecMode exec,
    std::vector<CellFailure>* failures) {
    if (corpus.datasets.empty()) throw ValidationError("build_matrices: empty corpus");
    if (detectors.empty()) throw ValidationError("build_matrices: empty detector list");
    for (const auto& ds : corpus.datasets) {
        if (!ds.labels) {
            throw ValidationError("build_matrices: dataset '" + ds.name + "' has no labels");
        }
    }

    const std::size_t n = corpus.datasets.size();
    const std::size_t l = detectors.size();

    PerformanceMatrix auc_matrix, ap_matrix;
    auc_matrix.metric = Metric::auc;
    ap_matrix.metric = Metric::ap;
    for (const auto& spec : detectors) {
        auc_matrix.detector_ids.push_back(detector_name(spec.id));
    }
    ap_matrix.detector_ids = auc_matrix.detector_ids;
    for (const auto& ds : corpus.datasets) {
        auc_matrix.dataset_names.push_back(ds.name);
    }
    ap_matrix.dataset_names = auc_matrix.dataset_names;
    auc_matrix.values.assign(n * l, kMissingCell);
    ap_matrix.values.assign(n * l, kMissingCell);

    // every grid cell is independent and owns its slots in both matrices
    std::vector<std::string> reasons(n * l);
    const auto total = static_cast<std::ptrdiff_t>(n * l);

    auto run_cell = [&](std::ptrdiff_t cell) {
        const std::size_t i = static_cast<std::size_t>(cell) / l;
        const std::size_t j = static_cast<std::size_t>(cell) % l;
        const Dataset& ds = corpus.datasets[i];
        try {
            const AnomalyScores scores = run_detector(detectors[j], ds, ExecMode::serial);
            auc_matrix.values[static_cast<std::size_t>(cell)] = auc(scores, *ds.labels);
            ap_matrix.values[static_cast<std::size_t>(cell)] =
                average_precision(scores, *ds.labels);
        } catch (const Error& e) {
            reasons[static_cast<std::size_t>(cell)] = e.what();
        }
    };

    if (exec == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t cell = 0; cell < total; ++cell) run_cell(cell);
    } else {
        for (std::ptrdiff_t cell = 0; cell < total; ++cell) run_cell(cell);
    }

    if (failures) {
        for (std::size_t cell = 0; cell < reasons.size(); ++cell) {
            if (!reasons[cell].empty()) {
                failures->push_back({corpus.datasets[cell / l].name,
                                     auc_matrix.detector_ids[cell % l], reasons[cell]});
            }
        }
    }
    return {std::move(auc_matrix), std::move(ap_matrix)};
}

std::pair<std::string, double> top_performance(const PerformanceMatrix& m,
                                               const std::string& dataset) {
    const std::size_t i = m.row_index(dataset);
    std::ptrdiff_t best = -1;
    double best_value = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (m.missing(i, j)) continue;
        if (best < 0 || m.at(i, j) > best_value) {
            best = static_cast<std::ptrdiff_t>(j);
            best_value = m.at(i, j);
        }
    }
    if (best < 0) {
        throw ValidationError("matrix row '" + dataset + "' has no measured cells");
    }
    return {m.detector_ids[static_cast<std::size_t>(best)], best_value};
}

void save_matrix_csv(const std::filesystem::path& path, const PerformanceMatrix& m) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write matrix: " + path.string());
    out << "dataset";
    for (const auto& id : m.detector_ids) out << ',' << id;
    out << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << m.dataset_names[i];
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out << ',';
            if (!m.missing(i, j)) out << format_double(m.at(i, j));
        }
        out << '\n';
    }
    if (!out) throw IoError("failed while writing: " + path.string());
}

PerformanceMatrix load_matrix_csv(const std::filesystem::path& path, Metric metric) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open matrix: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");

    PerformanceMatrix m;
    m.metric = metric;
    {
        std::stringstream header(line);
        std::string field;
        bool first = true;
        while (std::getline(header, field, ',')) {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            if (first) {
                first = false;
                continue;
            }
            m.detector_ids.push_back(field);
        }
    }
    if (m.detector_ids.empty()) throw ParseError(path.string() + ": no detector columns");

    while (std::getline(in, line)) {
        if (line.empty() && in.eof()) break;
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
        if (fields.size() != m.detector_ids.size() + 1) {
            throw ParseError(path.string() + ": row width mismatch at '" + fields[0] + "'");
        }
        m.dataset_names.push_back(fields[0]);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            if (fields[j].empty()) {
                m.values.push_back(kMissingCell);
            } else {
                const double v =
                    parse_double(fields[j], path.string() + ": row '" + fields[0] + "'");
                if (v < 0.0 || v > 1.0) {
                    throw ParseError(path.string() + ": performance value outside [0,1]");
                }
                m.values.push_back(v);
            }
        }
    }
    if (m.dataset_names.empty()) throw ParseError(path.string() + ": no rows");
    return m;
}

} // namespace adsel
