#pragma once

#include "adselect/dataset.hpp"
#include "adselect/detectors.hpp"
#include "adselect/metrics.hpp"
#include "adselect/parallel.hpp"

#include <filesystem>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace adsel {

// N datasets x L detectors of measured performance in [0,1]. Cells where a
// detector failed (or the metric was undefined) are missing, stored as NaN.
struct PerformanceMatrix {
    Metric metric = Metric::auc;
    std::vector<std::string> detector_ids;
    std::vector<std::string> dataset_names;
    std::vector<double> values; // N*L row-major, NaN = missing

    std::size_t rows() const { return dataset_names.size(); }
    std::size_t cols() const { return detector_ids.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }
    bool missing(std::size_t i, std::size_t j) const { return !(at(i, j) == at(i, j)); }

    // Throws ValidationError if absent.
    std::size_t row_index(const std::string& dataset) const;
    std::size_t col_index(const std::string& detector) const;
};

inline constexpr double kMissingCell = std::numeric_limits<double>::quiet_NaN();

struct CellFailure {
    std::string dataset;
    std::string detector;
    std::string reason;
};

// Runs every detector over every dataset and fills the AUC and AP matrices
// in one pass over the grid. Each grid cell is independent and writes only
// its own slots, so the result does not depend on scheduling. Every corpus
// dataset must carry labels.
std::pair<PerformanceMatrix, PerformanceMatrix> build_matrices(
    const Corpus& corpus, const std::vector<DetectorSpec>& detectors,
    ExecMode exec = ExecMode::parallel, std::vector<CellFailure>* failures = nullptr);

// Argmax over the non-missing cells of a row; ties keep the first detector.
std::pair<std::string, double> top_performance(const PerformanceMatrix& m,
                                               const std::string& dataset);

// CSV: header "dataset,<id>,...", one row per dataset, missing = empty cell.
void save_matrix_csv(const std::filesystem::path& path, const PerformanceMatrix& m);
PerformanceMatrix load_matrix_csv(const std::filesystem::path& path, Metric metric);

} // namespace adsel
