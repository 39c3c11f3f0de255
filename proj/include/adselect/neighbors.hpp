#pragma once

#include "adselect/dataset.hpp"
#include "adselect/parallel.hpp"

#include <span>
#include <vector>

namespace adsel {

// k nearest neighbors per row, self excluded, Euclidean metric.
// Per row, neighbors are ordered by (distance, row index) ascending; the
// index tie-break keeps every downstream consumer deterministic.
struct NeighborTable {
    int k = 0;
    std::vector<int> indices;      // n*k, row-major
    std::vector<double> distances; // n*k, row-major

    std::span<const int> row_indices(Eigen::Index i) const {
        return {indices.data() + i * k, static_cast<std::size_t>(k)};
    }
    std::span<const double> row_distances(Eigen::Index i) const {
        return {distances.data() + i * k, static_cast<std::size_t>(k)};
    }
};

// Requires 1 <= k <= n-1. O(n^2 K) exhaustive scan, parallel over query rows.
NeighborTable knn_search(const RowMatrix& X, int k, ExecMode exec = ExecMode::parallel);

double squared_distance(const RowMatrix& X, Eigen::Index i, Eigen::Index j);

} // namespace adsel
