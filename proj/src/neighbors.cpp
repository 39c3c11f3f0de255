#include "adselect/neighbors.hpp"

#include "adselect/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace adsel {

double squared_distance(const RowMatrix& X, Eigen::Index i, Eigen::Index j) {
    const double* a = X.row(i).data();
    const double* b = X.row(j).data();
    double sum = 0.0;
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
        const double d = a[c] - b[c];
        sum += d * d;
    }
    return sum;
}

namespace {

// One query row: k smallest (distance, index) pairs over all other rows.
void knn_row(const RowMatrix& X, Eigen::Index i, int k,
             std::vector<std::pair<double, int>>& scratch, int* out_idx, double* out_dist) {
    const Eigen::Index n = X.rows();
    scratch.clear();
    for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        scratch.emplace_back(squared_distance(X, i, j), static_cast<int>(j));
    }
    std::partial_sort(scratch.begin(), scratch.begin() + k, scratch.end());
    for (int m = 0; m < k; ++m) {
        out_idx[m] = scratch[static_cast<std::size_t>(m)].second;
        out_dist[m] = std::sqrt(scratch[static_cast<std::size_t>(m)].first);
    }
}

} // namespace

NeighborTable knn_search(const RowMatrix& X, int k, ExecMode exec) {
    const Eigen::Index n = X.rows();
    if (n < 2) throw ValidationError("knn_search: need at least 2 rows");
    if (k < 1 || k > n - 1) {
        throw ValidationError("knn_search: k must be in [1, n-1], got " + std::to_string(k));
    }
    NeighborTable table;
    table.k = k;
    table.indices.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    table.distances.resize(table.indices.size());

    if (exec == ExecMode::parallel) {
#pragma omp parallel
        {
            std::vector<std::pair<double, int>> scratch;
            scratch.reserve(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
            for (Eigen::Index i = 0; i < n; ++i) {
                knn_row(X, i, k, scratch, table.indices.data() + i * k,
                        table.distances.data() + i * k);
            }
        }
    } else {
        std::vector<std::pair<double, int>> scratch;
        scratch.reserve(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) {
            knn_row(X, i, k, scratch, table.indices.data() + i * k,
                    table.distances.data() + i * k);
        }
    }
    return table;
}

} // namespace adsel
