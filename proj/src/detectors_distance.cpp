#include "adselect/detectors.hpp"

#include "adselect/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace adsel {

namespace {

// Floor on the mean reachability distance; duplicated points get a density
// of exactly 1e10 each, so their mutual ratios collapse to 1.
constexpr double kLrdFloor = 1e-10;
constexpr double kDegeneratePairDistance = 1e-12;

int clamp_neighbors(const Dataset& ds, int k, const char* who) {
    const int max_k = static_cast<int>(ds.n()) - 1;
    if (k > max_k) {
        std::cerr << "warning: " << who << ": n_neighbors=" << k << " clamped to " << max_k
                  << " for dataset '" << ds.name << "' (N=" << ds.n() << ")\n";
        return max_k;
    }
    return k;
}

template <typename Fn>
void for_each_point(Eigen::Index n, ExecMode exec, Fn&& fn) {
    if (exec == ExecMode::parallel) {
#pragma omp parallel for schedule(static)
        for (Eigen::Index i = 0; i < n; ++i) fn(i);
    } else {
        for (Eigen::Index i = 0; i < n; ++i) fn(i);
    }
}

} // namespace

AnomalyScores knn_scores(const Dataset& ds, int k, KnnMethod method, ExecMode exec) {
    if (ds.n() < 2) throw ValidationError("knn_scores: need at least 2 observations");
    if (k < 1) throw ValidationError("knn_scores: k must be >= 1");
    k = clamp_neighbors(ds, k, "knn");
    const NeighborTable table = knn_search(ds.X, k, exec);

    AnomalyScores scores(static_cast<std::size_t>(ds.n()));
    for_each_point(ds.n(), exec, [&](Eigen::Index i) {
        const auto dist = table.row_distances(i);
        if (method == KnnMethod::largest) {
            scores[static_cast<std::size_t>(i)] = dist[static_cast<std::size_t>(k - 1)];
        } else {
            double sum = 0.0;
            for (double d : dist) sum += d;
            scores[static_cast<std::size_t>(i)] = sum / static_cast<double>(k);
        }
    });
    return scores;
}

AnomalyScores lof_scores(const Dataset& ds, int k, ExecMode exec) {
    const Eigen::Index n = ds.n();
    if (n < 2) throw ValidationError("lof_scores: need at least 2 observations");
    if (k < 1) throw ValidationError("lof_scores: k must be >= 1");
    k = clamp_neighbors(ds, k, "lof");
    const NeighborTable table = knn_search(ds.X, k, exec);

    std::vector<double> k_distance(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        k_distance[static_cast<std::size_t>(i)] =
            table.row_distances(i)[static_cast<std::size_t>(k - 1)];
    }

    // local reachability density per point
    std::vector<double> lrd(static_cast<std::size_t>(n));
    for_each_point(n, exec, [&](Eigen::Index i) {
        const auto idx = table.row_indices(i);
        const auto dist = table.row_distances(i);
        double reach_sum = 0.0;
        for (int m = 0; m < k; ++m) {
            const auto o = static_cast<std::size_t>(idx[static_cast<std::size_t>(m)]);
            reach_sum += std::max(k_distance[o], dist[static_cast<std::size_t>(m)]);
        }
        lrd[static_cast<std::size_t>(i)] =
            1.0 / std::max(reach_sum / static_cast<double>(k), kLrdFloor);
    });

    AnomalyScores scores(static_cast<std::size_t>(n));
    for_each_point(n, exec, [&](Eigen::Index i) {
        const auto idx = table.row_indices(i);
        double ratio_sum = 0.0;
        for (int m = 0; m < k; ++m) {
            ratio_sum += lrd[static_cast<std::size_t>(idx[static_cast<std::size_t>(m)])];
        }
        scores[static_cast<std::size_t>(i)] =
            ratio_sum / static_cast<double>(k) / lrd[static_cast<std::size_t>(i)];
    });
    return scores;
}

AnomalyScores abod_scores(const Dataset& ds, int k, ExecMode exec) {
    const Eigen::Index n = ds.n();
    if (n < 3) throw ValidationError("abod_scores: need at least 3 observations");
    if (k < 2) throw ValidationError("abod_scores: k must be >= 2");
    k = clamp_neighbors(ds, k, "abod");
    const NeighborTable table = knn_search(ds.X, k, exec);

    AnomalyScores scores(static_cast<std::size_t>(n));
    const Eigen::Index dim = ds.dim();
    for_each_point(n, exec, [&](Eigen::Index i) {
        const auto idx = table.row_indices(i);
        double sum = 0.0, sum_sq = 0.0;
        std::size_t count = 0;
        for (int a = 0; a < k; ++a) {
            const Eigen::Index pa = idx[static_cast<std::size_t>(a)];
            for (int b = a + 1; b < k; ++b) {
                const Eigen::Index pb = idx[static_cast<std::size_t>(b)];
                double dot = 0.0, na2 = 0.0, nb2 = 0.0;
                for (Eigen::Index c = 0; c < dim; ++c) {
                    const double da = ds.X(pa, c) - ds.X(i, c);
                    const double db = ds.X(pb, c) - ds.X(i, c);
                    dot += da * db;
                    na2 += da * da;
                    nb2 += db * db;
                }
                if (na2 < kDegeneratePairDistance * kDegeneratePairDistance ||
                    nb2 < kDegeneratePairDistance * kDegeneratePairDistance) {
                    continue;
                }
                const double w = dot / (na2 * nb2);
                sum += w;
                sum_sq += w * w;
                ++count;
            }
        }
        double variance = 0.0;
        if (count > 0) {
            const double mean = sum / static_cast<double>(count);
            variance = sum_sq / static_cast<double>(count) - mean * mean;
            variance = std::max(variance, 0.0);
        }
        scores[static_cast<std::size_t>(i)] = -variance;
    });
    return scores;
}

} // namespace adsel
