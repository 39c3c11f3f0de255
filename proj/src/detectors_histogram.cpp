#include "adselect/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace adsel {

namespace {

constexpr double kEmptyBinHeight = 1e-9;

// average ranks (1-based) of a column, ties averaged
std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + 1 + j + 1);
        for (std::size_t m = i; m <= j; ++m) rank[order[m]] = avg;
        i = j + 1;
    }
    return rank;
}

} // namespace

AnomalyScores hbos_scores(const Dataset& ds, int n_bins) {
    if (ds.n() < 1) throw ValidationError("hbos_scores: empty dataset");
    if (n_bins < 2) throw ValidationError("hbos_scores: n_bins must be >= 2");
    const Eigen::Index n = ds.n();
    const Eigen::Index dim = ds.dim();
    const auto bins = static_cast<std::size_t>(n_bins);

    AnomalyScores scores(static_cast<std::size_t>(n), 0.0);
    std::vector<std::size_t> counts(bins);
    std::vector<std::size_t> bin_of(static_cast<std::size_t>(n));

    for (Eigen::Index c = 0; c < dim; ++c) {
        const double lo = ds.X.col(c).minCoeff();
        const double hi = ds.X.col(c).maxCoeff();
        if (hi <= lo) continue; // constant feature: one full bin, height 1, -log(1) = 0
        const double width = (hi - lo) / static_cast<double>(n_bins);

        std::fill(counts.begin(), counts.end(), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            auto b = static_cast<std::size_t>((ds.X(i, c) - lo) / width);
            b = std::min(b, bins - 1); // top edge value belongs to the last bin
            bin_of[static_cast<std::size_t>(i)] = b;
            ++counts[b];
        }
        const std::size_t max_count = *std::max_element(counts.begin(), counts.end());
        for (Eigen::Index i = 0; i < n; ++i) {
            const std::size_t cnt = counts[bin_of[static_cast<std::size_t>(i)]];
            const double height =
                cnt == 0 ? kEmptyBinHeight
                         : static_cast<double>(cnt) / static_cast<double>(max_count);
            scores[static_cast<std::size_t>(i)] += -std::log(height);
        }
    }
    return scores;
}

AnomalyScores copod_scores(const Dataset& ds) {
    const Eigen::Index n = ds.n();
    if (n < 3) throw ValidationError("copod_scores: need at least 3 observations");
    const Eigen::Index dim = ds.dim();
    const double nn = static_cast<double>(n);

    AnomalyScores scores(static_cast<std::size_t>(n), 0.0);
    std::vector<double> col(static_cast<std::size_t>(n));

    for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = ds.X(i, c);
        const std::vector<double> rank = average_ranks(col);

        // sample skewness decides which tail the corrected variant follows
        const double mean = std::accumulate(col.begin(), col.end(), 0.0) / nn;
        double m2 = 0.0, m3 = 0.0;
        for (double v : col) {
            const double d = v - mean;
            m2 += d * d;
            m3 += d * d * d;
        }
        m2 /= nn;
        m3 /= nn;
        const double skew = m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;

        for (Eigen::Index i = 0; i < n; ++i) {
            const auto ii = static_cast<std::size_t>(i);
            // left/right empirical tails via average ranks; the rank of -x
            // among negated values is n+1-rank(x)
            const double u_left = rank[ii] / nn;
            const double u_right = (nn + 1.0 - rank[ii]) / nn;
            const double u_skew = skew < 0 ? u_left : u_right;
            const double tail =
                std::max({-std::log(u_left), -std::log(u_right), -std::log(u_skew)});
            scores[ii] += tail;
        }
    }
    return scores;
}

} // namespace adsel
