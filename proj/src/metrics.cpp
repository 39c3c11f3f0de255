#include "adselect/metrics.hpp"

#include "adselect/errors.hpp"

#include <algorithm>
#include <numeric>

namespace adsel {

std::string metric_name(Metric m) {
    return m == Metric::auc ? "AUC" : "AP";
}

Metric metric_from_name(const std::string& name) {
    if (name == "AUC" || name == "auc") return Metric::auc;
    if (name == "AP" || name == "ap") return Metric::ap;
    throw ValidationError("unknown metric: " + name);
}

namespace {

void check_lengths(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size()) {
        throw ValidationError("metric: scores and labels length mismatch");
    }
    if (scores.empty()) {
        throw ValidationError("metric: empty input");
    }
}

} // namespace

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_lengths(scores, labels);
    const std::size_t n = scores.size();
    const std::size_t n_pos = static_cast<std::size_t>(
        std::count(labels.begin(), labels.end(), 1));
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw MetricError("undefined metric: AUC needs both classes");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // average ranks over tie groups, 1-based
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + 1 + j + 1);
        for (std::size_t m = i; m <= j; ++m) rank[order[m]] = avg;
        i = j + 1;
    }

    double pos_rank_sum = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        if (labels[m] == 1) pos_rank_sum += rank[m];
    }
    const double np = static_cast<double>(n_pos);
    const double u = pos_rank_sum - np * (np + 1.0) / 2.0;
    return u / (np * static_cast<double>(n_neg));
}

double average_precision(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_lengths(scores, labels);
    const std::size_t n = scores.size();
    const auto n_pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    if (n_pos == 0) {
        throw MetricError("undefined metric: AP needs at least one positive");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    // descending scores; stable keeps the original order inside tie groups
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    double sum = 0.0;
    std::size_t tp = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (labels[order[k]] == 1) {
            ++tp;
            sum += static_cast<double>(tp) / static_cast<double>(k + 1);
        }
    }
    return sum / static_cast<double>(n_pos);
}

double compute_metric(Metric m, const std::vector<double>& scores,
                      const std::vector<int>& labels) {
    return m == Metric::auc ? auc(scores, labels) : average_precision(scores, labels);
}

} // namespace adsel
