#include "adselect/stats.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

namespace adsel {

namespace {

constexpr double kLogErrorFloor = 1e-12;

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size() - 1);
}

// Regularized incomplete beta I_x(a, b), continued fraction (Lentz).
double betacf(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 1e-14;
    constexpr double fpmin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double dm = m;
        double aa = dm * (b - dm) * x / ((qam + 2.0 * dm) * (a + 2.0 * dm));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + dm) * (qab + dm) * x / ((a + 2.0 * dm) * (qap + 2.0 * dm));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h;
}

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

ComparisonView make_view(const std::vector<double>& a, const std::vector<double>& b) {
    ComparisonView view;
    view.mean_a = mean_of(a);
    view.mean_b = mean_of(b);
    view.std_a = std::sqrt(sample_variance(a, view.mean_a));
    view.std_b = std::sqrt(sample_variance(b, view.mean_b));
    view.t_test = paired_t_test(a, b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double pooled = ((na - 1.0) * view.std_a * view.std_a +
                           (nb - 1.0) * view.std_b * view.std_b) /
                          (na + nb - 2.0);
    if (pooled > 0.0) {
        view.effect_size_d = (view.mean_a - view.mean_b) / std::sqrt(pooled);
    } else {
        view.effect_size_d = 0.0;
        view.degenerate_d = true;
    }
    view.magnitude = effect_magnitude(view.effect_size_d);
    return view;
}

nlohmann::json view_to_json(const ComparisonView& v) {
    return {{"mean_a", v.mean_a},
            {"mean_b", v.mean_b},
            {"std_a", v.std_a},
            {"std_b", v.std_b},
            {"t_statistic", v.t_test.t},
            {"degrees_of_freedom", v.t_test.df},
            {"p_value", v.t_test.p},
            {"t_degenerate", v.t_test.degenerate},
            {"effect_size_d", v.effect_size_d},
            {"effect_magnitude", v.magnitude},
            {"d_degenerate", v.degenerate_d}};
}

} // namespace

double student_t_two_sided_p(double t, int df) {
    if (df < 1) throw ValidationError("student_t_two_sided_p: df must be >= 1");
    const double nu = df;
    const double x = nu / (nu + t * t);
    return incomplete_beta(nu / 2.0, 0.5, x);
}

TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw ValidationError("paired_t_test: length mismatch");
    if (a.size() < 2) throw ValidationError("paired_t_test: need at least 2 pairs");
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    const double mean = mean_of(diff);
    const double var = sample_variance(diff, mean);

    TTestResult result;
    result.df = static_cast<int>(a.size()) - 1;
    if (var <= 0.0) {
        result.degenerate = true;
        result.t = 0.0;
        result.p = 1.0;
        return result;
    }
    result.t = mean / (std::sqrt(var) / std::sqrt(static_cast<double>(a.size())));
    result.p = student_t_two_sided_p(result.t, result.df);
    return result;
}

std::string effect_magnitude(double d) {
    const double a = std::abs(d);
    if (a <= 0.2) return "small";
    if (a <= 0.5) return "medium";
    return "large";
}

EffectSize cohens_d(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw ValidationError("cohens_d: empty sample");
    const double mean_a = mean_of(a);
    const double mean_b = mean_of(b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double pooled = ((na - 1.0) * sample_variance(a, mean_a) +
                           (nb - 1.0) * sample_variance(b, mean_b)) /
                          (na + nb - 2.0);
    if (!(pooled > 0.0)) throw ValidationError("cohens_d: zero pooled variance");
    EffectSize e;
    e.d = (mean_a - mean_b) / std::sqrt(pooled);
    e.magnitude = effect_magnitude(e.d);
    return e;
}

ComparisonReport compare_selectors(const PerformanceMatrix& matrix,
                                   const std::vector<SelectionReport>& reports_a,
                                   const std::vector<SelectionReport>& reports_b) {
    std::map<std::string, const SelectionReport*> by_name_a, by_name_b;
    for (const auto& r : reports_a) {
        matrix.row_index(r.dataset); // throws if the dataset is absent
        by_name_a[r.dataset] = &r;
    }
    for (const auto& r : reports_b) {
        matrix.row_index(r.dataset);
        by_name_b[r.dataset] = &r;
    }

    ComparisonReport report;
    report.metric = matrix.metric;
    std::vector<double> perf_a, perf_b, err_a, err_b;

    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        const std::string& name = matrix.dataset_names[i];
        auto ita = by_name_a.find(name);
        auto itb = by_name_b.find(name);
        if (ita == by_name_a.end() || itb == by_name_b.end()) continue;

        const std::size_t col_a = matrix.col_index(ita->second->selected);
        const std::size_t col_b = matrix.col_index(itb->second->selected);
        if (matrix.missing(i, col_a) || matrix.missing(i, col_b)) {
            ++report.skipped;
            continue;
        }
        const auto [top_id, y_top] = top_performance(matrix, name);

        PerDatasetComparison row;
        row.dataset = name;
        row.top_detector = top_id;
        row.y_top = y_top;
        row.selected_a = ita->second->selected;
        row.selected_b = itb->second->selected;
        row.y_a = matrix.at(i, col_a);
        row.y_b = matrix.at(i, col_b);
        row.error_a = meta_error(y_top, row.y_a);
        row.error_b = meta_error(y_top, row.y_b);
        if (row.error_a > kLogErrorFloor) row.log_error_a = std::log(row.error_a);
        if (row.error_b > kLogErrorFloor) row.log_error_b = std::log(row.error_b);

        perf_a.push_back(row.y_a);
        perf_b.push_back(row.y_b);
        err_a.push_back(row.error_a);
        err_b.push_back(row.error_b);
        report.per_dataset.push_back(std::move(row));
    }

    if (perf_a.size() < 2) {
        throw ValidationError("compare_selectors: fewer than 2 comparable datasets");
    }
    report.n = perf_a.size();
    report.performance = make_view(perf_a, perf_b);
    report.error = make_view(err_a, err_b);
    return report;
}

void save_comparison(const std::filesystem::path& path, const ComparisonReport& report) {
    nlohmann::json j;
    j["format"] = "adselect-comparison";
    j["metric"] = metric_name(report.metric);
    j["n"] = report.n;
    j["skipped"] = report.skipped;
    j["performance"] = view_to_json(report.performance);
    j["error"] = view_to_json(report.error);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.per_dataset) {
        nlohmann::json row;
        row["dataset"] = r.dataset;
        row["top_detector"] = r.top_detector;
        row["y_top"] = r.y_top;
        row["selected_a"] = r.selected_a;
        row["selected_b"] = r.selected_b;
        row["y_a"] = r.y_a;
        row["y_b"] = r.y_b;
        row["error_a"] = r.error_a;
        row["error_b"] = r.error_b;
        row["log_error_a"] = r.log_error_a ? nlohmann::json(*r.log_error_a) : nlohmann::json();
        row["log_error_b"] = r.log_error_b ? nlohmann::json(*r.log_error_b) : nlohmann::json();
        rows.push_back(std::move(row));
    }
    j["per_dataset"] = std::move(rows);
    std::ofstream out(path);
    if (!out) throw IoError("cannot write comparison report: " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace adsel
