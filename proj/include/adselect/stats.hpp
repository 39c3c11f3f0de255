#pragma once

#include "adselect/metamodel.hpp"
#include "adselect/perf_matrix.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace adsel {

// Gap between the best measured performance on a dataset and the measured
// performance of the selected detector.
inline double meta_error(double y_top, double y_sel) { return y_top - y_sel; }

struct TTestResult {
    double t = 0;
    int df = 0;
    double p = 1;
    // Zero-variance differences: t is undefined; reported as t=0, p=1.
    bool degenerate = false;
};

// Two-sided paired t-test on a-b.
TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

// Two-sided p for Student's t with df degrees of freedom. Regularized
// incomplete beta via continued fraction, |error| < 1e-8.
double student_t_two_sided_p(double t, int df);

std::string effect_magnitude(double d); // small <= 0.2 < medium <= 0.5 < large

struct EffectSize {
    double d = 0;
    std::string magnitude = "small";
};

// (mean(a)-mean(b)) / pooled std. Throws on zero pooled variance.
EffectSize cohens_d(const std::vector<double>& a, const std::vector<double>& b);

// One comparison view (either measured performance or error samples).
struct ComparisonView {
    double mean_a = 0, mean_b = 0;
    double std_a = 0, std_b = 0;
    TTestResult t_test;
    double effect_size_d = 0;
    std::string magnitude = "small";
    bool degenerate_d = false; // zero pooled variance, d reported as 0
};

struct PerDatasetComparison {
    std::string dataset;
    std::string top_detector;
    double y_top = 0;
    std::string selected_a, selected_b;
    double y_a = 0, y_b = 0;
    double error_a = 0, error_b = 0;
    // ln(error); missing when the error is <= 1e-12
    std::optional<double> log_error_a, log_error_b;
};

struct ComparisonReport {
    Metric metric = Metric::auc;
    std::size_t n = 0;
    std::size_t skipped = 0; // datasets whose selected cell was missing
    ComparisonView performance;
    ComparisonView error;
    std::vector<PerDatasetComparison> per_dataset;
};

// Pairs the measured performance of two selectors over the matrix rows the
// report lists share, and compares both the performance and the error view.
// A report naming a dataset absent from the matrix is an error; a selection
// whose measured cell is missing drops that dataset and bumps `skipped`.
ComparisonReport compare_selectors(const PerformanceMatrix& matrix,
                                   const std::vector<SelectionReport>& reports_a,
                                   const std::vector<SelectionReport>& reports_b);

void save_comparison(const std::filesystem::path& path, const ComparisonReport& report);

} // namespace adsel
