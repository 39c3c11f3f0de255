#pragma once

#include <string>
#include <vector>

namespace adsel {

enum class Metric { auc, ap };

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

// Probability that a random positive outscores a random negative, ties
// counted 1/2 (Mann-Whitney via average ranks). Requires both classes.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

// Step-wise average precision over descending scores; ties keep original
// order (stable sort). Requires at least one positive.
double average_precision(const std::vector<double>& scores, const std::vector<int>& labels);

double compute_metric(Metric m, const std::vector<double>& scores,
                      const std::vector<int>& labels);

} // namespace adsel
