#pragma once

#include "adselect/dataset.hpp"
#include "adselect/parallel.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace adsel {

// One score per observation; higher means more anomalous, always.
using AnomalyScores = std::vector<double>;

enum class DetectorId { lof, knn, kthnn, hbos, iforest, pca, copod, abod };

inline constexpr std::array<DetectorId, 8> kAllDetectors{
    DetectorId::lof,  DetectorId::knn,     DetectorId::kthnn, DetectorId::hbos,
    DetectorId::iforest, DetectorId::pca,  DetectorId::copod, DetectorId::abod,
};

std::string detector_name(DetectorId id);
DetectorId detector_from_name(const std::string& name);

// A detector plus its parameters. Only the documented keys are accepted:
//   lof/knn/kthnn/abod: n_neighbors (default 60)
//   hbos:               n_bins (90), tolerance (0.5, accepted and ignored)
//   iforest:            n_estimators (100), max_features (1.0)
//   pca/copod:          none
// The seed is consulted by iforest only.
struct DetectorSpec {
    DetectorId id = DetectorId::knn;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;

    double param(const std::string& key) const;
};

// Validates parameter keys and ranges; throws ValidationError.
DetectorSpec make_spec(DetectorId id, std::map<std::string, double> params = {},
                       std::uint64_t seed = 0);

// The eight detectors with their default parameters.
std::vector<DetectorSpec> default_detector_set(std::uint64_t seed = 0);

std::vector<DetectorSpec> load_detector_config(const std::filesystem::path& path);
void save_detector_config(const std::filesystem::path& path,
                          const std::vector<DetectorSpec>& specs);

enum class KnnMethod { mean, largest };

// Mean (or max, for 'largest') distance to the k nearest neighbors.
AnomalyScores knn_scores(const Dataset& ds, int k, KnnMethod method,
                         ExecMode exec = ExecMode::parallel);

// Local outlier factor over the k-neighborhood. Local reachability
// densities are floored at 1/1e10, which makes duplicated points compare
// as equally dense: a fully duplicated dataset scores all-1.
AnomalyScores lof_scores(const Dataset& ds, int k, ExecMode exec = ExecMode::parallel);

// Per-feature equal-width histograms; score = sum of -log(bin height),
// heights max-normalized per feature. Points on the top edge fall in the
// last bin; empty bins carry height 1e-9.
AnomalyScores hbos_scores(const Dataset& ds, int n_bins);

// Isolation forest, subsample 256 per tree, deterministic in the seed.
AnomalyScores iforest_scores(const Dataset& ds, int n_estimators, double max_features,
                             std::uint64_t seed, ExecMode exec = ExecMode::parallel);

// Component scores weighted by inverse eigenvalue for the components
// covering 95% of variance, plus residual energy over the discarded
// eigenvalue mass. Zero-variance data scores all-0.
AnomalyScores pca_scores(const Dataset& ds);

// Empirical-copula tail probabilities (left, right, and the skewness-
// selected side), average-rank ties; score = per-feature max of the
// negative log tails, summed over features.
AnomalyScores copod_scores(const Dataset& ds);

// Fast ABOD over the k-neighborhood: negated variance of the
// distance-weighted cosine over neighbor pairs. Pairs with a degenerate
// distance (< 1e-12) are skipped.
AnomalyScores abod_scores(const Dataset& ds, int k, ExecMode exec = ExecMode::parallel);

// Dispatches on spec.id. Detector failures surface as DetectorError.
AnomalyScores run_detector(const DetectorSpec& spec, const Dataset& ds,
                           ExecMode exec = ExecMode::parallel);

} // namespace adsel
