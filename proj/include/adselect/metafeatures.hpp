#pragma once

#include "adselect/dataset.hpp"
#include "adselect/parallel.hpp"

#include <array>
#include <string>
#include <vector>

namespace adsel {

inline constexpr std::array<int, 3> kNeighborhoodSizes{20, 60, 80};
inline constexpr int kMetaFeatureCount = 19;

// Guard below which a global distance is treated as zero when averaging
// local/global ratios (avoids 0/0 on duplicated points).
inline constexpr double kLocalityEps = 1e-12;

enum class ProfileKind { global, local };

// One Mahalanobis distance per observation; all values finite and >= 0.
struct DistanceProfile {
    ProfileKind kind = ProfileKind::global;
    int s = 0; // neighborhood size, local profiles only
    std::vector<double> values;
};

// TR = max-min, CM = (P75-P25)/TR, TH = (max-P50)/TR, TQ = (max-P75)/TR.
// A constant profile (TR = 0) yields CM = TH = TQ = 0.
struct ProfileFeatures {
    double tr = 0, cm = 0, th = 0, tq = 0;
};

// sqrt((z-mu)^T S_inv (z-mu)); round-off negatives are clamped to 0.
double mahalanobis(const Eigen::VectorXd& z, const Eigen::VectorXd& mu,
                   const Eigen::MatrixXd& cov_inv);

// Ridge applied to every covariance before factorization:
// S + lambda*I with lambda = max(1e-6 * trace(S)/K, 1e-12).
Eigen::MatrixXd regularize_covariance(Eigen::MatrixXd S);

// Distance of each point to the leave-one-out mean of the remaining points,
// in the metric of the full-sample covariance (ridged).
DistanceProfile global_profile(const Dataset& ds, ExecMode exec = ExecMode::parallel);

// Same, with an injected covariance in place of the sample covariance
// (used mostly by tests; S is used as-is, no ridge).
DistanceProfile global_profile_with_cov(const Dataset& ds, const Eigen::MatrixXd& S,
                                        ExecMode exec = ExecMode::parallel);

// Distance of each point to the mean of its s nearest neighbors (self
// excluded) in the metric of the neighborhood covariance. s is clamped to
// n-1 for small datasets.
DistanceProfile local_profile(const Dataset& ds, int s, ExecMode exec = ExecMode::parallel);

// Linear interpolation between closest ranks: P(q) sits at q*(n-1) on the
// sorted sample (0-indexed).
double percentile(std::vector<double> values, double q);

ProfileFeatures profile_features(const DistanceProfile& profile);

// Mean of local/global distance ratios over points whose global distance
// exceeds kLocalityEps; 0 when no point qualifies.
double locality(const DistanceProfile& local, const DistanceProfile& global);

// The 19 values in fixed order: TR,CM,TH,TQ for the global profile and the
// s=20/60/80 local profiles, then the three locality ratios.
struct MetaFeatureVector {
    std::array<double, kMetaFeatureCount> values{};

    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

const std::array<std::string, kMetaFeatureCount>& meta_feature_names();

// Pure function of the dataset; requires n >= 3.
MetaFeatureVector extract(const Dataset& ds, ExecMode exec = ExecMode::parallel);

} // namespace adsel
