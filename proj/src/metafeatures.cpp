#include "adselect/metafeatures.hpp"

#include "adselect/neighbors.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>

namespace adsel {

double mahalanobis(const Eigen::VectorXd& z, const Eigen::VectorXd& mu,
                   const Eigen::MatrixXd& cov_inv) {
    if (z.size() != mu.size() || cov_inv.rows() != z.size() || cov_inv.cols() != z.size()) {
        throw ValidationError("mahalanobis: dimension mismatch");
    }
    const Eigen::VectorXd d = z - mu;
    const double q = d.dot(cov_inv * d);
    return std::sqrt(std::max(q, 0.0));
}

Eigen::MatrixXd regularize_covariance(Eigen::MatrixXd S) {
    const double k = static_cast<double>(S.rows());
    const double lambda = std::max(1e-6 * S.trace() / k, 1e-12);
    S.diagonal().array() += lambda;
    return S;
}

namespace {

Eigen::MatrixXd sample_covariance(const RowMatrix& X) {
    const Eigen::VectorXd mu = X.colwise().mean();
    Eigen::MatrixXd centered = X.rowwise() - mu.transpose();
    return centered.transpose() * centered / static_cast<double>(X.rows() - 1);
}

double quad_form_distance(const Eigen::LDLT<Eigen::MatrixXd>& factor, const Eigen::VectorXd& d) {
    const double q = d.dot(factor.solve(d));
    return std::sqrt(std::max(q, 0.0));
}

DistanceProfile global_profile_impl(const Dataset& ds, const Eigen::MatrixXd& S, ExecMode exec) {
    const Eigen::Index n = ds.n();
    if (n < 3) throw ValidationError("global_profile: need at least 3 observations");

    const Eigen::LDLT<Eigen::MatrixXd> factor(S);
    const Eigen::VectorXd mu = ds.X.colwise().mean();
    const double nn = static_cast<double>(n);

    DistanceProfile profile;
    profile.kind = ProfileKind::global;
    profile.values.resize(static_cast<std::size_t>(n));

    auto point = [&](Eigen::Index i) {
        // leave-one-out mean: (N*mu - z_i) / (N - 1)
        const Eigen::VectorXd z = ds.X.row(i);
        const Eigen::VectorXd loo_mean = (nn * mu - z) / (nn - 1.0);
        profile.values[static_cast<std::size_t>(i)] = quad_form_distance(factor, z - loo_mean);
    };

    if (exec == ExecMode::parallel) {
#pragma omp parallel for schedule(static)
        for (Eigen::Index i = 0; i < n; ++i) point(i);
    } else {
        for (Eigen::Index i = 0; i < n; ++i) point(i);
    }
    return profile;
}

} // namespace

DistanceProfile global_profile(const Dataset& ds, ExecMode exec) {
    return global_profile_impl(ds, regularize_covariance(sample_covariance(ds.X)), exec);
}

DistanceProfile global_profile_with_cov(const Dataset& ds, const Eigen::MatrixXd& S,
                                        ExecMode exec) {
    return global_profile_impl(ds, S, exec);
}

DistanceProfile local_profile(const Dataset& ds, int s, ExecMode exec) {
    const Eigen::Index n = ds.n();
    const Eigen::Index k = ds.dim();
    if (n < 3) throw ValidationError("local_profile: need at least 3 observations");
    if (s < 2) throw ValidationError("local_profile: s must be >= 2");
    const int s_eff = std::min<int>(s, static_cast<int>(n) - 1);

    const NeighborTable table = knn_search(ds.X, s_eff, exec);

    DistanceProfile profile;
    profile.kind = ProfileKind::local;
    profile.s = s;
    profile.values.resize(static_cast<std::size_t>(n));

    auto point = [&](Eigen::Index i, Eigen::MatrixXd& neigh) {
        const auto idx = table.row_indices(i);
        for (int m = 0; m < s_eff; ++m) {
            neigh.row(m) = ds.X.row(idx[static_cast<std::size_t>(m)]);
        }
        const Eigen::VectorXd mu = neigh.colwise().mean();
        const Eigen::MatrixXd centered = neigh.rowwise() - mu.transpose();
        Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(s_eff - 1);
        const Eigen::LDLT<Eigen::MatrixXd> factor(regularize_covariance(std::move(cov)));
        const Eigen::VectorXd z = ds.X.row(i);
        profile.values[static_cast<std::size_t>(i)] = quad_form_distance(factor, z - mu);
    };

    if (exec == ExecMode::parallel) {
#pragma omp parallel
        {
            Eigen::MatrixXd neigh(s_eff, k);
#pragma omp for schedule(static)
            for (Eigen::Index i = 0; i < n; ++i) point(i, neigh);
        }
    } else {
        Eigen::MatrixXd neigh(s_eff, k);
        for (Eigen::Index i = 0; i < n; ++i) point(i, neigh);
    }
    return profile;
}

double percentile(std::vector<double> values, double q) {
    if (values.empty()) throw ValidationError("percentile of an empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

ProfileFeatures profile_features(const DistanceProfile& profile) {
    if (profile.values.empty()) throw ValidationError("profile_features: empty profile");
    std::vector<double> sorted = profile.values;
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front();
    const double hi = sorted.back();

    ProfileFeatures f;
    f.tr = hi - lo;
    if (f.tr == 0.0) return f; // constant profile: CM = TH = TQ = 0

    auto interp = [&](double q) {
        const double pos = q * static_cast<double>(sorted.size() - 1);
        const auto at = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(at);
        if (at + 1 >= sorted.size()) return sorted.back();
        return sorted[at] + frac * (sorted[at + 1] - sorted[at]);
    };
    const double p25 = interp(0.25);
    const double p50 = interp(0.50);
    const double p75 = interp(0.75);
    f.cm = (p75 - p25) / f.tr;
    f.th = (hi - p50) / f.tr;
    f.tq = (hi - p75) / f.tr;
    return f;
}

double locality(const DistanceProfile& local, const DistanceProfile& global) {
    if (local.values.size() != global.values.size()) {
        throw ValidationError("locality: profile length mismatch");
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < local.values.size(); ++i) {
        if (global.values[i] > kLocalityEps) {
            sum += local.values[i] / global.values[i];
            ++count;
        }
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

const std::array<std::string, kMetaFeatureCount>& meta_feature_names() {
    static const std::array<std::string, kMetaFeatureCount> names{
        "TR_G",   "CM_G",   "TH_G",   "TQ_G",   "TR_L20", "CM_L20", "TH_L20",
        "TQ_L20", "TR_L60", "CM_L60", "TH_L60", "TQ_L60", "TR_L80", "CM_L80",
        "TH_L80", "TQ_L80", "LOC20",  "LOC60",  "LOC80"};
    return names;
}

MetaFeatureVector extract(const Dataset& ds, ExecMode exec) {
    const DistanceProfile global = global_profile(ds, exec);
    std::array<DistanceProfile, 3> locals;
    for (std::size_t si = 0; si < kNeighborhoodSizes.size(); ++si) {
        locals[si] = local_profile(ds, kNeighborhoodSizes[si], exec);
    }

    MetaFeatureVector out;
    std::size_t pos = 0;
    auto push_features = [&](const DistanceProfile& p) {
        const ProfileFeatures f = profile_features(p);
        out.values[pos++] = f.tr;
        out.values[pos++] = f.cm;
        out.values[pos++] = f.th;
        out.values[pos++] = f.tq;
    };
    push_features(global);
    for (const auto& lp : locals) push_features(lp);
    for (const auto& lp : locals) out.values[pos++] = locality(lp, global);
    return out;
}

} // namespace adsel
