#include "adselect/detectors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace adsel {

namespace {

constexpr double kVarianceShare = 0.95;
constexpr double kRelativeFloor = 1e-12;

} // namespace

AnomalyScores pca_scores(const Dataset& ds) {
    const Eigen::Index n = ds.n();
    if (n < 3) throw ValidationError("pca_scores: need at least 3 observations");

    const Eigen::VectorXd mean = ds.X.colwise().mean();
    const Eigen::MatrixXd centered = ds.X.rowwise() - mean.transpose();

    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    const Eigen::VectorXd singular = svd.singularValues();
    const Eigen::Index r = singular.size();
    Eigen::VectorXd eigenvalues(r);
    for (Eigen::Index j = 0; j < r; ++j) {
        eigenvalues[j] = singular[j] * singular[j] / static_cast<double>(n - 1);
    }
    const double total = eigenvalues.sum();
    if (!(total > 0.0)) {
        return AnomalyScores(static_cast<std::size_t>(n), 0.0);
    }

    // smallest m capturing >= 95% of the variance
    Eigen::Index m = r;
    double cum = 0.0;
    for (Eigen::Index j = 0; j < r; ++j) {
        cum += eigenvalues[j];
        if (cum >= kVarianceShare * total) {
            m = j + 1;
            break;
        }
    }
    const double residual_mass = total - eigenvalues.head(m).sum();
    const double floor = kRelativeFloor * eigenvalues[0];

    const Eigen::MatrixXd projections = centered * svd.matrixV(); // n x r

    AnomalyScores scores(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            s += projections(i, j) * projections(i, j) / std::max(eigenvalues[j], floor);
        }
        if (residual_mass > floor) {
            double resid = 0.0;
            for (Eigen::Index j = m; j < r; ++j) {
                resid += projections(i, j) * projections(i, j);
            }
            s += resid / residual_mass;
        }
        scores[static_cast<std::size_t>(i)] = s;
    }
    return scores;
}

} // namespace adsel
