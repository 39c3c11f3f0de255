#include "oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oracle {

namespace {

std::size_t rows_of(const Matrix& m) { return m.size(); }
std::size_t cols_of(const Matrix& m) { return m.empty() ? 0 : m[0].size(); }

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

// neighbor order: (distance, index) ascending, self excluded
std::vector<std::size_t> neighbor_order(const Matrix& data, std::size_t i) {
    std::vector<std::pair<double, std::size_t>> pairs;
    for (std::size_t j = 0; j < data.size(); ++j) {
        if (j == i) continue;
        pairs.emplace_back(euclidean(data[i], data[j]), j);
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::size_t> order;
    for (const auto& p : pairs) order.push_back(p.second);
    return order;
}

std::vector<double> column_means(const Matrix& data) {
    std::vector<double> mu(cols_of(data), 0.0);
    for (const auto& row : data) {
        for (std::size_t c = 0; c < mu.size(); ++c) mu[c] += row[c];
    }
    for (double& v : mu) v /= static_cast<double>(data.size());
    return mu;
}

Matrix covariance_about(const Matrix& data, const std::vector<double>& mu) {
    const std::size_t n = rows_of(data);
    const std::size_t k = cols_of(data);
    Matrix cov(k, std::vector<double>(k, 0.0));
    for (const auto& row : data) {
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) {
                cov[a][b] += (row[a] - mu[a]) * (row[b] - mu[b]);
            }
        }
    }
    for (auto& r : cov) {
        for (double& v : r) v /= static_cast<double>(n - 1);
    }
    return cov;
}

double mahalanobis_explicit(const std::vector<double>& z, const std::vector<double>& mu,
                            const Matrix& cov_inv) {
    const std::size_t k = z.size();
    std::vector<double> d(k);
    for (std::size_t i = 0; i < k; ++i) d[i] = z[i] - mu[i];
    double q = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) q += d[a] * cov_inv[a][b] * d[b];
    }
    return std::sqrt(std::max(q, 0.0));
}

} // namespace

Matrix invert(Matrix m) {
    const std::size_t k = m.size();
    Matrix inv(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (m[pivot][col] == 0.0) throw std::runtime_error("oracle: singular matrix");
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double scale = m[col][col];
        for (std::size_t c = 0; c < k; ++c) {
            m[col][c] /= scale;
            inv[col][c] /= scale;
        }
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double factor = m[r][col];
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c < k; ++c) {
                m[r][c] -= factor * m[col][c];
                inv[r][c] -= factor * inv[col][c];
            }
        }
    }
    return inv;
}

Matrix regularized_covariance(const Matrix& data) {
    Matrix cov = covariance_about(data, column_means(data));
    const std::size_t k = cov.size();
    double trace = 0.0;
    for (std::size_t i = 0; i < k; ++i) trace += cov[i][i];
    const double lambda = std::max(1e-6 * trace / static_cast<double>(k), 1e-12);
    for (std::size_t i = 0; i < k; ++i) cov[i][i] += lambda;
    return cov;
}

double percentile_linear(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (pos - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

std::vector<double> global_profile(const Matrix& data) {
    const std::size_t n = rows_of(data);
    const Matrix cov_inv = invert(regularized_covariance(data));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        // mean of all other observations, recomputed from scratch
        std::vector<double> mu(cols_of(data), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::size_t c = 0; c < mu.size(); ++c) mu[c] += data[j][c];
        }
        for (double& v : mu) v /= static_cast<double>(n - 1);
        out[i] = mahalanobis_explicit(data[i], mu, cov_inv);
    }
    return out;
}

std::vector<double> local_profile(const Matrix& data, int s) {
    const std::size_t n = rows_of(data);
    const auto s_eff = static_cast<std::size_t>(
        std::min<int>(s, static_cast<int>(n) - 1));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<std::size_t> order = neighbor_order(data, i);
        Matrix neigh;
        for (std::size_t m = 0; m < s_eff; ++m) neigh.push_back(data[order[m]]);
        const std::vector<double> mu = column_means(neigh);
        Matrix cov = covariance_about(neigh, mu);
        double trace = 0.0;
        for (std::size_t d = 0; d < cov.size(); ++d) trace += cov[d][d];
        const double lambda = std::max(1e-6 * trace / static_cast<double>(cov.size()), 1e-12);
        for (std::size_t d = 0; d < cov.size(); ++d) cov[d][d] += lambda;
        out[i] = mahalanobis_explicit(data[i], mu, invert(std::move(cov)));
    }
    return out;
}

std::array<double, 4> profile_features(const std::vector<double>& values) {
    const double hi = *std::max_element(values.begin(), values.end());
    const double lo = *std::min_element(values.begin(), values.end());
    const double tr = hi - lo;
    if (tr == 0.0) return {0.0, 0.0, 0.0, 0.0};
    const double p25 = percentile_linear(values, 0.25);
    const double p50 = percentile_linear(values, 0.50);
    const double p75 = percentile_linear(values, 0.75);
    return {tr, (p75 - p25) / tr, (hi - p50) / tr, (hi - p75) / tr};
}

double locality(const std::vector<double>& local, const std::vector<double>& global) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < local.size(); ++i) {
        if (global[i] > 1e-12) {
            sum += local[i] / global[i];
            ++count;
        }
    }
    return count ? sum / static_cast<double>(count) : 0.0;
}

std::vector<double> extract19(const Matrix& data) {
    const std::vector<double> zg = global_profile(data);
    const std::vector<double> z20 = local_profile(data, 20);
    const std::vector<double> z60 = local_profile(data, 60);
    const std::vector<double> z80 = local_profile(data, 80);
    std::vector<double> out;
    for (const auto* p : {&zg, &z20, &z60, &z80}) {
        const auto f = profile_features(*p);
        out.insert(out.end(), f.begin(), f.end());
    }
    out.push_back(locality(z20, zg));
    out.push_back(locality(z60, zg));
    out.push_back(locality(z80, zg));
    return out;
}

double auc_pairwise(const std::vector<double>& scores, const std::vector<int>& labels) {
    long long num2 = 0;
    long long pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j]) num2 += 2;
            else if (scores[i] == scores[j]) num2 += 1;
        }
    }
    return static_cast<double>(num2) / static_cast<double>(2 * pairs);
}

long long auc_numerator_doubled(const std::vector<double>& scores,
                                const std::vector<int>& labels) {
    long long num2 = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            if (scores[i] > scores[j]) num2 += 2;
            else if (scores[i] == scores[j]) num2 += 1;
        }
    }
    return num2;
}

double ap_cumulative(const std::vector<double>& scores, const std::vector<int>& labels) {
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    long long n_pos = std::count(labels.begin(), labels.end(), 1);
    double sum = 0.0;
    long long tp = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (labels[order[k]] == 1) {
            ++tp;
            sum += static_cast<double>(tp) / static_cast<double>(k + 1);
        }
    }
    return sum / static_cast<double>(n_pos);
}

std::vector<double> knn_mean(const Matrix& data, int k) {
    const std::size_t n = rows_of(data);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto order = neighbor_order(data, i);
        double sum = 0.0;
        for (int m = 0; m < k; ++m) sum += euclidean(data[i], data[order[static_cast<std::size_t>(m)]]);
        out[i] = sum / k;
    }
    return out;
}

std::vector<double> knn_largest(const Matrix& data, int k) {
    const std::size_t n = rows_of(data);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto order = neighbor_order(data, i);
        out[i] = euclidean(data[i], data[order[static_cast<std::size_t>(k - 1)]]);
    }
    return out;
}

std::vector<double> lof(const Matrix& data, int k) {
    const std::size_t n = rows_of(data);
    const auto ks = static_cast<std::size_t>(k);
    std::vector<std::vector<std::size_t>> neighbors(n);
    std::vector<double> k_dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto order = neighbor_order(data, i);
        neighbors[i].assign(order.begin(), order.begin() + static_cast<long>(ks));
        k_dist[i] = euclidean(data[i], data[order[ks - 1]]);
    }
    std::vector<double> lrd(n);
    for (std::size_t i = 0; i < n; ++i) {
        double reach = 0.0;
        for (std::size_t o : neighbors[i]) {
            reach += std::max(k_dist[o], euclidean(data[i], data[o]));
        }
        lrd[i] = 1.0 / std::max(reach / static_cast<double>(ks), 1e-10);
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t o : neighbors[i]) sum += lrd[o];
        out[i] = sum / static_cast<double>(ks) / lrd[i];
    }
    return out;
}

std::vector<double> hbos(const Matrix& data, int n_bins) {
    const std::size_t n = rows_of(data);
    const std::size_t kk = cols_of(data);
    std::vector<double> out(n, 0.0);
    for (std::size_t c = 0; c < kk; ++c) {
        double lo = data[0][c], hi = data[0][c];
        for (const auto& row : data) {
            lo = std::min(lo, row[c]);
            hi = std::max(hi, row[c]);
        }
        if (hi <= lo) continue;
        const double width = (hi - lo) / n_bins;
        std::vector<long long> counts(static_cast<std::size_t>(n_bins), 0);
        auto bin_index = [&](double v) {
            auto b = static_cast<long long>((v - lo) / width);
            if (b >= n_bins) b = n_bins - 1;
            if (b < 0) b = 0;
            return static_cast<std::size_t>(b);
        };
        for (const auto& row : data) ++counts[bin_index(row[c])];
        const long long max_count = *std::max_element(counts.begin(), counts.end());
        for (std::size_t i = 0; i < n; ++i) {
            const long long cnt = counts[bin_index(data[i][c])];
            const double height = cnt == 0
                                      ? 1e-9
                                      : static_cast<double>(cnt) / static_cast<double>(max_count);
            out[i] += -std::log(height);
        }
    }
    return out;
}

std::vector<double> pca(const Matrix& data) {
    const auto n = static_cast<Eigen::Index>(rows_of(data));
    const auto k = static_cast<Eigen::Index>(cols_of(data));
    Eigen::MatrixXd x(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index c = 0; c < k; ++c) x(i, c) = data[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    }
    const Eigen::RowVectorXd mean = x.colwise().mean();
    const Eigen::MatrixXd centered = x.rowwise() - mean;
    const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);

    // alternate route: eigendecomposition of the covariance
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    std::vector<std::pair<double, Eigen::Index>> by_value;
    for (Eigen::Index j = 0; j < k; ++j) {
        by_value.emplace_back(std::max(eig.eigenvalues()[j], 0.0), j);
    }
    std::sort(by_value.rbegin(), by_value.rend());

    const double total = cov.trace();
    if (!(total > 0.0)) return std::vector<double>(static_cast<std::size_t>(n), 0.0);
    Eigen::Index m = k;
    double cum = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
        cum += by_value[static_cast<std::size_t>(j)].first;
        if (cum >= 0.95 * total) {
            m = j + 1;
            break;
        }
    }
    double retained = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) retained += by_value[static_cast<std::size_t>(j)].first;
    const double residual_mass = total - retained;
    const double floor = 1e-12 * by_value[0].first;

    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = 0.0;
        double used = 0.0;
        for (Eigen::Index j = 0; j < m; ++j) {
            const double proj = centered.row(i).dot(eig.eigenvectors().col(by_value[static_cast<std::size_t>(j)].second));
            s += proj * proj / std::max(by_value[static_cast<std::size_t>(j)].first, floor);
            used += proj * proj;
        }
        if (residual_mass > floor) {
            const double resid = std::max(centered.row(i).squaredNorm() - used, 0.0);
            s += resid / residual_mass;
        }
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

std::vector<double> copod(const Matrix& data) {
    const std::size_t n = rows_of(data);
    const std::size_t kk = cols_of(data);
    const double nn = static_cast<double>(n);
    std::vector<double> out(n, 0.0);
    for (std::size_t c = 0; c < kk; ++c) {
        double mean = 0.0;
        for (const auto& row : data) mean += row[c];
        mean /= nn;
        double m2 = 0.0, m3 = 0.0;
        for (const auto& row : data) {
            const double d = row[c] - mean;
            m2 += d * d;
            m3 += d * d * d;
        }
        m2 /= nn;
        m3 /= nn;
        const double skew = m2 > 0 ? m3 / std::pow(m2, 1.5) : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // counting form of the average-rank ECDF
            long long less = 0, equal = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (data[j][c] < data[i][c]) ++less;
                else if (data[j][c] == data[i][c]) ++equal;
            }
            const double rank = static_cast<double>(less) + 0.5 * static_cast<double>(equal + 1);
            const double u_left = rank / nn;
            const double u_right = (nn + 1.0 - rank) / nn;
            const double u_skew = skew < 0 ? u_left : u_right;
            out[i] += std::max({-std::log(u_left), -std::log(u_right), -std::log(u_skew)});
        }
    }
    return out;
}

std::vector<double> abod(const Matrix& data, int k) {
    const std::size_t n = rows_of(data);
    const std::size_t kk = cols_of(data);
    const auto ks = static_cast<std::size_t>(k);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto order = neighbor_order(data, i);
        std::vector<double> ws;
        for (std::size_t a = 0; a < ks; ++a) {
            for (std::size_t b = a + 1; b < ks; ++b) {
                double dot = 0.0, na2 = 0.0, nb2 = 0.0;
                for (std::size_t c = 0; c < kk; ++c) {
                    const double da = data[order[a]][c] - data[i][c];
                    const double db = data[order[b]][c] - data[i][c];
                    dot += da * db;
                    na2 += da * da;
                    nb2 += db * db;
                }
                if (std::sqrt(na2) < 1e-12 || std::sqrt(nb2) < 1e-12) continue;
                ws.push_back(dot / (na2 * nb2));
            }
        }
        double var = 0.0;
        if (!ws.empty()) {
            double mean = 0.0;
            for (double w : ws) mean += w;
            mean /= static_cast<double>(ws.size());
            for (double w : ws) var += (w - mean) * (w - mean);
            var /= static_cast<double>(ws.size());
        }
        out[i] = -var;
    }
    return out;
}

namespace {

double t_pdf(double x, double nu) {
    const double ln = std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) -
                      0.5 * std::log(nu * 3.14159265358979323846) -
                      (nu + 1.0) / 2.0 * std::log1p(x * x / nu);
    return std::exp(ln);
}

double simpson(double a, double b, double fa, double fm, double fb, double nu, double tol,
               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = t_pdf(lm, nu), frm = t_pdf(rm, nu);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson(a, m, fa, flm, fm, nu, tol / 2.0, depth - 1) +
           simpson(m, b, fm, frm, fb, nu, tol / 2.0, depth - 1);
}

} // namespace

double t_two_sided_p(double t, int df) {
    const double nu = df;
    const double hi = std::abs(t);
    if (hi == 0.0) return 1.0;
    const double m = 0.5 * hi;
    const double integral = simpson(0.0, hi, t_pdf(0.0, nu), t_pdf(m, nu), t_pdf(hi, nu), nu,
                                    1e-13, 40);
    return std::max(0.0, 1.0 - 2.0 * integral);
}

} // namespace oracle
