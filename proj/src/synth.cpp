#include "adselect/synth.hpp"

#include "adselect/csv.hpp"
#include "adselect/metafeatures.hpp"
#include "adselect/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace adsel {

void validate_spec(const SynthSpec& spec) {
    if (spec.n_anomalies < 1) throw ValidationError("synth: n_anomalies must be >= 1");
    if (spec.k_features < 1) throw ValidationError("synth: k_features must be >= 1");
    if (spec.n_clusters < 1) throw ValidationError("synth: n_clusters must be >= 1");
    if (spec.n_inliers < std::max(4, 2 * spec.n_clusters)) {
        throw ValidationError("synth: too few inliers for the requested clusters");
    }
    if (!(spec.scale_spread > 0.0)) throw ValidationError("synth: scale_spread must be > 0");
    double mix_sum = 0.0;
    for (double f : spec.anomaly_mix) {
        if (f < 0.0) throw ValidationError("synth: anomaly_mix fractions must be nonnegative");
        mix_sum += f;
    }
    if (std::abs(mix_sum - 1.0) > 1e-9) {
        throw ValidationError("synth: anomaly_mix must sum to 1");
    }
    const double ratio = static_cast<double>(spec.n_anomalies) /
                         static_cast<double>(spec.n_inliers + spec.n_anomalies);
    if (ratio > 0.2 + 1e-12) {
        throw ValidationError("synth: anomaly ratio must not exceed 0.2");
    }
}

double SynthDetails::cluster_mahalanobis(const Eigen::VectorXd& x, std::size_t c) const {
    const Cluster& cl = clusters[c];
    const Eigen::VectorXd local = cl.rotation.transpose() * (x - cl.mean);
    return local.cwiseQuotient(cl.sigma).norm();
}

double SynthDetails::min_cluster_mahalanobis(const Eigen::VectorXd& x) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        best = std::min(best, cluster_mahalanobis(x, c));
    }
    return best;
}

namespace {

// largest-remainder allocation of total into weights.size() buckets
std::vector<int> allocate(int total, const std::vector<double>& weights) {
    const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    std::vector<int> counts(weights.size());
    std::vector<std::pair<double, std::size_t>> remainder;
    int assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double exact = weights[i] / wsum * total;
        counts[i] = static_cast<int>(std::floor(exact));
        assigned += counts[i];
        remainder.emplace_back(-(exact - std::floor(exact)), i);
    }
    std::stable_sort(remainder.begin(), remainder.end());
    for (int i = 0; i < total - assigned; ++i) {
        ++counts[remainder[static_cast<std::size_t>(i) % remainder.size()].second];
    }
    return counts;
}

Eigen::VectorXd random_unit(Rng& rng, int dim) {
    Eigen::VectorXd v(dim);
    double norm2;
    do {
        for (int i = 0; i < dim; ++i) v[i] = rng.normal();
        norm2 = v.squaredNorm();
    } while (norm2 < 1e-12);
    return v / std::sqrt(norm2);
}

Eigen::MatrixXd random_rotation(Rng& rng, int dim) {
    Eigen::MatrixXd g(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) g(r, c) = rng.normal();
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < dim; ++c) {
        if (r(c, c) < 0) q.col(c) = -q.col(c);
    }
    return q;
}

Eigen::VectorXd sample_cluster_point(Rng& rng, const SynthDetails::Cluster& cl) {
    Eigen::VectorXd g(cl.mean.size());
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = rng.normal();
    return cl.mean + cl.rotation * cl.sigma.cwiseProduct(g);
}

Eigen::VectorXd place_at_radius(Rng& rng, const SynthDetails::Cluster& cl, double radius) {
    const Eigen::VectorXd u = random_unit(rng, static_cast<int>(cl.mean.size()));
    return cl.mean + cl.rotation * cl.sigma.cwiseProduct(u * radius);
}

} // namespace

Dataset generate_dataset(const SynthSpec& spec, SynthDetails* details_out) {
    validate_spec(spec);
    Rng rng(spec.seed);
    const int k = spec.k_features;
    const int n_clusters = spec.n_clusters;
    const double spread = std::max(spec.scale_spread, 1.0);

    // cluster shapes first, then means constrained by the shapes
    SynthDetails details;
    details.clusters.resize(static_cast<std::size_t>(n_clusters));
    for (auto& cl : details.clusters) {
        const double scale = std::exp(rng.uniform(-1.0, 1.0) * std::log(spread));
        cl.sigma.resize(k);
        for (int d = 0; d < k; ++d) cl.sigma[d] = scale * rng.uniform(0.5, 1.5);
        cl.rotation = random_rotation(rng, k);
    }

    const double box = 12.0 * spread;
    bool placed = false;
    for (int round = 0; round < 200 && !placed; ++round) {
        for (auto& cl : details.clusters) {
            cl.mean.resize(k);
            for (int d = 0; d < k; ++d) cl.mean[d] = rng.uniform(-box, box);
        }
        placed = true;
        for (int a = 0; a < n_clusters && placed; ++a) {
            for (int b = a + 1; b < n_clusters && placed; ++b) {
                const auto& ca = details.clusters[static_cast<std::size_t>(a)];
                const auto& cb = details.clusters[static_cast<std::size_t>(b)];
                const double need = 4.0 * (ca.sigma.mean() + cb.sigma.mean());
                if ((ca.mean - cb.mean).norm() < need) placed = false;
            }
        }
    }
    if (!placed) {
        throw ValidationError("synth '" + spec.name +
                              "': infeasible spec, cluster spacing failed after retries");
    }

    // inliers
    std::vector<double> weights(static_cast<std::size_t>(n_clusters));
    for (auto& w : weights) w = rng.uniform(0.5, 1.5);
    std::vector<int> per_cluster = allocate(spec.n_inliers, weights);
    for (std::size_t c = 0; c < per_cluster.size(); ++c) {
        while (per_cluster[c] < 1) {
            auto big = static_cast<std::size_t>(
                std::max_element(per_cluster.begin(), per_cluster.end()) - per_cluster.begin());
            --per_cluster[big];
            ++per_cluster[c];
        }
    }

    std::vector<Eigen::VectorXd> rows;
    rows.reserve(static_cast<std::size_t>(spec.n_inliers + spec.n_anomalies));
    for (int c = 0; c < n_clusters; ++c) {
        for (int i = 0; i < per_cluster[static_cast<std::size_t>(c)]; ++i) {
            rows.push_back(sample_cluster_point(rng, details.clusters[static_cast<std::size_t>(c)]));
        }
    }

    // global statistics of the inlier cloud, for the local-anomaly constraint
    RowMatrix inliers(spec.n_inliers, k);
    for (int i = 0; i < spec.n_inliers; ++i) inliers.row(i) = rows[static_cast<std::size_t>(i)];
    const Eigen::VectorXd global_mean = inliers.colwise().mean();
    const Eigen::MatrixXd centered = inliers.rowwise() - global_mean.transpose();
    const Eigen::MatrixXd global_cov = regularize_covariance(
        centered.transpose() * centered / static_cast<double>(spec.n_inliers - 1));
    const Eigen::LDLT<Eigen::MatrixXd> global_factor(global_cov);
    auto global_mahalanobis = [&](const Eigen::VectorXd& x) {
        const Eigen::VectorXd d = x - global_mean;
        return std::sqrt(std::max(d.dot(global_factor.solve(d)), 0.0));
    };
    std::vector<double> inlier_mah(static_cast<std::size_t>(spec.n_inliers));
    for (int i = 0; i < spec.n_inliers; ++i) {
        inlier_mah[static_cast<std::size_t>(i)] =
            global_mahalanobis(rows[static_cast<std::size_t>(i)]);
    }
    const double inlier_p99 = percentile(inlier_mah, 0.99);

    // anomaly budget; a collective group needs at least 3 members
    std::vector<int> counts = allocate(
        spec.n_anomalies, {spec.anomaly_mix[0], spec.anomaly_mix[1], spec.anomaly_mix[2]});
    if (counts[2] > 0 && counts[2] < 3) {
        if (spec.n_anomalies >= 3) {
            while (counts[2] < 3) {
                int& donor = counts[0] >= counts[1] ? counts[0] : counts[1];
                if (donor == 0) break;
                --donor;
                ++counts[2];
            }
        }
        if (counts[2] < 3) {
            counts[0] += counts[2];
            counts[2] = 0;
        }
    }

    // an anomaly is "far" once it clears every cluster by this radius;
    // sqrt(K) tracks where the inlier shells actually live
    const double far_radius = std::max(6.0, std::sqrt(static_cast<double>(k)) + 5.0);

    for (int a = 0; a < counts[0]; ++a) {
        const auto c = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n_clusters)));
        double radius = rng.uniform(far_radius, far_radius + 4.0);
        Eigen::VectorXd u = random_unit(rng, k);
        Eigen::VectorXd x =
            details.clusters[c].mean +
            details.clusters[c].rotation * details.clusters[c].sigma.cwiseProduct(u * radius);
        for (int tries = 0; details.min_cluster_mahalanobis(x) < far_radius && tries < 60;
             ++tries) {
            radius *= 1.3;
            x = details.clusters[c].mean +
                details.clusters[c].rotation * details.clusters[c].sigma.cwiseProduct(u * radius);
        }
        rows.push_back(std::move(x));
    }

    for (int a = 0; a < counts[1]; ++a) {
        bool done = false;
        for (int tries = 0; tries < 500 && !done; ++tries) {
            const auto c =
                static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n_clusters)));
            const Eigen::VectorXd x =
                place_at_radius(rng, details.clusters[c], rng.uniform(2.0, 3.0));
            if (global_mahalanobis(x) <= inlier_p99) {
                rows.push_back(x);
                done = true;
            }
        }
        if (!done) {
            throw ValidationError("synth '" + spec.name +
                                  "': infeasible spec, local anomaly placement failed");
        }
    }

    if (counts[2] > 0) {
        Eigen::VectorXd center;
        bool done = false;
        for (int tries = 0; tries < 200 && !done; ++tries) {
            const auto c =
                static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n_clusters)));
            center = place_at_radius(rng, details.clusters[c], rng.uniform(4.0, 6.0));
            if (details.min_cluster_mahalanobis(center) >= 3.5) done = true;
        }
        if (!done) {
            throw ValidationError("synth '" + spec.name +
                                  "': infeasible spec, collective placement failed");
        }
        const double micro_sigma = 0.08 * details.clusters[0].sigma.mean();
        for (int a = 0; a < counts[2]; ++a) {
            Eigen::VectorXd g(k);
            for (int d = 0; d < k; ++d) g[d] = rng.normal();
            rows.push_back(center + micro_sigma * g);
        }
    }

    const int n_total = static_cast<int>(rows.size());
    std::vector<int> labels(static_cast<std::size_t>(n_total), 0);
    for (int i = spec.n_inliers; i < n_total; ++i) labels[static_cast<std::size_t>(i)] = 1;

    // shuffle row order so anomalies are not trailing
    std::vector<int> perm(static_cast<std::size_t>(n_total));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);

    Dataset ds;
    ds.name = spec.name;
    ds.X.resize(n_total, k);
    std::vector<int> shuffled_labels(static_cast<std::size_t>(n_total));
    for (int i = 0; i < n_total; ++i) {
        ds.X.row(i) = rows[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        shuffled_labels[static_cast<std::size_t>(i)] =
            labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    }
    ds.labels = std::move(shuffled_labels);
    validate_dataset(ds);
    if (details_out) *details_out = std::move(details);
    return ds;
}

SynthSpec sample_spec(int index, std::uint64_t base_seed, const CorpusRanges& ranges) {
    Rng rng(mix_seed(base_seed, static_cast<std::uint64_t>(index), 2));
    SynthSpec spec;
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "synth_%05d", index);
        spec.name = buf;
    }
    spec.seed = mix_seed(base_seed, static_cast<std::uint64_t>(index), 3);

    const double regime = rng.uniform();
    const int n_total = rng.uniform_int(ranges.min_n, ranges.max_n);
    const double rate = rng.uniform(ranges.min_anomaly_rate, ranges.max_anomaly_rate);
    int n_anomalies = std::max(1, static_cast<int>(std::lround(rate * n_total)));

    auto clamp_k = [&](int hi) { return std::max(ranges.min_k, std::min(hi, ranges.max_k)); };

    if (regime < 0.30) { // global-heavy: distance methods shine
        spec.anomaly_mix = {1.0, 0.0, 0.0};
        spec.k_features = rng.uniform_int(ranges.min_k, ranges.max_k);
        spec.n_clusters = rng.uniform_int(ranges.min_clusters, std::min(3, ranges.max_clusters));
        spec.scale_spread = rng.uniform(1.0, 2.0);
    } else if (regime < 0.60) { // local-heavy: low dimension, contrasting scales
        spec.anomaly_mix = {0.1, 0.9, 0.0};
        spec.k_features = rng.uniform_int(ranges.min_k, clamp_k(10));
        spec.n_clusters = std::max(std::min(2, ranges.max_clusters),
                                   rng.uniform_int(ranges.min_clusters, ranges.max_clusters));
        spec.scale_spread = rng.uniform(2.5, 6.0);
    } else if (regime < 0.80) { // collective micro-cluster
        spec.anomaly_mix = {0.2, 0.0, 0.8};
        spec.k_features = rng.uniform_int(ranges.min_k, ranges.max_k);
        spec.n_clusters = rng.uniform_int(ranges.min_clusters, std::min(3, ranges.max_clusters));
        spec.scale_spread = rng.uniform(1.0, 3.0);
        n_anomalies = std::max(n_anomalies, 4);
    } else { // mixed
        double g = rng.uniform(), l = rng.uniform(), c = rng.uniform();
        const double sum = g + l + c;
        spec.anomaly_mix = {g / sum, l / sum, c / sum};
        spec.k_features = rng.uniform_int(ranges.min_k, clamp_k(20));
        spec.n_clusters = rng.uniform_int(ranges.min_clusters, ranges.max_clusters);
        spec.scale_spread = rng.uniform(1.0, 4.0);
    }

    spec.n_inliers = n_total - n_anomalies;
    spec.n_anomalies = n_anomalies;
    return spec;
}

Corpus generate_corpus(int n_datasets, std::uint64_t base_seed, const CorpusRanges& ranges,
                       ExecMode exec, std::vector<SynthSpec>* specs_out) {
    if (n_datasets < 1) throw ValidationError("generate_corpus: n_datasets must be >= 1");

    std::vector<SynthSpec> specs(static_cast<std::size_t>(n_datasets));
    for (int i = 0; i < n_datasets; ++i) {
        specs[static_cast<std::size_t>(i)] = sample_spec(i, base_seed, ranges);
    }

    std::vector<Dataset> datasets(static_cast<std::size_t>(n_datasets));
    std::vector<std::string> errors(static_cast<std::size_t>(n_datasets));
    auto one = [&](int i) {
        try {
            datasets[static_cast<std::size_t>(i)] =
                generate_dataset(specs[static_cast<std::size_t>(i)]);
        } catch (const Error& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    };
    if (exec == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n_datasets; ++i) one(i);
    } else {
        for (int i = 0; i < n_datasets; ++i) one(i);
    }
    for (const auto& e : errors) {
        if (!e.empty()) throw ValidationError(e);
    }

    Corpus corpus;
    for (auto& ds : datasets) corpus.add(std::move(ds));
    if (specs_out) *specs_out = std::move(specs);
    return corpus;
}

void write_corpus(const std::filesystem::path& dir, const Corpus& corpus,
                  const std::vector<SynthSpec>& specs) {
    std::filesystem::create_directories(dir);
    for (const auto& ds : corpus.datasets) {
        save_dataset(dir / (ds.name + ".csv"), ds, "label");
    }
    nlohmann::json manifest = nlohmann::json::array();
    for (const auto& spec : specs) {
        manifest.push_back({{"name", spec.name},
                            {"n_inliers", spec.n_inliers},
                            {"n_anomalies", spec.n_anomalies},
                            {"k_features", spec.k_features},
                            {"n_clusters", spec.n_clusters},
                            {"anomaly_mix", spec.anomaly_mix},
                            {"scale_spread", spec.scale_spread},
                            {"seed", spec.seed}});
    }
    std::ofstream out(dir / "manifest.json");
    if (!out) throw IoError("cannot write manifest in " + dir.string());
    out << manifest.dump(2) << '\n';
}

} // namespace adsel
