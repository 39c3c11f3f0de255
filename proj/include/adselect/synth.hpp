#pragma once

#include "adselect/dataset.hpp"
#include "adselect/parallel.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace adsel {

// Recipe for one synthetic dataset: a Gaussian-mixture inlier cloud with
// planted anomalies of the three classic types. Global anomalies sit far
// from every cluster, local anomalies sit on one cluster's fringe while
// staying inside the global point cloud, and collective anomalies form one
// dense off-manifold micro-cluster.
struct SynthSpec {
    std::string name = "synth";
    int n_inliers = 200;
    int n_anomalies = 10;
    int k_features = 4;
    int n_clusters = 1;
    std::array<double, 3> anomaly_mix{1.0, 0.0, 0.0}; // global, local, collective
    double scale_spread = 1.0; // cluster scales are log-uniform in [1/spread, spread]
    std::uint64_t seed = 0;
};

void validate_spec(const SynthSpec& spec);

// Generator internals exposed for inspection: per-cluster mean, rotation
// and axis deviations of the sampling transform x = mean + Q*diag(sigma)*g.
struct SynthDetails {
    struct Cluster {
        Eigen::VectorXd mean;
        Eigen::MatrixXd rotation;
        Eigen::VectorXd sigma;
    };
    std::vector<Cluster> clusters;

    double cluster_mahalanobis(const Eigen::VectorXd& x, std::size_t c) const;
    double min_cluster_mahalanobis(const Eigen::VectorXd& x) const;
};

// Fully deterministic in spec.seed. Throws ValidationError when the spec is
// infeasible (cluster spacing or local-anomaly placement fails after
// bounded retries).
Dataset generate_dataset(const SynthSpec& spec, SynthDetails* details = nullptr);

struct CorpusRanges {
    int min_n = 100, max_n = 2000;
    int min_k = 3, max_k = 50;
    int min_clusters = 1, max_clusters = 5;
    double min_anomaly_rate = 0.03, max_anomaly_rate = 0.12;
};

// Samples one spec per dataset across global-heavy, local-heavy, collective
// and mixed regimes so that no single detector wins everywhere. Each
// dataset draws its RNG stream from (base_seed, index).
Corpus generate_corpus(int n_datasets, std::uint64_t base_seed,
                       const CorpusRanges& ranges = {},
                       ExecMode exec = ExecMode::parallel,
                       std::vector<SynthSpec>* specs_out = nullptr);

SynthSpec sample_spec(int index, std::uint64_t base_seed, const CorpusRanges& ranges);

// One CSV per dataset (with a "label" column) plus a manifest.json of specs.
void write_corpus(const std::filesystem::path& dir, const Corpus& corpus,
                  const std::vector<SynthSpec>& specs);

} // namespace adsel
