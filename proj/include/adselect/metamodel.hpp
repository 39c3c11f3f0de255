#pragma once

#include "adselect/dataset.hpp"
#include "adselect/metafeatures.hpp"
#include "adselect/metrics.hpp"
#include "adselect/parallel.hpp"
#include "adselect/rng.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace adsel {

struct MLPConfig {
    std::vector<int> hidden{64, 64, 32};
    double dropout = 0.2;
    int max_epochs = 1000;
    int batch_size = 32;
    int patience = 50; // early-stopping epochs without val improvement
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
};

void validate_config(const MLPConfig& cfg);

// z-score scaler fitted on the training meta-features. Zero-variance
// features keep std 1 and are flagged.
struct Scaler {
    Eigen::VectorXd mean;
    Eigen::VectorXd std;
    std::vector<std::uint8_t> zero_variance;

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

struct EpochLog {
    double train_loss = 0; // mean over mini-batches, dropout active
    double val_loss = 0;   // full validation pass, dropout off
};

// MLP regressor mapping meta-features to one predicted performance value
// per detector. Hidden layers are affine+ReLU; the output layer is linear,
// so predictions may leave [0,1] and are used for ranking only.
struct MetaModel {
    MLPConfig config;
    std::vector<Eigen::MatrixXd> weights; // layer l: out x in
    std::vector<Eigen::VectorXd> biases;
    Scaler scaler;
    std::vector<std::string> detector_ids;
    Metric metric = Metric::auc;
    std::vector<EpochLog> training_log;
    int best_epoch = -1; // epoch whose weights were restored

    Eigen::Index input_dim() const { return scaler.mean.size(); }
    Eigen::Index output_dim() const { return biases.empty() ? 0 : biases.back().size(); }
};

enum class ForwardMode { infer, train };

// Standardize, then affine+ReLU per hidden layer, linear output. Inverted
// dropout is applied after each hidden layer in train mode only, drawing
// masks from dropout_rng (required in that mode). Infer is deterministic.
Eigen::VectorXd forward(const MetaModel& model, const Eigen::VectorXd& features,
                        ForwardMode mode = ForwardMode::infer, Rng* dropout_rng = nullptr);

// Minimizes masked MSE (NaN targets contribute nothing) with Adam over
// shuffled mini-batches; early-stops on validation loss and restores the
// best-epoch weights. Deterministic given config.seed.
MetaModel train_metamodel(const Eigen::MatrixXd& train_features,
                          const Eigen::MatrixXd& train_targets,
                          const Eigen::MatrixXd& val_features,
                          const Eigen::MatrixXd& val_targets,
                          const MLPConfig& config,
                          std::vector<std::string> detector_ids,
                          Metric metric);

// Max relative error between analytic and central finite-difference
// gradients of the masked MSE loss, over every weight and bias.
double gradient_check(const MetaModel& model, const Eigen::VectorXd& features,
                      const Eigen::VectorXd& targets, double epsilon);

// JSON round-trip with shortest round-trip number formatting: a reloaded
// model produces bit-identical forward outputs.
void save_model(const std::filesystem::path& path, const MetaModel& model);
MetaModel load_model(const std::filesystem::path& path);

struct SelectionReport {
    std::string dataset;
    // (detector id, predicted value) in model detector order; may be empty
    // for baseline selectors that carry no predictions.
    std::vector<std::pair<std::string, double>> predicted;
    std::string selected;
    double selected_predicted = 0;
};

// Extract meta-features, run the model, pick the argmax detector
// (first-index tie-break). Labels are never consulted.
SelectionReport select(const MetaModel& model, const Dataset& ds,
                       ExecMode exec = ExecMode::parallel);

void save_reports(const std::filesystem::path& path,
                  const std::vector<SelectionReport>& reports);
std::vector<SelectionReport> load_reports(const std::filesystem::path& path);
std::string report_to_json_string(const SelectionReport& report);

} // namespace adsel
