#include "adselect/metamodel.hpp"

#include "adselect/csv.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

namespace adsel {

void validate_config(const MLPConfig& cfg) {
    if (cfg.hidden.empty()) throw ValidationError("MLPConfig: hidden layers must be nonempty");
    for (int h : cfg.hidden) {
        if (h < 1) throw ValidationError("MLPConfig: hidden layer width must be >= 1");
    }
    if (cfg.dropout < 0.0 || cfg.dropout >= 1.0) {
        throw ValidationError("MLPConfig: dropout must be in [0, 1)");
    }
    if (cfg.batch_size < 1) throw ValidationError("MLPConfig: batch_size must be >= 1");
    if (cfg.max_epochs < 1) throw ValidationError("MLPConfig: max_epochs must be >= 1");
    if (cfg.patience < 1) throw ValidationError("MLPConfig: patience must be >= 1");
    if (!(cfg.learning_rate > 0.0)) throw ValidationError("MLPConfig: learning_rate must be > 0");
}

Eigen::VectorXd Scaler::apply(const Eigen::VectorXd& x) const {
    if (x.size() != mean.size()) {
        throw ValidationError("scaler: feature dimension mismatch");
    }
    return (x - mean).cwiseQuotient(std);
}

namespace {

Scaler fit_scaler(const Eigen::MatrixXd& features) {
    const Eigen::Index k = features.cols();
    Scaler scaler;
    scaler.mean = features.colwise().mean();
    scaler.std.resize(k);
    scaler.zero_variance.assign(static_cast<std::size_t>(k), 0);
    const double n = static_cast<double>(features.rows());
    for (Eigen::Index c = 0; c < k; ++c) {
        const double var =
            (features.col(c).array() - scaler.mean[c]).square().sum() / std::max(n - 1.0, 1.0);
        const double sd = std::sqrt(var);
        if (sd > 0.0) {
            scaler.std[c] = sd;
        } else {
            scaler.std[c] = 1.0;
            scaler.zero_variance[static_cast<std::size_t>(c)] = 1;
        }
    }
    return scaler;
}

struct ForwardTrace {
    std::vector<Eigen::MatrixXd> inputs; // input to each layer (batch x in)
    std::vector<Eigen::MatrixXd> relu;   // post-ReLU, pre-dropout, hidden only
    std::vector<Eigen::MatrixXd> masks;  // dropout masks, hidden only
    Eigen::MatrixXd output;
};

// Batched forward. When dropout_rng is null the dropout stage is skipped.
ForwardTrace forward_batch(const std::vector<Eigen::MatrixXd>& weights,
                           const std::vector<Eigen::VectorXd>& biases,
                           const Eigen::MatrixXd& batch, double dropout, Rng* dropout_rng) {
    const std::size_t n_layers = weights.size();
    ForwardTrace trace;
    trace.inputs.resize(n_layers);
    trace.relu.resize(n_layers - 1);
    trace.masks.resize(n_layers - 1);

    Eigen::MatrixXd a = batch;
    for (std::size_t l = 0; l + 1 < n_layers; ++l) {
        trace.inputs[l] = a;
        Eigen::MatrixXd z =
            (a * weights[l].transpose()).rowwise() + biases[l].transpose();
        trace.relu[l] = z.cwiseMax(0.0);
        if (dropout_rng != nullptr && dropout > 0.0) {
            Eigen::MatrixXd mask(z.rows(), z.cols());
            const double keep = 1.0 - dropout;
            for (Eigen::Index r = 0; r < mask.rows(); ++r) {
                for (Eigen::Index c = 0; c < mask.cols(); ++c) {
                    mask(r, c) = dropout_rng->uniform() < keep ? 1.0 / keep : 0.0;
                }
            }
            trace.masks[l] = std::move(mask);
            a = trace.relu[l].cwiseProduct(trace.masks[l]);
        } else {
            trace.masks[l] = Eigen::MatrixXd::Ones(z.rows(), z.cols());
            a = trace.relu[l];
        }
    }
    trace.inputs[n_layers - 1] = a;
    trace.output = (a * weights.back().transpose()).rowwise() + biases.back().transpose();
    return trace;
}

// Masked MSE: cells where the target is NaN carry neither loss nor gradient.
double masked_mse(const Eigen::MatrixXd& predictions, const Eigen::MatrixXd& targets,
                  Eigen::MatrixXd* diff_out = nullptr, std::size_t* count_out = nullptr) {
    Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(targets.rows(), targets.cols());
    double sum = 0.0;
    std::size_t count = 0;
    for (Eigen::Index r = 0; r < targets.rows(); ++r) {
        for (Eigen::Index c = 0; c < targets.cols(); ++c) {
            const double y = targets(r, c);
            if (std::isnan(y)) continue;
            const double d = predictions(r, c) - y;
            diff(r, c) = d;
            sum += d * d;
            ++count;
        }
    }
    if (count_out) *count_out = count;
    if (diff_out) *diff_out = std::move(diff);
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

struct Gradients {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
};

// Backprop of the masked MSE through the trace. Returns the batch loss.
double backward_batch(const std::vector<Eigen::MatrixXd>& weights, const ForwardTrace& trace,
                      const Eigen::MatrixXd& targets, Gradients& grads) {
    Eigen::MatrixXd diff;
    std::size_t count = 0;
    const double loss = masked_mse(trace.output, targets, &diff, &count);
    const std::size_t n_layers = weights.size();
    if (count == 0) {
        for (std::size_t l = 0; l < n_layers; ++l) {
            grads.weights[l].setZero();
            grads.biases[l].setZero();
        }
        return loss;
    }

    Eigen::MatrixXd delta = diff * (2.0 / static_cast<double>(count));
    for (std::size_t l = n_layers; l-- > 0;) {
        grads.weights[l] = delta.transpose() * trace.inputs[l];
        grads.biases[l] = delta.colwise().sum();
        if (l > 0) {
            delta = (delta * weights[l])
                        .cwiseProduct(trace.masks[l - 1])
                        .cwiseProduct((trace.relu[l - 1].array() > 0.0).cast<double>().matrix());
        }
    }
    return loss;
}

std::vector<Eigen::Index> layer_sizes(Eigen::Index input, const std::vector<int>& hidden,
                                      Eigen::Index output) {
    std::vector<Eigen::Index> sizes{input};
    for (int h : hidden) sizes.push_back(h);
    sizes.push_back(output);
    return sizes;
}

} // namespace

Eigen::VectorXd forward(const MetaModel& model, const Eigen::VectorXd& features,
                        ForwardMode mode, Rng* dropout_rng) {
    if (features.size() != model.input_dim()) {
        throw ValidationError("forward: feature dimension mismatch");
    }
    if (mode == ForwardMode::train && dropout_rng == nullptr && model.config.dropout > 0.0) {
        throw ValidationError("forward: train mode needs a dropout RNG");
    }
    const Eigen::MatrixXd batch = model.scaler.apply(features).transpose();
    const ForwardTrace trace =
        forward_batch(model.weights, model.biases, batch, model.config.dropout,
                      mode == ForwardMode::train ? dropout_rng : nullptr);
    return trace.output.row(0);
}

MetaModel train_metamodel(const Eigen::MatrixXd& train_features,
                          const Eigen::MatrixXd& train_targets,
                          const Eigen::MatrixXd& val_features,
                          const Eigen::MatrixXd& val_targets, const MLPConfig& config,
                          std::vector<std::string> detector_ids, Metric metric) {
    validate_config(config);
    const Eigen::Index n_train = train_features.rows();
    const Eigen::Index n_inputs = train_features.cols();
    const Eigen::Index n_outputs = train_targets.cols();
    if (n_train < 1) throw ValidationError("train: empty training set");
    if (train_targets.rows() != n_train) {
        throw ValidationError("train: feature/target row mismatch");
    }
    if (val_features.rows() < 1) throw ValidationError("train: empty validation set");
    if (val_features.cols() != n_inputs || val_targets.cols() != n_outputs ||
        val_targets.rows() != val_features.rows()) {
        throw ValidationError("train: validation shape mismatch");
    }
    if (!detector_ids.empty() &&
        static_cast<Eigen::Index>(detector_ids.size()) != n_outputs) {
        throw ValidationError("train: detector id count != target columns");
    }
    if ((train_targets.array() == train_targets.array()).cast<int>().sum() == 0) {
        throw ValidationError("train: all training targets are masked");
    }

    MetaModel model;
    model.config = config;
    model.detector_ids = std::move(detector_ids);
    model.metric = metric;
    model.scaler = fit_scaler(train_features);

    // standardize once up front
    Eigen::MatrixXd train_std = train_features;
    Eigen::MatrixXd val_std = val_features;
    for (Eigen::Index c = 0; c < n_inputs; ++c) {
        train_std.col(c) = (train_std.col(c).array() - model.scaler.mean[c]) / model.scaler.std[c];
        val_std.col(c) = (val_std.col(c).array() - model.scaler.mean[c]) / model.scaler.std[c];
    }

    // He-uniform init
    Rng init_rng(mix_seed(config.seed, 0, 1));
    const auto sizes = layer_sizes(n_inputs, config.hidden, n_outputs);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const Eigen::Index fan_in = sizes[l];
        const Eigen::Index fan_out = sizes[l + 1];
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
        Eigen::MatrixXd w(fan_out, fan_in);
        for (Eigen::Index r = 0; r < fan_out; ++r) {
            for (Eigen::Index c = 0; c < fan_in; ++c) {
                w(r, c) = init_rng.uniform(-limit, limit);
            }
        }
        model.weights.push_back(std::move(w));
        model.biases.push_back(Eigen::VectorXd::Zero(fan_out));
    }

    Rng shuffle_rng(mix_seed(config.seed, 1, 1));
    Rng dropout_rng(mix_seed(config.seed, 2, 1));

    // Adam state
    const std::size_t n_layers = model.weights.size();
    Gradients grads, m_state, v_state;
    grads.weights.resize(n_layers);
    grads.biases.resize(n_layers);
    for (std::size_t l = 0; l < n_layers; ++l) {
        grads.weights[l] = Eigen::MatrixXd::Zero(model.weights[l].rows(), model.weights[l].cols());
        grads.biases[l] = Eigen::VectorXd::Zero(model.biases[l].size());
        m_state.weights.push_back(grads.weights[l]);
        m_state.biases.push_back(grads.biases[l]);
        v_state.weights.push_back(grads.weights[l]);
        v_state.biases.push_back(grads.biases[l]);
    }
    constexpr double beta1 = 0.9, beta2 = 0.999, adam_eps = 1e-8;
    long step = 0;

    const int batch_size = std::min<int>(config.batch_size, static_cast<int>(n_train));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n_train));
    std::iota(order.begin(), order.end(), 0);

    std::vector<Eigen::MatrixXd> best_weights = model.weights;
    std::vector<Eigen::VectorXd> best_biases = model.biases;
    double best_val = std::numeric_limits<double>::infinity();
    int best_epoch = -1;
    int stale_epochs = 0;

    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        shuffle_rng.shuffle(order);

        double epoch_loss = 0.0;
        int n_batches = 0;
        for (Eigen::Index start = 0; start < n_train; start += batch_size) {
            const Eigen::Index count = std::min<Eigen::Index>(batch_size, n_train - start);
            Eigen::MatrixXd batch(count, n_inputs);
            Eigen::MatrixXd targets(count, n_outputs);
            for (Eigen::Index r = 0; r < count; ++r) {
                batch.row(r) = train_std.row(order[static_cast<std::size_t>(start + r)]);
                targets.row(r) = train_targets.row(order[static_cast<std::size_t>(start + r)]);
            }
            const ForwardTrace trace = forward_batch(model.weights, model.biases, batch,
                                                     config.dropout, &dropout_rng);
            epoch_loss += backward_batch(model.weights, trace, targets, grads);
            ++n_batches;

            ++step;
            const double corr1 = 1.0 - std::pow(beta1, static_cast<double>(step));
            const double corr2 = 1.0 - std::pow(beta2, static_cast<double>(step));
            for (std::size_t l = 0; l < n_layers; ++l) {
                m_state.weights[l] = beta1 * m_state.weights[l] + (1 - beta1) * grads.weights[l];
                v_state.weights[l] =
                    beta2 * v_state.weights[l] +
                    (1 - beta2) * grads.weights[l].cwiseProduct(grads.weights[l]);
                model.weights[l] -=
                    (config.learning_rate * (m_state.weights[l] / corr1).array() /
                     ((v_state.weights[l] / corr2).array().sqrt() + adam_eps))
                        .matrix();
                m_state.biases[l] = beta1 * m_state.biases[l] + (1 - beta1) * grads.biases[l];
                v_state.biases[l] = beta2 * v_state.biases[l] +
                                    (1 - beta2) * grads.biases[l].cwiseProduct(grads.biases[l]);
                model.biases[l] -= (config.learning_rate * (m_state.biases[l] / corr1).array() /
                                    ((v_state.biases[l] / corr2).array().sqrt() + adam_eps))
                                       .matrix();
            }
        }

        const ForwardTrace val_trace =
            forward_batch(model.weights, model.biases, val_std, 0.0, nullptr);
        const double val_loss = masked_mse(val_trace.output, val_targets);
        model.training_log.push_back({epoch_loss / std::max(n_batches, 1), val_loss});

        if (val_loss < best_val) {
            best_val = val_loss;
            best_epoch = epoch;
            best_weights = model.weights;
            best_biases = model.biases;
            stale_epochs = 0;
        } else {
            ++stale_epochs;
            if (stale_epochs >= config.patience) break;
        }
    }

    model.weights = std::move(best_weights);
    model.biases = std::move(best_biases);
    model.best_epoch = best_epoch;
    return model;
}

double gradient_check(const MetaModel& model, const Eigen::VectorXd& features,
                      const Eigen::VectorXd& targets, double epsilon) {
    if (!(epsilon > 0.0)) throw ValidationError("gradient_check: epsilon must be > 0");
    if (targets.size() != model.output_dim()) {
        throw ValidationError("gradient_check: target dimension mismatch");
    }

    const Eigen::MatrixXd batch = model.scaler.apply(features).transpose();
    Eigen::MatrixXd target_row = targets.transpose();

    const std::size_t n_layers = model.weights.size();
    Gradients grads;
    grads.weights.resize(n_layers);
    grads.biases.resize(n_layers);
    {
        const ForwardTrace trace =
            forward_batch(model.weights, model.biases, batch, 0.0, nullptr);
        backward_batch(model.weights, trace, target_row, grads);
    }

    MetaModel probe = model;
    auto loss_at = [&]() {
        const ForwardTrace trace =
            forward_batch(probe.weights, probe.biases, batch, 0.0, nullptr);
        return masked_mse(trace.output, target_row);
    };

    double max_rel = 0.0;
    auto check = [&](double& param, double analytic) {
        const double saved = param;
        param = saved + epsilon;
        const double up = loss_at();
        param = saved - epsilon;
        const double down = loss_at();
        param = saved;
        const double numeric = (up - down) / (2.0 * epsilon);
        const double rel = std::abs(analytic - numeric) /
                           std::max(std::abs(analytic) + std::abs(numeric), 1e-8);
        max_rel = std::max(max_rel, rel);
    };

    for (std::size_t l = 0; l < n_layers; ++l) {
        for (Eigen::Index r = 0; r < probe.weights[l].rows(); ++r) {
            for (Eigen::Index c = 0; c < probe.weights[l].cols(); ++c) {
                check(probe.weights[l](r, c), grads.weights[l](r, c));
            }
        }
        for (Eigen::Index r = 0; r < probe.biases[l].size(); ++r) {
            check(probe.biases[l](r), grads.biases[l](r));
        }
    }
    return max_rel;
}

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& arr) {
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i];
    return v;
}

constexpr int kModelVersion = 1;

} // namespace

void save_model(const std::filesystem::path& path, const MetaModel& model) {
    nlohmann::json j;
    j["format"] = "adselect-metamodel";
    j["version"] = kModelVersion;
    j["metric"] = metric_name(model.metric);
    j["detector_ids"] = model.detector_ids;
    j["config"] = {{"hidden", model.config.hidden},
                   {"dropout", model.config.dropout},
                   {"max_epochs", model.config.max_epochs},
                   {"batch_size", model.config.batch_size},
                   {"patience", model.config.patience},
                   {"learning_rate", model.config.learning_rate},
                   {"seed", model.config.seed}};
    j["scaler"] = {{"mean", vector_to_json(model.scaler.mean)},
                   {"std", vector_to_json(model.scaler.std)},
                   {"zero_variance", model.scaler.zero_variance}};
    nlohmann::json layers = nlohmann::json::array();
    for (std::size_t l = 0; l < model.weights.size(); ++l) {
        nlohmann::json layer;
        layer["rows"] = model.weights[l].rows();
        layer["cols"] = model.weights[l].cols();
        nlohmann::json w = nlohmann::json::array();
        for (Eigen::Index r = 0; r < model.weights[l].rows(); ++r) {
            for (Eigen::Index c = 0; c < model.weights[l].cols(); ++c) {
                w.push_back(model.weights[l](r, c));
            }
        }
        layer["w"] = std::move(w);
        layer["b"] = vector_to_json(model.biases[l]);
        layers.push_back(std::move(layer));
    }
    j["layers"] = std::move(layers);
    nlohmann::json train_loss = nlohmann::json::array(), val_loss = nlohmann::json::array();
    for (const auto& e : model.training_log) {
        train_loss.push_back(e.train_loss);
        val_loss.push_back(e.val_loss);
    }
    j["training_log"] = {{"train_loss", std::move(train_loss)},
                         {"val_loss", std::move(val_loss)}};
    j["best_epoch"] = model.best_epoch;

    std::ofstream out(path);
    if (!out) throw IoError("cannot write model: " + path.string());
    out << j.dump(2) << '\n';
}

MetaModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    try {
        if (j.value("format", "") != "adselect-metamodel") {
            throw SchemaError(path.string() + ": not a meta-model file");
        }
        if (j.value("version", -1) != kModelVersion) {
            throw SchemaError(path.string() + ": unsupported model version");
        }
        MetaModel model;
        model.metric = metric_from_name(j.at("metric").get<std::string>());
        model.detector_ids = j.at("detector_ids").get<std::vector<std::string>>();
        const auto& cfg = j.at("config");
        model.config.hidden = cfg.at("hidden").get<std::vector<int>>();
        model.config.dropout = cfg.at("dropout").get<double>();
        model.config.max_epochs = cfg.at("max_epochs").get<int>();
        model.config.batch_size = cfg.at("batch_size").get<int>();
        model.config.patience = cfg.at("patience").get<int>();
        model.config.learning_rate = cfg.at("learning_rate").get<double>();
        model.config.seed = cfg.at("seed").get<std::uint64_t>();
        model.scaler.mean = vector_from_json(j.at("scaler").at("mean"));
        model.scaler.std = vector_from_json(j.at("scaler").at("std"));
        model.scaler.zero_variance =
            j.at("scaler").at("zero_variance").get<std::vector<std::uint8_t>>();
        for (const auto& layer : j.at("layers")) {
            const auto rows = layer.at("rows").get<Eigen::Index>();
            const auto cols = layer.at("cols").get<Eigen::Index>();
            const auto& w = layer.at("w");
            if (static_cast<Eigen::Index>(w.size()) != rows * cols) {
                throw SchemaError(path.string() + ": layer weight size != rows*cols");
            }
            Eigen::MatrixXd weight(rows, cols);
            std::size_t pos = 0;
            for (Eigen::Index r = 0; r < rows; ++r) {
                for (Eigen::Index c = 0; c < cols; ++c) {
                    weight(r, c) = w[pos++].get<double>();
                }
            }
            const Eigen::VectorXd bias = vector_from_json(layer.at("b"));
            if (bias.size() != rows) {
                throw SchemaError(path.string() + ": layer bias size != rows");
            }
            model.weights.push_back(std::move(weight));
            model.biases.push_back(bias);
        }
        if (model.weights.empty()) throw SchemaError(path.string() + ": no layers");
        // dimension chain: input -> hidden... -> output
        const auto sizes =
            layer_sizes(model.scaler.mean.size(), model.config.hidden,
                        static_cast<Eigen::Index>(model.detector_ids.size()));
        if (model.weights.size() != sizes.size() - 1) {
            throw SchemaError(path.string() + ": layer count does not match config");
        }
        for (std::size_t l = 0; l < model.weights.size(); ++l) {
            if (model.weights[l].cols() != sizes[l] || model.weights[l].rows() != sizes[l + 1]) {
                throw SchemaError(path.string() + ": layer dimension mismatch at layer " +
                                  std::to_string(l));
            }
        }
        const auto& log = j.at("training_log");
        const auto& tl = log.at("train_loss");
        const auto& vl = log.at("val_loss");
        for (std::size_t e = 0; e < tl.size(); ++e) {
            model.training_log.push_back({tl[e].get<double>(), vl[e].get<double>()});
        }
        model.best_epoch = j.at("best_epoch").get<int>();
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

SelectionReport select(const MetaModel& model, const Dataset& ds, ExecMode exec) {
    const MetaFeatureVector mf = extract(ds, exec);
    Eigen::VectorXd features(kMetaFeatureCount);
    for (int i = 0; i < kMetaFeatureCount; ++i) features[i] = mf[i];
    const Eigen::VectorXd predictions = forward(model, features, ForwardMode::infer);

    SelectionReport report;
    report.dataset = ds.name;
    Eigen::Index best = 0;
    for (Eigen::Index j = 0; j < predictions.size(); ++j) {
        report.predicted.emplace_back(model.detector_ids[static_cast<std::size_t>(j)],
                                      predictions[j]);
        if (predictions[j] > predictions[best]) best = j;
    }
    report.selected = model.detector_ids[static_cast<std::size_t>(best)];
    report.selected_predicted = predictions[best];
    return report;
}

namespace {

nlohmann::json report_to_json(const SelectionReport& r) {
    nlohmann::json j;
    j["dataset"] = r.dataset;
    j["selected"] = r.selected;
    j["selected_predicted"] = r.selected_predicted;
    nlohmann::json ranking = nlohmann::json::array();
    auto sorted = r.predicted;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [id, value] : sorted) {
        ranking.push_back({{"detector", id}, {"predicted", value}});
    }
    j["ranking"] = std::move(ranking);
    return j;
}

} // namespace

std::string report_to_json_string(const SelectionReport& report) {
    return report_to_json(report).dump(2);
}

void save_reports(const std::filesystem::path& path,
                  const std::vector<SelectionReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        arr.push_back(report_to_json(r));
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write reports: " + path.string());
    out << arr.dump(2) << '\n';
}

std::vector<SelectionReport> load_reports(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open reports: " + path.string());
    nlohmann::json arr;
    try {
        in >> arr;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!arr.is_array()) throw SchemaError(path.string() + ": expected a JSON array");
    std::vector<SelectionReport> reports;
    for (const auto& j : arr) {
        SelectionReport r;
        r.dataset = j.at("dataset").get<std::string>();
        r.selected = j.at("selected").get<std::string>();
        r.selected_predicted = j.value("selected_predicted", 0.0);
        if (j.contains("ranking")) {
            for (const auto& item : j["ranking"]) {
                r.predicted.emplace_back(item.at("detector").get<std::string>(),
                                         item.at("predicted").get<double>());
            }
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

} // namespace adsel
