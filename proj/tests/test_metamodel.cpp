#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adselect/metamodel.hpp"

#include "helpers.hpp"

using namespace adsel;

namespace {

// hand-rolled model with given layer sizes and zeroed weights
MetaModel blank_model(int inputs, std::vector<int> hidden, int outputs) {
    MetaModel model;
    model.config.hidden = hidden;
    model.config.dropout = 0.0;
    model.scaler.mean = Eigen::VectorXd::Zero(inputs);
    model.scaler.std = Eigen::VectorXd::Ones(inputs);
    model.scaler.zero_variance.assign(static_cast<std::size_t>(inputs), 0);
    std::vector<int> sizes{inputs};
    for (int h : hidden) sizes.push_back(h);
    sizes.push_back(outputs);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        model.weights.emplace_back(
            Eigen::MatrixXd::Zero(sizes[l + 1], sizes[l]));
        model.biases.emplace_back(Eigen::VectorXd::Zero(sizes[l + 1]));
    }
    for (int j = 0; j < outputs; ++j) model.detector_ids.push_back("D" + std::to_string(j));
    return model;
}

MetaModel random_model(std::uint64_t seed, int inputs, std::vector<int> hidden, int outputs) {
    MetaModel model = blank_model(inputs, std::move(hidden), outputs);
    Rng rng(seed);
    for (auto& w : model.weights) {
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = rng.normal() * 0.5;
        }
    }
    for (auto& b : model.biases) {
        for (Eigen::Index r = 0; r < b.size(); ++r) b(r) = rng.normal() * 0.1;
    }
    return model;
}

Eigen::VectorXd random_vector(std::uint64_t seed, int n) {
    Rng rng(seed);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    return v;
}

} // namespace

TEST_CASE("forward of an all-zero network is zero") {
    const MetaModel model = blank_model(19, {8, 4}, 3);
    const Eigen::VectorXd out = forward(model, random_vector(1, 19));
    for (Eigen::Index i = 0; i < out.size(); ++i) CHECK(out[i] == 0.0);
}

TEST_CASE("forward in infer mode is deterministic") {
    const MetaModel model = random_model(2, 19, {16, 8}, 4);
    const Eigen::VectorXd x = random_vector(3, 19);
    const Eigen::VectorXd a = forward(model, x);
    const Eigen::VectorXd b = forward(model, x);
    CHECK(a == b);
}

TEST_CASE("forward matches a hand-computed tiny network") {
    // 2 inputs -> 1 hidden ReLU unit -> 2 outputs
    MetaModel model = blank_model(2, {1}, 2);
    model.weights[0] << 0.5, -1.0;
    model.biases[0] << 0.25;
    model.weights[1] << 2.0, -3.0;
    model.biases[1] << 0.1, 0.2;

    Eigen::VectorXd x(2);
    x << 1.0, 0.5;
    // hidden pre-activation: 0.5*1 - 1*0.5 + 0.25 = 0.25 -> relu 0.25
    // outputs: 2*0.25 + 0.1 = 0.6 ; -3*0.25 + 0.2 = -0.55
    const Eigen::VectorXd out = forward(model, x);
    CHECK(out[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(-0.55).epsilon(1e-15));

    // negative pre-activation goes through the ReLU as zero
    Eigen::VectorXd x2(2);
    x2 << 0.0, 1.0;
    const Eigen::VectorXd out2 = forward(model, x2);
    CHECK(out2[0] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(out2[1] == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("forward validates dimensions and train mode") {
    const MetaModel model = random_model(4, 19, {8}, 2);
    CHECK_THROWS_AS(forward(model, random_vector(1, 7)), ValidationError);
    MetaModel dropout_model = model;
    dropout_model.config.dropout = 0.2;
    CHECK_THROWS_AS(forward(dropout_model, random_vector(1, 19), ForwardMode::train),
                    ValidationError);
}

namespace {

struct ToyProblem {
    Eigen::MatrixXd train_f, train_y, val_f, val_y;
};

// targets are a linear map of the first two features
ToyProblem linear_problem(std::uint64_t seed, int n_train, int n_val, int outputs) {
    Rng rng(seed);
    ToyProblem p;
    p.train_f.resize(n_train, 19);
    p.val_f.resize(n_val, 19);
    p.train_y.resize(n_train, outputs);
    p.val_y.resize(n_val, outputs);
    auto fill = [&](Eigen::MatrixXd& f, Eigen::MatrixXd& y) {
        for (Eigen::Index i = 0; i < f.rows(); ++i) {
            for (Eigen::Index c = 0; c < 19; ++c) f(i, c) = rng.normal();
            for (Eigen::Index j = 0; j < y.cols(); ++j) {
                y(i, j) = 0.3 * f(i, 0) - 0.2 * f(i, 1) + 0.05 * static_cast<double>(j);
            }
        }
    };
    fill(p.train_f, p.train_y);
    fill(p.val_f, p.val_y);
    return p;
}

double masked_mse_of(const MetaModel& model, const Eigen::MatrixXd& f,
                     const Eigen::MatrixXd& y) {
    double sum = 0.0;
    std::size_t count = 0;
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
        const Eigen::VectorXd out = forward(model, f.row(i));
        for (Eigen::Index j = 0; j < y.cols(); ++j) {
            if (std::isnan(y(i, j))) continue;
            sum += (out[j] - y(i, j)) * (out[j] - y(i, j));
            ++count;
        }
    }
    return sum / static_cast<double>(count);
}

} // namespace

TEST_CASE("training fits a constant target") {
    Rng rng(5);
    Eigen::MatrixXd train_f(60, 19), val_f(20, 19);
    for (Eigen::Index i = 0; i < 60; ++i) {
        for (int c = 0; c < 19; ++c) train_f(i, c) = rng.normal();
    }
    for (Eigen::Index i = 0; i < 20; ++i) {
        for (int c = 0; c < 19; ++c) val_f(i, c) = rng.normal();
    }
    const Eigen::MatrixXd train_y = Eigen::MatrixXd::Constant(60, 2, 0.5);
    const Eigen::MatrixXd val_y = Eigen::MatrixXd::Constant(20, 2, 0.5);

    MLPConfig config;
    config.hidden = {16, 8};
    config.max_epochs = 300;
    config.patience = 30;
    config.seed = 11;
    const MetaModel model =
        train_metamodel(train_f, train_y, val_f, val_y, config, {"A", "B"}, Metric::auc);

    Rng held_rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd x(19);
        for (int c = 0; c < 19; ++c) x[c] = held_rng.normal();
        const Eigen::VectorXd out = forward(model, x);
        CHECK(std::abs(out[0] - 0.5) < 0.02);
        CHECK(std::abs(out[1] - 0.5) < 0.02);
    }
}

TEST_CASE("training learns a linear mapping to high precision") {
    const ToyProblem p = linear_problem(6, 500, 100, 2);
    MLPConfig config;
    config.hidden = {32, 16};
    config.max_epochs = 400;
    config.patience = 50;
    config.seed = 3;
    const MetaModel model = train_metamodel(p.train_f, p.train_y, p.val_f, p.val_y, config,
                                            {"A", "B"}, Metric::auc);
    CHECK(masked_mse_of(model, p.val_f, p.val_y) < 1e-3);
}

TEST_CASE("early stopping restores the best-validation epoch") {
    const ToyProblem p = linear_problem(8, 120, 40, 2);
    MLPConfig config;
    config.hidden = {8};
    config.max_epochs = 200;
    config.patience = 25;
    config.seed = 4;
    const MetaModel model = train_metamodel(p.train_f, p.train_y, p.val_f, p.val_y, config,
                                            {"A", "B"}, Metric::auc);
    REQUIRE(model.best_epoch >= 0);
    REQUIRE(static_cast<std::size_t>(model.best_epoch) < model.training_log.size());

    double min_val = model.training_log[0].val_loss;
    for (const auto& e : model.training_log) min_val = std::min(min_val, e.val_loss);
    const double best_logged =
        model.training_log[static_cast<std::size_t>(model.best_epoch)].val_loss;
    CHECK(best_logged == min_val);

    // the restored weights reproduce exactly the logged best val loss
    CHECK(masked_mse_of(model, p.val_f, p.val_y) == doctest::Approx(best_logged).epsilon(1e-12));

    // training improved on the first epoch
    CHECK(best_logged <= model.training_log[0].val_loss);
    CHECK(model.training_log[static_cast<std::size_t>(model.best_epoch)].train_loss <=
          0.5 * model.training_log[0].train_loss);
}

TEST_CASE("training is deterministic in the seed") {
    const ToyProblem p = linear_problem(9, 80, 30, 3);
    MLPConfig config;
    config.hidden = {12};
    config.max_epochs = 50;
    config.seed = 21;
    const MetaModel a = train_metamodel(p.train_f, p.train_y, p.val_f, p.val_y, config,
                                        {"A", "B", "C"}, Metric::auc);
    const MetaModel b = train_metamodel(p.train_f, p.train_y, p.val_f, p.val_y, config,
                                        {"A", "B", "C"}, Metric::auc);
    for (std::size_t l = 0; l < a.weights.size(); ++l) {
        CHECK(a.weights[l] == b.weights[l]);
        CHECK(a.biases[l] == b.biases[l]);
    }
}

TEST_CASE("fully masked validation rows change nothing") {
    const ToyProblem p = linear_problem(10, 100, 30, 2);
    MLPConfig config;
    config.hidden = {10};
    config.max_epochs = 60;
    config.seed = 31;

    // same validation set plus rows whose targets are entirely NaN
    Eigen::MatrixXd padded_f(40, 19);
    Eigen::MatrixXd padded_y(40, 2);
    padded_f.topRows(30) = p.val_f;
    padded_y.topRows(30) = p.val_y;
    Rng rng(1);
    for (Eigen::Index i = 30; i < 40; ++i) {
        for (int c = 0; c < 19; ++c) padded_f(i, c) = rng.normal();
        for (int j = 0; j < 2; ++j) padded_y(i, j) = std::numeric_limits<double>::quiet_NaN();
    }

    const MetaModel dense = train_metamodel(p.train_f, p.train_y, p.val_f, p.val_y, config,
                                            {"A", "B"}, Metric::auc);
    const MetaModel masked = train_metamodel(p.train_f, p.train_y, padded_f, padded_y, config,
                                             {"A", "B"}, Metric::auc);
    REQUIRE(dense.training_log.size() == masked.training_log.size());
    for (std::size_t e = 0; e < dense.training_log.size(); ++e) {
        CHECK(dense.training_log[e].val_loss == masked.training_log[e].val_loss);
    }
    for (std::size_t l = 0; l < dense.weights.size(); ++l) {
        CHECK(dense.weights[l] == masked.weights[l]);
    }
}

TEST_CASE("training rejects bad shapes and empty inputs") {
    const ToyProblem p = linear_problem(12, 20, 10, 2);
    MLPConfig config;
    CHECK_THROWS_AS(train_metamodel(Eigen::MatrixXd(0, 19), Eigen::MatrixXd(0, 2), p.val_f,
                                    p.val_y, config, {"A", "B"}, Metric::auc),
                    ValidationError);
    Eigen::MatrixXd all_nan =
        Eigen::MatrixXd::Constant(20, 2, std::numeric_limits<double>::quiet_NaN());
    CHECK_THROWS_AS(train_metamodel(p.train_f, all_nan, p.val_f, p.val_y, config, {"A", "B"},
                                    Metric::auc),
                    ValidationError);
    MLPConfig bad = config;
    bad.dropout = 1.0;
    CHECK_THROWS_AS(train_metamodel(p.train_f, p.train_y, p.val_f, p.val_y, bad, {"A", "B"},
                                    Metric::auc),
                    ValidationError);
}

TEST_CASE("gradient_check approves the analytic gradients") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        const MetaModel model = random_model(seed, 19, {8}, 3);
        const Eigen::VectorXd x = random_vector(seed + 100, 19);
        const Eigen::VectorXd y = random_vector(seed + 200, 3);
        CHECK(gradient_check(model, x, y, 1e-5) < 1e-4);
    }
}

TEST_CASE("gradient_check handles masked targets") {
    const MetaModel model = random_model(7, 19, {6}, 3);
    const Eigen::VectorXd x = random_vector(300, 19);
    Eigen::VectorXd y = random_vector(301, 3);
    y[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK(gradient_check(model, x, y, 1e-5) < 1e-4);
}

TEST_CASE("gradient_check at a stationary point is ~0") {
    const MetaModel model = random_model(9, 19, {5}, 2);
    const Eigen::VectorXd x = random_vector(400, 19);
    const Eigen::VectorXd y = forward(model, x); // zero loss
    CHECK(gradient_check(model, x, y, 1e-5) < 1e-10);
}

TEST_CASE("gradient_check rejects a zero step") {
    const MetaModel model = random_model(10, 19, {5}, 2);
    CHECK_THROWS_AS(gradient_check(model, random_vector(1, 19), random_vector(2, 2), 0.0),
                    ValidationError);
}

TEST_CASE("model save/load round-trip preserves forward outputs bit-exactly") {
    const auto dir = testutil::temp_dir("model_io");
    const ToyProblem p = linear_problem(14, 60, 20, 8);
    MLPConfig config;
    config.hidden = {16, 8};
    config.max_epochs = 40;
    config.seed = 5;
    std::vector<std::string> ids;
    for (int i = 0; i < 8; ++i) ids.push_back("DET" + std::to_string(i));
    const MetaModel model =
        train_metamodel(p.train_f, p.train_y, p.val_f, p.val_y, config, ids, Metric::ap);

    save_model(dir / "m.json", model);
    const MetaModel back = load_model(dir / "m.json");
    CHECK(back.detector_ids == model.detector_ids);
    CHECK(back.metric == Metric::ap);
    CHECK(back.best_epoch == model.best_epoch);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::VectorXd x = random_vector(500 + static_cast<std::uint64_t>(trial), 19);
        const Eigen::VectorXd a = forward(model, x);
        const Eigen::VectorXd b = forward(back, x);
        CHECK(a == b);
    }

    // resaving the loaded model reproduces the file byte-for-byte
    save_model(dir / "m2.json", back);
    CHECK(testutil::read_file(dir / "m.json") == testutil::read_file(dir / "m2.json"));
}

TEST_CASE("model load rejects corrupted schemas") {
    const auto dir = testutil::temp_dir("model_bad");
    const MetaModel model = random_model(15, 19, {4}, 2);
    {
        MetaModel full = model;
        full.config.hidden = {4};
        save_model(dir / "ok.json", full);
    }
    std::string text = testutil::read_file(dir / "ok.json");

    // break a layer dimension
    auto pos = text.find("\"rows\": 4");
    REQUIRE(pos != std::string::npos);
    std::string broken = text;
    broken.replace(pos, 9, "\"rows\": 5");
    {
        std::ofstream out(dir / "broken.json");
        out << broken;
    }
    CHECK_THROWS_AS(load_model(dir / "broken.json"), SchemaError);

    {
        std::ofstream out(dir / "notmodel.json");
        out << "{\"format\": \"something-else\"}";
    }
    CHECK_THROWS_AS(load_model(dir / "notmodel.json"), SchemaError);
    CHECK_THROWS_AS(load_model(dir / "absent.json"), IoError);
}

TEST_CASE("select picks the argmax detector") {
    // rig an all-zero network whose output biases are the predictions
    MetaModel model = blank_model(19, {4}, 3);
    model.detector_ids = {"LOF", "KNN", "HBOS"};
    model.biases.back() << 0.2, 0.9, 0.5;

    const Dataset ds = testutil::random_dataset(42, 50, 3);
    const SelectionReport report = select(model, ds);
    CHECK(report.dataset == ds.name);
    CHECK(report.selected == "KNN");
    CHECK(report.selected_predicted == doctest::Approx(0.9));
    REQUIRE(report.predicted.size() == 3);
    CHECK(report.predicted[0].first == "LOF");

    // shifting every output bias by a constant keeps the selection
    MetaModel shifted = model;
    shifted.biases.back().array() += 10.0;
    CHECK(select(shifted, ds).selected == "KNN");

    // any increasing affine transform of the outputs keeps the selection
    MetaModel scaled = model;
    scaled.weights.back() *= 3.0;
    scaled.biases.back() = model.biases.back() * 3.0;
    scaled.biases.back().array() += 1.0;
    CHECK(select(scaled, ds).selected == "KNN");
}

TEST_CASE("selection reports round-trip through JSON") {
    const auto dir = testutil::temp_dir("reports_io");
    MetaModel model = blank_model(19, {4}, 2);
    model.detector_ids = {"A", "B"};
    model.biases.back() << 0.25, -0.5;
    std::vector<SelectionReport> reports;
    for (std::uint64_t s = 0; s < 3; ++s) {
        reports.push_back(select(model, testutil::random_dataset(s + 600, 30, 2)));
    }
    save_reports(dir / "r.json", reports);
    const auto back = load_reports(dir / "r.json");
    REQUIRE(back.size() == reports.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].dataset == reports[i].dataset);
        CHECK(back[i].selected == reports[i].selected);
        CHECK(back[i].selected_predicted == reports[i].selected_predicted);
    }
    const std::string single = report_to_json_string(reports[0]);
    CHECK(single.find("\"selected\"") != std::string::npos);
}
