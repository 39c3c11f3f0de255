// adselect: recommend an unsupervised anomaly detector for a tabular dataset.
//
// Subcommands compose the offline pipeline (synth -> featurize -> matrix ->
// train) and the online path (select), plus paired evaluation of two
// selectors. All randomness flows from explicit --seed flags.

#include "adselect/csv.hpp"
#include "adselect/detectors.hpp"
#include "adselect/metafeatures.hpp"
#include "adselect/metamodel.hpp"
#include "adselect/perf_matrix.hpp"
#include "adselect/split.hpp"
#include "adselect/stats.hpp"
#include "adselect/synth.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace adsel;

struct StageTimer {
    bool enabled = false;

    template <typename Fn>
    auto run(const std::string& stage, Fn&& fn) {
        const auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            report(stage, start);
        } else {
            auto result = fn();
            report(stage, start);
            return result;
        }
    }

private:
    void report(const std::string& stage, std::chrono::steady_clock::time_point start) const {
        if (!enabled) return;
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        std::fprintf(stderr, "[time] %-10s %.3f s\n", stage.c_str(), elapsed.count());
    }
};

std::optional<std::string> optional_label(const std::string& label) {
    if (label.empty()) return std::nullopt;
    return label;
}

// ---------------------------------------------------------------- featurize

void write_feature_header(std::ostream& out) {
    out << "dataset";
    for (const auto& name : meta_feature_names()) out << ',' << name;
    out << '\n';
}

void write_feature_row(std::ostream& out, const std::string& name, const MetaFeatureVector& mf) {
    out << name;
    for (double v : mf.values) out << ',' << format_double(v);
    out << '\n';
}

struct FeatureTable {
    std::vector<std::string> names;
    std::map<std::string, Eigen::VectorXd> rows;
};

FeatureTable load_feature_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open features: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
    {
        std::string expected = "dataset";
        for (const auto& name : meta_feature_names()) expected += "," + name;
        if (line.back() == '\r') line.pop_back();
        if (line != expected) {
            throw SchemaError(path.string() + ": unexpected feature header");
        }
    }
    FeatureTable table;
    while (std::getline(in, line)) {
        if (line.empty() && in.eof()) break;
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else if (c != '\r') {
                cur += c;
            }
        }
        fields.push_back(cur);
        if (fields.size() != kMetaFeatureCount + 1) {
            throw ParseError(path.string() + ": bad row width at '" + fields[0] + "'");
        }
        Eigen::VectorXd v(kMetaFeatureCount);
        for (int i = 0; i < kMetaFeatureCount; ++i) {
            v[i] = parse_double(fields[static_cast<std::size_t>(i) + 1],
                                path.string() + ": row '" + fields[0] + "'");
        }
        table.names.push_back(fields[0]);
        table.rows[fields[0]] = std::move(v);
    }
    if (table.names.empty()) throw ParseError(path.string() + ": no feature rows");
    return table;
}

// ------------------------------------------------------------------- train

MLPConfig load_mlp_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open MLP config: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    MLPConfig cfg;
    cfg.hidden = j.value("hidden", cfg.hidden);
    cfg.dropout = j.value("dropout", cfg.dropout);
    cfg.max_epochs = j.value("max_epochs", cfg.max_epochs);
    cfg.batch_size = j.value("batch_size", cfg.batch_size);
    cfg.patience = j.value("patience", cfg.patience);
    cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
    cfg.seed = j.value("seed", cfg.seed);
    validate_config(cfg);
    return cfg;
}

struct SplitData {
    Eigen::MatrixXd features;
    Eigen::MatrixXd targets;
    std::vector<std::string> names;
};

SplitData gather_split(const FeatureTable& features, const PerformanceMatrix& matrix,
                       const std::map<std::string, Split>& splits, Split which) {
    std::vector<std::string> names;
    for (const auto& name : matrix.dataset_names) {
        auto it = splits.find(name);
        if (it == splits.end()) {
            throw ValidationError("dataset '" + name + "' missing from split assignment");
        }
        if (it->second != which) continue;
        if (!features.rows.contains(name)) {
            throw ValidationError("dataset '" + name + "' missing from features");
        }
        names.push_back(name);
    }
    SplitData data;
    data.names = names;
    data.features.resize(static_cast<Eigen::Index>(names.size()), kMetaFeatureCount);
    data.targets.resize(static_cast<Eigen::Index>(names.size()),
                        static_cast<Eigen::Index>(matrix.cols()));
    for (std::size_t r = 0; r < names.size(); ++r) {
        data.features.row(static_cast<Eigen::Index>(r)) = features.rows.at(names[r]);
        const std::size_t row = matrix.row_index(names[r]);
        for (std::size_t c = 0; c < matrix.cols(); ++c) {
            data.targets(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                matrix.at(row, c);
        }
    }
    return data;
}

MetaModel train_from_artifacts(const FeatureTable& features, const PerformanceMatrix& matrix,
                               const std::map<std::string, Split>& splits,
                               const MLPConfig& config) {
    const SplitData train = gather_split(features, matrix, splits, Split::train);
    const SplitData val = gather_split(features, matrix, splits, Split::val);
    return train_metamodel(train.features, train.targets, val.features, val.targets, config,
                           matrix.detector_ids, matrix.metric);
}

// ------------------------------------------------------------------ pipeline

std::vector<SelectionReport> random_baseline(const std::vector<std::string>& datasets,
                                             const std::vector<std::string>& detector_ids,
                                             std::uint64_t seed) {
    Rng rng(seed);
    std::vector<SelectionReport> reports;
    for (const auto& name : datasets) {
        SelectionReport r;
        r.dataset = name;
        r.selected = detector_ids[static_cast<std::size_t>(rng.below(detector_ids.size()))];
        reports.push_back(std::move(r));
    }
    return reports;
}

// detector with the best mean measured performance over the train+val rows
std::string best_average_detector(const PerformanceMatrix& matrix,
                                  const std::map<std::string, Split>& splits) {
    std::size_t best = 0;
    double best_mean = -1.0;
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < matrix.rows(); ++i) {
            if (splits.at(matrix.dataset_names[i]) == Split::test) continue;
            if (matrix.missing(i, j)) continue;
            sum += matrix.at(i, j);
            ++count;
        }
        const double mean = count ? sum / static_cast<double>(count) : -1.0;
        if (mean > best_mean) {
            best_mean = mean;
            best = j;
        }
    }
    return matrix.detector_ids[best];
}

void print_comparison(const std::string& label, const ComparisonReport& report) {
    std::printf("%s (n=%zu%s)\n", label.c_str(), report.n,
                report.skipped ? (", skipped=" + std::to_string(report.skipped)).c_str() : "");
    std::printf("  mean %s        %.4f vs %.4f\n", metric_name(report.metric).c_str(),
                report.performance.mean_a, report.performance.mean_b);
    std::printf("  mean error     %.4f vs %.4f\n", report.error.mean_a, report.error.mean_b);
    std::printf("  paired t-test  t=%.3f df=%d p=%.3g%s\n", report.performance.t_test.t,
                report.performance.t_test.df, report.performance.t_test.p,
                report.performance.t_test.degenerate ? " (degenerate)" : "");
    std::printf("  effect size d  %.3f (%s) on performance, %.3f (%s) on error\n",
                report.performance.effect_size_d, report.performance.magnitude.c_str(),
                report.error.effect_size_d, report.error.magnitude.c_str());
}

// --------------------------------------------------------------------- main

int run(int argc, char** argv) {
    CLI::App app{"adselect: meta-learning based selection of anomaly detectors"};
    app.require_subcommand(1);
    bool timing = false;
    bool serial = false;
    app.add_flag("--timing", timing, "print wall-clock time per stage");
    app.add_flag("--serial", serial, "disable OpenMP kernels (serial reference paths)");

    // ---- synth
    auto* cmd_synth = app.add_subcommand("synth", "generate a labeled synthetic corpus");
    int synth_n = 200;
    std::uint64_t synth_seed = 0;
    std::string synth_out;
    CorpusRanges ranges;
    cmd_synth->add_option("--n", synth_n, "number of datasets");
    cmd_synth->add_option("--seed", synth_seed, "base RNG seed");
    cmd_synth->add_option("--out", synth_out, "output directory")->required();
    cmd_synth->add_option("--min-n", ranges.min_n);
    cmd_synth->add_option("--max-n", ranges.max_n);
    cmd_synth->add_option("--min-k", ranges.min_k);
    cmd_synth->add_option("--max-k", ranges.max_k);

    // ---- featurize
    auto* cmd_feat = app.add_subcommand("featurize", "compute the 19 meta-features");
    std::string feat_in, feat_corpus, feat_out, feat_label;
    cmd_feat->add_option("--in", feat_in, "single dataset CSV");
    cmd_feat->add_option("--corpus", feat_corpus, "corpus directory of CSVs");
    cmd_feat->add_option("--out", feat_out, "output CSV (default: stdout)");
    cmd_feat->add_option("--label-column", feat_label,
                         "label column to drop before feature extraction");

    // ---- score
    auto* cmd_score = app.add_subcommand("score", "run one detector over one dataset");
    std::string score_detector, score_in, score_out, score_label;
    std::vector<std::string> score_params;
    std::uint64_t score_seed = 0;
    cmd_score->add_option("--detector", score_detector, "detector id")->required();
    cmd_score->add_option("--param", score_params, "detector parameter key=value");
    cmd_score->add_option("--seed", score_seed, "seed (iforest)");
    cmd_score->add_option("--in", score_in, "dataset CSV")->required();
    cmd_score->add_option("--out", score_out, "scores CSV")->required();
    cmd_score->add_option("--label-column", score_label, "label column to drop");

    // ---- matrix
    auto* cmd_matrix = app.add_subcommand("matrix", "evaluate detectors over a labeled corpus");
    std::string matrix_corpus, matrix_detectors, matrix_out_auc, matrix_out_ap;
    std::string matrix_label = "label";
    std::uint64_t matrix_seed = 0;
    cmd_matrix->add_option("--corpus", matrix_corpus, "corpus directory")->required();
    cmd_matrix->add_option("--detectors", matrix_detectors, "detector config JSON");
    cmd_matrix->add_option("--out-auc", matrix_out_auc, "AUC matrix CSV")->required();
    cmd_matrix->add_option("--out-ap", matrix_out_ap, "AP matrix CSV")->required();
    cmd_matrix->add_option("--seed", matrix_seed, "seed for seeded detectors");
    cmd_matrix->add_option("--label-column", matrix_label, "label column name");

    // ---- train
    auto* cmd_train = app.add_subcommand("train", "train the meta-model");
    std::string train_features, train_targets, train_split, train_config, train_out;
    std::string train_metric = "AUC", train_out_split;
    std::vector<double> train_ratios;
    std::uint64_t train_split_seed = 0;
    cmd_train->add_option("--features", train_features, "meta-feature CSV")->required();
    cmd_train->add_option("--targets", train_targets, "performance matrix CSV")->required();
    cmd_train->add_option("--split", train_split, "splits JSON");
    cmd_train->add_option("--split-ratios", train_ratios,
                          "train,val,test ratios (derive splits instead of --split)")
        ->expected(3);
    cmd_train->add_option("--split-seed", train_split_seed, "seed for derived splits");
    cmd_train->add_option("--out-split", train_out_split, "where to write derived splits");
    cmd_train->add_option("--config", train_config, "MLP config JSON");
    cmd_train->add_option("--metric", train_metric, "AUC or AP");
    cmd_train->add_option("--out", train_out, "model JSON")->required();

    // ---- select
    auto* cmd_select = app.add_subcommand("select", "recommend a detector for a dataset");
    std::string select_model, select_in, select_out, select_label;
    cmd_select->add_option("--model", select_model, "model JSON")->required();
    cmd_select->add_option("--in", select_in, "dataset CSV")->required();
    cmd_select->add_option("--out", select_out, "report JSON (default: stdout)");
    cmd_select->add_option("--label-column", select_label, "label column to drop");

    // ---- evaluate
    auto* cmd_eval = app.add_subcommand("evaluate", "compare two selectors on a matrix");
    std::string eval_matrix, eval_a, eval_b, eval_out;
    std::string eval_metric = "AUC";
    cmd_eval->add_option("--matrix", eval_matrix, "performance matrix CSV")->required();
    cmd_eval->add_option("--metric", eval_metric, "AUC or AP");
    cmd_eval->add_option("--reports-a", eval_a, "selection reports JSON")->required();
    cmd_eval->add_option("--reports-b", eval_b, "selection reports JSON")->required();
    cmd_eval->add_option("--out", eval_out, "comparison report JSON")->required();

    // ---- pipeline
    auto* cmd_pipe = app.add_subcommand("pipeline", "full offline run on a synthetic corpus");
    int pipe_n = 200;
    std::uint64_t pipe_seed = 0;
    std::string pipe_metric = "AUC", pipe_out, pipe_mlp, pipe_detectors;
    CorpusRanges pipe_ranges;
    cmd_pipe->add_option("--n", pipe_n, "number of datasets");
    cmd_pipe->add_option("--seed", pipe_seed, "base seed for every stage");
    cmd_pipe->add_option("--metric", pipe_metric, "AUC or AP");
    cmd_pipe->add_option("--out", pipe_out, "output directory")->required();
    cmd_pipe->add_option("--mlp", pipe_mlp, "MLP config JSON");
    cmd_pipe->add_option("--detectors", pipe_detectors, "detector config JSON");
    cmd_pipe->add_option("--min-n", pipe_ranges.min_n);
    cmd_pipe->add_option("--max-n", pipe_ranges.max_n);
    cmd_pipe->add_option("--min-k", pipe_ranges.min_k);
    cmd_pipe->add_option("--max-k", pipe_ranges.max_k);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    StageTimer timer{timing};
    const ExecMode exec = serial ? ExecMode::serial : ExecMode::parallel;

    std::string stage = "startup";
    try {
        if (cmd_synth->parsed()) {
            stage = "synth";
            timer.run(stage, [&] {
                std::vector<SynthSpec> specs;
                const Corpus corpus = generate_corpus(synth_n, synth_seed, ranges, exec, &specs);
                write_corpus(synth_out, corpus, specs);
            });
            std::printf("wrote %d datasets to %s\n", synth_n, synth_out.c_str());
        } else if (cmd_feat->parsed()) {
            stage = "featurize";
            timer.run(stage, [&] {
                if (feat_in.empty() == feat_corpus.empty()) {
                    throw ValidationError("featurize: give exactly one of --in or --corpus");
                }
                std::vector<Dataset> datasets;
                if (!feat_in.empty()) {
                    datasets.push_back(load_dataset(feat_in, optional_label(feat_label)));
                } else {
                    Corpus corpus = load_corpus_dir(feat_corpus, optional_label(feat_label));
                    for (auto& ds : corpus.datasets) datasets.push_back(std::move(ds));
                }
                std::ofstream file;
                if (!feat_out.empty()) {
                    file.open(feat_out);
                    if (!file) throw IoError("cannot write " + feat_out);
                }
                std::ostream& out = feat_out.empty() ? std::cout : file;
                write_feature_header(out);
                for (const auto& ds : datasets) {
                    write_feature_row(out, ds.name, extract(ds, exec));
                }
            });
        } else if (cmd_score->parsed()) {
            stage = "score";
            timer.run(stage, [&] {
                std::map<std::string, double> params;
                for (const auto& kv : score_params) {
                    const auto pos = kv.find('=');
                    if (pos == std::string::npos) {
                        throw ValidationError("--param expects key=value, got '" + kv + "'");
                    }
                    params[kv.substr(0, pos)] =
                        parse_double(kv.substr(pos + 1), "--param " + kv);
                }
                const DetectorSpec spec =
                    make_spec(detector_from_name(score_detector), std::move(params), score_seed);
                const Dataset ds = load_dataset(score_in, optional_label(score_label));
                const AnomalyScores scores = run_detector(spec, ds, exec);
                std::ofstream out(score_out);
                if (!out) throw IoError("cannot write " + score_out);
                out << "row_index,score\n";
                for (std::size_t i = 0; i < scores.size(); ++i) {
                    out << i << ',' << format_double(scores[i]) << '\n';
                }
            });
        } else if (cmd_matrix->parsed()) {
            stage = "matrix";
            timer.run(stage, [&] {
                const Corpus corpus = load_corpus_dir(matrix_corpus, matrix_label);
                const std::vector<DetectorSpec> specs =
                    matrix_detectors.empty()
                        ? default_detector_set(mix_seed(matrix_seed, 0, 7))
                        : load_detector_config(matrix_detectors);
                std::vector<CellFailure> failures;
                const auto [y_auc, y_ap] = build_matrices(corpus, specs, exec, &failures);
                save_matrix_csv(matrix_out_auc, y_auc);
                save_matrix_csv(matrix_out_ap, y_ap);
                for (const auto& f : failures) {
                    std::fprintf(stderr, "missing cell: %s x %s: %s\n", f.dataset.c_str(),
                                 f.detector.c_str(), f.reason.c_str());
                }
            });
        } else if (cmd_train->parsed()) {
            stage = "train";
            timer.run(stage, [&] {
                const FeatureTable features = load_feature_csv(train_features);
                const PerformanceMatrix matrix =
                    load_matrix_csv(train_targets, metric_from_name(train_metric));
                std::map<std::string, Split> splits;
                if (!train_split.empty()) {
                    splits = load_splits(train_split);
                } else if (!train_ratios.empty()) {
                    splits = compute_split_assignment(
                        matrix.dataset_names,
                        {train_ratios[0], train_ratios[1], train_ratios[2]}, train_split_seed);
                    if (!train_out_split.empty()) save_splits(train_out_split, splits);
                } else {
                    throw ValidationError("train: give --split or --split-ratios");
                }
                const MLPConfig config =
                    train_config.empty() ? MLPConfig{} : load_mlp_config(train_config);
                const MetaModel model = train_from_artifacts(features, matrix, splits, config);
                save_model(train_out, model);
                std::printf("trained %zu epochs, best epoch %d, val loss %.6f\n",
                            model.training_log.size(), model.best_epoch,
                            model.best_epoch >= 0
                                ? model.training_log[static_cast<std::size_t>(model.best_epoch)]
                                      .val_loss
                                : 0.0);
            });
        } else if (cmd_select->parsed()) {
            stage = "select";
            timer.run(stage, [&] {
                const MetaModel model = load_model(select_model);
                const Dataset ds = load_dataset(select_in, optional_label(select_label));
                const SelectionReport report = select(model, ds, exec);
                const std::string json = report_to_json_string(report);
                if (select_out.empty()) {
                    std::cout << json << '\n';
                } else {
                    std::ofstream out(select_out);
                    if (!out) throw IoError("cannot write " + select_out);
                    out << json << '\n';
                }
            });
        } else if (cmd_eval->parsed()) {
            stage = "evaluate";
            timer.run(stage, [&] {
                const PerformanceMatrix matrix =
                    load_matrix_csv(eval_matrix, metric_from_name(eval_metric));
                const ComparisonReport report =
                    compare_selectors(matrix, load_reports(eval_a), load_reports(eval_b));
                save_comparison(eval_out, report);
                print_comparison("selector A vs selector B", report);
            });
        } else if (cmd_pipe->parsed()) {
            const std::filesystem::path out_dir = pipe_out;
            std::filesystem::create_directories(out_dir);
            const Metric metric = metric_from_name(pipe_metric);

            stage = "synth";
            std::vector<SynthSpec> specs;
            Corpus corpus = timer.run(stage, [&] {
                Corpus c = generate_corpus(pipe_n, pipe_seed, pipe_ranges, exec, &specs);
                write_corpus(out_dir / "corpus", c, specs);
                return c;
            });

            stage = "featurize";
            FeatureTable features = timer.run(stage, [&] {
                std::ofstream out(out_dir / "features.csv");
                if (!out) throw IoError("cannot write features.csv");
                write_feature_header(out);
                FeatureTable table;
                for (const auto& ds : corpus.datasets) {
                    const MetaFeatureVector mf = extract(ds, exec);
                    write_feature_row(out, ds.name, mf);
                    Eigen::VectorXd v(kMetaFeatureCount);
                    for (int i = 0; i < kMetaFeatureCount; ++i) v[i] = mf[i];
                    table.names.push_back(ds.name);
                    table.rows[ds.name] = std::move(v);
                }
                return table;
            });

            stage = "matrix";
            auto matrices = timer.run(stage, [&] {
                const auto detector_specs =
                    pipe_detectors.empty() ? default_detector_set(mix_seed(pipe_seed, 0, 7))
                                           : load_detector_config(pipe_detectors);
                std::vector<CellFailure> failures;
                auto result = build_matrices(corpus, detector_specs, exec, &failures);
                save_matrix_csv(out_dir / "yauc.csv", result.first);
                save_matrix_csv(out_dir / "yap.csv", result.second);
                for (const auto& f : failures) {
                    std::fprintf(stderr, "missing cell: %s x %s: %s\n", f.dataset.c_str(),
                                 f.detector.c_str(), f.reason.c_str());
                }
                return result;
            });
            const PerformanceMatrix& matrix =
                metric == Metric::auc ? matrices.first : matrices.second;

            stage = "split";
            const auto splits = timer.run(stage, [&] {
                auto s = compute_split_assignment(matrix.dataset_names, SplitRatios{},
                                                  mix_seed(pipe_seed, 0, 11));
                save_splits(out_dir / "splits.json", s);
                return s;
            });

            stage = "train";
            const MetaModel model = timer.run(stage, [&] {
                MLPConfig config = pipe_mlp.empty() ? MLPConfig{} : load_mlp_config(pipe_mlp);
                if (pipe_mlp.empty()) config.seed = mix_seed(pipe_seed, 0, 13);
                MetaModel m = train_from_artifacts(features, matrix, splits, config);
                save_model(out_dir / "model.json", m);
                return m;
            });

            stage = "select";
            std::vector<std::string> test_names;
            const auto reports_meta = timer.run(stage, [&] {
                std::vector<SelectionReport> reports;
                for (const auto& ds : corpus.datasets) {
                    if (splits.at(ds.name) != Split::test) continue;
                    test_names.push_back(ds.name);
                    reports.push_back(select(model, ds, exec));
                }
                save_reports(out_dir / "reports_meta.json", reports);
                return reports;
            });

            stage = "evaluate";
            timer.run(stage, [&] {
                const auto reports_random = random_baseline(
                    test_names, matrix.detector_ids, mix_seed(pipe_seed, 0, 17));
                save_reports(out_dir / "reports_random.json", reports_random);

                const std::string best_id = best_average_detector(matrix, splits);
                std::vector<SelectionReport> reports_best;
                for (const auto& name : test_names) {
                    SelectionReport r;
                    r.dataset = name;
                    r.selected = best_id;
                    reports_best.push_back(std::move(r));
                }
                save_reports(out_dir / "reports_singlebest.json", reports_best);

                const ComparisonReport vs_random =
                    compare_selectors(matrix, reports_meta, reports_random);
                save_comparison(out_dir / "eval_meta_vs_random.json", vs_random);
                const ComparisonReport vs_best =
                    compare_selectors(matrix, reports_meta, reports_best);
                save_comparison(out_dir / "eval_meta_vs_singlebest.json", vs_best);

                std::printf("pipeline complete: %d datasets, metric %s\n", pipe_n,
                            metric_name(metric).c_str());
                print_comparison("meta-learner vs random baseline", vs_random);
                print_comparison("meta-learner vs single-best baseline (" + best_id + ")",
                                 vs_best);
            });
        }
        return 0;
    } catch (const Error& e) {
        std::fprintf(stderr, "error in stage '%s': %s\n", stage.c_str(), e.what());
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    return run(argc, argv);
}
