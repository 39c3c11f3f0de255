#include "adselect/detectors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <set>

namespace adsel {

namespace {

struct ParamInfo {
    std::map<std::string, double> defaults;
};

const std::map<DetectorId, ParamInfo>& param_registry() {
    static const std::map<DetectorId, ParamInfo> registry{
        {DetectorId::lof, {{{"n_neighbors", 60.0}}}},
        {DetectorId::knn, {{{"n_neighbors", 60.0}}}},
        {DetectorId::kthnn, {{{"n_neighbors", 60.0}}}},
        {DetectorId::abod, {{{"n_neighbors", 60.0}}}},
        {DetectorId::hbos, {{{"n_bins", 90.0}, {"tolerance", 0.5}}}},
        {DetectorId::iforest, {{{"n_estimators", 100.0}, {"max_features", 1.0}}}},
        {DetectorId::pca, {{}}},
        {DetectorId::copod, {{}}},
    };
    return registry;
}

int int_param(const DetectorSpec& spec, const std::string& key) {
    const double v = spec.param(key);
    const double r = std::round(v);
    if (!(std::abs(v - r) < 1e-9)) {
        throw ValidationError("detector " + detector_name(spec.id) + ": parameter '" + key +
                              "' must be an integer, got " + std::to_string(v));
    }
    return static_cast<int>(r);
}

} // namespace

std::string detector_name(DetectorId id) {
    switch (id) {
    case DetectorId::lof: return "LOF";
    case DetectorId::knn: return "KNN";
    case DetectorId::kthnn: return "KTHNN";
    case DetectorId::hbos: return "HBOS";
    case DetectorId::iforest: return "IFOREST";
    case DetectorId::pca: return "PCA";
    case DetectorId::copod: return "COPOD";
    case DetectorId::abod: return "ABOD";
    }
    return "?";
}

DetectorId detector_from_name(const std::string& name) {
    for (DetectorId id : kAllDetectors) {
        if (detector_name(id) == name) return id;
    }
    throw ValidationError("unknown detector id: " + name);
}

double DetectorSpec::param(const std::string& key) const {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    const auto& defaults = param_registry().at(id).defaults;
    auto dit = defaults.find(key);
    if (dit == defaults.end()) {
        throw ValidationError("detector " + detector_name(id) + ": no parameter '" + key + "'");
    }
    return dit->second;
}

DetectorSpec make_spec(DetectorId id, std::map<std::string, double> params, std::uint64_t seed) {
    const auto& info = param_registry().at(id);
    for (const auto& [key, value] : params) {
        if (!info.defaults.contains(key)) {
            throw ValidationError("detector " + detector_name(id) + ": unknown parameter '" +
                                  key + "'");
        }
        if (!std::isfinite(value)) {
            throw ValidationError("detector " + detector_name(id) + ": parameter '" + key +
                                  "' is not finite");
        }
    }
    DetectorSpec spec;
    spec.id = id;
    spec.params = std::move(params);
    spec.seed = seed;

    // eager range validation so bad configs fail before any scoring runs
    switch (id) {
    case DetectorId::lof:
    case DetectorId::knn:
    case DetectorId::kthnn:
        if (spec.param("n_neighbors") < 1) {
            throw ValidationError("n_neighbors must be >= 1");
        }
        break;
    case DetectorId::abod:
        if (spec.param("n_neighbors") < 2) {
            throw ValidationError("ABOD: n_neighbors must be >= 2");
        }
        break;
    case DetectorId::hbos:
        if (spec.param("n_bins") < 2) {
            throw ValidationError("HBOS: n_bins must be >= 2");
        }
        break;
    case DetectorId::iforest:
        if (spec.param("n_estimators") < 1) {
            throw ValidationError("iForest: n_estimators must be >= 1");
        }
        if (!(spec.param("max_features") > 0.0) || spec.param("max_features") > 1.0) {
            throw ValidationError("iForest: max_features must be in (0, 1]");
        }
        break;
    case DetectorId::pca:
    case DetectorId::copod:
        break;
    }
    return spec;
}

std::vector<DetectorSpec> default_detector_set(std::uint64_t seed) {
    std::vector<DetectorSpec> specs;
    specs.reserve(kAllDetectors.size());
    for (DetectorId id : kAllDetectors) {
        specs.push_back(make_spec(id, {}, seed));
    }
    return specs;
}

AnomalyScores run_detector(const DetectorSpec& spec, const Dataset& ds, ExecMode exec) {
    try {
        switch (spec.id) {
        case DetectorId::lof:
            return lof_scores(ds, int_param(spec, "n_neighbors"), exec);
        case DetectorId::knn:
            return knn_scores(ds, int_param(spec, "n_neighbors"), KnnMethod::mean, exec);
        case DetectorId::kthnn:
            return knn_scores(ds, int_param(spec, "n_neighbors"), KnnMethod::largest, exec);
        case DetectorId::hbos:
            return hbos_scores(ds, int_param(spec, "n_bins"));
        case DetectorId::iforest:
            return iforest_scores(ds, int_param(spec, "n_estimators"),
                                  spec.param("max_features"), spec.seed, exec);
        case DetectorId::pca:
            return pca_scores(ds);
        case DetectorId::copod:
            return copod_scores(ds);
        case DetectorId::abod:
            return abod_scores(ds, int_param(spec, "n_neighbors"), exec);
        }
        throw ValidationError("run_detector: unhandled detector id");
    } catch (const DetectorError&) {
        throw;
    } catch (const Error& e) {
        throw DetectorError(detector_name(spec.id) + " on '" + ds.name + "': " + e.what());
    }
}

std::vector<DetectorSpec> load_detector_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open detector config: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!j.is_array()) throw SchemaError(path.string() + ": expected a JSON array of specs");
    std::vector<DetectorSpec> specs;
    for (const auto& item : j) {
        if (!item.contains("id")) throw SchemaError(path.string() + ": spec without 'id'");
        std::map<std::string, double> params;
        if (item.contains("params")) {
            for (const auto& [key, value] : item["params"].items()) {
                if (!value.is_number()) {
                    throw SchemaError(path.string() + ": parameter '" + key +
                                      "' must be numeric");
                }
                params[key] = value.get<double>();
            }
        }
        const std::uint64_t seed = item.value("seed", 0ULL);
        specs.push_back(make_spec(detector_from_name(item["id"].get<std::string>()),
                                  std::move(params), seed));
    }
    if (specs.empty()) throw SchemaError(path.string() + ": empty detector list");
    return specs;
}

void save_detector_config(const std::filesystem::path& path,
                          const std::vector<DetectorSpec>& specs) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& spec : specs) {
        nlohmann::json item;
        item["id"] = detector_name(spec.id);
        item["params"] = spec.params;
        item["seed"] = spec.seed;
        j.push_back(item);
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write detector config: " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace adsel
