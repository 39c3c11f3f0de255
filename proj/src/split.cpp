#include "adselect/split.hpp"

#include "adselect/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace adsel {

namespace {

// Largest-remainder rounding of n into three parts proportional to ratios.
std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitRatios& ratios) {
    const std::array<double, 3> r{ratios.train, ratios.val, ratios.test};
    std::array<std::size_t, 3> counts{};
    std::array<double, 3> remainder{};
    std::size_t assigned = 0;
    for (int i = 0; i < 3; ++i) {
        const double exact = r[static_cast<std::size_t>(i)] * static_cast<double>(n);
        counts[static_cast<std::size_t>(i)] = static_cast<std::size_t>(std::floor(exact));
        remainder[static_cast<std::size_t>(i)] = exact - std::floor(exact);
        assigned += counts[static_cast<std::size_t>(i)];
    }
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return remainder[static_cast<std::size_t>(a)] >
                                                remainder[static_cast<std::size_t>(b)]; });
    for (std::size_t leftover = n - assigned, i = 0; i < leftover; ++i) {
        ++counts[static_cast<std::size_t>(order[i % 3])];
    }
    return counts;
}

} // namespace

std::map<std::string, Split> compute_split_assignment(
    const std::vector<std::string>& names, const SplitRatios& ratios, std::uint64_t seed) {
    if (ratios.train <= 0 || ratios.val <= 0 || ratios.test <= 0) {
        throw ValidationError("split ratios must be positive");
    }
    const double sum = ratios.train + ratios.val + ratios.test;
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError("split ratios must sum to 1, got " + std::to_string(sum));
    }
    if (names.size() < 4) {
        throw ValidationError("corpus too small to split: need at least 4 datasets");
    }
    const auto counts = split_sizes(names.size(), ratios);
    if (counts[2] == 0) {
        throw ValidationError("corpus too small for a nonempty test split");
    }

    std::vector<std::size_t> order(names.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    std::map<std::string, Split> assignment;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        Split s = pos < counts[0]              ? Split::train
                  : pos < counts[0] + counts[1] ? Split::val
                                                : Split::test;
        assignment[names[order[pos]]] = s;
    }
    return assignment;
}

Corpus split_corpus(Corpus corpus, const SplitRatios& ratios, std::uint64_t seed) {
    std::vector<std::string> names;
    names.reserve(corpus.datasets.size());
    for (const auto& ds : corpus.datasets) names.push_back(ds.name);
    corpus.split_assignment = compute_split_assignment(names, ratios, seed);
    return corpus;
}

void save_splits(const std::filesystem::path& path,
                 const std::map<std::string, Split>& assignment) {
    nlohmann::json j;
    j["format"] = "adselect-splits";
    nlohmann::json a = nlohmann::json::object();
    for (const auto& [name, s] : assignment) a[name] = split_name(s);
    j["assignments"] = a;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write splits file: " + path.string());
    out << j.dump(2) << '\n';
}

std::map<std::string, Split> load_splits(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open splits file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (!j.contains("assignments") || !j["assignments"].is_object()) {
        throw SchemaError(path.string() + ": missing 'assignments' object");
    }
    std::map<std::string, Split> assignment;
    for (const auto& [name, val] : j["assignments"].items()) {
        assignment[name] = split_from_name(val.get<std::string>());
    }
    return assignment;
}

} // namespace adsel
