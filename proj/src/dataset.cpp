#include "adselect/dataset.hpp"

#include <cmath>

namespace adsel {

std::string split_name(Split s) {
    switch (s) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
    }
    return "?";
}

Split split_from_name(const std::string& name) {
    if (name == "train") return Split::train;
    if (name == "val") return Split::val;
    if (name == "test") return Split::test;
    throw ValidationError("unknown split name: " + name);
}

void validate_dataset(const Dataset& ds) {
    if (ds.X.rows() < 2) {
        throw ValidationError("dataset '" + ds.name + "': need at least 2 observations, got " +
                              std::to_string(ds.X.rows()));
    }
    if (ds.X.cols() < 1) {
        throw ValidationError("dataset '" + ds.name + "': need at least 1 feature");
    }
    if (!ds.X.allFinite()) {
        throw ValidationError("dataset '" + ds.name + "': non-finite value in feature matrix");
    }
    if (ds.labels) {
        if (static_cast<Eigen::Index>(ds.labels->size()) != ds.X.rows()) {
            throw ValidationError("dataset '" + ds.name + "': label length " +
                                  std::to_string(ds.labels->size()) + " != N " +
                                  std::to_string(ds.X.rows()));
        }
        for (int v : *ds.labels) {
            if (v != 0 && v != 1) {
                throw ValidationError("dataset '" + ds.name + "': label value outside {0,1}");
            }
        }
    }
}

void Corpus::add(Dataset ds) {
    if (find(ds.name) != nullptr) {
        throw ValidationError("duplicate dataset name in corpus: " + ds.name);
    }
    datasets.push_back(std::move(ds));
}

const Dataset* Corpus::find(const std::string& name) const {
    for (const auto& ds : datasets) {
        if (ds.name == name) return &ds;
    }
    return nullptr;
}

std::vector<const Dataset*> Corpus::members(Split s) const {
    if (!split_assignment) {
        throw ValidationError("corpus has no split assignment");
    }
    std::vector<const Dataset*> out;
    for (const auto& ds : datasets) {
        auto it = split_assignment->find(ds.name);
        if (it == split_assignment->end()) {
            throw ValidationError("dataset '" + ds.name + "' has no split assignment");
        }
        if (it->second == s) out.push_back(&ds);
    }
    return out;
}

} // namespace adsel
