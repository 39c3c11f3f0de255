#pragma once

#include "adselect/dataset.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace adsel {

struct SplitRatios {
    double train = 0.60;
    double val = 0.15;
    double test = 0.25;
};

// Assigns every dataset to exactly one split. Split sizes follow
// largest-remainder rounding of the ratios; the assignment itself is a
// seeded shuffle, so the same seed always yields the same partition.
Corpus split_corpus(Corpus corpus, const SplitRatios& ratios, std::uint64_t seed);

std::map<std::string, Split> compute_split_assignment(
    const std::vector<std::string>& names, const SplitRatios& ratios, std::uint64_t seed);

void save_splits(const std::filesystem::path& path,
                 const std::map<std::string, Split>& assignment);
std::map<std::string, Split> load_splits(const std::filesystem::path& path);

} // namespace adsel
