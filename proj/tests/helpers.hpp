#pragma once

// Shared helpers for the test suites.

#include "adselect/dataset.hpp"
#include "adselect/rng.hpp"

#include "oracle/oracle.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

inline adsel::Dataset make_dataset(std::string name,
                                   const std::vector<std::vector<double>>& rows,
                                   std::vector<int> labels = {}) {
    adsel::Dataset ds;
    ds.name = std::move(name);
    ds.X.resize(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
            ds.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = rows[i][c];
        }
    }
    if (!labels.empty()) ds.labels = std::move(labels);
    return ds;
}

// Gaussian blob with a few uniform-box outliers mixed in; generic fodder for
// oracle-equivalence checks.
inline adsel::Dataset random_dataset(std::uint64_t seed, int n, int k, double outlier_rate = 0.05) {
    adsel::Rng rng(seed);
    adsel::Dataset ds;
    ds.name = "rand_" + std::to_string(seed);
    ds.X.resize(n, k);
    for (int i = 0; i < n; ++i) {
        const bool outlier = rng.uniform() < outlier_rate;
        for (int c = 0; c < k; ++c) {
            ds.X(i, c) = outlier ? rng.uniform(-8.0, 8.0) : rng.normal();
        }
    }
    return ds;
}

inline oracle::Matrix to_oracle(const adsel::Dataset& ds) {
    oracle::Matrix m(static_cast<std::size_t>(ds.n()),
                     std::vector<double>(static_cast<std::size_t>(ds.dim())));
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        for (Eigen::Index c = 0; c < ds.dim(); ++c) {
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = ds.X(i, c);
        }
    }
    return m;
}

// mixed absolute/relative tolerance, for score vectors spanning magnitudes
inline bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// unique scratch directory under the build tree
inline std::filesystem::path temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("adselect_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace testutil
