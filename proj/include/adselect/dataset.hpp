#pragma once

#include "adselect/errors.hpp"

#include <Eigen/Core>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace adsel {

// Observations are rows; row-major storage keeps per-point loops contiguous.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Split { train, val, test };

std::string split_name(Split s);
Split split_from_name(const std::string& name);

// An N x K numeric matrix with optional binary labels (1 = anomaly).
// Labels are only ever consulted by the offline evaluation path; selection
// never reads them.
struct Dataset {
    std::string name;
    RowMatrix X;
    std::optional<std::vector<int>> labels;

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index dim() const { return X.cols(); }
};

// Throws ValidationError unless N >= 2, K >= 1, all entries finite, and any
// labels have length N with values in {0, 1}.
void validate_dataset(const Dataset& ds);

struct Corpus {
    std::vector<Dataset> datasets;
    std::optional<std::map<std::string, Split>> split_assignment;

    // Throws ValidationError on a duplicate name.
    void add(Dataset ds);
    const Dataset* find(const std::string& name) const;
    // Datasets assigned to `s`, in corpus order. Requires an assignment.
    std::vector<const Dataset*> members(Split s) const;
};

} // namespace adsel
