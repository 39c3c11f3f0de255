#include "adselect/detectors.hpp"

#include "adselect/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace adsel {

namespace {

constexpr int kSubsampleSize = 256;

// expected path length of an unsuccessful BST search over n points
double average_path_length(std::size_t n) {
    if (n <= 1) return 0.0;
    if (n == 2) return 1.0;
    const double m = static_cast<double>(n) - 1.0;
    const double harmonic = std::log(m) + 0.5772156649015329;
    return 2.0 * harmonic - 2.0 * m / (m + 1.0);
}

struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1, right = -1;
    std::size_t size = 0; // leaf only
    int depth = 0;        // leaf only
};

struct Tree {
    std::vector<TreeNode> nodes;

    double path_length(const RowMatrix& X, Eigen::Index row) const {
        int node = 0;
        while (nodes[static_cast<std::size_t>(node)].feature >= 0) {
            const TreeNode& nd = nodes[static_cast<std::size_t>(node)];
            node = X(row, nd.feature) < nd.threshold ? nd.left : nd.right;
        }
        const TreeNode& leaf = nodes[static_cast<std::size_t>(node)];
        return static_cast<double>(leaf.depth) + average_path_length(leaf.size);
    }
};

class TreeBuilder {
public:
    TreeBuilder(const RowMatrix& X, const std::vector<int>& features, int height_limit, Rng& rng)
        : X_(X), features_(features), height_limit_(height_limit), rng_(rng) {}

    Tree build(std::vector<Eigen::Index> sample) {
        Tree tree;
        build_node(tree, std::move(sample), 0);
        return tree;
    }

private:
    int build_node(Tree& tree, std::vector<Eigen::Index> rows, int depth) {
        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        if (depth >= height_limit_ || rows.size() <= 1) {
            make_leaf(tree, node_id, rows.size(), depth);
            return node_id;
        }

        // candidate features with spread within this node
        splittable_.clear();
        for (int f : features_) {
            double lo = X_(rows[0], f), hi = lo;
            for (Eigen::Index r : rows) {
                lo = std::min(lo, X_(r, f));
                hi = std::max(hi, X_(r, f));
            }
            if (hi > lo) splittable_.push_back({f, lo, hi});
        }
        if (splittable_.empty()) {
            make_leaf(tree, node_id, rows.size(), depth);
            return node_id;
        }

        const auto& pick = splittable_[static_cast<std::size_t>(
            rng_.below(splittable_.size()))];
        const double threshold = rng_.uniform(pick.lo, pick.hi);

        std::vector<Eigen::Index> left, right;
        for (Eigen::Index r : rows) {
            (X_(r, pick.feature) < threshold ? left : right).push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        const int left_id = build_node(tree, std::move(left), depth + 1);
        const int right_id = build_node(tree, std::move(right), depth + 1);
        TreeNode& nd = tree.nodes[static_cast<std::size_t>(node_id)];
        nd.feature = pick.feature;
        nd.threshold = threshold;
        nd.left = left_id;
        nd.right = right_id;
        return node_id;
    }

    static void make_leaf(Tree& tree, int node_id, std::size_t size, int depth) {
        TreeNode& nd = tree.nodes[static_cast<std::size_t>(node_id)];
        nd.feature = -1;
        nd.size = size;
        nd.depth = depth;
    }

    struct Candidate {
        int feature;
        double lo, hi;
    };

    const RowMatrix& X_;
    const std::vector<int>& features_;
    int height_limit_;
    Rng& rng_;
    std::vector<Candidate> splittable_;
};

} // namespace

AnomalyScores iforest_scores(const Dataset& ds, int n_estimators, double max_features,
                             std::uint64_t seed, ExecMode exec) {
    if (ds.n() < 1) throw ValidationError("iforest_scores: empty dataset");
    if (n_estimators < 1) throw ValidationError("iforest_scores: n_estimators must be >= 1");
    if (!(max_features > 0.0) || max_features > 1.0) {
        throw ValidationError("iforest_scores: max_features must be in (0, 1]");
    }
    const Eigen::Index n = ds.n();
    const Eigen::Index dim = ds.dim();
    const auto psi = static_cast<std::size_t>(std::min<Eigen::Index>(kSubsampleSize, n));
    const int height_limit =
        std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(psi)))));
    const int n_feat =
        std::clamp(static_cast<int>(std::lround(max_features * static_cast<double>(dim))), 1,
                   static_cast<int>(dim));

    // one path-length row per tree keeps the serial reduction order fixed
    std::vector<double> paths(static_cast<std::size_t>(n_estimators) *
                              static_cast<std::size_t>(n));

    auto build_and_score = [&](int t) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(t)));

        std::vector<Eigen::Index> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        for (std::size_t i = 0; i < psi; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(all.size() - i));
            std::swap(all[i], all[j]);
        }
        std::vector<Eigen::Index> sample(all.begin(), all.begin() + static_cast<long>(psi));

        std::vector<int> features(static_cast<std::size_t>(dim));
        std::iota(features.begin(), features.end(), 0);
        for (int i = 0; i < n_feat; ++i) {
            const std::size_t j = static_cast<std::size_t>(i) +
                                  static_cast<std::size_t>(rng.below(features.size() -
                                                                     static_cast<std::size_t>(i)));
            std::swap(features[static_cast<std::size_t>(i)], features[j]);
        }
        features.resize(static_cast<std::size_t>(n_feat));
        std::sort(features.begin(), features.end());

        const Tree tree = TreeBuilder(ds.X, features, height_limit, rng).build(std::move(sample));
        double* row = paths.data() + static_cast<std::size_t>(t) * static_cast<std::size_t>(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            row[i] = tree.path_length(ds.X, i);
        }
    };

    if (exec == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < n_estimators; ++t) build_and_score(t);
    } else {
        for (int t = 0; t < n_estimators; ++t) build_and_score(t);
    }

    const double normalizer = average_path_length(psi);
    AnomalyScores scores(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int t = 0; t < n_estimators; ++t) {
            sum += paths[static_cast<std::size_t>(t) * static_cast<std::size_t>(n) +
                         static_cast<std::size_t>(i)];
        }
        const double mean_path = sum / static_cast<double>(n_estimators);
        scores[static_cast<std::size_t>(i)] =
            normalizer > 0 ? std::exp2(-mean_path / normalizer) : 1.0;
    }
    return scores;
}

} // namespace adsel
