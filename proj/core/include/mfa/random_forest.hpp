#pragma once

#include <cstddef>
#include <vector>

#include "mfa/mat.hpp"
#include "mfa/rng.hpp"

namespace mfa {

struct ForestConfig {
    std::size_t n_trees = 30;
    std::size_t max_depth = 8;
    std::size_t min_samples_split = 2;
    // 0 means the regression default max(1, floor(p / 3)).
    std::size_t max_features = 0;
};

// Variance-reduction regression forest. Trees are trained on bootstrap
// resamples of the rows; importance is mean decrease in impurity,
// normalized per tree so the returned vector sums to 1 (all-zero when no
// split ever improved impurity).
class RandomForest {
public:
    void fit(const Mat& x, const std::vector<double>& y, const ForestConfig& cfg, Rng& rng);

    double predict_row(const double* row) const;
    std::vector<double> predict(const Mat& x) const;

    const std::vector<double>& feature_importances() const { return importances_; }

private:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        double value = 0.0;  // leaf prediction
        int left = -1;
        int right = -1;
    };
    struct Tree {
        std::vector<Node> nodes;
    };

    std::size_t n_features_ = 0;
    std::vector<Tree> trees_;
    std::vector<double> importances_;

    void build_tree(Tree& tree, const Mat& x, const std::vector<double>& y,
                    std::vector<std::size_t>& idx, const ForestConfig& cfg, Rng& rng,
                    std::vector<double>& impurity_sum);
};

}  // namespace mfa
