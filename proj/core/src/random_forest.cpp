#include "mfa/random_forest.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mfa/errors.hpp"
#include "mfa/parallel.hpp"

namespace mfa {

namespace {

struct NodeStats {
    double sum = 0.0;
    double sumsq = 0.0;
    std::size_t n = 0;

    void add(double v) {
        sum += v;
        sumsq += v * v;
        ++n;
    }
    double mean() const { return n > 0 ? sum / static_cast<double>(n) : 0.0; }
    double impurity() const {
        if (n == 0) return 0.0;
        const double m = mean();
        return std::max(0.0, sumsq / static_cast<double>(n) - m * m);
    }
};

}  // namespace

void RandomForest::build_tree(Tree& tree, const Mat& x, const std::vector<double>& y,
                              std::vector<std::size_t>& idx, const ForestConfig& cfg, Rng& rng,
                              std::vector<double>& impurity_sum) {
    const std::size_t p = x.cols();
    const std::size_t n_total = idx.size();
    const std::size_t m_features =
        cfg.max_features > 0 ? std::min(cfg.max_features, p)
                             : std::max<std::size_t>(1, p / 3);

    // Recursive splitter over idx[begin, end); children partition the range in place.
    struct Frame {
        std::size_t begin, end, depth;
        int node;
    };
    std::vector<std::pair<double, std::size_t>> order;  // (feature value, row) sorted per candidate

    auto make_node = [&tree]() {
        tree.nodes.emplace_back();
        return static_cast<int>(tree.nodes.size() - 1);
    };

    std::vector<Frame> stack;
    stack.push_back({0, n_total, 0, make_node()});

    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        const std::size_t n = f.end - f.begin;

        NodeStats stats;
        for (std::size_t i = f.begin; i < f.end; ++i) stats.add(y[idx[i]]);
        const double node_impurity = stats.impurity();

        auto leaf = [&](double value) {
            tree.nodes[static_cast<std::size_t>(f.node)].feature = -1;
            tree.nodes[static_cast<std::size_t>(f.node)].value = value;
        };

        if (f.depth >= cfg.max_depth || n < cfg.min_samples_split || node_impurity <= 0.0) {
            leaf(stats.mean());
            continue;
        }

        const std::vector<std::size_t> candidates = rng.sample_without_replacement(p, m_features);

        double best_decrease = 0.0;
        int best_feature = -1;
        double best_threshold = 0.0;

        for (std::size_t feature : candidates) {
            order.clear();
            order.reserve(n);
            for (std::size_t i = f.begin; i < f.end; ++i)
                order.emplace_back(x(idx[i], feature), idx[i]);
            std::sort(order.begin(), order.end());

            NodeStats left;
            for (std::size_t i = 1; i < n; ++i) {
                left.add(y[order[i - 1].second]);
                if (order[i - 1].first >= order[i].first) continue;  // split only between distinct values
                NodeStats right;
                right.sum = stats.sum - left.sum;
                right.sumsq = stats.sumsq - left.sumsq;
                right.n = n - left.n;
                const double child =
                    (static_cast<double>(left.n) * left.impurity() +
                     static_cast<double>(right.n) * right.impurity()) /
                    static_cast<double>(n);
                const double decrease = node_impurity - child;
                if (decrease > best_decrease) {
                    best_decrease = decrease;
                    best_feature = static_cast<int>(feature);
                    best_threshold = 0.5 * (order[i - 1].first + order[i].first);
                }
            }
        }

        if (best_feature < 0) {
            leaf(stats.mean());
            continue;
        }

        impurity_sum[static_cast<std::size_t>(best_feature)] +=
            static_cast<double>(n) / static_cast<double>(n_total) * best_decrease;

        auto mid_it = std::stable_partition(
            idx.begin() + static_cast<std::ptrdiff_t>(f.begin),
            idx.begin() + static_cast<std::ptrdiff_t>(f.end),
            [&](std::size_t row) { return x(row, static_cast<std::size_t>(best_feature)) <= best_threshold; });
        const std::size_t mid = static_cast<std::size_t>(mid_it - idx.begin());
        if (mid == f.begin || mid == f.end) {  // numerically degenerate split
            leaf(stats.mean());
            continue;
        }

        const int left_node = make_node();
        const int right_node = make_node();
        Node& node = tree.nodes[static_cast<std::size_t>(f.node)];
        node.feature = best_feature;
        node.threshold = best_threshold;
        node.left = left_node;
        node.right = right_node;

        stack.push_back({f.begin, mid, f.depth + 1, left_node});
        stack.push_back({mid, f.end, f.depth + 1, right_node});
    }
}

void RandomForest::fit(const Mat& x, const std::vector<double>& y, const ForestConfig& cfg, Rng& rng) {
    if (x.rows() == 0 || x.cols() == 0) throw ValidationError("random forest: empty design matrix");
    if (y.size() != x.rows()) throw ValidationError("random forest: response length does not match rows");
    if (cfg.n_trees == 0) throw ValidationError("random forest: need at least one tree");

    n_features_ = x.cols();
    trees_.assign(cfg.n_trees, Tree{});
    std::vector<std::vector<double>> per_tree(cfg.n_trees);

    parallel_for(cfg.n_trees, [&](std::size_t t) {
        Rng tree_rng = rng.derive("tree", t);
        std::vector<std::size_t> idx(x.rows());
        for (std::size_t i = 0; i < x.rows(); ++i) idx[i] = tree_rng.next_below(x.rows());

        std::vector<double> impurity_sum(x.cols(), 0.0);
        build_tree(trees_[t], x, y, idx, cfg, tree_rng, impurity_sum);

        double total = 0.0;
        for (double v : impurity_sum) total += v;
        if (total > 0.0)
            for (double& v : impurity_sum) v /= total;
        per_tree[t] = std::move(impurity_sum);
    });

    importances_.assign(x.cols(), 0.0);
    for (const auto& imp : per_tree)
        for (std::size_t j = 0; j < x.cols(); ++j) importances_[j] += imp[j];
    double total = 0.0;
    for (double v : importances_) total += v;
    if (total > 0.0)
        for (double& v : importances_) v /= total;
}

double RandomForest::predict_row(const double* row) const {
    double acc = 0.0;
    for (const Tree& tree : trees_) {
        int node = 0;
        while (tree.nodes[static_cast<std::size_t>(node)].feature >= 0) {
            const Node& nd = tree.nodes[static_cast<std::size_t>(node)];
            node = row[nd.feature] <= nd.threshold ? nd.left : nd.right;
        }
        acc += tree.nodes[static_cast<std::size_t>(node)].value;
    }
    return acc / static_cast<double>(trees_.size());
}

std::vector<double> RandomForest::predict(const Mat& x) const {
    if (x.cols() != n_features_) throw ValidationError("random forest: feature count mismatch");
    std::vector<double> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = predict_row(x.row(i).data());
    return out;
}

}  // namespace mfa
