#include <algorithm>
#include <cmath>

#include "fedsurvey/models.hpp"
#include "fedsurvey/rng.hpp"

namespace fedsurvey {

std::size_t effective_features_per_split(std::size_t configured, std::size_t m) {
    if (configured == 0)
        return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m))));
    return std::min(configured, m);
}

namespace {

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double gain = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const std::vector<double>& x, const std::vector<double>& y, std::size_t m,
                const TrainConfig& config, TaskKind task, Rng& rng)
        : x_(x), y_(y), m_(m), config_(config), task_(task), rng_(rng),
          mtry_(effective_features_per_split(config.features_per_split, m)) {}

    Tree build(std::vector<std::size_t> rows) {
        Tree tree;
        grow(tree, std::move(rows), 0);
        return tree;
    }

private:
    int grow(Tree& tree, std::vector<std::size_t> rows, int depth) {
        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (!stop(rows, depth)) {
            const SplitChoice split = best_split(rows);
            if (split.found) {
                std::vector<std::size_t> left, right;
                for (std::size_t r : rows)
                    (x_[r * m_ + split.feature] <= split.threshold ? left : right).push_back(r);
                rows.clear();
                rows.shrink_to_fit();
                const int l = grow(tree, std::move(left), depth + 1);
                const int r = grow(tree, std::move(right), depth + 1);
                TreeNode& node = tree.nodes[node_id];
                node.feature = static_cast<int>(split.feature);
                node.threshold = split.threshold;
                node.left = l;
                node.right = r;
                return node_id;
            }
        }
        make_leaf(tree.nodes[node_id], rows);
        return node_id;
    }

    bool stop(const std::vector<std::size_t>& rows, int depth) const {
        if (config_.max_depth >= 0 && depth >= config_.max_depth) return true;
        if (rows.size() < 2 * config_.min_samples_leaf) return true;
        return is_pure(rows);
    }

    bool is_pure(const std::vector<std::size_t>& rows) const {
        const double first = y_[rows.front()];
        for (std::size_t r : rows)
            if (y_[r] != first) return false;
        return true;
    }

    void make_leaf(TreeNode& node, const std::vector<std::size_t>& rows) const {
        node.feature = -1;
        if (task_ == TaskKind::kRegression) {
            double sum = 0.0;
            for (std::size_t r : rows) sum += y_[r];
            node.value = sum / static_cast<double>(rows.size());
        } else {
            for (std::size_t r : rows) (y_[r] == 1.0 ? node.pos_count : node.neg_count) += 1.0;
            node.value = node.pos_count / (node.pos_count + node.neg_count);
        }
    }

    std::vector<std::size_t> sample_features() {
        std::vector<std::size_t> all(m_);
        for (std::size_t j = 0; j < m_; ++j) all[j] = j;
        for (std::size_t j = 0; j < mtry_; ++j) {
            const std::size_t pick = j + static_cast<std::size_t>(rng_.below(m_ - j));
            std::swap(all[j], all[pick]);
        }
        all.resize(mtry_);
        std::sort(all.begin(), all.end());
        return all;
    }

    SplitChoice best_split(const std::vector<std::size_t>& rows) {
        const auto features = sample_features();
        SplitChoice best;
        std::vector<std::pair<double, double>> sorted;  // (value, target/label)
        sorted.reserve(rows.size());
        const double n = static_cast<double>(rows.size());

        for (std::size_t f : features) {
            sorted.clear();
            for (std::size_t r : rows) sorted.emplace_back(x_[r * m_ + f], y_[r]);
            std::sort(sorted.begin(), sorted.end());
            if (sorted.front().first == sorted.back().first) continue;

            if (task_ == TaskKind::kRegression) {
                double total = 0.0;
                for (const auto& [v, t] : sorted) total += t;
                const double parent_score = total * total / n;
                double left_sum = 0.0;
                for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
                    left_sum += sorted[i].second;
                    if (sorted[i].first == sorted[i + 1].first) continue;
                    const double nl = static_cast<double>(i + 1);
                    const double nr = n - nl;
                    if (nl < config_.min_samples_leaf || nr < config_.min_samples_leaf)
                        continue;
                    const double right_sum = total - left_sum;
                    const double gain =
                        left_sum * left_sum / nl + right_sum * right_sum / nr - parent_score;
                    consider(best, gain, f,
                             0.5 * (sorted[i].first + sorted[i + 1].first));
                }
            } else {
                double total_pos = 0.0;
                for (const auto& [v, t] : sorted) total_pos += t;
                const double total_neg = n - total_pos;
                // Gini gain scaled by n: maximize sum over children of
                // (pos^2 + neg^2) / n_child minus the parent term.
                const double parent_score = (total_pos * total_pos + total_neg * total_neg) / n;
                double left_pos = 0.0;
                for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
                    left_pos += sorted[i].second;
                    if (sorted[i].first == sorted[i + 1].first) continue;
                    const double nl = static_cast<double>(i + 1);
                    const double nr = n - nl;
                    if (nl < config_.min_samples_leaf || nr < config_.min_samples_leaf)
                        continue;
                    const double left_neg = nl - left_pos;
                    const double right_pos = total_pos - left_pos;
                    const double right_neg = total_neg - left_neg;
                    const double gain =
                        (left_pos * left_pos + left_neg * left_neg) / nl +
                        (right_pos * right_pos + right_neg * right_neg) / nr - parent_score;
                    consider(best, gain, f,
                             0.5 * (sorted[i].first + sorted[i + 1].first));
                }
            }
        }
        return best;
    }

    static void consider(SplitChoice& best, double gain, std::size_t feature,
                         double threshold) {
        if (gain <= 1e-12) return;  // only strictly positive impurity decrease
        if (!best.found || gain > best.gain ||
            (gain == best.gain &&
             (feature < best.feature ||
              (feature == best.feature && threshold < best.threshold)))) {
            best = {true, feature, threshold, gain};
        }
    }

    const std::vector<double>& x_;
    const std::vector<double>& y_;
    const std::size_t m_;
    const TrainConfig& config_;
    const TaskKind task_;
    Rng& rng_;
    const std::size_t mtry_;
};

}  // namespace

Forest fit_forest(const std::vector<double>& x, const std::vector<double>& y,
                  std::size_t n, std::size_t m, const TrainConfig& config,
                  TaskKind task) {
    if (x.size() != n * m || y.size() != n)
        throw ModelError("DimensionMismatch: fit_forest input sizes");
    if (config.n_trees < 1) throw ModelError("fit_forest: n_trees must be >= 1");
    if (n < 2 * config.min_samples_leaf)
        throw ModelError("InsufficientData: n = " + std::to_string(n) + ", need >= " +
                         std::to_string(2 * config.min_samples_leaf));

    Forest forest;
    forest.task = task;
    forest.trees.resize(config.n_trees);
    forest.tree_seeds.resize(config.n_trees);
    for (std::size_t t = 0; t < config.n_trees; ++t)
        forest.tree_seeds[t] = stream_seed(config.seed, t);

    // Per-tree streams keep the forest prefix-stable under n_trees changes and
    // allow parallel fitting with identical output to the serial order.
    for (std::size_t t = 0; t < config.n_trees; ++t) {
        Rng rng(forest.tree_seeds[t]);
        std::vector<std::size_t> bootstrap(n);
        for (std::size_t i = 0; i < n; ++i)
            bootstrap[i] = static_cast<std::size_t>(rng.below(n));
        TreeBuilder builder(x, y, m, config, task, rng);
        forest.trees[t] = builder.build(std::move(bootstrap));
    }
    return forest;
}

double tree_predict_row(const Tree& tree, const double* row) {
    int node = 0;
    while (!tree.nodes[node].is_leaf()) {
        const TreeNode& nd = tree.nodes[node];
        node = row[nd.feature] <= nd.threshold ? nd.left : nd.right;
    }
    return tree.nodes[node].value;
}

std::vector<double> forest_predict(const Forest& forest, const std::vector<double>& x,
                                   std::size_t n, std::size_t m) {
    if (forest.trees.empty()) throw ModelError("forest_predict: empty forest");
    if (x.size() != n * m) throw ModelError("DimensionMismatch: forest_predict input");
    std::vector<double> out(n, 0.0);
    for (const Tree& tree : forest.trees)
        for (std::size_t i = 0; i < n; ++i) out[i] += tree_predict_row(tree, x.data() + i * m);
    const double scale = 1.0 / static_cast<double>(forest.trees.size());
    for (double& v : out) v *= scale;
    return out;
}

}  // namespace fedsurvey
