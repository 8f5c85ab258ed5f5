#include <algorithm>
#include <cmath>
#include <map>

#include "fedsurvey/federation.hpp"
#include "fedsurvey/rng.hpp"

namespace fedsurvey {

namespace {

void check_clients(const std::vector<ClientData>& clients) {
    if (clients.empty()) throw FederationError("run_federated: no clients registered");
    const std::size_t m = clients.front().m;
    for (const auto& c : clients) {
        if (c.m != m)
            throw FederationError("SchemaMismatch: client '" + c.client_id + "' has " +
                                  std::to_string(c.m) + " features, expected " +
                                  std::to_string(m));
        if (c.x.size() != c.n * c.m || c.y.size() != c.n)
            throw FederationError("ClientFailure(" + c.client_id + "): inconsistent data");
    }
}

std::vector<std::size_t> sorted_client_order(const std::vector<ClientData>& clients) {
    std::vector<std::size_t> order(clients.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return clients[a].client_id < clients[b].client_id;
    });
    return order;
}

}  // namespace

LinearModel run_federated_linear(const std::vector<ClientData>& clients,
                                 InProcessTransport& transport, double jitter) {
    check_clients(clients);

    // Round 1: every client fits local OLS and reports parameters.
    std::vector<LinearParams> received;
    for (const auto& client : clients) {
        LinearParams params;
        params.client_id = client.client_id;
        params.n = static_cast<std::uint32_t>(client.n);
        try {
            const LinearModel local = fit_ols(client.x, client.y, client.n, client.m, jitter);
            params.intercept = local.intercept;
            params.coefficients = local.coefficients;
        } catch (const ModelError& e) {
            throw FederationError("ClientFailure(" + client.client_id + "): " + e.what());
        }
        received.push_back(
            std::get<LinearParams>(transport.deliver(params, client.client_id, 1)));
    }

    // Aggregation in client_id order; sample-size-weighted parameter average.
    std::sort(received.begin(), received.end(),
              [](const LinearParams& a, const LinearParams& b) {
                  return a.client_id < b.client_id;
              });
    const std::size_t m = clients.front().m;
    LinearModel global;
    global.coefficients.assign(m, 0.0);
    double total_n = 0.0;
    for (const auto& p : received) {
        const double w = static_cast<double>(p.n);
        total_n += w;
        global.intercept += w * p.intercept;
        for (std::size_t j = 0; j < m; ++j) global.coefficients[j] += w * p.coefficients[j];
    }
    global.intercept /= total_n;
    for (double& c : global.coefficients) c /= total_n;

    for (const auto& client : clients) {
        transport.deliver(GlobalModelMsg{true, global, {}}, "aggregator", 1);
        transport.deliver(Done{}, "aggregator", 1);
        (void)client;
    }
    return global;
}

Forest run_federated_rf_regression(const std::vector<ClientData>& clients,
                                   const FedConfig& config,
                                   InProcessTransport& transport) {
    check_clients(clients);
    if (config.trees_per_client < 1)
        throw FederationError("run_federated_rf_regression: trees_per_client >= 1");

    TrainConfig local_config = config.model;
    local_config.n_trees = config.trees_per_client;

    std::vector<ForestContribution> received;
    for (const auto& client : clients) {
        ForestContribution contribution;
        contribution.client_id = client.client_id;
        try {
            contribution.forest = fit_forest(client.x, client.y, client.n, client.m,
                                             local_config, TaskKind::kRegression);
        } catch (const ModelError& e) {
            throw FederationError("ClientFailure(" + client.client_id + "): " + e.what());
        }
        received.push_back(std::get<ForestContribution>(
            transport.deliver(std::move(contribution), client.client_id, 1)));
    }

    std::sort(received.begin(), received.end(),
              [](const ForestContribution& a, const ForestContribution& b) {
                  return a.client_id < b.client_id;
              });
    Forest global;
    global.task = TaskKind::kRegression;
    for (auto& contribution : received) {
        for (auto& tree : contribution.forest.trees) global.trees.push_back(std::move(tree));
        for (std::uint64_t s : contribution.forest.tree_seeds)
            global.tree_seeds.push_back(s);
    }

    for (const auto& client : clients) {
        transport.deliver(GlobalModelMsg{false, {}, global}, "aggregator", 1);
        transport.deliver(Done{}, "aggregator", 1);
        (void)client;
    }
    return global;
}

ThresholdGrid build_threshold_grid(const std::vector<double>& feature_min,
                                   const std::vector<double>& feature_max,
                                   std::size_t per_feature) {
    if (per_feature < 2) throw FederationError("threshold grid: Q must be >= 2");
    ThresholdGrid grid;
    grid.per_feature = static_cast<std::uint32_t>(per_feature);
    grid.thresholds.resize(feature_min.size());
    for (std::size_t j = 0; j < feature_min.size(); ++j) {
        grid.thresholds[j].resize(per_feature);
        const double lo = feature_min[j];
        const double span = feature_max[j] - feature_min[j];
        for (std::size_t q = 0; q < per_feature; ++q)
            grid.thresholds[j][q] =
                lo + span * static_cast<double>(q + 1) / static_cast<double>(per_feature + 1);
    }
    return grid;
}

std::vector<std::size_t> node_feature_subset(std::uint64_t seed, std::uint32_t tree_id,
                                             std::uint32_t node_id, std::size_t m,
                                             std::size_t mtry) {
    Rng rng(stream_seed(seed, tree_id, node_id));
    std::vector<std::size_t> all(m);
    for (std::size_t j = 0; j < m; ++j) all[j] = j;
    mtry = std::min(mtry, m);
    for (std::size_t j = 0; j < mtry; ++j) {
        const std::size_t pick = j + static_cast<std::size_t>(rng.below(m - j));
        std::swap(all[j], all[pick]);
    }
    all.resize(mtry);
    std::sort(all.begin(), all.end());
    return all;
}

namespace {

struct HistogramSplit {
    bool found = false;
    std::uint32_t feature = 0;
    std::uint32_t threshold_index = 0;
    double threshold = 0.0;
    HistogramEntry pooled;  // counts of the winning candidate
};

// Best Gini split over pooled candidate counts. Candidates must leave both
// global children with at least min_samples_leaf rows; ties resolve to the
// lowest feature index, then the lowest threshold.
HistogramSplit select_split(const std::vector<HistogramEntry>& pooled,
                            const ThresholdGrid& grid, double pos, double neg,
                            std::size_t min_samples_leaf) {
    const double n = pos + neg;
    const double parent_score = (pos * pos + neg * neg) / n;
    HistogramSplit best;
    double best_gain = 0.0;
    for (const HistogramEntry& e : pooled) {
        const double nl = e.left_pos + e.left_neg;
        const double nr = e.right_pos + e.right_neg;
        if (nl < static_cast<double>(min_samples_leaf) ||
            nr < static_cast<double>(min_samples_leaf))
            continue;
        const double gain = (e.left_pos * e.left_pos + e.left_neg * e.left_neg) / nl +
                            (e.right_pos * e.right_pos + e.right_neg * e.right_neg) / nr -
                            parent_score;
        if (gain <= 1e-12) continue;
        const double threshold = grid.thresholds[e.feature][e.threshold_index];
        if (!best.found || gain > best_gain ||
            (gain == best_gain &&
             (e.feature < best.feature ||
              (e.feature == best.feature && threshold < best.threshold)))) {
            best = {true, e.feature, e.threshold_index, threshold, e};
            best_gain = gain;
        }
    }
    return best;
}

// Local candidate histograms for the rows currently routed to one node.
std::vector<HistogramEntry> local_histograms(const std::vector<double>& x,
                                             const std::vector<double>& y, std::size_t m,
                                             const std::vector<std::size_t>& rows,
                                             const std::vector<std::size_t>& features,
                                             const ThresholdGrid& grid) {
    std::vector<HistogramEntry> entries;
    entries.reserve(features.size() * grid.per_feature);
    for (std::size_t f : features) {
        const auto& thresholds = grid.thresholds[f];
        std::vector<double> left_pos(thresholds.size(), 0.0);
        std::vector<double> left_neg(thresholds.size(), 0.0);
        double pos = 0.0, neg = 0.0;
        for (std::size_t r : rows) {
            const double v = x[r * m + f];
            const bool is_pos = y[r] == 1.0;
            (is_pos ? pos : neg) += 1.0;
            // thresholds ascending: count into the first bucket the row is
            // right of, then prefix-sum.
            const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), v);
            const std::size_t first_left =
                static_cast<std::size_t>(it - thresholds.begin());
            // v <= thresholds[q] for q >= first_left (lower_bound gives >= v);
            // adjust for strict routing x <= t.
            std::size_t idx = first_left;
            while (idx > 0 && thresholds[idx - 1] >= v) --idx;  // defensive, ties
            if (idx < thresholds.size()) (is_pos ? left_pos : left_neg)[idx] += 1.0;
        }
        // suffix accumulation: row with first left-bucket q contributes to all q' >= q
        double acc_pos = 0.0, acc_neg = 0.0;
        std::vector<double> cum_pos(thresholds.size()), cum_neg(thresholds.size());
        for (std::size_t q = 0; q < thresholds.size(); ++q) {
            acc_pos += left_pos[q];
            acc_neg += left_neg[q];
            cum_pos[q] = acc_pos;
            cum_neg[q] = acc_neg;
        }
        for (std::size_t q = 0; q < thresholds.size(); ++q) {
            HistogramEntry e;
            e.feature = static_cast<std::uint32_t>(f);
            e.threshold_index = static_cast<std::uint32_t>(q);
            e.left_pos = cum_pos[q];
            e.left_neg = cum_neg[q];
            e.right_pos = pos - cum_pos[q];
            e.right_neg = neg - cum_neg[q];
            entries.push_back(e);
        }
    }
    return entries;
}

struct OpenNode {
    std::uint32_t id = 0;
    int depth = 0;
    double pos = 0.0;
    double neg = 0.0;
};

}  // namespace

Forest run_federated_rf_classification(const std::vector<ClientData>& clients,
                                       const FedConfig& config,
                                       InProcessTransport& transport) {
    check_clients(clients);
    if (config.thresholds_per_feature < 2)
        throw FederationError("run_federated_rf_classification: Q must be >= 2");
    const std::size_t m = clients.front().m;
    const std::size_t mtry = effective_features_per_split(config.model.features_per_split, m);

    // Round 0: clients disclose per-feature ranges; aggregator fixes the grid.
    std::vector<RangeReport> ranges;
    for (const auto& client : clients) {
        if (client.n < 2)
            throw FederationError("ClientFailure(" + client.client_id +
                                  "): needs >= 2 samples");
        RangeReport report;
        report.client_id = client.client_id;
        report.feature_min.assign(m, std::numeric_limits<double>::infinity());
        report.feature_max.assign(m, -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < client.n; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                const double v = client.x[i * m + j];
                report.feature_min[j] = std::min(report.feature_min[j], v);
                report.feature_max[j] = std::max(report.feature_max[j], v);
            }
        for (double label : client.y) (label == 1.0 ? report.pos_count : report.neg_count) += 1.0;
        ranges.push_back(
            std::get<RangeReport>(transport.deliver(report, client.client_id, 0)));
    }
    std::sort(ranges.begin(), ranges.end(),
              [](const RangeReport& a, const RangeReport& b) {
                  return a.client_id < b.client_id;
              });
    std::vector<double> global_min(m, std::numeric_limits<double>::infinity());
    std::vector<double> global_max(m, -std::numeric_limits<double>::infinity());
    double total_pos = 0.0, total_neg = 0.0;
    for (const auto& r : ranges) {
        for (std::size_t j = 0; j < m; ++j) {
            global_min[j] = std::min(global_min[j], r.feature_min[j]);
            global_max[j] = std::max(global_max[j], r.feature_max[j]);
        }
        total_pos += r.pos_count;
        total_neg += r.neg_count;
    }
    ThresholdGrid grid = build_threshold_grid(global_min, global_max,
                                              config.thresholds_per_feature);
    for (const auto& client : clients) {
        grid = std::get<ThresholdGrid>(transport.deliver(grid, "aggregator", 0));
        (void)client;
    }

    // Iterative tree growth: frontier by frontier, all clients report pooled
    // candidate histograms for every open node.
    const auto order = sorted_client_order(clients);
    Forest global;
    global.task = TaskKind::kClassification;
    std::uint32_t round = 1;

    for (std::size_t t = 0; t < config.model.n_trees; ++t) {
        const auto tree_id = static_cast<std::uint32_t>(t);
        // Per-client row routing; node id -> local rows.
        std::vector<std::map<std::uint32_t, std::vector<std::size_t>>> routed(clients.size());
        for (std::size_t c = 0; c < clients.size(); ++c) {
            std::vector<std::size_t> all_rows(clients[c].n);
            for (std::size_t i = 0; i < clients[c].n; ++i) all_rows[i] = i;
            routed[c][0] = std::move(all_rows);
        }

        std::vector<TreeNode> nodes(1);
        std::vector<OpenNode> frontier = {{0, 0, total_pos, total_neg}};
        std::uint32_t next_id = 1;

        while (!frontier.empty()) {
            std::vector<OpenNode> next_frontier;
            for (const OpenNode& node : frontier) {
                const double n_node = node.pos + node.neg;
                const bool depth_stop =
                    config.model.max_depth >= 0 && node.depth >= config.model.max_depth;
                const bool size_stop =
                    n_node < 2.0 * static_cast<double>(config.model.min_samples_leaf);
                const bool pure = node.pos == 0.0 || node.neg == 0.0;

                HistogramSplit split;
                if (!depth_stop && !size_stop && !pure) {
                    const auto features =
                        node_feature_subset(config.seed, tree_id, node.id, m, mtry);
                    std::vector<HistogramEntry> pooled;
                    for (std::size_t c : order) {
                        HistogramReport report;
                        report.client_id = clients[c].client_id;
                        report.tree_id = tree_id;
                        report.node_id = node.id;
                        report.entries =
                            local_histograms(clients[c].x, clients[c].y, m,
                                             routed[c][node.id], features, grid);
                        const auto delivered = std::get<HistogramReport>(
                            transport.deliver(report, clients[c].client_id, round));
                        if (pooled.empty()) {
                            pooled = delivered.entries;
                        } else {
                            if (pooled.size() != delivered.entries.size())
                                throw FederationError("histogram report shape mismatch");
                            for (std::size_t i = 0; i < pooled.size(); ++i) {
                                pooled[i].left_pos += delivered.entries[i].left_pos;
                                pooled[i].left_neg += delivered.entries[i].left_neg;
                                pooled[i].right_pos += delivered.entries[i].right_pos;
                                pooled[i].right_neg += delivered.entries[i].right_neg;
                            }
                        }
                    }
                    split = select_split(pooled, grid, node.pos, node.neg,
                                         config.model.min_samples_leaf);
                }

                if (!split.found) {
                    MakeLeaf leaf{tree_id, node.id, node.pos, node.neg};
                    for (const auto& client : clients) {
                        transport.deliver(leaf, "aggregator", round);
                        (void)client;
                    }
                    TreeNode& leaf_node = nodes[node.id];
                    leaf_node.feature = -1;
                    leaf_node.pos_count = node.pos;
                    leaf_node.neg_count = node.neg;
                    leaf_node.value = node.pos / (node.pos + node.neg);
                    for (std::size_t c = 0; c < clients.size(); ++c)
                        routed[c].erase(node.id);
                    continue;
                }

                SplitDecision decision{tree_id, node.id, split.feature, split.threshold};
                for (const auto& client : clients) {
                    transport.deliver(decision, "aggregator", round);
                    (void)client;
                }
                const std::uint32_t left_id = next_id++;
                const std::uint32_t right_id = next_id++;
                nodes.resize(next_id);
                TreeNode& internal = nodes[node.id];
                internal.feature = static_cast<int>(split.feature);
                internal.threshold = split.threshold;
                internal.left = static_cast<int>(left_id);
                internal.right = static_cast<int>(right_id);

                // Clients partition their routed rows by the announced split.
                for (std::size_t c = 0; c < clients.size(); ++c) {
                    auto rows = std::move(routed[c][node.id]);
                    routed[c].erase(node.id);
                    std::vector<std::size_t> left_rows, right_rows;
                    for (std::size_t r : rows)
                        (clients[c].x[r * m + split.feature] <= split.threshold
                             ? left_rows
                             : right_rows)
                            .push_back(r);
                    routed[c][left_id] = std::move(left_rows);
                    routed[c][right_id] = std::move(right_rows);
                }

                next_frontier.push_back({left_id, node.depth + 1, split.pooled.left_pos,
                                         split.pooled.left_neg});
                next_frontier.push_back({right_id, node.depth + 1, split.pooled.right_pos,
                                         split.pooled.right_neg});
            }
            frontier = std::move(next_frontier);
            ++round;
        }

        Tree tree;
        tree.nodes = std::move(nodes);
        global.trees.push_back(std::move(tree));
        global.tree_seeds.push_back(stream_seed(config.seed, tree_id));
    }

    for (const auto& client : clients) {
        transport.deliver(GlobalModelMsg{false, {}, global}, "aggregator", round);
        transport.deliver(Done{}, "aggregator", round);
        (void)client;
    }
    return global;
}

Forest fit_forest_histogram(const std::vector<double>& x, const std::vector<double>& y,
                            std::size_t n, std::size_t m, const ThresholdGrid& grid,
                            const FedConfig& config) {
    if (x.size() != n * m || y.size() != n)
        throw ModelError("DimensionMismatch: fit_forest_histogram");
    const std::size_t mtry = effective_features_per_split(config.model.features_per_split, m);

    Forest forest;
    forest.task = TaskKind::kClassification;
    for (std::size_t t = 0; t < config.model.n_trees; ++t) {
        const auto tree_id = static_cast<std::uint32_t>(t);
        std::map<std::uint32_t, std::vector<std::size_t>> routed;
        {
            std::vector<std::size_t> all_rows(n);
            for (std::size_t i = 0; i < n; ++i) all_rows[i] = i;
            routed[0] = std::move(all_rows);
        }
        double root_pos = 0.0, root_neg = 0.0;
        for (double label : y) (label == 1.0 ? root_pos : root_neg) += 1.0;

        std::vector<TreeNode> nodes(1);
        std::vector<OpenNode> frontier = {{0, 0, root_pos, root_neg}};
        std::uint32_t next_id = 1;

        while (!frontier.empty()) {
            std::vector<OpenNode> next_frontier;
            for (const OpenNode& node : frontier) {
                const double n_node = node.pos + node.neg;
                const bool depth_stop =
                    config.model.max_depth >= 0 && node.depth >= config.model.max_depth;
                const bool size_stop =
                    n_node < 2.0 * static_cast<double>(config.model.min_samples_leaf);
                const bool pure = node.pos == 0.0 || node.neg == 0.0;

                HistogramSplit split;
                if (!depth_stop && !size_stop && !pure) {
                    const auto features =
                        node_feature_subset(config.seed, tree_id, node.id, m, mtry);
                    const auto pooled =
                        local_histograms(x, y, m, routed[node.id], features, grid);
                    split = select_split(pooled, grid, node.pos, node.neg,
                                         config.model.min_samples_leaf);
                }

                if (!split.found) {
                    TreeNode& leaf_node = nodes[node.id];
                    leaf_node.feature = -1;
                    leaf_node.pos_count = node.pos;
                    leaf_node.neg_count = node.neg;
                    leaf_node.value = node.pos / (node.pos + node.neg);
                    routed.erase(node.id);
                    continue;
                }

                const std::uint32_t left_id = next_id++;
                const std::uint32_t right_id = next_id++;
                nodes.resize(next_id);
                TreeNode& internal = nodes[node.id];
                internal.feature = static_cast<int>(split.feature);
                internal.threshold = split.threshold;
                internal.left = static_cast<int>(left_id);
                internal.right = static_cast<int>(right_id);

                auto rows = std::move(routed[node.id]);
                routed.erase(node.id);
                std::vector<std::size_t> left_rows, right_rows;
                for (std::size_t r : rows)
                    (x[r * m + split.feature] <= split.threshold ? left_rows : right_rows)
                        .push_back(r);
                routed[left_id] = std::move(left_rows);
                routed[right_id] = std::move(right_rows);

                next_frontier.push_back({left_id, node.depth + 1, split.pooled.left_pos,
                                         split.pooled.left_neg});
                next_frontier.push_back({right_id, node.depth + 1, split.pooled.right_pos,
                                         split.pooled.right_neg});
            }
            frontier = std::move(next_frontier);
        }

        Tree tree;
        tree.nodes = std::move(nodes);
        forest.trees.push_back(std::move(tree));
        forest.tree_seeds.push_back(stream_seed(config.seed, tree_id));
    }
    return forest;
}

}  // namespace fedsurvey
