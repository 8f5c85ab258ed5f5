#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fedsurvey/experiment.hpp"
#include "fedsurvey/rng.hpp"

namespace fedsurvey {

namespace {

struct Split {
    std::vector<double> x;
    std::vector<double> y;
    std::size_t n = 0;
};

Split gather(const SiteTable& site, const std::vector<std::size_t>& rows) {
    Split out;
    out.n = rows.size();
    out.x.reserve(rows.size() * site.n_features);
    out.y.reserve(rows.size());
    for (std::size_t r : rows) {
        const double* row = site.row(r);
        out.x.insert(out.x.end(), row, row + site.n_features);
        out.y.push_back(site.y[r]);
    }
    return out;
}

void append(Split& dst, const Split& src) {
    dst.x.insert(dst.x.end(), src.x.begin(), src.x.end());
    dst.y.insert(dst.y.end(), src.y.begin(), src.y.end());
    dst.n += src.n;
}

void check_finite(double value, const std::string& what) {
    if (!std::isfinite(value)) throw StatsError("non-finite metric: " + what);
}

}  // namespace

std::vector<double> ExperimentResult::per_fold(const std::string& scenario,
                                               const std::string& algorithm,
                                               const std::string& metric) const {
    std::vector<double> sums(folds, 0.0);
    std::vector<std::size_t> counts(folds, 0);
    for (const auto& r : records) {
        if (r.scenario != scenario || r.algorithm != algorithm || r.metric != metric)
            continue;
        sums[r.fold] += r.value;
        counts[r.fold] += 1;
    }
    std::vector<double> out(folds, 0.0);
    for (std::size_t f = 0; f < folds; ++f) {
        if (counts[f] == 0)
            throw StatsError("missing cell: fold " + std::to_string(f) + " " + scenario +
                             "/" + algorithm + "/" + metric);
        out[f] = sums[f] / static_cast<double>(counts[f]);
    }
    return out;
}

double ExperimentResult::mean_metric(const std::string& scenario,
                                     const std::string& algorithm,
                                     const std::string& metric) const {
    return mean(per_fold(scenario, algorithm, metric));
}

SampleTriple ExperimentResult::triple(const std::string& algorithm,
                                      const std::string& metric) const {
    return {per_fold("local_avg", algorithm, metric),
            per_fold("centralized", algorithm, metric),
            per_fold("federated", algorithm, metric)};
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.schema.validate();
    if (spec.sites.empty()) throw DataError("run_experiment: no sites");
    if (spec.fold_plan.k < 2) throw ConfigError("run_experiment: fold count k must be >= 2");
    if (spec.algorithms.empty()) throw ConfigError("run_experiment: no algorithms");
    const bool classification = spec.schema.task == TaskKind::kClassification;
    for (const auto& a : spec.algorithms) {
        if (a != "linear" && a != "rf")
            throw ConfigError("run_experiment: unknown algorithm '" + a + "'");
        if (classification && a == "linear")
            throw ConfigError("run_experiment: linear algorithm is regression-only");
    }

    const std::size_t m = spec.schema.feature_count();
    const std::size_t k_sites = spec.sites.size();
    ExperimentResult result;
    result.folds = spec.fold_plan.k;
    InProcessTransport transport;

    for (std::size_t fold = 0; fold < spec.fold_plan.k; ++fold) {
        const std::uint64_t fold_seed =
            stream_seed(spec.seed, "fold:" + std::to_string(fold));

        // Per-site training rows (optionally subsampled) and the shared global
        // test set: the union of per-site test splits, in site order.
        std::vector<Split> train(k_sites);
        Split global_test;
        for (std::size_t s = 0; s < k_sites; ++s) {
            const SiteTable& site = spec.sites[s];
            auto train_rows = spec.fold_plan.train_indices(site.site_id, fold);
            if (spec.subsample_fraction < 1.0)
                train_rows = subsample_training(train_rows, spec.subsample_fraction,
                                                fold_seed, site.site_id);
            train[s] = gather(site, train_rows);
            append(global_test, gather(site, spec.fold_plan.test_indices(site.site_id, fold)));
        }

        // Classification scenarios train on supersampled balanced sets.
        std::vector<Split> balanced = train;
        if (classification) {
            for (std::size_t s = 0; s < k_sites; ++s) {
                const SiteTable& site = spec.sites[s];
                auto train_rows = spec.fold_plan.train_indices(site.site_id, fold);
                if (spec.subsample_fraction < 1.0)
                    train_rows = subsample_training(train_rows, spec.subsample_fraction,
                                                    fold_seed, site.site_id);
                const BalancedSet set = supersample_balance(
                    site, train_rows, stream_seed(fold_seed, "balance:" + site.site_id));
                balanced[s] = gather(site, set.indices);
            }
        }

        // Evaluation targets: whole test set (regression) or balanced subsets.
        BalancedSubsetsResult subsets;
        if (classification)
            subsets = balanced_test_subsets(global_test.y, spec.test_subsets,
                                            stream_seed(fold_seed, "test-subsets"));

        // Scores -> records for one trained model.
        auto record = [&](const std::string& scenario, const std::string& algorithm,
                          const std::vector<double>& predictions) {
            if (!classification) {
                const double r2 = r_squared(global_test.y, predictions);
                const double rm = rmse(global_test.y, predictions);
                check_finite(r2, scenario + "/r2");
                check_finite(rm, scenario + "/rmse");
                result.records.push_back({fold, scenario, algorithm, "r2", -1, r2});
                result.records.push_back({fold, scenario, algorithm, "rmse", -1, rm});
                return;
            }
            for (std::size_t u = 0; u < subsets.subsets.size(); ++u) {
                std::vector<double> truth, score, labels;
                for (std::size_t idx : subsets.subsets[u].indices) {
                    truth.push_back(global_test.y[idx]);
                    score.push_back(predictions[idx]);
                    labels.push_back(classify(predictions[idx]));
                }
                const double ac = accuracy(truth, labels);
                const double au = auroc(truth, score);
                check_finite(ac, scenario + "/accuracy");
                check_finite(au, scenario + "/auroc");
                const int subset = static_cast<int>(u);
                result.records.push_back({fold, scenario, algorithm, "accuracy", subset, ac});
                result.records.push_back({fold, scenario, algorithm, "auroc", subset, au});
            }
        };

        auto record_local_average = [&](const std::string& algorithm) {
            // Unweighted mean across site models, per metric (and per subset).
            for (const auto& metric : classification
                                          ? std::vector<std::string>{"accuracy", "auroc"}
                                          : std::vector<std::string>{"r2", "rmse"}) {
                std::map<int, std::pair<double, std::size_t>> by_subset;
                for (const auto& r : result.records) {
                    if (r.fold != fold || r.algorithm != algorithm || r.metric != metric ||
                        r.scenario.rfind("local:", 0) != 0)
                        continue;
                    by_subset[r.subset].first += r.value;
                    by_subset[r.subset].second += 1;
                }
                for (const auto& [subset, acc] : by_subset)
                    result.records.push_back(
                        {fold, "local_avg", algorithm, metric, subset,
                         acc.first / static_cast<double>(acc.second)});
            }
        };

        const std::size_t global_trees = k_sites * spec.fed.trees_per_client;

        for (const auto& algorithm : spec.algorithms) {
            if (algorithm == "linear") {
                const double jitter = spec.fed.model.ridge_jitter;
                for (std::size_t s = 0; s < k_sites; ++s) {
                    const LinearModel local =
                        fit_ols(train[s].x, train[s].y, train[s].n, m, jitter);
                    record("local:" + spec.sites[s].site_id, algorithm,
                           linear_predict(local, global_test.x, global_test.n, m));
                }
                record_local_average(algorithm);

                Split pooled;
                for (const auto& t : train) append(pooled, t);
                const LinearModel central = fit_ols(pooled.x, pooled.y, pooled.n, m, jitter);
                record("centralized", algorithm,
                       linear_predict(central, global_test.x, global_test.n, m));

                std::vector<ClientData> clients;
                for (std::size_t s = 0; s < k_sites; ++s)
                    clients.push_back({spec.sites[s].site_id, train[s].x, train[s].y,
                                       train[s].n, m});
                const LinearModel fed = run_federated_linear(clients, transport, jitter);
                record("federated", algorithm,
                       linear_predict(fed, global_test.x, global_test.n, m));
                continue;
            }

            // Random forest family.
            const std::vector<Split>& fit_data = classification ? balanced : train;
            const TaskKind task =
                classification ? TaskKind::kClassification : TaskKind::kRegression;

            TrainConfig local_config = spec.fed.model;
            for (std::size_t s = 0; s < k_sites; ++s) {
                local_config.seed =
                    stream_seed(fold_seed, "local:" + spec.sites[s].site_id);
                const Forest local = fit_forest(fit_data[s].x, fit_data[s].y,
                                                fit_data[s].n, m, local_config, task);
                record("local:" + spec.sites[s].site_id, algorithm,
                       forest_predict(local, global_test.x, global_test.n, m));
            }
            record_local_average(algorithm);

            Split pooled;
            for (const auto& t : fit_data) append(pooled, t);

            FedConfig fed = spec.fed;
            fed.seed = stream_seed(fold_seed, "federated");
            fed.model.seed = fed.seed;
            std::vector<ClientData> clients;
            for (std::size_t s = 0; s < k_sites; ++s)
                clients.push_back({spec.sites[s].site_id, fit_data[s].x, fit_data[s].y,
                                   fit_data[s].n, m});

            if (!classification) {
                TrainConfig central_config = spec.fed.model;
                central_config.n_trees = global_trees;
                central_config.seed = stream_seed(fold_seed, "centralized");
                const Forest central = fit_forest(pooled.x, pooled.y, pooled.n, m,
                                                  central_config, task);
                record("centralized", algorithm,
                       forest_predict(central, global_test.x, global_test.n, m));

                const Forest global = run_federated_rf_regression(clients, fed, transport);
                record("federated", algorithm,
                       forest_predict(global, global_test.x, global_test.n, m));
            } else {
                // Both histogram-family models share the candidate grid derived
                // from the pooled training ranges (the federated run recomputes
                // the identical grid from per-client RangeReports).
                fed.model.n_trees = global_trees;
                std::vector<double> lo(m, std::numeric_limits<double>::infinity());
                std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
                for (std::size_t i = 0; i < pooled.n; ++i)
                    for (std::size_t j = 0; j < m; ++j) {
                        lo[j] = std::min(lo[j], pooled.x[i * m + j]);
                        hi[j] = std::max(hi[j], pooled.x[i * m + j]);
                    }
                FedConfig central_cfg = fed;
                central_cfg.seed = stream_seed(fold_seed, "centralized");
                central_cfg.model.seed = central_cfg.seed;
                const ThresholdGrid grid =
                    build_threshold_grid(lo, hi, fed.thresholds_per_feature);
                const Forest central = fit_forest_histogram(pooled.x, pooled.y, pooled.n,
                                                            m, grid, central_cfg);
                record("centralized", algorithm,
                       forest_predict(central, global_test.x, global_test.n, m));

                const Forest global = run_federated_rf_classification(clients, fed, transport);
                record("federated", algorithm,
                       forest_predict(global, global_test.x, global_test.n, m));
            }
        }
    }

    result.round_log = transport.log();
    return result;
}

}  // namespace fedsurvey
