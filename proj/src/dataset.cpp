#include "fedsurvey/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "fedsurvey/rng.hpp"

namespace fedsurvey {

void Schema::validate() const {
    if (features.empty()) throw ConfigError("Schema: at least one feature required");
    std::set<std::string> names;
    for (const auto& f : features) {
        if (!names.insert(f.name).second)
            throw ConfigError("Schema: duplicate feature name '" + f.name + "'");
        if (f.bounds && !(f.bounds->min < f.bounds->max))
            throw ConfigError("Schema: invalid bounds for feature '" + f.name + "'");
    }
    if (names.count(target.name))
        throw ConfigError("Schema: target name '" + target.name + "' collides with a feature");
    if (target.bounds && !(target.bounds->min < target.bounds->max))
        throw ConfigError("Schema: invalid target bounds");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "na" || cell == "NaN";
}

bool parse_double(const std::string& cell, double& out) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end != begin && *end == '\0' && std::isfinite(out);
}

void check_bounds(const FeatureSpec& spec, double v, std::size_t row) {
    if (spec.bounds && (v < spec.bounds->min || v > spec.bounds->max))
        throw DataError("BoundsViolation: row " + std::to_string(row) + ", feature '" +
                        spec.name + "' value " + std::to_string(v));
    if (spec.kind == FeatureKind::kBinary && v != 0.0 && v != 1.0)
        throw DataError("BoundsViolation: row " + std::to_string(row) + ", binary feature '" +
                        spec.name + "' value " + std::to_string(v));
}

}  // namespace

LoadResult load_csv(const std::string& path, const Schema& schema,
                    const std::string& site_column) {
    schema.validate();
    std::ifstream in(path);
    if (!in) throw DataError("load_csv: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw DataError("load_csv: empty file '" + path + "'");
    const auto header = split_csv_line(line);

    auto column_of = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw DataError("MissingColumn: '" + name + "' in '" + path + "'");
        return static_cast<std::size_t>(it - header.begin());
    };

    std::vector<std::size_t> feature_cols;
    feature_cols.reserve(schema.features.size());
    for (const auto& f : schema.features) feature_cols.push_back(column_of(f.name));
    const std::size_t target_col = column_of(schema.target.name);
    const std::size_t site_col = column_of(site_column);

    const std::size_t m = schema.features.size();
    std::vector<std::string> site_order;
    std::map<std::string, SiteTable> by_site;
    std::set<std::string> sites_seen;
    std::size_t dropped = 0;
    std::size_t row_number = 0;

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++row_number;
        const auto cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            ++dropped;
            continue;
        }
        const std::string& site = cells[site_col];
        if (!site.empty()) sites_seen.insert(site);

        std::vector<double> values(m);
        double target = 0.0;
        bool complete = !is_missing(site);
        for (std::size_t j = 0; complete && j < m; ++j)
            complete = !is_missing(cells[feature_cols[j]]) &&
                       parse_double(cells[feature_cols[j]], values[j]);
        if (complete)
            complete = !is_missing(cells[target_col]) &&
                       parse_double(cells[target_col], target);
        if (!complete) {
            ++dropped;
            continue;
        }

        for (std::size_t j = 0; j < m; ++j) check_bounds(schema.features[j], values[j], row_number);
        check_bounds(schema.target, target, row_number);
        if (schema.task == TaskKind::kClassification && target != 0.0 && target != 1.0)
            throw DataError("BoundsViolation: row " + std::to_string(row_number) +
                            ", classification target must be 0/1");

        auto it = by_site.find(site);
        if (it == by_site.end()) {
            site_order.push_back(site);
            it = by_site.emplace(site, SiteTable{site, m, {}, {}}).first;
        }
        it->second.x.insert(it->second.x.end(), values.begin(), values.end());
        it->second.y.push_back(target);
    }

    for (const auto& site : sites_seen)
        if (!by_site.count(site))
            throw DataError("EmptyAfterFiltering: site '" + site + "' lost all rows");

    LoadResult result;
    result.rows_dropped = dropped;
    for (const auto& site : site_order) result.sites.push_back(std::move(by_site[site]));
    return result;
}

std::vector<std::size_t> FoldPlan::train_indices(const std::string& site,
                                                 std::size_t fold) const {
    const auto& folds = assignment.at(site);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < folds.size(); ++i)
        if (folds[i] != fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldPlan::test_indices(const std::string& site,
                                                std::size_t fold) const {
    const auto& folds = assignment.at(site);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < folds.size(); ++i)
        if (folds[i] == fold) out.push_back(i);
    return out;
}

FoldPlan make_fold_plan(const std::vector<SiteTable>& sites, std::size_t k,
                        std::uint64_t seed) {
    if (k < 2) throw ConfigError("make_fold_plan: k must be >= 2");
    FoldPlan plan;
    plan.k = k;
    for (const auto& site : sites) {
        const std::size_t n = site.n_rows();
        if (n < k)
            throw DataError("SiteTooSmall: site '" + site.site_id + "' has " +
                            std::to_string(n) + " rows, need >= " + std::to_string(k));
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        Rng rng(stream_seed(seed, site.site_id));
        rng.shuffle(perm);
        std::vector<std::size_t> folds(n);
        for (std::size_t p = 0; p < n; ++p) folds[perm[p]] = p % k;
        plan.assignment[site.site_id] = std::move(folds);
    }
    return plan;
}

BalancedSet supersample_balance(const SiteTable& table,
                                const std::vector<std::size_t>& train,
                                std::uint64_t seed) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i : train) (table.y[i] == 1.0 ? pos : neg).push_back(i);
    if (pos.empty() || neg.empty())
        throw DataError("OneClassOnly: site '" + table.site_id + "'");

    BalancedSet set;
    set.provenance = BalanceProvenance::kSupersampled;
    set.seed = seed;
    set.indices = train;  // every original row retained
    auto& smaller = pos.size() < neg.size() ? pos : neg;
    const std::size_t deficit =
        (pos.size() < neg.size() ? neg.size() : pos.size()) - smaller.size();
    Rng rng(seed);
    for (std::size_t d = 0; d < deficit; ++d)
        set.indices.push_back(smaller[rng.below(smaller.size())]);
    return set;
}

BalancedSubsetsResult balanced_test_subsets(const std::vector<double>& labels,
                                            std::size_t count, std::uint64_t seed) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] == 1.0 ? pos : neg).push_back(i);
    if (pos.empty() || neg.empty()) throw DataError("OneClassOnly: merged test set");

    auto& smaller = pos.size() <= neg.size() ? pos : neg;
    auto& larger = pos.size() <= neg.size() ? neg : pos;
    Rng rng(seed);
    rng.shuffle(larger);

    const std::size_t attainable = larger.size() / smaller.size();
    const std::size_t n_subsets = std::min(count, attainable);

    BalancedSubsetsResult result;
    result.truncated = n_subsets < count;
    for (std::size_t s = 0; s < n_subsets; ++s) {
        BalancedSet set;
        set.provenance = BalanceProvenance::kSubsampled;
        set.seed = seed;
        set.indices = smaller;
        for (std::size_t j = 0; j < smaller.size(); ++j)
            set.indices.push_back(larger[s * smaller.size() + j]);
        std::sort(set.indices.begin(), set.indices.end());
        result.subsets.push_back(std::move(set));
    }
    return result;
}

std::vector<std::size_t> subsample_training(const std::vector<std::size_t>& train,
                                            double fraction, std::uint64_t seed,
                                            const std::string& site_id) {
    if (!(fraction > 0.0 && fraction <= 1.0))
        throw ConfigError("subsample_training: fraction must be in (0, 1]");
    if (fraction == 1.0) return train;
    const std::size_t keep =
        static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(train.size())));
    if (keep < 2)
        throw DataError("SiteTooSmall: site '" + site_id + "' would keep " +
                        std::to_string(keep) + " rows at fraction " + std::to_string(fraction));
    std::vector<std::size_t> shuffled = train;
    Rng rng(stream_seed(seed, site_id));
    rng.shuffle(shuffled);
    shuffled.resize(keep);
    std::sort(shuffled.begin(), shuffled.end());
    return shuffled;
}

std::vector<double> synthetic_latent_weights(std::size_t m) {
    std::vector<double> w(m);
    for (std::size_t j = 0; j < m; ++j)
        w[j] = 1.2 * (static_cast<double>(j % 5) - 2.0);
    return w;
}

std::vector<SiteTable> generate_synthetic(const SynthSpec& spec) {
    spec.schema.validate();
    if (spec.sites.empty()) throw ConfigError("InvalidSpec: no sites");
    if (!(spec.noise_sd > 0.0)) throw ConfigError("InvalidSpec: noise_sd must be > 0");
    const std::size_t m = spec.schema.feature_count();
    const auto weights = synthetic_latent_weights(m);

    std::vector<SiteTable> sites;
    for (const auto& site : spec.sites) {
        if (site.n < 10)
            throw ConfigError("InvalidSpec: site '" + site.site_id + "' needs n >= 10");
        if (!site.feature_shift.empty() && site.feature_shift.size() != m)
            throw ConfigError("InvalidSpec: feature_shift size mismatch for '" +
                              site.site_id + "'");

        SiteTable table;
        table.site_id = site.site_id;
        table.n_features = m;
        table.x.resize(site.n * m);
        table.y.resize(site.n);
        Rng rng(stream_seed(spec.seed, site.site_id));

        for (std::size_t i = 0; i < site.n; ++i) {
            double latent = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double shift =
                    site.feature_shift.empty() ? 0.0 : site.feature_shift[j];
                const FeatureSpec& fs = spec.schema.features[j];
                double v = 0.0;
                switch (fs.kind) {
                    case FeatureKind::kBinary: {
                        const double p = std::clamp(0.5 + shift, 0.0, 1.0);
                        v = rng.uniform01() < p ? 1.0 : 0.0;
                        break;
                    }
                    case FeatureKind::kOrdinal:
                    case FeatureKind::kNominal: {
                        double raw = shift + rng.normal();
                        if (fs.bounds) {
                            const double center = 0.5 * (fs.bounds->min + fs.bounds->max);
                            const double scale = (fs.bounds->max - fs.bounds->min) / 6.0;
                            raw = std::clamp(center + raw * scale, fs.bounds->min,
                                             fs.bounds->max);
                        }
                        v = std::round(raw);
                        break;
                    }
                    case FeatureKind::kContinuous: {
                        v = shift + rng.normal();
                        if (fs.bounds) v = std::clamp(v, fs.bounds->min, fs.bounds->max);
                        break;
                    }
                }
                table.x[i * m + j] = v;
                latent += weights[j] * v;
            }
            const double noisy = latent + site.target_shift + spec.noise_sd * rng.normal();
            if (spec.schema.task == TaskKind::kClassification) {
                table.y[i] = noisy > 0.0 ? 1.0 : 0.0;
            } else {
                double out = noisy;
                if (spec.schema.target.bounds)
                    out = std::clamp(out, spec.schema.target.bounds->min,
                                     spec.schema.target.bounds->max);
                table.y[i] = out;
            }
        }
        sites.push_back(std::move(table));
    }
    return sites;
}

}  // namespace fedsurvey
