#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "fedsurvey/config.hpp"
#include "fedsurvey/rng.hpp"
#include "json.hpp"

namespace fedsurvey {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

FeatureKind kind_from_string(const std::string& s) {
    if (s == "continuous") return FeatureKind::kContinuous;
    if (s == "ordinal") return FeatureKind::kOrdinal;
    if (s == "binary") return FeatureKind::kBinary;
    if (s == "nominal") return FeatureKind::kNominal;
    throw ConfigError("unknown feature kind '" + s + "'");
}

std::string kind_to_string(FeatureKind k) {
    switch (k) {
        case FeatureKind::kContinuous: return "continuous";
        case FeatureKind::kOrdinal: return "ordinal";
        case FeatureKind::kBinary: return "binary";
        case FeatureKind::kNominal: return "nominal";
    }
    return "continuous";
}

FeatureSpec feature_from_json(const json& j) {
    FeatureSpec f;
    f.name = j.at("name").get<std::string>();
    f.kind = kind_from_string(j.value("kind", std::string("continuous")));
    if (j.contains("min") || j.contains("max")) {
        if (!(j.contains("min") && j.contains("max")))
            throw ConfigError("feature '" + f.name + "': min and max must appear together");
        f.bounds = Bounds{j.at("min").get<double>(), j.at("max").get<double>()};
    }
    return f;
}

json feature_to_json(const FeatureSpec& f) {
    json j;
    j["name"] = f.name;
    j["kind"] = kind_to_string(f.kind);
    if (f.bounds) {
        j["min"] = f.bounds->min;
        j["max"] = f.bounds->max;
    }
    return j;
}

std::string zero_pad(std::size_t value, std::size_t width) {
    std::string s = std::to_string(value);
    while (s.size() < width) s.insert(s.begin(), '0');
    return s;
}

const std::vector<double> kAllowedFractions = {0.75, 0.5, 0.25, 0.10};

ExperimentConfig from_json(const json& j) {
    ExperimentConfig c;

    const std::string task = j.value("task", std::string("regression"));
    if (task == "regression")
        c.schema.task = TaskKind::kRegression;
    else if (task == "classification")
        c.schema.task = TaskKind::kClassification;
    else
        throw ConfigError("task must be 'regression' or 'classification'");

    c.seed = j.value("seed", std::uint64_t{42});
    c.folds = j.value("folds", std::size_t{5});
    if (c.folds < 2) throw ConfigError("folds must be >= 2");
    c.out_dir = j.value("out_dir", std::string("out"));
    c.threads = j.value("threads", 1);
    if (c.threads < 1) throw ConfigError("threads must be >= 1");
    c.test_subsets = j.value("test_subsets", std::size_t{4});
    if (c.test_subsets < 1) throw ConfigError("test_subsets must be >= 1");

    if (j.contains("algorithms"))
        c.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    else
        c.algorithms = c.schema.task == TaskKind::kRegression
                           ? std::vector<std::string>{"linear", "rf"}
                           : std::vector<std::string>{"rf"};
    if (c.algorithms.empty()) throw ConfigError("algorithms must be non-empty");
    for (const auto& a : c.algorithms) {
        if (a != "linear" && a != "rf") throw ConfigError("unknown algorithm '" + a + "'");
        if (a == "linear" && c.schema.task == TaskKind::kClassification)
            throw ConfigError("linear algorithm is regression-only");
    }

    if (j.contains("subsample_fractions")) {
        c.subsample_fractions = j.at("subsample_fractions").get<std::vector<double>>();
        for (double f : c.subsample_fractions) {
            bool ok = false;
            for (double a : kAllowedFractions) ok = ok || f == a;
            if (!ok)
                throw ConfigError("subsample fraction " + format_double(f) +
                                  " not in {0.75, 0.5, 0.25, 0.1}");
        }
    }

    // schema
    const json schema_j = j.value("schema", json::object());
    if (schema_j.contains("features")) {
        for (const auto& f : schema_j.at("features"))
            c.schema.features.push_back(feature_from_json(f));
    } else {
        const auto m = schema_j.value("n_features", std::size_t{51});
        if (m < 1) throw ConfigError("n_features must be >= 1");
        const std::size_t width = std::to_string(m - 1).size();
        for (std::size_t i = 0; i < m; ++i)
            c.schema.features.push_back({"f" + zero_pad(i, width),
                                         FeatureKind::kContinuous, std::nullopt});
    }
    if (schema_j.contains("target")) {
        c.schema.target = feature_from_json(schema_j.at("target"));
    } else {
        c.schema.target.name = "y";
        c.schema.target.kind = c.schema.task == TaskKind::kClassification
                                   ? FeatureKind::kBinary
                                   : FeatureKind::kContinuous;
    }
    c.schema.validate();

    // data source
    const json data_j = j.value("data", json::object());
    const std::string source = data_j.value("source", std::string("synthetic"));
    if (source == "csv") {
        c.use_synthetic = false;
        c.csv_path = data_j.at("csv_path").get<std::string>();
        c.site_column = data_j.value("site_column", std::string("site"));
    } else if (source == "synthetic") {
        c.use_synthetic = true;
        c.synth.schema = c.schema;
        c.synth.seed = c.seed;
        c.synth.noise_sd = data_j.value("noise_sd", 1.0);
        if (!data_j.contains("sites")) throw ConfigError("synthetic data needs 'sites'");
        for (const auto& s : data_j.at("sites")) {
            SynthSite site;
            site.site_id = s.at("id").get<std::string>();
            site.n = s.at("n").get<std::size_t>();
            site.target_shift = s.value("target_shift", 0.0);
            if (s.contains("feature_shift"))
                site.feature_shift = s.at("feature_shift").get<std::vector<double>>();
            c.synth.sites.push_back(std::move(site));
        }
    } else {
        throw ConfigError("data.source must be 'csv' or 'synthetic'");
    }

    // model
    const json model_j = j.value("model", json::object());
    c.fed.model.n_trees = model_j.value("n_trees", std::size_t{100});
    c.fed.model.max_depth = model_j.value("max_depth", -1);
    c.fed.model.min_samples_leaf = model_j.value("min_samples_leaf", std::size_t{5});
    c.fed.model.features_per_split = model_j.value("features_per_split", std::size_t{0});
    c.fed.model.ridge_jitter = model_j.value("ridge_jitter", 1e-8);
    c.fed.model.seed = c.seed;

    // federation
    const json fed_j = j.value("federation", json::object());
    c.fed.trees_per_client = fed_j.value("trees_per_client", std::size_t{20});
    c.fed.thresholds_per_feature = fed_j.value("thresholds_per_feature", std::size_t{32});
    if (c.fed.thresholds_per_feature < 2)
        throw ConfigError("thresholds_per_feature must be >= 2");
    if (c.fed.trees_per_client < 1) throw ConfigError("trees_per_client must be >= 1");
    c.fed.seed = c.seed;
    c.fed.algorithm = c.schema.task == TaskKind::kClassification
                          ? FedAlgorithm::kRfClassification
                          : FedAlgorithm::kRfRegression;

    // canonical materialized copy with every default filled in
    json out;
    out["task"] = task;
    out["seed"] = c.seed;
    out["folds"] = c.folds;
    out["algorithms"] = c.algorithms;
    out["subsample_fractions"] = c.subsample_fractions;
    out["test_subsets"] = c.test_subsets;
    out["out_dir"] = c.out_dir;
    out["threads"] = c.threads;
    json sj;
    sj["features"] = json::array();
    for (const auto& f : c.schema.features) sj["features"].push_back(feature_to_json(f));
    sj["target"] = feature_to_json(c.schema.target);
    out["schema"] = sj;
    json dj;
    dj["source"] = source;
    if (c.use_synthetic) {
        dj["noise_sd"] = c.synth.noise_sd;
        dj["sites"] = json::array();
        for (const auto& s : c.synth.sites) {
            json site;
            site["id"] = s.site_id;
            site["n"] = s.n;
            site["target_shift"] = s.target_shift;
            site["feature_shift"] = s.feature_shift;
            dj["sites"].push_back(site);
        }
    } else {
        dj["csv_path"] = c.csv_path;
        dj["site_column"] = c.site_column;
    }
    out["data"] = dj;
    json mj;
    mj["n_trees"] = c.fed.model.n_trees;
    mj["max_depth"] = c.fed.model.max_depth;
    mj["min_samples_leaf"] = c.fed.model.min_samples_leaf;
    mj["features_per_split"] = c.fed.model.features_per_split;
    mj["ridge_jitter"] = c.fed.model.ridge_jitter;
    out["model"] = mj;
    json fj;
    fj["trees_per_client"] = c.fed.trees_per_client;
    fj["thresholds_per_feature"] = c.fed.thresholds_per_feature;
    out["federation"] = fj;

    c.materialized = out.dump(2);
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(c.materialized);
    c.hash = hex.str();
    return c;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

ExperimentConfig default_synth_config(TaskKind task) {
    json j;
    if (task == TaskKind::kRegression) {
        j["task"] = "regression";
        j["subsample_fractions"] = {0.75, 0.5, 0.25, 0.1};
        j["schema"]["n_features"] = 51;
        j["data"]["source"] = "synthetic";
        j["data"]["noise_sd"] = 15.0;
        const std::vector<std::size_t> sizes = {2415, 1550, 2530, 2220, 933};
        const std::vector<double> target_shifts = {-12.0, -6.0, 0.0, 6.0, 12.0};
        // Feature-mean shifts are kept small and non-monotone in the target
        // shift so the pooled model cannot proxy site identity from feature
        // means; the site effect lives almost entirely in the outcome shift.
        const std::vector<double> feature_deltas = {0.1, -0.1, 0.1, -0.1, 0.0};
        j["data"]["sites"] = json::array();
        for (std::size_t s = 0; s < 5; ++s) {
            std::vector<double> shift(51, 0.0);
            for (std::size_t f = s; f < 51; f += 5) shift[f] = feature_deltas[s];
            json site;
            site["id"] = std::string("site-") + static_cast<char>('A' + s);
            site["n"] = sizes[s];
            site["target_shift"] = target_shifts[s];
            site["feature_shift"] = shift;
            j["data"]["sites"].push_back(site);
        }
    } else {
        j["task"] = "classification";
        j["schema"]["n_features"] = 12;
        j["data"]["source"] = "synthetic";
        j["data"]["noise_sd"] = 6.0;
        j["model"]["n_trees"] = 25;
        j["model"]["max_depth"] = 6;
        j["federation"]["trees_per_client"] = 5;
        j["federation"]["thresholds_per_feature"] = 16;
        const std::vector<double> target_shifts = {8.0, 9.0, 10.0, 11.0, 12.0};
        const std::vector<double> feature_deltas = {-0.4, -0.2, 0.0, 0.2, 0.4};
        j["data"]["sites"] = json::array();
        for (std::size_t s = 0; s < 5; ++s) {
            std::vector<double> shift(12, 0.0);
            for (std::size_t f = s; f < 12; f += 5) shift[f] = feature_deltas[s];
            json site;
            site["id"] = std::string("site-") + static_cast<char>('A' + s);
            site["n"] = 300;
            site["target_shift"] = target_shifts[s];
            site["feature_shift"] = shift;
            j["data"]["sites"].push_back(site);
        }
    }
    return from_json(j);
}

LoadResult load_experiment_data(const ExperimentConfig& config) {
    if (config.use_synthetic) {
        LoadResult result;
        result.sites = generate_synthetic(config.synth);
        return result;
    }
    return load_csv(config.csv_path, config.schema, config.site_column);
}

}  // namespace fedsurvey
