#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "fedsurvey/config.hpp"
#include "fedsurvey/reports.hpp"
#include "fedsurvey/runner.hpp"

using namespace fedsurvey;
namespace fs = std::filesystem;

namespace {

std::string small_synth_config(const std::string& out_dir,
                               const std::string& extra = "") {
    return R"({
      "task": "regression",
      "seed": 11,
      "folds": 5,
      "schema": {"n_features": 4},
      "model": {"n_trees": 6},
      "federation": {"trees_per_client": 2},
      "data": {"source": "synthetic", "noise_sd": 2.0, "sites": [
        {"id": "A", "n": 80, "target_shift": -2.0},
        {"id": "B", "n": 100, "target_shift": 0.0},
        {"id": "C", "n": 90, "target_shift": 2.0}
      ]},
      "out_dir": ")" +
           out_dir + R"(")" + extra + "\n}";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fedsurvey_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

}  // namespace

TEST_CASE("config parsing materializes defaults and a stable hash") {
    TempDir dir;
    const auto c = parse_config_text(small_synth_config(dir.path.string()));
    CHECK(c.folds == 5);
    CHECK(c.seed == 11);
    CHECK(c.algorithms == std::vector<std::string>{"linear", "rf"});
    CHECK(c.fed.model.min_samples_leaf == 5);  // default materialized
    CHECK(c.fed.thresholds_per_feature == 32);
    CHECK(c.schema.feature_count() == 4);
    CHECK(c.schema.features[0].name == "f0");
    CHECK(c.hash.size() == 16);
    CHECK(c.materialized.find("\"min_samples_leaf\": 5") != std::string::npos);

    const auto again = parse_config_text(small_synth_config(dir.path.string()));
    CHECK(again.hash == c.hash);
    const auto other = parse_config_text(
        small_synth_config(dir.path.string(), ",\n\"threads\": 2"));
    CHECK(other.hash != c.hash);
}

TEST_CASE("config validation errors") {
    CHECK_THROWS_AS(parse_config_text("{not json"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"folds": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"subsample_fractions": [0.3]})"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"algorithms": ["svm"]})"), ConfigError);
    CHECK_THROWS_AS(
        parse_config_text(R"({"task": "classification", "algorithms": ["linear"]})"),
        ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"federation": {"thresholds_per_feature": 1}})"),
                    ConfigError);
}

TEST_CASE("default synthetic benchmark matches the published site sizes") {
    const auto c = default_synth_config(TaskKind::kRegression);
    REQUIRE(c.synth.sites.size() == 5);
    std::size_t total = 0;
    for (const auto& s : c.synth.sites) total += s.n;
    CHECK(total == 9648);
    CHECK(c.schema.feature_count() == 51);
    CHECK(c.seed == 42);
    const auto sites = load_experiment_data(c).sites;
    CHECK(sites.size() == 5);
    CHECK(sites[0].n_rows() == 2415);
}

TEST_CASE("cmd_run writes the full report set; rerun is byte-identical") {
    TempDir dir;
    const auto c = parse_config_text(small_synth_config(dir.path.string()));
    CHECK(cmd_run(c) == 0);
    for (const auto& name : {"results.csv", "summary.md", "hypotheses.csv",
                             "roundlog.csv", "fig3.csv", "config_used.json"})
        CHECK(fs::exists(dir.path / name));

    const std::string first = slurp((dir.path / "results.csv").string());
    CHECK(first.rfind("# config_hash=" + c.hash + " seed=11", 0) == 0);
    CHECK(cmd_run(c) == 0);
    CHECK(slurp((dir.path / "results.csv").string()) == first);
    CHECK(slurp((dir.path / "config_used.json").string()) == c.materialized + "\n");
}

TEST_CASE("cmd_subsample: shared test sets, fig4 data, baseline-only fallback") {
    TempDir dir;
    const auto c = parse_config_text(small_synth_config(
        dir.path.string(), ",\n\"subsample_fractions\": [0.5], \"algorithms\": [\"linear\"]"));
    CHECK(cmd_subsample(c) == 0);
    CHECK(fs::exists(dir.path / "results_50.csv"));
    CHECK(fs::exists(dir.path / "results_100.csv"));
    const std::string fig4 = slurp((dir.path / "fig4.csv").string());
    CHECK(fig4.find("0.5,linear,r2,centralized,") != std::string::npos);
    CHECK(fig4.find("1,linear,r2,federated,") != std::string::npos);
    const std::string hyp = slurp((dir.path / "subsample_hypotheses.csv").string());
    CHECK(hyp.find("0.5,linear,r2,F>L,") != std::string::npos);

    TempDir dir2;
    const auto baseline = parse_config_text(
        small_synth_config(dir2.path.string(), ",\n\"algorithms\": [\"linear\"]"));
    CHECK(cmd_subsample(baseline) == 0);
    CHECK(fs::exists(dir2.path / "results_100.csv"));
    CHECK(!fs::exists(dir2.path / "results_50.csv"));
}

TEST_CASE("cmd_heterogeneity flags a shifted site and keeps matrix shape") {
    TempDir dir;
    std::string cfg = R"({
      "task": "regression",
      "seed": 5,
      "schema": {"n_features": 2},
      "data": {"source": "synthetic", "noise_sd": 1.0, "sites": [
        {"id": "A", "n": 300, "feature_shift": [2.0, 0.0]},
        {"id": "B", "n": 300},
        {"id": "C", "n": 300}
      ]},
      "out_dir": ")" + dir.path.string() + "\"}";
    const auto c = parse_config_text(cfg);
    CHECK(cmd_heterogeneity(c) == 0);
    const std::string scheffe = slurp((dir.path / "heterogeneity_scheffe.csv").string());
    const std::string d = slurp((dir.path / "heterogeneity_cohens_d.csv").string());
    CHECK(scheffe.find("variable,AvsB,AvsC,BvsC") != std::string::npos);

    // f0 row: pairs involving A significant, BvsC not
    std::istringstream lines(scheffe);
    std::string line;
    bool checked = false;
    while (std::getline(lines, line)) {
        if (line.rfind("f0,", 0) != 0) continue;
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');  // variable
        double ab, ac, bc;
        std::getline(cells, cell, ',');
        ab = std::stod(cell);
        std::getline(cells, cell, ',');
        ac = std::stod(cell);
        std::getline(cells, cell, ',');
        bc = std::stod(cell);
        CHECK(ab < 0.05);
        CHECK(ac < 0.05);
        CHECK(bc > 0.05);
        checked = true;
    }
    CHECK(checked);
    CHECK(d.find("f0,") != std::string::npos);
}

TEST_CASE("cmd_synth emits a CSV that cmd_validate accepts") {
    TempDir dir;
    const auto c = parse_config_text(small_synth_config(dir.path.string()));
    CHECK(cmd_synth(c) == 0);
    const fs::path csv = dir.path / "synthetic.csv";
    REQUIRE(fs::exists(csv));

    std::string cfg = R"({
      "task": "regression",
      "schema": {"n_features": 4},
      "data": {"source": "csv", "csv_path": ")" +
                      csv.string() + R"(", "site_column": "site"}
    })";
    const auto validate_cfg = parse_config_text(cfg);
    CHECK(cmd_validate(validate_cfg) == 0);
    const auto loaded = load_experiment_data(validate_cfg);
    CHECK(loaded.sites.size() == 3);
    CHECK(loaded.rows_dropped == 0);
    std::size_t total = 0;
    for (const auto& s : loaded.sites) total += s.n_rows();
    CHECK(total == 270);
}

TEST_CASE("significance marks follow the star convention") {
    CHECK(significance_mark(0.0005) == "***");
    CHECK(significance_mark(0.005) == "**");
    CHECK(significance_mark(0.03) == "*");
    CHECK(significance_mark(0.05) == "n.s.");
    CHECK(significance_mark(0.48) == "n.s.");
}

TEST_CASE("summary agrees with the per-record aggregation") {
    TempDir dir;
    const auto c = parse_config_text(
        small_synth_config(dir.path.string(), ",\n\"algorithms\": [\"linear\"]"));
    CHECK(cmd_run(c) == 0);
    const std::string results = slurp((dir.path / "results.csv").string());
    const std::string summary = slurp((dir.path / "summary.md").string());

    // recompute the federated mean R^2 from results.csv
    std::istringstream lines(results);
    std::string line;
    double sum = 0.0;
    int count = 0;
    while (std::getline(lines, line)) {
        if (line.find(",federated,linear,r2,") == std::string::npos) continue;
        sum += std::stod(line.substr(line.rfind(',') + 1));
        ++count;
    }
    REQUIRE(count == 5);
    char expect[64];
    std::snprintf(expect, sizeof(expect), "%.4f", sum / 5.0);
    CHECK(summary.find(expect) != std::string::npos);
}
