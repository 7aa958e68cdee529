#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "edgelab/error.hpp"
#include "edgelab/experiments.hpp"

using namespace edgelab;
using namespace edgelab::exp;

namespace {

ExperimentConfig small_counting() {
  ExperimentConfig c;
  c.query.kind = QueryKind::edge_window;
  c.n = 300;
  c.replications = 250;
  c.block_size = 16;
  c.seed = 99;
  return c;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("edgelab_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::size_t count_lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

// Keeps EDGELAB_THREADS out of the way for tests that set workers explicitly.
struct ThreadsEnvGuard {
  std::string saved;
  bool had = false;
  ThreadsEnvGuard() {
    if (const char* v = std::getenv("EDGELAB_THREADS")) {
      had = true;
      saved = v;
    }
    unsetenv("EDGELAB_THREADS");
  }
  ~ThreadsEnvGuard() {
    if (had) setenv("EDGELAB_THREADS", saved.c_str(), 1);
  }
};

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("config round-trips through JSON") {
    ExperimentConfig c;
    c.experiment_id = "trip";
    c.ensemble = "matched";
    c.n = 1024;
    c.replications = 77;
    c.seed = 18446744073709551615ull;
    c.query.kind = QueryKind::bulk_index;
    c.query.y = 0.1 + 0.2;
    c.query.fraction = 1.0 / 3.0;
    c.a_grid = {1.0, 1.1, std::nextafter(1.25, 2.0)};
    c.x_grid = {-0.7, 2.5};
    c.reference_n = 256;
    c.delta = 0.3;
    c.mdp_statistic = "counting_edge";
    CHECK(config_from_json(config_to_json(c)) == c);

    const auto dir = scratch_dir("config");
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "c.json") << config_to_json(c);
    CHECK(read_config(dir / "c.json") == c);
  }

  TEST_CASE("config schema errors") {
    CHECK_THROWS_AS(config_from_json("{"), SchemaError);
    CHECK_THROWS_AS(config_from_json("[1, 2]"), SchemaError);
    CHECK_THROWS_AS(config_from_json(R"({"replications_typo": 3})"), SchemaError);
    CHECK_THROWS_AS(config_from_json(R"({"n": "big"})"), SchemaError);
    CHECK_THROWS_AS(config_from_json(R"({"n": -4})"), SchemaError);
    CHECK_THROWS_AS(config_from_json(R"({"a_grid": [1, "x"]})"), SchemaError);
    CHECK_THROWS_AS(config_from_json(R"({"query": {"kind": "corner"}})"), SchemaError);
    CHECK_THROWS_AS(config_from_json(R"({"query": {"alpha": 0.5, "beta": 1}})"), SchemaError);
    CHECK_THROWS_AS(read_config("/nonexistent/edgelab.json"), SchemaError);
    const auto partial = config_from_json(R"({"n": 64, "query": {"kind": "edge_window", "y": 1.5}})");
    CHECK(partial.n == 64);
    CHECK(partial.query.kind == QueryKind::edge_window);
    CHECK(*partial.query.y == 1.5);
    CHECK(partial.replications == ExperimentConfig{}.replications);
  }

  TEST_CASE("config validation") {
    ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    c.n = 3;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = {};
    c.replications = 0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = {};
    c.query.alpha = 1.0;
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = {};
    c.ensemble = "gse";
    CHECK_THROWS_AS(c.validate(), ParameterError);
    c = {};
    c.a_grid = {0.5};
    CHECK_THROWS_AS(c.validate(), ParameterError);
    CHECK_THROWS_AS(run_mdp_probe(c), ParameterError);
  }

  TEST_CASE("EDGELAB_THREADS overrides the worker count") {
    ThreadsEnvGuard guard;
    ExperimentConfig c;
    c.workers = 3;
    CHECK(effective_workers(c) == 3);
    setenv("EDGELAB_THREADS", "5", 1);
    CHECK(effective_workers(c) == 5);
    setenv("EDGELAB_THREADS", "five", 1);
    CHECK_THROWS_AS(effective_workers(c), ParameterError);
    unsetenv("EDGELAB_THREADS");
    c.workers = 0;
    CHECK(effective_workers(c) >= 1);
  }

  TEST_CASE("counting report layout") {
    const auto report = run_counting_clt(small_counting());
    CHECK(report.config.experiment_id == "counting-clt");
    CHECK(report.rows.size() == 250);
    CHECK(report.moments.count() == 250);
    CHECK(report.checks.size() == 3);
    const auto csv = report_csv(report);
    CHECK(csv.rfind("experiment_id,replicate,n,ensemble,statistic,raw_value,standardized_value,seed_stream\n", 0) == 0);
    CHECK(count_lines(csv) == 251);
    const auto& row = report.rows[17];
    CHECK(row.replicate == 17);
    CHECK(row.n == 300);
    CHECK(row.ensemble == "tridiag-gue");
    CHECK(row.statistic == "counting_edge");
    CHECK(row.seed_stream == 1);  // block 17 / 16
    CHECK(row.raw_value == std::floor(row.raw_value));

    const auto summary = nlohmann::json::parse(report_json(report));
    for (const auto* key : {"config", "moments", "ks", "tail_probe", "checks", "wall_time_seconds"}) CHECK(summary.contains(key));
    for (const auto* key : {"count", "mean", "variance", "skewness", "excess_kurtosis"}) CHECK(summary["moments"].contains(key));
    CHECK(summary["config"]["seed"] == 99);
    CHECK(config_from_json(summary["config"].dump()) == report.config);

    const auto dir = scratch_dir("report");
    write_report(report, dir);
    std::ifstream in(dir / "counting-clt.csv");
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == csv);
    CHECK(std::filesystem::exists(dir / "counting-clt.json"));
  }

  TEST_CASE("CSV numbers round-trip exactly") {
    ExperimentConfig c = small_counting();
    c.replications = 40;
    const auto report = run_counting_clt(c);
    std::istringstream csv(report_csv(report));
    std::string line;
    std::getline(csv, line);
    for (const auto& row : report.rows) {
      std::getline(csv, line);
      std::vector<std::string> fields;
      std::stringstream ss(line);
      for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
      REQUIRE(fields.size() == 8);
      CHECK(std::strtod(fields[6].c_str(), nullptr) == row.standardized_value);
    }
  }

  TEST_CASE("a single replicate leaves the variance undefined") {
    ExperimentConfig c = small_counting();
    c.replications = 1;
    const auto report = run_counting_clt(c);
    CHECK_FALSE(report.check("variance_ratio").pass);
    CHECK(report.check("variance_ratio").detail.find("undefined") != std::string::npos);
    CHECK(nlohmann::json::parse(report_json(report))["moments"]["variance"].is_null());
    CHECK_THROWS_AS(static_cast<void>(report.check("no_such_check")), IndexError);
  }

  TEST_CASE("same seed and workers give identical output; workers do not change values") {
    ThreadsEnvGuard guard;
    ExperimentConfig c = small_counting();
    c.workers = 2;
    const auto a = run_counting_clt(c);
    const auto b = run_counting_clt(c);
    CHECK(report_csv(a) == report_csv(b));
    c.workers = 4;
    const auto d = run_counting_clt(c);
    CHECK(report_csv(a) == report_csv(d));
    CHECK(a.moments.mean() == d.moments.mean());
    CHECK(a.moments.m4() == d.moments.m4());
    c.seed = 100;
    CHECK(report_csv(run_counting_clt(c)) != report_csv(a));
  }

  TEST_CASE("eigenvalue experiment queries") {
    ExperimentConfig c;
    c.n = 200;
    c.replications = 50;
    c.query.kind = QueryKind::bulk_index;
    const auto bulk = run_eigenvalue_clt(c);
    CHECK(bulk.rows.front().statistic == "bulk_eigenvalue");
    c.query.kind = QueryKind::edge_index;
    c.ensemble = "tridiag-goe";
    const auto edge = run_eigenvalue_clt(c);
    CHECK(edge.rows.front().statistic == "edge_eigenvalue");
    CHECK(edge.rows.front().raw_value > 1.0);
    c.query.kind = QueryKind::edge_window;
    CHECK_THROWS_AS(run_eigenvalue_clt(c), ParameterError);
    c.query.kind = QueryKind::edge_index;
    c.query.alpha = 0.05;  // floor(200^0.05) = 1
    CHECK_THROWS_AS(run_eigenvalue_clt(c), ParameterError);
  }

  TEST_CASE("mdp probe emits one cell per grid point and size") {
    ExperimentConfig c;
    c.n = 256;
    c.reference_n = 128;
    c.replications = 200;
    c.a_grid = {1.0, 2.0};
    c.x_grid = {-1.0, 1.0, 30.0};
    const auto report = run_mdp_probe(c);
    CHECK(report.tail_probe.size() == 12);
    CHECK(report.rows.size() == 400);
    for (const auto& cell : report.tail_probe) {
      CHECK(cell.flag == (cell.tail.exceedances == 0));
      if (cell.x == 30.0) {
        CHECK(cell.flag);
        CHECK(cell.tail.ci_hi == doctest::Approx(3.0 / 200.0));
      }
    }
    CHECK_FALSE(report.check("rate_within_factor_2[a=1,x=30]").pass);
    CHECK_FALSE(report.check("trend[a=2,x=30]").pass);
    const auto summary = nlohmann::json::parse(report_json(report));
    CHECK(summary["tail_probe"].size() == 12);
    for (const auto* key : {"a", "x", "p_hat", "ci_lo", "ci_hi", "diagnostic", "flag"}) CHECK(summary["tail_probe"][0].contains(key));
  }

  TEST_CASE("universality requires a fourth-order match") {
    ExperimentConfig c;
    c.n = 64;
    c.replications = 30;
    c.control_replications = 10;
    c.ensemble = "rademacher";
    CHECK_THROWS_AS(run_universality(c), ParameterError);
    c.ensemble = "goe";
    CHECK_THROWS_AS(run_universality(c), ParameterError);
    c.ensemble = "matched";
    c.reference_sampler = "goe";
    CHECK_THROWS_AS(run_universality(c), ParameterError);
    c.reference_sampler = "tridiag-gue";
    const auto report = run_universality(c);
    CHECK(report.comparisons.size() == 3);
    CHECK(report.rows.size() == 30 * 3 + 10);
  }

  TEST_CASE("duality experiment finds no disagreements") {
    ExperimentConfig c;
    c.n = 60;
    c.replications = 300;
    for (const auto* ensemble : {"tridiag-gue", "goe"}) {
      c.ensemble = ensemble;
      const auto report = run_duality(c);
      CHECK(report.check("event_disagreements").pass);
      CHECK(report.check("threshold_at_eigenvalue").pass);
      CHECK(report.check("scale_identity").pass);
    }
  }

  TEST_CASE("interlacing experiment at small size") {
    ExperimentConfig c;
    c.n = 20;
    c.replications = 100;
    c.cauchy_replications = 100;
    c.variance_ratio_n = 100;
    c.variance_ratio_replications = 100;
    const auto report = run_interlacing(c);
    CHECK(report.check("cauchy_interlacing").pass);
    CHECK(report.check("eta_prime_range").pass);
    CHECK(report.comparisons.size() == 3);
  }
}
