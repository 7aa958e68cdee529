// Command-line front end: one subcommand per experiment.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "edgelab/experiments.hpp"

namespace {

using edgelab::exp::ExperimentConfig;
using edgelab::exp::ExperimentReport;

struct Overrides {
  std::string config_path;
  std::optional<std::size_t> n;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> ensemble;
  std::optional<std::string> out;
};

struct Command {
  const char* name;
  const char* help;
  std::function<ExperimentReport(const ExperimentConfig&)> run;
  std::function<void(ExperimentConfig&)> defaults;
};

ExperimentConfig build_config(const Command& command, const Overrides& o) {
  ExperimentConfig cfg;
  if (!o.config_path.empty()) {
    cfg = edgelab::exp::read_config(o.config_path);
  } else {
    command.defaults(cfg);
  }
  if (cfg.experiment_id.empty()) cfg.experiment_id = command.name;
  if (o.n) cfg.n = *o.n;
  if (o.reps) cfg.replications = *o.reps;
  if (o.seed) cfg.seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (o.ensemble) cfg.ensemble = *o.ensemble;
  if (o.out) cfg.output_dir = *o.out;
  return cfg;
}

void print_summary(const ExperimentReport& report, std::ostream& out) {
  out << report.config.experiment_id << ": n=" << report.config.n << " replications=" << report.config.replications
      << " ensemble=" << report.config.ensemble << " wall=" << report.wall_time_seconds << "s\n";
  out << "  mean=" << report.moments.mean() << " variance=" << report.moments.variance() << " ks=" << report.ks << "\n";
  for (const auto& c : report.comparisons) out << "  compare " << c.name << " ks=" << c.ks << " critical_99=" << c.critical_99 << "\n";
  for (const auto& c : report.checks) out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << " " << c.detail << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  namespace ex = edgelab::exp;
  CLI::App app{"Monte Carlo experiments on edge statistics of Wigner matrices"};
  app.require_subcommand(1);

  const std::vector<Command> commands = {
      {"counting-clt", "Counting function at an edge window", ex::run_counting_clt,
       [](ExperimentConfig& c) { c.query.kind = ex::QueryKind::edge_window; }},
      {"eigenvalue-clt", "Edge or bulk eigenvalue fluctuations", ex::run_eigenvalue_clt,
       [](ExperimentConfig& c) { c.query.kind = ex::QueryKind::edge_index; }},
      {"mdp-probe", "Tail probabilities over an (a, x) grid", ex::run_mdp_probe,
       [](ExperimentConfig& c) { c.query.kind = ex::QueryKind::edge_index; }},
      {"universality", "Matched-moment ensemble against GUE", ex::run_universality,
       [](ExperimentConfig& c) {
         c.ensemble = "matched";
         c.replications = 1000;
       }},
      {"interlacing", "Superposition, Cauchy interlacing and variance ratio", ex::run_interlacing,
       [](ExperimentConfig& c) {
         c.n = 100;
         c.replications = 4000;
       }},
      {"duality", "Counting and eigenvalue events at random thresholds", ex::run_duality,
       [](ExperimentConfig& c) {
         c.n = 200;
         c.replications = 1000;
       }},
  };

  Overrides overrides;
  std::map<CLI::App*, const Command*> by_app;
  for (const auto& command : commands) {
    auto* sub = app.add_subcommand(command.name, command.help);
    sub->add_option("--config", overrides.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--n", overrides.n, "Matrix size")->check(CLI::PositiveNumber);
    sub->add_option("--reps", overrides.reps, "Replications")->check(CLI::PositiveNumber);
    sub->add_option("--seed", overrides.seed, "Root seed");
    sub->add_option("--workers", overrides.workers, "Worker threads (0 = all cores)");
    sub->add_option("--ensemble", overrides.ensemble, "Ensemble")->check(CLI::IsMember(ex::ensemble_names()));
    sub->add_option("--out", overrides.out, "Output directory");
    by_app[sub] = &command;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const Command& command = *by_app.at(app.get_subcommands().front());
    const ExperimentConfig cfg = build_config(command, overrides);
    const ExperimentReport report = command.run(cfg);
    ex::write_report(report, report.config.output_dir);
    print_summary(report, std::cout);
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
