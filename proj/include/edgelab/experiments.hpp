#pragma once

// Monte Carlo experiments over the ensembles, with deterministic parallel
// replication and CSV/JSON persistence.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "edgelab/rng.hpp"
#include "edgelab/statistics.hpp"
#include "edgelab/tridiagonal.hpp"

namespace edgelab::exp {

enum class QueryKind { edge_window, edge_index, bulk_index };

/// Which spectral location an experiment looks at.
struct Query {
  QueryKind kind = QueryKind::edge_index;
  double s_exponent = 0.5;       // edge window with s = n^s_exponent, unless y is set
  std::optional<double> y;       // explicit edge window threshold at the W_n scale
  double alpha = 0.6;            // edge index i = floor(n^alpha)
  double fraction = 0.5;         // bulk index i = round(fraction * n)

  friend bool operator==(const Query&, const Query&) = default;
};

struct ExperimentConfig {
  std::string experiment_id;
  /// gue, goe, matched, rademacher (dense) or tridiag-gue, tridiag-goe (fast path).
  std::string ensemble = "tridiag-gue";
  std::size_t n = 256;
  std::size_t replications = 10000;
  std::uint64_t seed = 20111231;
  Query query;
  std::vector<double> a_grid = {1.25, 1.5};
  std::vector<double> x_grid = {-1.0, 1.0};
  std::size_t workers = 1;
  std::string output_dir = "out";
  /// Replicates per RNG substream; fixes the stream layout independently of workers.
  std::size_t block_size = 64;
  /// Edge windows must keep y >= -2 + delta.
  double delta = 0.5;
  /// Edge windows must have s >= s_min.
  double s_min = 2.0;
  /// Mdp probe: second size for the trend check, 0 to skip.
  std::size_t reference_n = 0;
  /// Mdp probe statistic: edge_eigenvalue or counting_edge.
  std::string mdp_statistic = "edge_eigenvalue";
  /// Universality: sampler for the GUE reference and the GUE control.
  std::string reference_sampler = "tridiag-gue";
  /// Universality: non-matching control ensemble and its replications (0 skips it).
  std::string control_ensemble = "rademacher";
  std::size_t control_replications = 1000;
  /// Interlacing: replicates of the Cauchy (submatrix) test.
  std::size_t cauchy_replications = 1000;
  /// Interlacing: size and replicates of the GOE/GUE counting-variance comparison.
  std::size_t variance_ratio_n = 2000;
  std::size_t variance_ratio_replications = 10000;

  /// Throws ParameterError on n < 4, replications < 1, block_size < 1,
  /// alpha or fraction outside (0, 1), or an unknown ensemble name.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// One value of one statistic on one replicate.
struct ReplicateRow {
  std::string experiment_id;
  std::size_t replicate = 0;
  std::size_t n = 0;
  std::string ensemble;
  std::string statistic;
  double raw_value = 0.0;
  double standardized_value = 0.0;
  std::uint64_t seed_stream = 0;
};

struct StatisticSummary {
  std::string statistic;
  std::string ensemble;
  std::size_t n = 0;
  stats::MomentAccumulator moments;
  double ks = 0.0;  // against N(0, 1); NaN when not meaningful
};

struct TailCell {
  std::size_t n = 0;
  double a = 1.0;
  double x = 1.0;
  stats::TailEstimate tail;
  double diagnostic = 0.0;
  bool flag = false;  // diagnostic is a lower bound only
};

/// Two-sample KS comparison between two statistics.
struct Comparison {
  std::string name;
  double ks = 0.0;
  double critical_99 = 0.0;  // asymptotic 99% critical value for the sample sizes
};

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ReplicateRow> rows;
  std::vector<StatisticSummary> statistics;  // the first entry is the primary statistic
  stats::MomentAccumulator moments;          // primary statistic, standardized values
  double ks = 0.0;                           // primary KS distance
  std::vector<TailCell> tail_probe;
  std::vector<Comparison> comparisons;
  std::vector<Check> checks;
  double wall_time_seconds = 0.0;

  [[nodiscard]] bool passed() const noexcept;
  /// Throws IndexError when no check has that name.
  [[nodiscard]] const Check& check(const std::string& name) const;
};

/// Ensemble names accepted by ExperimentConfig.
const std::vector<std::string>& ensemble_names();

/// Dyson index of a named ensemble.
int ensemble_beta(const std::string& ensemble);

/// Matrix with the named ensemble's spectrum at the W_n scale.
TridiagonalMatrix sample_normalized(const std::string& ensemble, std::size_t n, RandomStream& rng);

/// Worker count after the EDGELAB_THREADS override; 0 means hardware concurrency.
std::size_t effective_workers(const ExperimentConfig& cfg);

/// Counting function at the configured edge window, standardized with a = 1.
ExperimentReport run_counting_clt(const ExperimentConfig& cfg);

/// lambda_{n-i} (edge_index) or lambda_i (bulk_index), standardized.
ExperimentReport run_eigenvalue_clt(const ExperimentConfig& cfg);

/// Tail probabilities and diagnostics over the (a, x) grid.
ExperimentReport run_mdp_probe(const ExperimentConfig& cfg);

/// Edge statistic for the configured ensemble against GUE, with a GUE-vs-GUE
/// null control and a non-matching control. Throws ParameterError if the
/// ensemble does not match GUE to order 4.
ExperimentReport run_universality(const ExperimentConfig& cfg);

/// Superposition, Cauchy-interlacing, symplectic and variance-ratio tests.
ExperimentReport run_interlacing(const ExperimentConfig& cfg);

/// Counting-function and eigenvalue events at random (i, a, x), compared per replicate.
ExperimentReport run_duality(const ExperimentConfig& cfg);

std::string config_to_json(const ExperimentConfig& cfg);

/// Throws SchemaError on malformed JSON, unknown keys or wrong value types.
ExperimentConfig config_from_json(const std::string& text);

/// Throws SchemaError on I/O or schema errors.
ExperimentConfig read_config(const std::filesystem::path& path);

/// Writes <experiment_id>.csv and <experiment_id>.json into dir. Throws SchemaError on I/O failure.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

/// Per-replicate CSV text.
std::string report_csv(const ExperimentReport& report);

/// Summary JSON text.
std::string report_json(const ExperimentReport& report);

}  // namespace edgelab::exp
