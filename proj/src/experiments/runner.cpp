#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "edgelab/ensembles.hpp"
#include "edgelab/error.hpp"
#include "edgelab/experiments.hpp"
#include "edgelab/linalg.hpp"
#include "edgelab/semicircle.hpp"
#include "replicates.hpp"

namespace edgelab::exp {

using detail::ReplicatePlan;
using detail::ReplicateTable;
using semicircle::EdgeIndex;
using semicircle::EdgeWindow;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Substream families; each sub-experiment draws from its own range of stream ids.
constexpr std::uint64_t stream_family(std::uint64_t tag) { return tag << 40; }

class Detail {
 public:
  Detail& operator()(const char* key, double value) {
    if (out_.tellp() > 0) out_ << ' ';
    out_ << key << '=' << std::setprecision(6) << value;
    return *this;
  }
  Detail& operator()(const char* text) {
    if (out_.tellp() > 0) out_ << ' ';
    out_ << text;
    return *this;
  }
  [[nodiscard]] std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

EnsembleSpec spec_of(const std::string& ensemble) {
  if (ensemble == "tridiag-gue") return EnsembleSpec::gue();
  if (ensemble == "tridiag-goe") return EnsembleSpec::goe();
  return EnsembleSpec::by_name(ensemble);
}

/// Orchestration state shared by the run functions.
class Session {
 public:
  explicit Session(const ExperimentConfig& cfg, const char* kind) : start_(std::chrono::steady_clock::now()) {
    cfg.validate();
    report_.config = cfg;
    if (report_.config.experiment_id.empty()) report_.config.experiment_id = kind;
    workers_ = effective_workers(cfg);
  }

  [[nodiscard]] const ExperimentConfig& cfg() const { return report_.config; }
  ExperimentReport& report() { return report_; }

  ReplicateTable run(std::uint64_t tag, std::size_t replications, std::size_t stats, const detail::ReplicateFn& fn) const {
    ReplicatePlan plan;
    plan.replications = replications;
    plan.stats = stats;
    plan.seed = cfg().seed;
    plan.stream_base = stream_family(tag);
    plan.block_size = cfg().block_size;
    plan.workers = workers_;
    return detail::run_replicates(plan, fn);
  }

  /// Moments folded block by block in block order, so the result does not depend on scheduling.
  [[nodiscard]] stats::MomentAccumulator moments(const std::vector<double>& values) const {
    stats::MomentAccumulator total;
    for (std::size_t begin = 0; begin < values.size(); begin += cfg().block_size) {
      stats::MomentAccumulator block;
      const std::size_t end = std::min(values.size(), begin + cfg().block_size);
      for (std::size_t r = begin; r < end; ++r) block.add(values[r]);
      total.merge(block);
    }
    return total;
  }

  /// Records rows and a summary for every statistic of a table.
  void record(const ReplicateTable& table, std::size_t n, const std::string& ensemble,
              const std::vector<std::string>& names, bool ks_to_normal) {
    for (std::size_t r = 0; r < table.replications; ++r) {
      for (std::size_t k = 0; k < table.stats; ++k) {
        report_.rows.push_back({report_.config.experiment_id, r, n, ensemble, names[k], table.raw_at(r, k),
                                table.std_at(r, k), table.streams[r]});
      }
    }
    for (std::size_t k = 0; k < table.stats; ++k) {
      StatisticSummary s;
      s.statistic = names[k];
      s.ensemble = ensemble;
      s.n = n;
      const auto values = table.std_column(k);
      s.moments = moments(values);
      s.ks = ks_to_normal ? stats::ks_distance_normal(sorted(values)) : kNaN;
      report_.statistics.push_back(std::move(s));
    }
  }

  const Comparison& compare(const std::string& name, const std::vector<double>& a, const std::vector<double>& b) {
    Comparison c;
    c.name = name;
    c.ks = stats::ks_two_sample(sorted(a), sorted(b));
    c.critical_99 = stats::ks_two_sample_critical(a.size(), b.size(), 0.01);
    report_.comparisons.push_back(c);
    return report_.comparisons.back();
  }

  void check(std::string name, bool pass, std::string detail) {
    report_.checks.push_back({std::move(name), pass, std::move(detail)});
  }

  void set_primary(std::size_t summary_index) {
    const auto& s = report_.statistics.at(summary_index);
    report_.moments = s.moments;
    report_.ks = s.ks;
  }

  ExperimentReport finish() {
    report_.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(report_);
  }

 private:
  ExperimentReport report_;
  std::size_t workers_ = 1;
  std::chrono::steady_clock::time_point start_;
};

EdgeWindow window_for(const ExperimentConfig& cfg, std::size_t n) {
  EdgeWindow w = cfg.query.y ? EdgeWindow{n, *cfg.query.y, cfg.delta}
                             : EdgeWindow::from_scale(n, std::pow(static_cast<double>(n), cfg.query.s_exponent), cfg.delta);
  w.validate(cfg.s_min);
  return w;
}

EdgeIndex edge_index_for(const ExperimentConfig& cfg, std::size_t n) {
  const EdgeIndex e = EdgeIndex::from_exponent(n, cfg.query.alpha);
  if (e.i < 2) throw ParameterError("edge index: floor(n^alpha) must be >= 2");
  return e;
}

/// Counting-function replicates at a window; raw = N, standardized = Z_n.
ReplicateTable counting_table(const Session& session, std::uint64_t tag, const std::string& ensemble, const EdgeWindow& w,
                              std::size_t replications) {
  const int beta = ensemble_beta(ensemble);
  return session.run(tag, replications, 1, [&](RandomStream& rng, std::size_t, std::span<double> raw, std::span<double> z) {
    const auto t = sample_normalized(ensemble, w.n, rng);
    const std::size_t count = counting_function(t, w.y);
    raw[0] = static_cast<double>(count);
    z[0] = stats::standardize_counting_edge(count, w, 1.0, beta).value;
  });
}

/// Edge-eigenvalue replicates; raw = lambda_{n-i}, standardized = Z_{n,i}.
ReplicateTable edge_table(const Session& session, std::uint64_t tag, const std::string& ensemble, const EdgeIndex& e,
                          std::size_t replications) {
  const int beta = ensemble_beta(ensemble);
  return session.run(tag, replications, 1, [&](RandomStream& rng, std::size_t, std::span<double> raw, std::span<double> z) {
    const auto t = sample_normalized(ensemble, e.n, rng);
    const double lambda = SturmCounter(t).kth_eigenvalue(e.n - e.i);
    raw[0] = lambda;
    z[0] = stats::standardize_edge_eigenvalue(lambda, e, beta).value;
  });
}

/// Eigenvalues of a Gaussian ensemble at the M_n scale via the tridiagonal model.
std::vector<double> gaussian_spectrum(int beta, std::size_t n, RandomStream& rng) {
  return all_eigenvalues(sample_tridiagonal_gaussian(beta, n, rng));
}

/// Points of rank 2, 4, ... (1-based) in the merged spectra.
std::vector<double> even_ranked(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  std::vector<double> even;
  even.reserve(a.size() / 2);
  for (std::size_t k = 1; k < a.size(); k += 2) even.push_back(a[k]);
  return even;
}

std::size_t count_at_or_above(const std::vector<double>& sorted_values, double y) {
  return static_cast<std::size_t>(sorted_values.end() - std::lower_bound(sorted_values.begin(), sorted_values.end(), y));
}

}  // namespace

bool ExperimentReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check& ExperimentReport::check(const std::string& name) const {
  const auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == name; });
  if (it == checks.end()) throw IndexError("report has no check named '" + name + "'");
  return *it;
}

int ensemble_beta(const std::string& ensemble) { return spec_of(ensemble).beta(); }

TridiagonalMatrix sample_normalized(const std::string& ensemble, std::size_t n, RandomStream& rng) {
  if (ensemble == "tridiag-gue") return rescale(sample_tridiagonal_gaussian(2, n, rng), Scale::wn);
  if (ensemble == "tridiag-goe") return rescale(sample_tridiagonal_gaussian(1, n, rng), Scale::wn);
  return rescale(householder_tridiagonalize(sample_dense(EnsembleSpec::by_name(ensemble), n, rng)), Scale::wn);
}

std::size_t effective_workers(const ExperimentConfig& cfg) {
  std::size_t workers = cfg.workers;
  if (const char* env = std::getenv("EDGELAB_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0') throw ParameterError("EDGELAB_THREADS must be a nonnegative integer");
    workers = static_cast<std::size_t>(parsed);
  }
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return workers;
}

ExperimentReport run_counting_clt(const ExperimentConfig& cfg) {
  Session session(cfg, "counting-clt");
  const EdgeWindow w = window_for(session.cfg(), cfg.n);
  const auto table = counting_table(session, 0, cfg.ensemble, w, cfg.replications);
  session.record(table, cfg.n, cfg.ensemble, {"counting_edge"}, true);
  session.set_primary(0);

  const auto& z = session.report().moments;
  const double raw_variance = session.moments(table.raw_column(0)).variance();
  const double target = semicircle::edge_variance(w);
  const double ratio = raw_variance / target;

  session.check("standardized_mean", within(z.mean(), -0.15, 0.15),
                Detail()("mean", z.mean())("bound", 0.15)("expected_count", semicircle::edge_expected_count(w)).str());
  if (cfg.replications < 2) {
    session.check("variance_ratio", false, "undefined variance: fewer than 2 replications");
  } else {
    session.check("variance_ratio", within(ratio, 0.8, 1.2),
                  Detail()("ratio", ratio)("variance", raw_variance)("edge_variance", target)("s", w.s()).str());
  }
  session.check("ks_normal", session.report().ks < 0.05, Detail()("ks", session.report().ks)("bound", 0.05).str());
  return session.finish();
}

ExperimentReport run_eigenvalue_clt(const ExperimentConfig& cfg) {
  Session session(cfg, "eigenvalue-clt");
  const int beta = ensemble_beta(cfg.ensemble);
  double bound = 0.1;
  if (cfg.query.kind == QueryKind::edge_index) {
    const EdgeIndex e = edge_index_for(cfg, cfg.n);
    session.record(edge_table(session, 0, cfg.ensemble, e, cfg.replications), cfg.n, cfg.ensemble, {"edge_eigenvalue"},
                   true);
  } else if (cfg.query.kind == QueryKind::bulk_index) {
    const auto i = std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(cfg.query.fraction * static_cast<double>(cfg.n))), 1,
                                           cfg.n - 1);
    const auto table =
        session.run(0, cfg.replications, 1, [&](RandomStream& rng, std::size_t, std::span<double> raw, std::span<double> x) {
          const auto t = sample_normalized(cfg.ensemble, cfg.n, rng);
          raw[0] = SturmCounter(t).kth_eigenvalue(i);
          x[0] = stats::standardize_bulk_eigenvalue(raw[0], i, cfg.n).value;
        });
    session.record(table, cfg.n, cfg.ensemble, {"bulk_eigenvalue"}, true);
    bound = 0.05;
  } else {
    throw ParameterError("eigenvalue experiments need an edge_index or bulk_index query");
  }
  session.set_primary(0);
  const auto& m = session.report().moments;
  session.check("ks_normal", session.report().ks < bound,
                Detail()("ks", session.report().ks)("bound", bound)("mean", m.mean())("variance", m.variance())("beta", beta)
                    .str());
  return session.finish();
}

ExperimentReport run_mdp_probe(const ExperimentConfig& cfg) {
  Session session(cfg, "mdp-probe");
  const bool counting = cfg.mdp_statistic == "counting_edge";

  std::vector<std::size_t> sizes = {cfg.n};
  if (cfg.reference_n > 0) sizes.push_back(cfg.reference_n);

  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const std::size_t n = sizes[k];
    const auto table = counting ? counting_table(session, k, cfg.ensemble, window_for(cfg, n), cfg.replications)
                                : edge_table(session, k, cfg.ensemble, edge_index_for(cfg, n), cfg.replications);
    session.record(table, n, cfg.ensemble, {cfg.mdp_statistic}, true);
    const auto values = table.std_column(0);
    for (const double a : cfg.a_grid) {
      for (const double x : cfg.x_grid) {
        TailCell cell;
        cell.n = n;
        cell.a = a;
        cell.x = x;
        cell.tail = stats::tail_estimate(values, a, x);
        const auto d = stats::mdp_diagnostic(cell.tail, a);
        cell.diagnostic = d.value;
        cell.flag = d.lower_bound;
        session.report().tail_probe.push_back(cell);
      }
    }
  }
  session.set_primary(0);

  const auto& cells = session.report().tail_probe;
  const std::size_t per_size = cfg.a_grid.size() * cfg.x_grid.size();
  for (std::size_t c = 0; c < per_size; ++c) {
    const TailCell& cell = cells[c];
    const double rate = stats::rate_function(cell.x);
    std::ostringstream tag;
    tag << "a=" << cell.a << ",x=" << cell.x;
    Detail factor;
    factor("diagnostic", cell.diagnostic)("rate", rate)("p_hat", cell.tail.p_hat);
    if (cell.flag) factor("lower bound only");
    session.check("rate_within_factor_2[" + tag.str() + "]", !cell.flag && within(cell.diagnostic, 0.5 * rate, 2.0 * rate),
                  factor.str());
    if (sizes.size() > 1) {
      const TailCell& ref = cells[per_size + c];
      const double dev = std::fabs(cell.diagnostic - rate);
      const double ref_dev = std::fabs(ref.diagnostic - rate);
      Detail trend;
      trend("deviation", dev)("reference_deviation", ref_dev)("reference_n", static_cast<double>(ref.n));
      if (cell.flag || ref.flag) trend("lower bound only");
      session.check("trend[" + tag.str() + "]", !cell.flag && !ref.flag && dev <= ref_dev, trend.str());
    }
  }
  return session.finish();
}

ExperimentReport run_universality(const ExperimentConfig& cfg) {
  Session session(cfg, "universality");
  if (!matches_gue_to_order(spec_of(cfg.ensemble), 4)) {
    throw ParameterError("universality: ensemble '" + cfg.ensemble + "' does not match GUE to order 4");
  }
  if (spec_of(cfg.reference_sampler).name() != "gue") {
    throw ParameterError("universality: reference sampler must be gue or tridiag-gue");
  }
  const EdgeIndex e = edge_index_for(cfg, cfg.n);

  const auto candidate = edge_table(session, 0, cfg.ensemble, e, cfg.replications);
  const auto reference = edge_table(session, 1, cfg.reference_sampler, e, cfg.replications);
  const auto null_control = edge_table(session, 2, cfg.reference_sampler, e, cfg.replications);
  session.record(candidate, cfg.n, cfg.ensemble, {"edge_eigenvalue"}, true);
  session.record(reference, cfg.n, cfg.reference_sampler, {"edge_eigenvalue"}, true);
  session.record(null_control, cfg.n, cfg.reference_sampler + ":control", {"edge_eigenvalue"}, true);
  session.set_primary(0);

  const auto ref_values = reference.std_column(0);
  const Comparison matched = session.compare(cfg.ensemble + "_vs_gue", candidate.std_column(0), ref_values);
  const Comparison null = session.compare("gue_vs_gue", null_control.std_column(0), ref_values);
  session.report().ks = matched.ks;

  if (cfg.control_replications > 0) {
    const auto control = edge_table(session, 3, cfg.control_ensemble, e, cfg.control_replications);
    session.record(control, cfg.n, cfg.control_ensemble, {"edge_eigenvalue"}, true);
    session.compare(cfg.control_ensemble + "_vs_gue", control.std_column(0), ref_values);
  }

  session.check("matched_vs_gue_ks", matched.ks < 0.1, Detail()("ks", matched.ks)("bound", 0.1).str());
  session.check("gue_vs_gue_null", null.ks < null.critical_99, Detail()("ks", null.ks)("critical_99", null.critical_99).str());
  return session.finish();
}

ExperimentReport run_interlacing(const ExperimentConfig& cfg) {
  Session session(cfg, "interlacing");
  const std::size_t n = cfg.n;
  const double root_n = std::sqrt(static_cast<double>(n));
  const std::size_t mid = n / 2;

  // Even-ranked points of GOE_n and GOE_{n+1} against GUE_n, top and middle points at the W_n scale.
  const auto superposed =
      session.run(0, cfg.replications, 2, [&](RandomStream& rng, std::size_t, std::span<double> raw, std::span<double> out) {
        const auto small = gaussian_spectrum(1, n, rng);
        const auto big = gaussian_spectrum(1, n + 1, rng);
        const auto even = even_ranked(small, big);
        raw[0] = out[0] = even[n - 1] / root_n;
        raw[1] = out[1] = even[mid - 1] / root_n;
      });
  const auto direct =
      session.run(1, cfg.replications, 2, [&](RandomStream& rng, std::size_t, std::span<double> raw, std::span<double> out) {
        const auto spectrum = gaussian_spectrum(2, n, rng);
        raw[0] = out[0] = spectrum[n - 1] / root_n;
        raw[1] = out[1] = spectrum[mid - 1] / root_n;
      });
  session.record(superposed, n, "goe+goe", {"superposition_top", "superposition_mid"}, false);
  session.record(direct, n, "tridiag-gue", {"top", "mid"}, false);
  session.set_primary(0);
  const Comparison top = session.compare("superposition_top_vs_gue", superposed.std_column(0), direct.std_column(0));
  const Comparison bulk = session.compare("superposition_mid_vs_gue", superposed.std_column(1), direct.std_column(1));
  session.report().ks = top.ks;
  session.check("superposition_top_ks", top.ks < 0.05, Detail()("ks", top.ks)("bound", 0.05).str());
  session.check("superposition_bulk_ks", bulk.ks < 0.05, Detail()("ks", bulk.ks)("bound", 0.05).str());

  // Cauchy interlacing for a dense GOE_{n+1} and its principal submatrix, and the
  // discrepancy 2 N(GUE proxy) - N(GOE_n) - N(submatrix) at the edge window and at a random threshold.
  const EdgeWindow w = window_for(cfg, n);
  const auto cauchy = session.run(
      2, cfg.cauchy_replications, 3, [&](RandomStream& rng, std::size_t, std::span<double> raw, std::span<double> out) {
        const auto big_sample = sample_dense(EnsembleSpec::goe(), n + 1, rng);
        const auto big = all_eigenvalues(householder_tridiagonalize(big_sample));
        const auto sub = all_eigenvalues(householder_tridiagonalize(principal_submatrix(big_sample)));
        const auto small = gaussian_spectrum(1, n, rng);
        const auto proxy = even_ranked(small, big);
        double violation = 0.0;
        for (std::size_t k = 0; k < n; ++k) violation = std::max({violation, big[k] - sub[k], sub[k] - big[k + 1]});
        const double random_y = -2.0 + 4.0 * rng.uniform();
        for (std::size_t slot = 0; slot < 2; ++slot) {
          const double y = (slot == 0 ? w.y : random_y) * root_n;
          const auto eta = 2.0 * static_cast<double>(count_at_or_above(proxy, y)) -
                           static_cast<double>(count_at_or_above(small, y)) - static_cast<double>(count_at_or_above(sub, y));
          raw[slot] = out[slot] = eta;
        }
        raw[2] = out[2] = violation;
      });
  session.record(cauchy, n, "goe", {"eta_prime_window", "eta_prime_random", "interlacing_violation"}, false);
  double worst = 0.0;
  bool eta_ok = true;
  for (std::size_t r = 0; r < cauchy.replications; ++r) {
    worst = std::max(worst, cauchy.raw_at(r, 2));
    for (std::size_t slot = 0; slot < 2; ++slot) eta_ok = eta_ok && within(cauchy.raw_at(r, slot), -2.0, 2.0);
  }
  session.check("cauchy_interlacing", worst <= 1e-10,
                Detail()("max_violation", worst)("replications", static_cast<double>(cauchy.replications)).str());
  session.check("eta_prime_range", eta_ok, eta_ok ? "all values in {-2,...,2}" : "value outside {-2,...,2}");

  // Even-ranked GOE_{2n+1} points over sqrt(2) against the beta = 4 ensemble.
  const auto gse_proxy =
      session.run(3, cfg.replications, 1, [&](RandomStream& rng, std::size_t, std::span<double> raw, std::span<double> out) {
        const auto spectrum = gaussian_spectrum(1, 2 * n + 1, rng);
        raw[0] = out[0] = spectrum[2 * n - 1] / std::numbers::sqrt2 / root_n;
      });
  const auto gse =
      session.run(4, cfg.replications, 1, [&](RandomStream& rng, std::size_t, std::span<double> raw, std::span<double> out) {
        raw[0] = out[0] = kth_eigenvalue(sample_beta_hermite(4.0, n, rng), n) / root_n;
      });
  session.record(gse_proxy, n, "goe", {"symplectic_proxy_top"}, false);
  session.record(gse, n, "beta4", {"top"}, false);
  const Comparison symplectic = session.compare("symplectic_top_vs_beta4", gse_proxy.std_column(0), gse.std_column(0));
  session.check("symplectic_top_ks", symplectic.ks < 0.05, Detail()("ks", symplectic.ks)("bound", 0.05).str());

  // Counting variance of GOE against GUE at the edge window.
  if (cfg.variance_ratio_replications > 0) {
    const EdgeWindow wv = window_for(cfg, cfg.variance_ratio_n);
    const auto goe = counting_table(session, 5, "tridiag-goe", wv, cfg.variance_ratio_replications);
    const auto gue = counting_table(session, 6, "tridiag-gue", wv, cfg.variance_ratio_replications);
    session.record(goe, wv.n, "tridiag-goe", {"counting_edge"}, true);
    session.record(gue, wv.n, "tridiag-gue", {"counting_edge"}, true);
    const double ratio = session.moments(goe.raw_column(0)).variance() / session.moments(gue.raw_column(0)).variance();
    session.check("goe_gue_variance_ratio", within(ratio, 1.6, 2.4),
                  Detail()("ratio", ratio)("n", static_cast<double>(wv.n))("s", wv.s()).str());
  }
  return session.finish();
}

ExperimentReport run_duality(const ExperimentConfig& cfg) {
  Session session(cfg, "duality");
  const std::size_t n = cfg.n;
  const int beta = ensemble_beta(cfg.ensemble);
  const double nn = static_cast<double>(n);

  const auto table =
      session.run(0, cfg.replications, 4, [&](RandomStream& rng, std::size_t, std::span<double> raw, std::span<double> out) {
        const auto t = sample_normalized(cfg.ensemble, n, rng);
        const SturmCounter counter(t);
        const EdgeIndex e{n, static_cast<std::size_t>(rng.uniform_int(2, static_cast<std::int64_t>(n) - 1))};
        const double a = 1.0 + 2.0 * rng.uniform();
        const double magnitude = 0.05 + 2.95 * rng.uniform();
        const double x = rng.uniform() < 0.5 ? -magnitude : magnitude;
        const double y = semicircle::mdp_quantile_location(e, a, x);

        const double lambda = counter.kth_eigenvalue(n - e.i);
        const bool by_eigenvalue = lambda <= y;
        const bool by_count = n - counter.count_below(y) <= e.i;
        // Threshold placed exactly on the eigenvalue: the closed window contains it.
        const bool tie_by_count = n - counter.count_below(lambda) <= e.i;
        // N_I(W_n) = N_{nI}(A_n).
        const bool scale_by_count = counting_function(scaled(t, nn), nn * y) <= e.i;

        raw[0] = lambda;
        out[0] = stats::standardize_edge_eigenvalue(lambda, e, beta).value / a;
        raw[1] = out[1] = by_eigenvalue != by_count ? 1.0 : 0.0;
        raw[2] = out[2] = tie_by_count ? 0.0 : 1.0;
        raw[3] = out[3] = scale_by_count != by_count ? 1.0 : 0.0;
      });
  session.record(table, n, cfg.ensemble, {"scaled_edge_eigenvalue", "event_disagreement", "tie_disagreement", "scale_disagreement"},
                 false);
  session.set_primary(0);

  const char* names[] = {"event_disagreements", "threshold_at_eigenvalue", "scale_identity"};
  for (std::size_t k = 1; k <= 3; ++k) {
    double total = 0.0;
    for (std::size_t r = 0; r < table.replications; ++r) total += table.raw_at(r, k);
    session.check(names[k - 1], total == 0.0, Detail()("disagreements", total)("replications", static_cast<double>(table.replications)).str());
  }
  return session.finish();
}

}  // namespace edgelab::exp
