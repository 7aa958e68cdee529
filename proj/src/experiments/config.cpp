#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "edgelab/error.hpp"
#include "edgelab/experiments.hpp"

namespace edgelab::exp {

using nlohmann::json;

namespace {

const char* query_kind_name(QueryKind kind) {
  switch (kind) {
    case QueryKind::edge_window:
      return "edge_window";
    case QueryKind::edge_index:
      return "edge_index";
    case QueryKind::bulk_index:
      return "bulk_index";
  }
  return "edge_index";
}

QueryKind parse_query_kind(const std::string& name) {
  if (name == "edge_window") return QueryKind::edge_window;
  if (name == "edge_index") return QueryKind::edge_index;
  if (name == "bulk_index") return QueryKind::bulk_index;
  throw SchemaError("config: unknown query kind '" + name + "'");
}

json query_to_json(const Query& q) {
  json j{{"kind", query_kind_name(q.kind)}, {"s_exponent", q.s_exponent}, {"alpha", q.alpha}, {"fraction", q.fraction}};
  j["y"] = q.y ? json(*q.y) : json(nullptr);
  return j;
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw SchemaError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
void read_field(const json& j, const char* key, T& out) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    if constexpr (std::is_unsigned_v<T> && std::is_integral_v<T>) {
      if (!it->is_number_unsigned()) throw SchemaError(std::string("config: '") + key + "' must be a nonnegative integer");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!it->is_number()) throw SchemaError(std::string("config: '") + key + "' must be a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) throw SchemaError(std::string("config: '") + key + "' must be a string");
    }
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

Query query_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("config: 'query' must be an object");
  reject_unknown(j, {"kind", "s_exponent", "y", "alpha", "fraction"}, "config.query");
  Query q;
  std::string kind = query_kind_name(q.kind);
  read_field(j, "kind", kind);
  q.kind = parse_query_kind(kind);
  read_field(j, "s_exponent", q.s_exponent);
  read_field(j, "alpha", q.alpha);
  read_field(j, "fraction", q.fraction);
  if (const auto it = j.find("y"); it != j.end() && !it->is_null()) {
    if (!it->is_number()) throw SchemaError("config: 'query.y' must be a number or null");
    q.y = it->get<double>();
  }
  return q;
}

}  // namespace

const std::vector<std::string>& ensemble_names() {
  static const std::vector<std::string> names = {"gue", "goe", "matched", "rademacher", "tridiag-gue", "tridiag-goe"};
  return names;
}

void ExperimentConfig::validate() const {
  if (n < 4) throw ParameterError("config: n must be >= 4");
  if (replications < 1) throw ParameterError("config: replications must be >= 1");
  if (block_size < 1) throw ParameterError("config: block_size must be >= 1");
  if (!(query.alpha > 0.0 && query.alpha < 1.0)) throw ParameterError("config: alpha must lie in (0, 1)");
  if (!(query.fraction > 0.0 && query.fraction < 1.0)) throw ParameterError("config: fraction must lie in (0, 1)");
  if (!(query.s_exponent > 0.0 && query.s_exponent < 1.0)) throw ParameterError("config: s_exponent must lie in (0, 1)");
  const auto& names = ensemble_names();
  for (const auto* name : {&ensemble, &reference_sampler, &control_ensemble}) {
    if (std::find(names.begin(), names.end(), *name) == names.end()) {
      throw ParameterError("config: unknown ensemble '" + *name + "'");
    }
  }
  if (mdp_statistic != "edge_eigenvalue" && mdp_statistic != "counting_edge") {
    throw ParameterError("config: mdp_statistic must be edge_eigenvalue or counting_edge");
  }
  for (const double a : a_grid) {
    if (!(a >= 1.0)) throw ParameterError("config: a_grid values must be >= 1");
  }
  for (const double x : x_grid) {
    if (x == 0.0) throw ParameterError("config: x_grid values must be nonzero");
  }
}

std::string config_to_json(const ExperimentConfig& c) {
  const json j{
      {"experiment_id", c.experiment_id},
      {"ensemble", c.ensemble},
      {"n", c.n},
      {"replications", c.replications},
      {"seed", c.seed},
      {"query", query_to_json(c.query)},
      {"a_grid", c.a_grid},
      {"x_grid", c.x_grid},
      {"workers", c.workers},
      {"output_dir", c.output_dir},
      {"block_size", c.block_size},
      {"delta", c.delta},
      {"s_min", c.s_min},
      {"reference_n", c.reference_n},
      {"mdp_statistic", c.mdp_statistic},
      {"reference_sampler", c.reference_sampler},
      {"control_ensemble", c.control_ensemble},
      {"control_replications", c.control_replications},
      {"cauchy_replications", c.cauchy_replications},
      {"variance_ratio_n", c.variance_ratio_n},
      {"variance_ratio_replications", c.variance_ratio_replications},
  };
  return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("config: top level must be an object");
  reject_unknown(j,
                 {"experiment_id", "ensemble", "n", "replications", "seed", "query", "a_grid", "x_grid", "workers",
                  "output_dir", "block_size", "delta", "s_min", "reference_n", "mdp_statistic", "reference_sampler",
                  "control_ensemble", "control_replications", "cauchy_replications", "variance_ratio_n",
                  "variance_ratio_replications"},
                 "config");
  ExperimentConfig c;
  read_field(j, "experiment_id", c.experiment_id);
  read_field(j, "ensemble", c.ensemble);
  read_field(j, "n", c.n);
  read_field(j, "replications", c.replications);
  read_field(j, "seed", c.seed);
  if (const auto it = j.find("query"); it != j.end()) c.query = query_from_json(*it);
  for (const auto* key : {"a_grid", "x_grid"}) {
    const auto it = j.find(key);
    if (it == j.end()) continue;
    if (!it->is_array() || !std::all_of(it->begin(), it->end(), [](const json& v) { return v.is_number(); })) {
      throw SchemaError(std::string("config: '") + key + "' must be an array of numbers");
    }
    (std::string(key) == "a_grid" ? c.a_grid : c.x_grid) = it->get<std::vector<double>>();
  }
  read_field(j, "workers", c.workers);
  read_field(j, "output_dir", c.output_dir);
  read_field(j, "block_size", c.block_size);
  read_field(j, "delta", c.delta);
  read_field(j, "s_min", c.s_min);
  read_field(j, "reference_n", c.reference_n);
  read_field(j, "mdp_statistic", c.mdp_statistic);
  read_field(j, "reference_sampler", c.reference_sampler);
  read_field(j, "control_ensemble", c.control_ensemble);
  read_field(j, "control_replications", c.control_replications);
  read_field(j, "cauchy_replications", c.cauchy_replications);
  read_field(j, "variance_ratio_n", c.variance_ratio_n);
  read_field(j, "variance_ratio_replications", c.variance_ratio_replications);
  return c;
}

ExperimentConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("config: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return config_from_json(buffer.str());
}

}  // namespace edgelab::exp
