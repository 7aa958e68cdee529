#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>

#include "edgelab/error.hpp"
#include "edgelab/experiments.hpp"

namespace edgelab::exp {

using nlohmann::json;

namespace {

// Shortest decimal that reads back to the same double.
void append_number(std::string& out, double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  out.append(buffer, result.ptr);
}

void append_integer(std::string& out, std::uint64_t value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  out.append(buffer, result.ptr);
}

// JSON has no NaN; undefined quantities become null.
json number(double value) { return std::isfinite(value) ? json(value) : json(nullptr); }

json moments_json(const stats::MomentAccumulator& m) {
  return {{"count", m.count()},
          {"mean", number(m.count() > 0 ? m.mean() : std::nan(""))},
          {"variance", number(m.variance())},
          {"skewness", number(m.skewness())},
          {"excess_kurtosis", number(m.excess_kurtosis())}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("report: cannot open " + path.string());
  out << text;
  if (!out) throw SchemaError("report: write failed for " + path.string());
}

}  // namespace

std::string report_csv(const ExperimentReport& report) {
  std::string out = "experiment_id,replicate,n,ensemble,statistic,raw_value,standardized_value,seed_stream\n";
  for (const auto& row : report.rows) {
    out += row.experiment_id;
    out += ',';
    append_integer(out, row.replicate);
    out += ',';
    append_integer(out, row.n);
    out += ',';
    out += row.ensemble;
    out += ',';
    out += row.statistic;
    out += ',';
    append_number(out, row.raw_value);
    out += ',';
    append_number(out, row.standardized_value);
    out += ',';
    append_integer(out, row.seed_stream);
    out += '\n';
  }
  return out;
}

std::string report_json(const ExperimentReport& report) {
  json tail = json::array();
  for (const auto& cell : report.tail_probe) {
    tail.push_back({{"n", cell.n},
                    {"a", cell.a},
                    {"x", cell.x},
                    {"p_hat", cell.tail.p_hat},
                    {"ci_lo", cell.tail.ci_lo},
                    {"ci_hi", cell.tail.ci_hi},
                    {"exceedances", cell.tail.exceedances},
                    {"total", cell.tail.total},
                    {"diagnostic", number(cell.diagnostic)},
                    {"flag", cell.flag}});
  }
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  json statistics = json::array();
  for (const auto& s : report.statistics) {
    statistics.push_back(
        {{"statistic", s.statistic}, {"ensemble", s.ensemble}, {"n", s.n}, {"moments", moments_json(s.moments)}, {"ks", number(s.ks)}});
  }
  json comparisons = json::array();
  for (const auto& c : report.comparisons) {
    comparisons.push_back({{"name", c.name}, {"ks", number(c.ks)}, {"critical_99", number(c.critical_99)}});
  }
  const json j{{"config", json::parse(config_to_json(report.config))},
               {"moments", moments_json(report.moments)},
               {"ks", number(report.ks)},
               {"tail_probe", tail},
               {"checks", checks},
               {"statistics", statistics},
               {"comparisons", comparisons},
               {"wall_time_seconds", report.wall_time_seconds}};
  return j.dump(2);
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw SchemaError("report: cannot create " + dir.string() + ": " + ec.message());
  const std::string stem = report.config.experiment_id.empty() ? "experiment" : report.config.experiment_id;
  write_file(dir / (stem + ".csv"), report_csv(report));
  write_file(dir / (stem + ".json"), report_json(report));
}

}  // namespace edgelab::exp
