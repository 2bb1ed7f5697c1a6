#include "lfdkit/config.hpp"

#include <fstream>
#include <initializer_list>
#include <ios>

#include "lfdkit/errors.hpp"

namespace lfdkit {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::string_view where,
                    std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw ValidationError("unknown key '" + key + "' in " + std::string(where));
  }
}

const json& object_at(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_object()) throw ValidationError(std::string("'") + key + "' must be an object");
  return v;
}

void read_number(const json& j, const char* key, double& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number()) throw ValidationError(std::string("'") + key + "' must be a number");
  out = j.at(key).get<double>();
}

void read_int(const json& j, const char* key, int& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number_integer()) {
    throw ValidationError(std::string("'") + key + "' must be an integer");
  }
  out = j.at(key).get<int>();
}

}  // namespace

std::string_view format_name(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ValidationError("output format must be 'csv' or 'json'");
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  reject_unknown(j, "config", {"thresholds", "schedule", "output_format", "output_path", "parallelism"});
  RunConfig c;

  if (j.contains("thresholds")) {
    const json& t = object_at(j, "thresholds");
    reject_unknown(t, "thresholds",
                   {"slope_tol", "spread_tol", "zero_floor_scale", "bisection_tol",
                    "consistency_tol", "max_taylor_degree"});
    read_number(t, "slope_tol", c.thresholds.slope_tol);
    read_number(t, "spread_tol", c.thresholds.spread_tol);
    read_number(t, "zero_floor_scale", c.thresholds.zero_floor_scale);
    read_number(t, "bisection_tol", c.thresholds.bisection_tol);
    read_number(t, "consistency_tol", c.thresholds.consistency_tol);
    read_int(t, "max_taylor_degree", c.thresholds.max_taylor_degree);
  }
  c.thresholds.validate();

  if (j.contains("schedule")) {
    const json& s = object_at(j, "schedule");
    reject_unknown(s, "schedule", {"delta0", "ratio", "count", "samples"});
    double delta0 = c.schedule.delta0();
    double ratio = c.schedule.ratio();
    int count = c.schedule.count();
    int samples = c.schedule.samples();
    read_number(s, "delta0", delta0);
    read_number(s, "ratio", ratio);
    read_int(s, "count", count);
    read_int(s, "samples", samples);
    c.schedule = WindowSchedule(delta0, ratio, count, samples);
  }

  if (j.contains("output_format")) {
    if (!j.at("output_format").is_string()) throw ValidationError("'output_format' must be a string");
    c.output_format = parse_format(j.at("output_format").get<std::string>());
  }
  if (j.contains("output_path")) {
    if (!j.at("output_path").is_string()) throw ValidationError("'output_path' must be a string");
    c.output_path = j.at("output_path").get<std::string>();
  }
  read_int(j, "parallelism", c.parallelism);
  if (c.parallelism < 0) throw ValidationError("'parallelism' must be >= 0");
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config is not valid JSON: " + std::string(e.what()));
  }
  return run_config_from_json(j);
}

json to_json(const RunConfig& c) {
  const auto& t = c.thresholds;
  const auto& s = c.schedule;
  return {{"thresholds",
           {{"slope_tol", t.slope_tol},
            {"spread_tol", t.spread_tol},
            {"zero_floor_scale", t.zero_floor_scale},
            {"bisection_tol", t.bisection_tol},
            {"consistency_tol", t.consistency_tol},
            {"max_taylor_degree", t.max_taylor_degree}}},
          {"schedule",
           {{"delta0", s.delta0()}, {"ratio", s.ratio()}, {"count", s.count()}, {"samples", s.samples()}}},
          {"output_format", std::string(format_name(c.output_format))},
          {"output_path", c.output_path},
          {"parallelism", c.parallelism}};
}

}  // namespace lfdkit
