#include "commands.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "lfdkit/catalog.hpp"
#include "lfdkit/config.hpp"
#include "lfdkit/directional.hpp"
#include "lfdkit/engine.hpp"
#include "lfdkit/errors.hpp"
#include "lfdkit/parallel.hpp"
#include "lfdkit/serialize.hpp"
#include "lfdkit/taylor.hpp"

namespace lfdkit::cli {

namespace {

using nlohmann::json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string config_path;
  std::string output_path;
  std::string format;
  std::optional<int> workers;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_result(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + config.output_path);
  file << text;
  file.flush();
  if (!file) throw IoError("write failed for " + config.output_path);
}

std::string render(const RunConfig& config, const json& doc, const std::string& csv) {
  return config.output_format == OutputFormat::Json ? doc.dump(2) + "\n" : csv;
}

FunctionSpec load_function(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  const bool inline_json = first != std::string::npos && arg[first] == '{';
  const std::string text = inline_json ? arg : read_file(arg);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("function spec is not valid JSON: " + std::string(e.what()));
  }
  return function_from_json(j);
}

double parse_real(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ValidationError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::pair<double, double> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ValidationError("expected 'a,b', got '" + s + "'");
  return {parse_real(std::string_view(s).substr(0, comma)),
          parse_real(std::string_view(s).substr(comma + 1))};
}

RunConfig resolve_config(const GlobalOptions& g) {
  RunConfig c;
  if (!g.config_path.empty()) {
    try {
      c = load_run_config(g.config_path);
    } catch (const std::ios_base::failure& e) {
      throw IoError(e.what());
    }
  }
  if (!g.format.empty()) c.output_format = parse_format(g.format);
  if (!g.output_path.empty()) c.output_path = g.output_path;
  if (g.workers) {
    if (*g.workers < 0) throw ValidationError("--workers must be >= 0");
    c.parallelism = *g.workers;
  }
  return c;
}

json catalog_listing(const std::string& kind) {
  if (!kind.empty()) return param_schema(parse_kind(kind));
  json kinds = json::array();
  for (FunctionKind k : all_kinds()) kinds.push_back(param_schema(k));
  return {{"kinds", kinds},
          {"function_spec_format",
           {{"kind", "one of the kinds above"},
            {"params", "object with the kind's parameters"},
            {"arity", "optional; must match the kind"}}},
          {"example", {{"kind", "Weierstrass1D"}, {"params", {{"lambda", 2}, {"s", 1.5}}}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local fractional derivatives, critical orders and fractional Taylor models"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config_path, "RunConfig JSON file");
  app.add_option("--output", g.output_path, "Write results to this file instead of stdout");
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", g.workers, "Worker bound for independent entries (0 = auto)");

  std::string kind;
  auto* cat = app.add_subcommand("catalog", "List function kinds and their parameters (JSON)");
  cat->add_option("--kind", kind, "Show one kind only");

  std::string function;
  double y = 0.0;
  double q = 0.5;
  std::string side = "right";
  auto* lfd = app.add_subcommand("lfd", "Classify the LFD of order q at y");
  lfd->add_option("--function", function, "Function spec: JSON text or path")->required();
  lfd->add_option("--y", y, "Base point")->required();
  lfd->add_option("--q", q, "Order q > 0")->required();
  lfd->add_option("--side", side, "right or left")->check(CLI::IsMember({"right", "left"}));

  std::vector<double> ys;
  auto* crit = app.add_subcommand("critical-order", "Estimate the critical order at each y");
  crit->add_option("--function", function, "Function spec: JSON text or path")->required();
  crit->add_option("--y", ys, "Base point (repeatable)")->required();
  crit->add_option("--side", side, "right or left")->check(CLI::IsMember({"right", "left"}));

  std::vector<std::string> points;
  std::vector<std::string> directions;
  int fan = 0;
  auto* dmap = app.add_subcommand("direction-map", "Directional critical orders over points x directions");
  dmap->add_option("--function", function, "Two-variable function spec: JSON text or path")->required();
  dmap->add_option("--point", points, "Base point X,Y (repeatable)")->required();
  auto* dir_opt = dmap->add_option("--direction", directions, "Direction X,Y (repeatable)");
  dmap->add_option("--fan", fan, "Use N evenly spaced directions (default 64)")->excludes(dir_opt);

  std::string interval;
  int knots = 0;
  auto* fit = app.add_subcommand("taylor-fit", "Piecewise fractional Taylor model on an interval");
  fit->add_option("--function", function, "Function spec: JSON text or path")->required();
  fit->add_option("--interval", interval, "A,B with A < B")->required();
  fit->add_option("--knots", knots, "Number of knots K >= 1")->required();

  for (auto* sub : {cat, lfd, crit, dmap, fit}) sub->fallthrough();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    const RunConfig config = resolve_config(g);

    if (cat->parsed()) {
      write_result(config, out, catalog_listing(kind).dump(2) + "\n");
      return kOk;
    }

    const FunctionSpec spec = load_function(function);

    if (lfd->parsed()) {
      const auto e = lfd_at(spec, y, FracOrder(q), parse_side(side), config.schedule, config.thresholds);
      write_result(config, out, render(config, lfd_to_json(e, y), lfd_to_csv(e, y)));
      return kOk;
    }

    if (crit->parsed()) {
      const Side s = parse_side(side);
      std::vector<CriticalRow> rows(ys.size());
      parallel_for(ys.size(), config.parallelism, [&](std::size_t i) {
        rows[i].y = ys[i];
        rows[i].side = s;
        try {
          rows[i].estimate = critical_order(spec, ys[i], s, config.schedule, config.thresholds);
        } catch (const InconclusiveError& e) {
          rows[i].status = "inconclusive";
          rows[i].message = e.what();
        }
      });
      write_result(config, out,
                   render(config, critical_rows_to_json(rows), critical_rows_to_csv(rows)));
      for (const auto& r : rows) {
        if (r.estimate) return kOk;
      }
      err << "no base point produced an estimate\n";
      return kInconclusive;
    }

    if (dmap->parsed()) {
      std::vector<Point2> grid;
      for (const auto& p : points) {
        const auto [px, py] = parse_pair(p);
        grid.push_back({px, py});
      }
      std::vector<Point2> dirs;
      for (const auto& d : directions) {
        const auto [dx, dy] = parse_pair(d);
        dirs.push_back({dx, dy});
      }
      if (dirs.empty()) dirs = direction_fan(fan > 0 ? fan : 64);
      const auto probes = default_probe_offsets();
      const auto field = critical_order_map(spec, grid, dirs, config.schedule, probes,
                                            config.thresholds, config.parallelism);
      write_result(config, out, render(config, field_to_json(field), field_to_csv(field)));
      for (const auto& e : field.entries) {
        if (e.estimate) return kOk;
      }
      err << "every entry of the map failed\n";
      return kInconclusive;
    }

    if (fit->parsed()) {
      const auto [a, b] = parse_pair(interval);
      const auto model = piecewise_scaling_approx(spec, a, b, knots, config.schedule,
                                                  config.thresholds, config.parallelism);
      const auto offsets = config.schedule.windows();
      std::vector<ApproximationReport> reports;
      for (std::size_t i = 0; i < model.knots.size(); ++i) {
        for (const LocalModel* piece : {&model.right[i], &model.left[i]}) {
          reports.push_back(remainder_profile(spec, *piece, offsets, config.thresholds));
        }
      }
      write_result(config, out,
                   render(config, piecewise_to_json(model, reports), piecewise_to_csv(model, reports)));
      return kOk;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const InconclusiveError& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  }
  return kValidation;
}

}  // namespace lfdkit::cli
