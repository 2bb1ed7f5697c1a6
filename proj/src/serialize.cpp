#include "lfdkit/serialize.hpp"

#include <charconv>
#include <cmath>
#include <locale>
#include <sstream>

namespace lfdkit {

namespace {

using nlohmann::json;

std::string opt_real(const std::optional<double>& x) { return x ? format_real(*x) : std::string(); }

json opt_real_json(const std::optional<double>& x) { return x ? real_json(*x) : json(nullptr); }

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

json real_json(double x) {
  if (std::isfinite(x)) return x;
  return format_real(x);
}

json to_json(const ScalingDiagnostics& d) {
  json windows = json::array();
  for (std::size_t k = 0; k < d.window_sizes.size(); ++k) {
    windows.push_back({{"delta", real_json(d.window_sizes[k])},
                       {"value", real_json(d.values[k])},
                       {"magnitude", real_json(d.magnitudes[k])},
                       {"resolved", static_cast<bool>(d.resolved[k])}});
  }
  return {{"sigma", opt_real_json(d.sigma)},
          {"r2", real_json(d.r2)},
          {"zero_floor_hits", d.zero_floor_hits},
          {"windows", windows}};
}

json lfd_to_json(const LfdEstimate& e, double y) {
  const json diag = to_json(e.diagnostics);
  return {{"y", real_json(y)},
          {"q", real_json(e.q)},
          {"side", std::string(side_name(e.side))},
          {"classification", std::string(lfd_class_name(e.classification))},
          {"value", opt_real_json(e.value)},
          {"taylor_degree", e.taylor_degree},
          {"sigma", diag.at("sigma")},
          {"r2", diag.at("r2")},
          {"windows", diag.at("windows")}};
}

std::string lfd_to_csv(const LfdEstimate& e, double y) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "y,q,side,classification,value,sigma,r2,taylor_degree\n";
  out << format_real(y) << ',' << format_real(e.q) << ',' << side_name(e.side) << ','
      << lfd_class_name(e.classification) << ',' << opt_real(e.value) << ','
      << opt_real(e.diagnostics.sigma) << ',' << format_real(e.diagnostics.r2) << ','
      << e.taylor_degree << '\n';
  return out.str();
}

json critical_to_json(const CriticalOrderEstimate& e, double y, Side side) {
  json per_q = json::array();
  for (const auto& [q, a] : e.per_q) per_q.push_back({{"q", real_json(q)}, {"alpha", real_json(a)}});
  return {{"y", real_json(y)},
          {"side", std::string(side_name(side))},
          {"alpha", real_json(e.alpha)},
          {"bracket", {real_json(e.bracket_lo), real_json(e.bracket_hi)}},
          {"method", std::string(critical_method_name(e.method))},
          {"taylor_degree", e.taylor_degree},
          {"per_q", per_q}};
}

json critical_rows_to_json(std::span<const CriticalRow> rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json item = r.estimate ? critical_to_json(*r.estimate, r.y, r.side)
                           : json{{"y", real_json(r.y)}, {"side", std::string(side_name(r.side))}};
    item["status"] = r.status;
    if (!r.message.empty()) item["message"] = r.message;
    out.push_back(std::move(item));
  }
  return out;
}

std::string critical_rows_to_csv(std::span<const CriticalRow> rows) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "y,side,alpha_or_INF,bracket_lo,bracket_hi,method,taylor_degree,status\n";
  for (const auto& r : rows) {
    out << format_real(r.y) << ',' << side_name(r.side) << ',';
    if (r.estimate) {
      const auto& e = *r.estimate;
      out << format_real(e.alpha) << ',' << format_real(e.bracket_lo) << ','
          << format_real(e.bracket_hi) << ',' << critical_method_name(e.method) << ','
          << e.taylor_degree;
    } else {
      out << ",,,,";
    }
    out << ',' << csv_text(r.status) << '\n';
  }
  return out.str();
}

std::string field_to_csv(const CriticalOrderField& field) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "point_x,point_y,dir_x,dir_y,alpha_or_INF,bracket_lo,bracket_hi,method,status\n";
  for (std::size_t i = 0; i < field.grid.size(); ++i) {
    for (std::size_t j = 0; j < field.directions.size(); ++j) {
      const auto& p = field.grid[i];
      const auto& d = field.directions[j];
      const auto& entry = field.at(i, j);
      out << format_real(p.x) << ',' << format_real(p.y) << ',' << format_real(d.x) << ','
          << format_real(d.y) << ',';
      if (entry.estimate) {
        const auto& e = *entry.estimate;
        out << format_real(e.alpha) << ',' << format_real(e.bracket_lo) << ','
            << format_real(e.bracket_hi) << ',' << critical_method_name(e.method);
      } else {
        out << ",,,";
      }
      out << ',' << csv_text(entry.status) << '\n';
    }
  }
  return out.str();
}

json field_to_json(const CriticalOrderField& field) {
  json entries = json::array();
  for (std::size_t i = 0; i < field.grid.size(); ++i) {
    for (std::size_t j = 0; j < field.directions.size(); ++j) {
      const auto& p = field.grid[i];
      const auto& d = field.directions[j];
      const auto& entry = field.at(i, j);
      json item = {{"point", {real_json(p.x), real_json(p.y)}},
                   {"direction", {real_json(d.x), real_json(d.y)}},
                   {"status", entry.status}};
      if (entry.estimate) {
        item["alpha"] = real_json(entry.estimate->alpha);
        item["bracket"] = {real_json(entry.estimate->bracket_lo),
                           real_json(entry.estimate->bracket_hi)};
        item["method"] = std::string(critical_method_name(entry.estimate->method));
      }
      if (!entry.message.empty()) item["message"] = entry.message;
      entries.push_back(std::move(item));
    }
  }
  json grid = json::array();
  for (const auto& p : field.grid) grid.push_back({real_json(p.x), real_json(p.y)});
  json dirs = json::array();
  for (const auto& d : field.directions) dirs.push_back({real_json(d.x), real_json(d.y)});
  return {{"grid", grid}, {"directions", dirs}, {"entries", entries}};
}

json to_json(const LocalModel& m) {
  json derivs = json::array();
  for (double d : m.derivs) derivs.push_back(real_json(d));
  return {{"y", real_json(m.y)},
          {"N", m.N},
          {"derivs", derivs},
          {"alpha", real_json(m.alpha)},
          {"lfd_value", opt_real_json(m.lfd_value)},
          {"lfd_source", std::string(lfd_source_name(m.lfd_source))},
          {"side", std::string(side_name(m.side))},
          {"degraded", m.degraded}};
}

json to_json(const ApproximationReport& r) {
  json offsets = json::array();
  json residuals = json::array();
  for (double d : r.offsets) offsets.push_back(real_json(d));
  for (double v : r.residuals) residuals.push_back(real_json(v));
  return {{"offsets", offsets},
          {"residuals", residuals},
          {"decay_slope", opt_real_json(r.decay_slope)},
          {"exact", r.exact}};
}

json piecewise_to_json(const PiecewiseScalingModel& m,
                       std::span<const ApproximationReport> reports) {
  json knots = json::array();
  json pieces = json::array();
  for (std::size_t i = 0; i < m.knots.size(); ++i) {
    knots.push_back(real_json(m.knots[i]));
    for (const LocalModel* piece : {&m.right[i], &m.left[i]}) {
      json p = to_json(*piece);
      const std::size_t idx = pieces.size();
      if (idx < reports.size()) p["report"] = to_json(reports[idx]);
      pieces.push_back(std::move(p));
    }
  }
  return {{"interval", {real_json(m.a), real_json(m.b)}}, {"knots", knots}, {"pieces", pieces}};
}

std::string piecewise_to_csv(const PiecewiseScalingModel& m,
                             std::span<const ApproximationReport> reports) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "y,side,N,alpha_or_INF,lfd_value,lfd_source,degraded,decay_slope\n";
  std::size_t idx = 0;
  for (std::size_t i = 0; i < m.knots.size(); ++i) {
    for (const LocalModel* piece : {&m.right[i], &m.left[i]}) {
      out << format_real(piece->y) << ',' << side_name(piece->side) << ',' << piece->N << ','
          << format_real(piece->alpha) << ',' << opt_real(piece->lfd_value) << ','
          << lfd_source_name(piece->lfd_source) << ',' << (piece->degraded ? "true" : "false")
          << ',' << (idx < reports.size() ? opt_real(reports[idx].decay_slope) : std::string())
          << '\n';
      ++idx;
    }
  }
  return out.str();
}

}  // namespace lfdkit
