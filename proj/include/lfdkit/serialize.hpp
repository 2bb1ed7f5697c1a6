#pragma once

// CSV and JSON renderings of results. Reals are written with 17 significant
// digits independent of the global locale; infinite orders are the literal
// "inf" in both formats.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfdkit/directional.hpp"
#include "lfdkit/engine.hpp"
#include "lfdkit/taylor.hpp"

namespace lfdkit {

std::string format_real(double x);

/// A number, or the string "inf" / "-inf" / "nan".
nlohmann::json real_json(double x);

nlohmann::json to_json(const ScalingDiagnostics& d);
nlohmann::json lfd_to_json(const LfdEstimate& e, double y);
std::string lfd_to_csv(const LfdEstimate& e, double y);

/// One base point of a critical-order scan.
struct CriticalRow {
  double y = 0.0;
  Side side = Side::Right;
  std::optional<CriticalOrderEstimate> estimate;
  std::string status = "ok";
  std::string message;
};

nlohmann::json critical_to_json(const CriticalOrderEstimate& e, double y, Side side);
nlohmann::json critical_rows_to_json(std::span<const CriticalRow> rows);
std::string critical_rows_to_csv(std::span<const CriticalRow> rows);

std::string field_to_csv(const CriticalOrderField& field);
nlohmann::json field_to_json(const CriticalOrderField& field);

nlohmann::json to_json(const LocalModel& m);
nlohmann::json to_json(const ApproximationReport& r);

/// Model document; `reports` (if non-empty) holds one report per piece in
/// the order right[0], left[0], right[1], ...
nlohmann::json piecewise_to_json(const PiecewiseScalingModel& m,
                                 std::span<const ApproximationReport> reports = {});
std::string piecewise_to_csv(const PiecewiseScalingModel& m,
                             std::span<const ApproximationReport> reports = {});

}  // namespace lfdkit
