#pragma once

// Directional and partial LFDs of two-variable functions via the line profile
// Phi(y, t) = f(y + v t) - f(y), and critical-order maps over points and
// directions. Orders are limited to 0 < q < 1: only the value is subtracted.

#include <optional>
#include <string>
#include <vector>

#include "lfdkit/catalog.hpp"
#include "lfdkit/engine.hpp"

namespace lfdkit {

class DirectionProbe {
 public:
  /// Normalizes v; throws ValidationError for a zero or non-finite direction.
  DirectionProbe(Point2 base, Point2 direction);

  Point2 base() const { return base_; }
  Point2 direction() const { return direction_; }

 private:
  Point2 base_;
  Point2 direction_;
};

SampledPath phi_profile(const FunctionSpec& spec, const DirectionProbe& probe, double delta,
                        int samples);

LfdEstimate directional_lfd(const FunctionSpec& spec, const DirectionProbe& probe, FracOrder q,
                            const WindowSchedule& schedule, const Thresholds& th = {});

/// axis 1 is x, axis 2 is y.
LfdEstimate partial_lfd(const FunctionSpec& spec, Point2 y, int axis, FracOrder q,
                        const WindowSchedule& schedule, const Thresholds& th = {});

CriticalOrderEstimate directional_critical_order(const FunctionSpec& spec,
                                                 const DirectionProbe& probe,
                                                 const WindowSchedule& schedule,
                                                 std::span<const double> probe_offsets,
                                                 const Thresholds& th = {});

struct FieldEntry {
  std::optional<CriticalOrderEstimate> estimate;
  /// "ok", "inconclusive" or "error"; `message` carries the reason otherwise.
  std::string status = "ok";
  std::string message;
};

struct CriticalOrderField {
  std::vector<Point2> grid;
  std::vector<Point2> directions;
  /// Row-major: entries[i * directions.size() + j] is (grid[i], directions[j]).
  std::vector<FieldEntry> entries;

  const FieldEntry& at(std::size_t point, std::size_t direction) const {
    return entries[point * directions.size() + direction];
  }
};

/// Entries are computed independently on up to `workers` threads (0 = auto);
/// the result does not depend on `workers`.
CriticalOrderField critical_order_map(const FunctionSpec& spec, const std::vector<Point2>& grid,
                                      const std::vector<Point2>& directions,
                                      const WindowSchedule& schedule,
                                      std::span<const double> probe_offsets,
                                      const Thresholds& th = {}, int workers = 0);

/// n unit vectors at angles 2 pi k / n. Directions on the diagonals are exact,
/// so the fan contains (1, -1)/sqrt(2) bit-for-bit whenever 8 divides n.
std::vector<Point2> direction_fan(int n);

}  // namespace lfdkit
