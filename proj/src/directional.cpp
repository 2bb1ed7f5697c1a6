#include "lfdkit/directional.hpp"

#include <cmath>
#include <numbers>

#include "lfdkit/errors.hpp"
#include "lfdkit/parallel.hpp"

namespace lfdkit {

namespace {

void require_arity2(const FunctionSpec& spec) {
  if (spec.arity() != 2) {
    throw ValidationError("directional probes need a two-variable function, got " +
                          std::string(kind_name(spec.kind())));
  }
}

void require_unit_interval(FracOrder q) {
  if (!(q.value() > 0.0 && q.value() < 1.0)) {
    throw ValidationError("directional LFD orders must lie in (0, 1)");
  }
}

ProfileSampler line_sampler(const FunctionSpec& spec, const DirectionProbe& probe) {
  return [&spec, base = probe.base(), dir = probe.direction()](double delta, int samples) {
    const double f0 = eval_on_line(spec, base, dir, 0.0);
    std::vector<double> g(static_cast<std::size_t>(samples) + 1);
    double scale = std::abs(f0);
    for (int j = 0; j <= samples; ++j) {
      const double fx = eval_on_line(spec, base, dir, delta * j / samples);
      scale = std::max(scale, std::abs(fx));
      g[static_cast<std::size_t>(j)] = fx - f0;
    }
    return WindowProfile{delta, SampledPath(delta / samples, std::move(g)), scale};
  };
}

// Unit vector at angle (pi / 4) * octant, exact on the axes and diagonals.
Point2 octant_direction(int octant) {
  const double d = std::sqrt(0.5);
  static const Point2 table[8] = {{1, 0}, {d, d}, {0, 1}, {-d, d}, {-1, 0}, {-d, -d}, {0, -1}, {d, -d}};
  return table[octant];
}

}  // namespace

DirectionProbe::DirectionProbe(Point2 base, Point2 direction) : base_(base) {
  if (!std::isfinite(base.x) || !std::isfinite(base.y)) {
    throw ValidationError("base point must be finite");
  }
  const double norm = std::hypot(direction.x, direction.y);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ValidationError("direction must be non-zero");
  direction_ = {direction.x / norm, direction.y / norm};
  // Mirror-image directions normalize to the same magnitudes, so v_x = -v_y survives exactly.
  if (std::abs(direction.x) == std::abs(direction.y)) {
    const double d = std::sqrt(0.5);
    direction_ = {std::copysign(d, direction.x), std::copysign(d, direction.y)};
  }
}

SampledPath phi_profile(const FunctionSpec& spec, const DirectionProbe& probe, double delta,
                        int samples) {
  require_arity2(spec);
  if (!(delta > 0.0)) throw ValidationError("delta must be > 0");
  if (samples < 2) throw ValidationError("samples must be >= 2");
  return line_sampler(spec, probe)(delta, samples).path;
}

LfdEstimate directional_lfd(const FunctionSpec& spec, const DirectionProbe& probe, FracOrder q,
                            const WindowSchedule& schedule, const Thresholds& th) {
  require_arity2(spec);
  require_unit_interval(q);
  th.validate();
  const auto windows = sample_windows(line_sampler(spec, probe), schedule);
  return classify_lfd(windows, q, Side::Right, th, ZeroRule::LargestWindow);
}

LfdEstimate partial_lfd(const FunctionSpec& spec, Point2 y, int axis, FracOrder q,
                        const WindowSchedule& schedule, const Thresholds& th) {
  if (axis != 1 && axis != 2) throw ValidationError("axis must be 1 or 2");
  const Point2 e = axis == 1 ? Point2{1.0, 0.0} : Point2{0.0, 1.0};
  return directional_lfd(spec, DirectionProbe(y, e), q, schedule, th);
}

CriticalOrderEstimate directional_critical_order(const FunctionSpec& spec,
                                                 const DirectionProbe& probe,
                                                 const WindowSchedule& schedule,
                                                 std::span<const double> probe_offsets,
                                                 const Thresholds& th) {
  require_arity2(spec);
  th.validate();
  const auto windows = sample_windows(line_sampler(spec, probe), schedule);
  return critical_order_from_windows(windows, 0, probe_offsets, th, ZeroRule::LargestWindow);
}

CriticalOrderField critical_order_map(const FunctionSpec& spec, const std::vector<Point2>& grid,
                                      const std::vector<Point2>& directions,
                                      const WindowSchedule& schedule,
                                      std::span<const double> probe_offsets,
                                      const Thresholds& th, int workers) {
  require_arity2(spec);
  if (grid.empty()) throw ValidationError("grid must not be empty");
  if (directions.empty()) throw ValidationError("direction list must not be empty");
  th.validate();

  CriticalOrderField field;
  field.grid = grid;
  field.directions.reserve(directions.size());
  for (const auto& d : directions) field.directions.push_back(DirectionProbe({0, 0}, d).direction());
  field.entries.resize(grid.size() * directions.size());

  const std::size_t nd = directions.size();
  parallel_for(field.entries.size(), workers, [&](std::size_t idx) {
    FieldEntry& entry = field.entries[idx];
    try {
      const DirectionProbe probe(grid[idx / nd], field.directions[idx % nd]);
      entry.estimate = directional_critical_order(spec, probe, schedule, probe_offsets, th);
    } catch (const InconclusiveError& e) {
      entry.status = "inconclusive";
      entry.message = e.what();
    } catch (const std::exception& e) {
      entry.status = "error";
      entry.message = e.what();
    }
  });
  return field;
}

std::vector<Point2> direction_fan(int n) {
  if (n < 1) throw ValidationError("direction fan needs at least one direction");
  std::vector<Point2> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    if ((8 * k) % n == 0) {
      out[static_cast<std::size_t>(k)] = octant_direction(8 * k / n);
    } else if (n % 2 == 0 && k >= n / 2) {
      // Opposite directions are exact negatives of each other.
      const Point2 v = out[static_cast<std::size_t>(k - n / 2)];
      out[static_cast<std::size_t>(k)] = {-v.x, -v.y};
    } else {
      const double theta = 2.0 * std::numbers::pi * k / n;
      out[static_cast<std::size_t>(k)] = {std::cos(theta), std::sin(theta)};
    }
  }
  return out;
}

}  // namespace lfdkit
