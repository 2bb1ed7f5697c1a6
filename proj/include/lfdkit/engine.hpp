#pragma once

// Local fractional derivatives as numerical limits.
//
// The limit x -> y is realized by a geometric sequence of windows
// [y, y +/- delta_k]. Each window is sampled on its own grid of M steps
// (h = delta_k / M), the base value (and for orders above one the Taylor
// polynomial) is subtracted, and D^q is evaluated on the window. How the
// results scale with delta_k decides whether the limit is zero, finite or
// divergent; the critical order is where that trichotomy flips.

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lfdkit/catalog.hpp"
#include "lfdkit/fraccalc.hpp"

namespace lfdkit {

enum class Side { Right, Left };

std::string_view side_name(Side side);
Side parse_side(std::string_view name);

/// Decision thresholds of the trichotomy and of the critical-order search.
struct Thresholds {
  double slope_tol = 0.05;
  double spread_tol = 0.02;
  /// Profiles with max |g| <= zero_floor_scale * max |f| count as zero.
  double zero_floor_scale = 1e-12;
  double bisection_tol = 0.01;
  double consistency_tol = 0.1;
  /// Cap on the Taylor degree N subtracted for orders above one.
  int max_taylor_degree = 3;

  void validate() const;
};

class WindowSchedule {
 public:
  WindowSchedule(double delta0 = 0.1, double ratio = 0.5, int count = 12, int samples = 256);

  double delta0() const { return delta0_; }
  double ratio() const { return ratio_; }
  int count() const { return count_; }
  int samples() const { return samples_; }

  double window(int k) const;
  std::vector<double> windows() const;

 private:
  double delta0_;
  double ratio_;
  int count_;
  int samples_;
};

/// One window of a limit study: the residual path and max |f| over the
/// window, which sets the zero floor.
struct WindowProfile {
  double delta = 0.0;
  SampledPath path;
  double function_scale = 0.0;
};

/// Produces the residual profile for a window of half-width delta with M steps.
using ProfileSampler = std::function<WindowProfile(double delta, int samples)>;

struct ScalingDiagnostics {
  std::vector<double> window_sizes;
  /// D^q at the outer edge of each window.
  std::vector<double> values;
  /// max |D^q| over the outer half of each window; what the slope is fitted to.
  std::vector<double> magnitudes;
  /// Whether the window's profile rose above the zero floor.
  std::vector<bool> resolved;
  /// Slope of log magnitude against log window size (>= 3 resolved windows).
  std::optional<double> sigma;
  double r2 = 0.0;
  int zero_floor_hits = 0;
};

enum class LfdClass { Zero, Finite, Divergent, IdenticallyZero };

std::string_view lfd_class_name(LfdClass c);

struct LfdEstimate {
  LfdClass classification = LfdClass::Zero;
  std::optional<double> value;  // present only for Finite
  Side side = Side::Right;
  double q = 0.0;
  int taylor_degree = 0;
  ScalingDiagnostics diagnostics;
};

enum class CriticalMethod { SlopeShift, Bisection };

std::string_view critical_method_name(CriticalMethod m);

struct CriticalOrderEstimate {
  static constexpr double kInfinity = std::numeric_limits<double>::infinity();

  double alpha = kInfinity;
  bool infinite = true;
  double bracket_lo = kInfinity;
  double bracket_hi = kInfinity;
  /// (q, q + sigma(q)) for every probe with a defined slope.
  std::vector<std::pair<double, double>> per_q;
  CriticalMethod method = CriticalMethod::SlopeShift;
  int taylor_degree = 0;
};

struct HolderEstimate {
  double h = std::numeric_limits<double>::infinity();
  bool infinite = true;
  int poly_order = 0;
  double r2 = 0.0;
};

/// Taylor degree N at y: the largest n <= cap with an analytic n-th
/// derivative. `smooth` when the (cap+1)-th derivative exists as well, i.e.
/// the critical order lies beyond what the cap can resolve.
struct Regularity {
  int taylor_degree = 0;
  bool smooth = false;
};

Regularity regularity_at(const FunctionSpec& spec, double y, int cap);

/// Probe offsets p; critical_order probes the orders N + p.
std::vector<double> default_probe_offsets();

/// g(t) = f(y +/- t) - sum_{n=0}^{N} f^(n)(y) (+/- t)^n / n! on [0, delta].
/// Throws ValidationError naming the largest valid N if a derivative is missing.
SampledPath profile(const FunctionSpec& spec, double y, Side side, double delta, int samples,
                    int taylor_degree = 0);

// Machinery shared with the directional module.

enum class ZeroRule {
  AllWindows,     // identically zero only if every window is below the floor
  LargestWindow,  // decided on the largest window alone
};

/// Sampler of the residual profiles behind `profile`.
ProfileSampler residual_sampler(const FunctionSpec& spec, double y, Side side, int taylor_degree);

std::vector<WindowProfile> sample_windows(const ProfileSampler& sampler,
                                          const WindowSchedule& schedule);

ScalingDiagnostics scaling_diagnostics(std::span<const WindowProfile> windows, FracOrder q,
                                       const Thresholds& th);

bool identically_zero(std::span<const WindowProfile> windows, const Thresholds& th, ZeroRule rule);

/// Throws InconclusiveError when fewer than three windows resolve.
LfdEstimate classify_lfd(std::span<const WindowProfile> windows, FracOrder q, Side side,
                         const Thresholds& th, ZeroRule rule);

/// Critical order from profiles already reduced by `taylor_degree`.
CriticalOrderEstimate critical_order_from_windows(std::span<const WindowProfile> windows,
                                                  int taylor_degree,
                                                  std::span<const double> probe_offsets,
                                                  const Thresholds& th, ZeroRule rule);

/// Sharpens a critical-order estimate alpha by fitting the edge values of
/// D^q, q = alpha, with A delta^(a - q) + B delta^(N + 1 - q): the singular
/// term plus the first smooth term the Taylor subtraction leaves behind.
/// Returns the best a within `reach` of alpha and inside (N, N + 1).
double refine_critical_order(std::span<const WindowProfile> windows, double alpha,
                             int taylor_degree, const Thresholds& th, double reach = 0.1);

// Operations on catalog functions.

LfdEstimate lfd_at(const FunctionSpec& spec, double y, FracOrder q, Side side,
                   const WindowSchedule& schedule, const Thresholds& th = {});

ScalingDiagnostics scale_exponent(const FunctionSpec& spec, double y, FracOrder q, Side side,
                                  const WindowSchedule& schedule, const Thresholds& th = {});

CriticalOrderEstimate critical_order(const FunctionSpec& spec, double y, Side side,
                                     const WindowSchedule& schedule,
                                     std::span<const double> probe_offsets,
                                     const Thresholds& th = {});

CriticalOrderEstimate critical_order(const FunctionSpec& spec, double y, Side side,
                                     const WindowSchedule& schedule, const Thresholds& th = {});

/// Pointwise Hölder exponent from the oscillation of f(x) - P_n(x - y) on
/// two-sided windows, independent of any fractional calculus. P_n is refitted
/// per window; n grows until the exponent falls below n + 1.
HolderEstimate holder_exponent_oracle(const FunctionSpec& spec, double y,
                                      const WindowSchedule& schedule, const Thresholds& th = {});

}  // namespace lfdkit
