#pragma once

// Local fractional Taylor models
//
//   f(y + D) ~ sum_{n<=N} f^(n)(y) D^n / n! + LFD_alpha f(y) |D|^alpha / Gamma(alpha + 1),
//
// their remainders, and piecewise approximations assembled from them.
// A Left model expands in D = x - y <= 0 with the left LFD in front of |D|^alpha.

#include <cmath>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lfdkit/catalog.hpp"
#include "lfdkit/engine.hpp"
#include "lfdkit/errors.hpp"

namespace lfdkit {

/// The LFD at the critical order is not Finite, so no fractional term exists.
class ModelUnavailable : public InconclusiveError {
 public:
  using InconclusiveError::InconclusiveError;
};

enum class LfdSource {
  None,    // smooth or degraded model, no fractional term
  Limit,   // Finite LFD at alpha from the window limit
  Secant,  // fractional secant over the piece's half-width
};

std::string_view lfd_source_name(LfdSource s);

struct LocalModel {
  double y = 0.0;
  int N = 0;
  /// f^(0..N)(y)
  std::vector<double> derivs;
  double alpha = CriticalOrderEstimate::kInfinity;
  std::optional<double> lfd_value;
  Side side = Side::Right;
  LfdSource lfd_source = LfdSource::None;
  /// Replaced by the constant f(y) after a failed construction.
  bool degraded = false;

  bool smooth() const { return !std::isfinite(alpha); }
};

struct ApproximationReport {
  std::vector<double> offsets;
  std::vector<double> residuals;
  std::optional<double> decay_slope;
  /// Every residual fell below the zero floor.
  bool exact = false;
};

struct PiecewiseScalingModel {
  double a = 0.0;
  double b = 1.0;
  std::vector<double> knots;
  /// right[i] covers [knots[i], cell end), left[i] covers [cell start, knots[i]).
  std::vector<LocalModel> right;
  std::vector<LocalModel> left;
};

/// Throws ModelUnavailable when the LFD at the critical order is not Finite.
LocalModel build_local_model(const FunctionSpec& spec, double y, const WindowSchedule& schedule,
                             const Thresholds& th = {}, Side side = Side::Right);

/// Throws ValidationError when x lies on the wrong side of y.
double evaluate_model(const LocalModel& model, double x);

/// F(y, delta; q, N): D^q of the order-N residual profile at t = delta.
double frac_residual(const FunctionSpec& spec, double y, FracOrder q, int N, double delta,
                     int samples);

ApproximationReport remainder_profile(const FunctionSpec& spec, const LocalModel& model,
                                      std::span<const double> offsets, const Thresholds& th = {});

/// K knots at cell midpoints of [a, b]; pieces are built on up to `workers`
/// threads and do not depend on `workers`.
PiecewiseScalingModel piecewise_scaling_approx(const FunctionSpec& spec, double a, double b, int K,
                                               const WindowSchedule& schedule,
                                               const Thresholds& th = {}, int workers = 0);

/// Evaluates the piece of the nearest knot on the side of x. Requires a <= x <= b.
double evaluate_piecewise(const PiecewiseScalingModel& model, double x);

}  // namespace lfdkit
