#pragma once

// Riemann-Liouville fractional integrals and derivatives of sampled profiles,
// the closed-form power-law oracle, and the scaling-property check.
//
// All routines take the lower limit at t = 0 of the sampled path. Paths are
// stored with their first sample subtracted, so the RL and Caputo forms agree
// for orders below one and no boundary term is needed.

#include <cstddef>
#include <span>
#include <vector>

#include "lfdkit/catalog.hpp"

namespace lfdkit {

/// Order of differentiation (q > 0) or integration (q < 0).
class FracOrder {
 public:
  explicit FracOrder(double q);

  double value() const { return q_; }
  bool is_integer() const;
  /// n with n - 1 < q < n for non-integer q > 0; q itself for integer q.
  int ceil_order() const;

 private:
  double q_;
};

/// Uniform-grid samples g_0..g_M at t = 0, h, ..., M h with g_0 = 0.
class SampledPath {
 public:
  /// Subtracts values[0] from every sample. Requires h > 0 and M >= 2.
  SampledPath(double h, std::vector<double> values);

  double step() const { return h_; }
  std::size_t last_index() const { return values_.size() - 1; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  double h_;
  std::vector<double> values_;
};

struct ScalingCheckReport {
  double beta = 1.0;
  double q = 0.0;
  double lhs = 0.0;  // D^q [f(beta t)] at x
  double rhs = 0.0;  // beta^q (D^q f)(beta x)
  double defect = 0.0;
};

/// Gamma(x); throws ValidationError at the poles x = 0, -1, -2, ...
double gamma_value(double x);

/// Gamma(p + 1) / Gamma(p - q + 1) x^(p - q), the RL derivative of t^p at x.
/// Returns 0 when p - q + 1 is a pole of Gamma. Requires p > -1 and x > 0.
double power_law_rl_derivative(double p, double q, double x);

/// Fractional integral of order -q (q < 0) at node `at_index`, by product
/// trapezoidal integration: g piecewise linear, kernel integrated exactly.
double rl_frac_integral(const SampledPath& g, FracOrder q, std::size_t at_index);

/// L1 fractional derivative for 0 < q < 1 at node `at_index`. Exact for the
/// piecewise-linear interpolant of the samples.
double rl_frac_derivative(const SampledPath& g, FracOrder q, std::size_t at_index);

/// Any order 0 < q < 5. For n - 1 < q < n with n >= 2 the path must have n - 1
/// vanishing derivatives at 0 (a Taylor residual); its (n-1)-th derivative is
/// taken by finite-difference stencils and the L1 scheme of order q - n + 1
/// is applied to it. Integer q returns the ordinary q-th derivative at the node.
/// Stencils only use samples up to `at_index`.
double rl_frac_derivative_general(const SampledPath& g, FracOrder q, std::size_t at_index);

/// D^q at every node 0..M (entry 0 is 0). For q > 1 the derivative stencils
/// use the full path, so interior nodes may see samples one or two steps ahead.
std::vector<double> rl_frac_derivative_path(const SampledPath& g, FracOrder q);

/// Finite-difference weights for the `order`-th derivative at x0 from values
/// at `nodes` (Fornberg's recursion).
std::vector<double> finite_difference_weights(int order, double x0, std::span<const double> nodes);

/// `order`-th derivative of the samples at nodes 0..last, node 0 pinned to 0.
/// Central stencils inside, one-sided windows near the ends; all second order.
std::vector<double> derivative_at_nodes(std::span<const double> g, double h, int order,
                                        std::size_t last);

/// Compares D^q[f(beta t)](x) with beta^q (D^q f)(beta x), both by the L1
/// scheme with steps h and beta h. Requires an arity-1 spec.
ScalingCheckReport scaling_defect(const FunctionSpec& spec, double beta, FracOrder q, double x,
                                  double h);

}  // namespace lfdkit
