#include "lfdkit/taylor.hpp"

#include <algorithm>
#include <cmath>

#include "lfdkit/parallel.hpp"

namespace lfdkit {

namespace {

double side_sign(Side side) { return side == Side::Right ? 1.0 : -1.0; }

double taylor_poly(const std::vector<double>& derivs, double d) {
  // Horner form of sum derivs[n] d^n / n!.
  double acc = 0.0;
  for (std::size_t n = derivs.size(); n-- > 0;) acc = acc * d / static_cast<double>(n + 1) + derivs[n];
  return acc;
}

LocalModel base_model(const FunctionSpec& spec, double y, Side side, int degree) {
  LocalModel m;
  m.y = y;
  m.side = side;
  m.N = degree;
  m.derivs.push_back(eval_1d(spec, y));
  for (int n = 1; n <= degree; ++n) m.derivs.push_back(*analytic_derivative(spec, n, y));
  return m;
}

// secant_width > 0 replaces a non-Finite limit by the fractional secant
// Gamma(alpha + 1) (f(y +/- w) - P_N(+/- w)) / w^alpha.
LocalModel build_model(const FunctionSpec& spec, double y, const WindowSchedule& schedule,
                       const Thresholds& th, Side side, double secant_width) {
  if (spec.arity() != 1) throw ValidationError("Taylor models need a one-variable function");
  th.validate();
  const Regularity reg = regularity_at(spec, y, th.max_taylor_degree);
  LocalModel m = base_model(spec, y, side, reg.taylor_degree);
  if (reg.smooth) return m;

  const auto windows = sample_windows(residual_sampler(spec, y, side, reg.taylor_degree), schedule);
  const auto probes = default_probe_offsets();
  const auto co =
      critical_order_from_windows(windows, reg.taylor_degree, probes, th, ZeroRule::AllWindows);
  if (co.infinite) return m;

  const double alpha = refine_critical_order(windows, co.alpha, reg.taylor_degree, th);
  std::optional<LfdEstimate> est;
  try {
    est = classify_lfd(windows, FracOrder(alpha), side, th, ZeroRule::AllWindows);
  } catch (const InconclusiveError&) {
  }
  if (est && est->classification == LfdClass::Finite) {
    m.alpha = alpha;
    m.lfd_value = est->value;
    m.lfd_source = LfdSource::Limit;
    return m;
  }
  if (!(secant_width > 0.0)) {
    throw ModelUnavailable("LFD at the critical order " + std::to_string(alpha) + " is " +
                           (est ? std::string(lfd_class_name(est->classification)) : "inconclusive"));
  }
  const double s = side_sign(side);
  const double rest = eval_1d(spec, y + s * secant_width) - taylor_poly(m.derivs, s * secant_width);
  m.alpha = co.alpha;
  m.lfd_value = std::tgamma(co.alpha + 1.0) * rest / std::pow(secant_width, co.alpha);
  m.lfd_source = LfdSource::Secant;
  return m;
}

}  // namespace

std::string_view lfd_source_name(LfdSource s) {
  switch (s) {
    case LfdSource::None: return "none";
    case LfdSource::Limit: return "limit";
    case LfdSource::Secant: return "secant";
  }
  return "?";
}

LocalModel build_local_model(const FunctionSpec& spec, double y, const WindowSchedule& schedule,
                             const Thresholds& th, Side side) {
  return build_model(spec, y, schedule, th, side, 0.0);
}

double evaluate_model(const LocalModel& model, double x) {
  const double d = x - model.y;
  if ((model.side == Side::Right && d < 0.0) || (model.side == Side::Left && d > 0.0)) {
    throw ValidationError("evaluation point lies on the wrong side of the model");
  }
  double value = taylor_poly(model.derivs, d);
  if (model.lfd_value && std::isfinite(model.alpha)) {
    value += *model.lfd_value * std::pow(std::abs(d), model.alpha) / std::tgamma(model.alpha + 1.0);
  }
  return value;
}

double frac_residual(const FunctionSpec& spec, double y, FracOrder q, int N, double delta,
                     int samples) {
  if (q.is_integer() || q.ceil_order() != N + 1) {
    throw ValidationError("frac_residual needs N < q < N + 1");
  }
  const auto path = profile(spec, y, Side::Right, delta, samples, N);
  return rl_frac_derivative_general(path, q, static_cast<std::size_t>(samples));
}

ApproximationReport remainder_profile(const FunctionSpec& spec, const LocalModel& model,
                                      std::span<const double> offsets, const Thresholds& th) {
  ApproximationReport r;
  const double s = side_sign(model.side);
  std::vector<double> log_d;
  std::vector<double> log_r;
  for (double d : offsets) {
    if (!(d > 0.0)) throw ValidationError("remainder offsets must be > 0");
    const double x = model.y + s * d;
    const double fx = eval_1d(spec, x);
    const double res = fx - evaluate_model(model, x);
    r.offsets.push_back(d);
    r.residuals.push_back(res);
    const double floor = th.zero_floor_scale * std::max({std::abs(fx), std::abs(model.derivs[0]), 1.0});
    if (std::abs(res) > floor) {
      log_d.push_back(std::log(d));
      log_r.push_back(std::log(std::abs(res)));
    }
  }
  r.exact = log_d.empty();
  if (log_d.size() >= 3) {
    const double n = static_cast<double>(log_d.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < log_d.size(); ++i) {
      mx += log_d[i];
      my += log_r[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < log_d.size(); ++i) {
      sxx += (log_d[i] - mx) * (log_d[i] - mx);
      sxy += (log_d[i] - mx) * (log_r[i] - my);
    }
    r.decay_slope = sxy / sxx;
  }
  return r;
}

PiecewiseScalingModel piecewise_scaling_approx(const FunctionSpec& spec, double a, double b, int K,
                                               const WindowSchedule& schedule,
                                               const Thresholds& th, int workers) {
  if (spec.arity() != 1) throw ValidationError("Taylor models need a one-variable function");
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
    throw ValidationError("interval must satisfy a < b");
  }
  if (K < 1) throw ValidationError("knot count must be >= 1");
  th.validate();

  PiecewiseScalingModel pm;
  pm.a = a;
  pm.b = b;
  const double cell = (b - a) / K;
  for (int i = 0; i < K; ++i) pm.knots.push_back(a + (i + 0.5) * cell);
  pm.right.resize(static_cast<std::size_t>(K));
  pm.left.resize(static_cast<std::size_t>(K));

  parallel_for(2 * static_cast<std::size_t>(K), workers, [&](std::size_t task) {
    const std::size_t i = task / 2;
    const Side side = task % 2 == 0 ? Side::Right : Side::Left;
    auto& slot = side == Side::Right ? pm.right[i] : pm.left[i];
    const double y = pm.knots[i];
    try {
      slot = build_model(spec, y, schedule, th, side, 0.5 * cell);
    } catch (const InconclusiveError&) {
      slot = base_model(spec, y, side, 0);
      slot.degraded = true;
    }
  });
  return pm;
}

double evaluate_piecewise(const PiecewiseScalingModel& model, double x) {
  if (!(x >= model.a && x <= model.b)) throw ValidationError("x lies outside the model interval");
  const std::size_t k = model.knots.size();
  const double cell = (model.b - model.a) / static_cast<double>(k);
  const auto i = std::min(k - 1, static_cast<std::size_t>((x - model.a) / cell));
  return evaluate_model(x >= model.knots[i] ? model.right[i] : model.left[i], x);
}

}  // namespace lfdkit
