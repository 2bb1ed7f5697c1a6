#include "lfdkit/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "lfdkit/errors.hpp"

namespace lfdkit {

namespace {

struct Fit {
  double slope = 0.0;
  double r2 = 0.0;
};

Fit fit_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Fit f;
  f.slope = sxy / sxx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double stddev(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / n);
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double zero_floor(const WindowProfile& w, const Thresholds& th) {
  return th.zero_floor_scale * w.function_scale;
}

// Numerical differentiation amplifies rounding by roughly M per pass, so the
// floor a profile has to clear grows with the order.
double resolution_floor(const WindowProfile& w, const Thresholds& th, int differentiations) {
  const double m = static_cast<double>(w.path.last_index());
  return zero_floor(w, th) * std::pow(m, differentiations);
}

LfdEstimate integer_order_lfd(const FunctionSpec& spec, double y, int order, Side side) {
  // Ordinary derivatives by 7-point central stencils at a fixed relative step.
  static constexpr std::array<double, 5> kRelStep = {1e-3, 1e-3, 5e-3, 1e-2, 1e-2};
  if (order < 1 || order > 5) throw ValidationError("integer orders above 5 are not supported");
  const double step = kRelStep[static_cast<std::size_t>(order - 1)] * std::max(1.0, std::abs(y));
  std::array<double, 7> nodes{};
  for (int i = 0; i < 7; ++i) nodes[static_cast<std::size_t>(i)] = i - 3.0;
  const auto w = finite_difference_weights(order, 0.0, nodes);
  double acc = 0.0;
  for (int i = 0; i < 7; ++i) acc += w[static_cast<std::size_t>(i)] * eval_1d(spec, y + (i - 3) * step);
  const double derivative = acc / std::pow(step, order);

  LfdEstimate e;
  e.classification = LfdClass::Finite;
  // The left-sided derivative of order n with respect to -(x - y) carries (-1)^n.
  e.value = (side == Side::Left && order % 2 == 1) ? -derivative : derivative;
  e.side = side;
  e.q = order;
  e.diagnostics.window_sizes = {step};
  e.diagnostics.values = {*e.value};
  e.diagnostics.magnitudes = {std::abs(*e.value)};
  e.diagnostics.resolved = {true};
  return e;
}

}  // namespace

ProfileSampler residual_sampler(const FunctionSpec& spec, double y, Side side, int taylor_degree) {
  std::vector<double> coeffs(static_cast<std::size_t>(taylor_degree) + 1, 0.0);
  for (int n = 1; n <= taylor_degree; ++n) {
    const auto d = analytic_derivative(spec, n, y);
    if (!d) {
      throw ValidationError("derivative of order " + std::to_string(n) +
                            " does not exist at y; largest valid N is " + std::to_string(n - 1));
    }
    coeffs[static_cast<std::size_t>(n)] = *d / std::tgamma(n + 1.0);
  }
  const double fy = eval_1d(spec, y);
  const double sign = side == Side::Right ? 1.0 : -1.0;

  return [spec, y, sign, fy, coeffs = std::move(coeffs)](double delta, int samples) {
    std::vector<double> g(static_cast<std::size_t>(samples) + 1);
    double scale = std::abs(fy);
    g[0] = 0.0;
    for (int j = 1; j <= samples; ++j) {
      const double t = delta * j / samples;
      const double fx = eval_1d(spec, y + sign * t);
      scale = std::max(scale, std::abs(fx));
      const double u = sign * t;
      double poly = 0.0;
      for (std::size_t n = coeffs.size(); n-- > 1;) poly = (poly + coeffs[n]) * u;
      g[static_cast<std::size_t>(j)] = (fx - fy) - poly;
    }
    return WindowProfile{delta, SampledPath(delta / samples, std::move(g)), scale};
  };
}

std::string_view side_name(Side side) { return side == Side::Right ? "right" : "left"; }

Side parse_side(std::string_view name) {
  if (name == "right" || name == "Right") return Side::Right;
  if (name == "left" || name == "Left") return Side::Left;
  throw ValidationError("side must be 'right' or 'left'");
}

std::string_view lfd_class_name(LfdClass c) {
  switch (c) {
    case LfdClass::Zero: return "Zero";
    case LfdClass::Finite: return "Finite";
    case LfdClass::Divergent: return "Divergent";
    case LfdClass::IdenticallyZero: return "IdenticallyZero";
  }
  return "?";
}

std::string_view critical_method_name(CriticalMethod m) {
  return m == CriticalMethod::SlopeShift ? "SlopeShift" : "Bisection";
}

void Thresholds::validate() const {
  if (!(slope_tol > 0.0)) throw ValidationError("slope_tol must be > 0");
  if (!(spread_tol > 0.0)) throw ValidationError("spread_tol must be > 0");
  if (!(zero_floor_scale >= 0.0)) throw ValidationError("zero_floor_scale must be >= 0");
  if (!(bisection_tol > 0.0)) throw ValidationError("bisection_tol must be > 0");
  if (!(consistency_tol > 0.0)) throw ValidationError("consistency_tol must be > 0");
  if (max_taylor_degree < 0 || max_taylor_degree > 3) {
    throw ValidationError("max_taylor_degree must lie in [0, 3]");
  }
}

WindowSchedule::WindowSchedule(double delta0, double ratio, int count, int samples)
    : delta0_(delta0), ratio_(ratio), count_(count), samples_(samples) {
  if (!(delta0 > 0.0) || !std::isfinite(delta0)) throw ValidationError("delta0 must be > 0");
  if (!(ratio > 0.0 && ratio < 1.0)) throw ValidationError("ratio must lie in (0, 1)");
  if (count < 4) throw ValidationError("window count must be >= 4");
  if (samples < 64) throw ValidationError("samples per window must be >= 64");
  if (!(window(count - 1) > 1e3 * std::numeric_limits<double>::epsilon())) {
    throw ValidationError("smallest window falls into the rounding floor");
  }
}

double WindowSchedule::window(int k) const { return delta0_ * std::pow(ratio_, k); }

std::vector<double> WindowSchedule::windows() const {
  std::vector<double> w(static_cast<std::size_t>(count_));
  for (int k = 0; k < count_; ++k) w[static_cast<std::size_t>(k)] = window(k);
  return w;
}

Regularity regularity_at(const FunctionSpec& spec, double y, int cap) {
  Regularity r;
  for (int n = 1; n <= cap; ++n) {
    if (!analytic_derivative(spec, n, y)) return r;
    r.taylor_degree = n;
  }
  r.smooth = analytic_derivative(spec, cap + 1, y).has_value();
  return r;
}

std::vector<double> default_probe_offsets() { return {0.25, 0.5, 0.75}; }

SampledPath profile(const FunctionSpec& spec, double y, Side side, double delta, int samples,
                    int taylor_degree) {
  if (!(delta > 0.0)) throw ValidationError("delta must be > 0");
  if (samples < 2) throw ValidationError("samples must be >= 2");
  if (taylor_degree < 0) throw ValidationError("Taylor degree must be >= 0");
  return residual_sampler(spec, y, side, taylor_degree)(delta, samples).path;
}

std::vector<WindowProfile> sample_windows(const ProfileSampler& sampler,
                                          const WindowSchedule& schedule) {
  std::vector<WindowProfile> out;
  out.reserve(static_cast<std::size_t>(schedule.count()));
  for (int k = 0; k < schedule.count(); ++k) {
    out.push_back(sampler(schedule.window(k), schedule.samples()));
  }
  return out;
}

ScalingDiagnostics scaling_diagnostics(std::span<const WindowProfile> windows, FracOrder q,
                                       const Thresholds& th) {
  const int differentiations = std::max(0, q.ceil_order() - 1);
  ScalingDiagnostics d;
  std::vector<double> log_delta;
  std::vector<double> log_mag;
  for (const auto& w : windows) {
    const auto path = rl_frac_derivative_path(w.path, q);
    const std::size_t m = w.path.last_index();
    double mag = 0.0;
    for (std::size_t i = m / 2; i <= m; ++i) mag = std::max(mag, std::abs(path[i]));

    const bool resolved = max_abs(w.path.values()) > resolution_floor(w, th, differentiations);
    d.window_sizes.push_back(w.delta);
    d.values.push_back(path[m]);
    d.magnitudes.push_back(mag);
    d.resolved.push_back(resolved);
    if (!resolved) {
      ++d.zero_floor_hits;
      continue;
    }
    if (mag > 0.0) {
      log_delta.push_back(std::log(w.delta));
      log_mag.push_back(std::log(mag));
    }
  }
  if (log_delta.size() >= 3) {
    const Fit f = fit_line(log_delta, log_mag);
    d.sigma = f.slope;
    d.r2 = f.r2;
  }
  return d;
}

bool identically_zero(std::span<const WindowProfile> windows, const Thresholds& th, ZeroRule rule) {
  const std::size_t n = rule == ZeroRule::LargestWindow ? std::min<std::size_t>(1, windows.size())
                                                        : windows.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (max_abs(windows[k].path.values()) > zero_floor(windows[k], th)) return false;
  }
  return true;
}

LfdEstimate classify_lfd(std::span<const WindowProfile> windows, FracOrder q, Side side,
                         const Thresholds& th, ZeroRule rule) {
  LfdEstimate e;
  e.side = side;
  e.q = q.value();
  e.diagnostics = scaling_diagnostics(windows, q, th);
  const auto& d = e.diagnostics;

  if (identically_zero(windows, th, rule)) {
    e.classification = LfdClass::IdenticallyZero;
    return e;
  }
  const auto resolved = static_cast<std::size_t>(std::count(d.resolved.begin(), d.resolved.end(), true));
  if (resolved == 0) {
    e.classification = LfdClass::Zero;
    return e;
  }
  if (!d.sigma) {
    throw InconclusiveError("fewer than 3 resolvable windows; refine the schedule");
  }
  const double sigma = *d.sigma;
  if (sigma > th.slope_tol) {
    e.classification = LfdClass::Zero;
  } else if (sigma < -th.slope_tol) {
    e.classification = LfdClass::Divergent;
  } else {
    std::vector<double> tail;
    for (std::size_t k = d.values.size(); k-- > 0 && tail.size() < 3;) {
      if (d.resolved[k]) tail.push_back(d.values[k]);
    }
    const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
    double mean_abs = 0.0;
    for (double v : tail) mean_abs += std::abs(v);
    mean_abs /= static_cast<double>(tail.size());
    const bool settled = mean_abs > 0.0 && (*hi - *lo) / mean_abs < th.spread_tol;
    if (settled) {
      e.classification = LfdClass::Finite;
      e.value = tail.front();
    } else {
      // Bounded but oscillating: the limit does not exist.
      e.classification = LfdClass::Divergent;
    }
  }
  return e;
}

CriticalOrderEstimate critical_order_from_windows(std::span<const WindowProfile> windows,
                                                  int taylor_degree,
                                                  std::span<const double> probe_offsets,
                                                  const Thresholds& th, ZeroRule rule) {
  if (probe_offsets.empty()) throw ValidationError("at least one probe order is required");
  for (double p : probe_offsets) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("probe offsets must lie in (0, 1)");
  }
  CriticalOrderEstimate est;
  est.taylor_degree = taylor_degree;
  if (identically_zero(windows, th, rule)) return est;

  struct Probe {
    double q;
    LfdClass cls;
  };
  std::vector<Probe> classified;
  std::vector<double> estimates;
  for (double p : probe_offsets) {
    const FracOrder q(taylor_degree + p);
    try {
      const auto e = classify_lfd(windows, q, Side::Right, th, rule);
      classified.push_back({q.value(), e.classification});
      if (e.diagnostics.sigma) {
        est.per_q.emplace_back(q.value(), q.value() + *e.diagnostics.sigma);
        estimates.push_back(q.value() + *e.diagnostics.sigma);
      }
    } catch (const InconclusiveError&) {
    }
  }
  if (estimates.empty()) throw InconclusiveError("no probe order produced a usable slope");

  est.infinite = false;
  est.alpha = median(estimates);
  est.method = CriticalMethod::SlopeShift;
  est.bracket_lo = est.alpha - 0.5 * th.bisection_tol;
  est.bracket_hi = est.alpha + 0.5 * th.bisection_tol;
  if (stddev(estimates) <= th.consistency_tol) return est;

  // Probes disagree: bisect between the highest order whose LFD exists and
  // the lowest order where it diverges.
  std::optional<double> lo;
  std::optional<double> hi;
  for (const auto& pr : classified) {
    if (pr.cls == LfdClass::Divergent) {
      if (!hi || pr.q < *hi) hi = pr.q;
    } else if (!lo || pr.q > *lo) {
      lo = pr.q;
    }
  }
  if (!lo || !hi || *lo >= *hi) {
    est.bracket_lo = *std::min_element(estimates.begin(), estimates.end());
    est.bracket_hi = *std::max_element(estimates.begin(), estimates.end());
    return est;
  }
  double a = *lo;
  double b = *hi;
  while (b - a > th.bisection_tol) {
    const double mid = 0.5 * (a + b);
    try {
      const auto e = classify_lfd(windows, FracOrder(mid), Side::Right, th, rule);
      (e.classification == LfdClass::Divergent ? b : a) = mid;
    } catch (const InconclusiveError&) {
      break;
    }
  }
  est.method = CriticalMethod::Bisection;
  est.bracket_lo = a;
  est.bracket_hi = b;
  est.alpha = 0.5 * (a + b);
  return est;
}

double refine_critical_order(std::span<const WindowProfile> windows, double alpha,
                             int taylor_degree, const Thresholds& th, double reach) {
  const double lo = std::max(alpha - reach, taylor_degree + 1e-3);
  const double hi = std::min(alpha + reach, taylor_degree + 1.0 - 1e-2);
  if (!(lo < hi)) return alpha;
  const double q = std::clamp(alpha, lo, hi);
  const auto d = scaling_diagnostics(windows, FracOrder(q), th);

  std::vector<double> delta;
  std::vector<double> value;
  for (std::size_t k = 0; k < d.values.size(); ++k) {
    if (d.resolved[k] && d.values[k] != 0.0) {
      delta.push_back(d.window_sizes[k]);
      value.push_back(d.values[k]);
    }
  }
  if (delta.size() < 4) return alpha;

  // Relative residual of v = A delta^(a - q) + B delta^(N + 1 - q), solved for
  // (A, B) by 2x2 least squares with rows scaled by 1 / |v|.
  const double smooth_exp = taylor_degree + 1.0 - q;
  auto misfit = [&](double a) {
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, r1 = 0.0, r2 = 0.0, rr = 0.0;
    for (std::size_t k = 0; k < delta.size(); ++k) {
      const double w = 1.0 / std::abs(value[k]);
      const double x1 = std::pow(delta[k], a - q) * w;
      const double x2 = std::pow(delta[k], smooth_exp) * w;
      const double v = value[k] * w;
      s11 += x1 * x1;
      s12 += x1 * x2;
      s22 += x2 * x2;
      r1 += x1 * v;
      r2 += x2 * v;
      rr += v * v;
    }
    const double det = s11 * s22 - s12 * s12;
    if (!(std::abs(det) > 1e-14 * s11 * s22)) return rr - r1 * r1 / s11;
    const double ca = (r1 * s22 - r2 * s12) / det;
    const double cb = (s11 * r2 - s12 * r1) / det;
    return rr - ca * r1 - cb * r2;
  };

  // Scan then polish: the misfit is smooth in a but not necessarily unimodal
  // over the whole reach.
  constexpr int kScan = 200;
  double best = q;
  double best_err = misfit(q);
  for (int i = 0; i <= kScan; ++i) {
    const double a = lo + (hi - lo) * i / kScan;
    const double err = misfit(a);
    if (err < best_err) {
      best_err = err;
      best = a;
    }
  }
  double a0 = std::max(lo, best - (hi - lo) / kScan);
  double a1 = std::min(hi, best + (hi - lo) / kScan);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 40; ++it) {
    const double m1 = a1 - phi * (a1 - a0);
    const double m2 = a0 + phi * (a1 - a0);
    if (misfit(m1) < misfit(m2)) {
      a1 = m2;
    } else {
      a0 = m1;
    }
  }
  return 0.5 * (a0 + a1);
}

LfdEstimate lfd_at(const FunctionSpec& spec, double y, FracOrder q, Side side,
                   const WindowSchedule& schedule, const Thresholds& th) {
  th.validate();
  if (!(q.value() > 0.0)) throw ValidationError("LFD order must be > 0");
  if (q.is_integer()) return integer_order_lfd(spec, y, q.ceil_order(), side);

  const int n = q.ceil_order();
  if (n > th.max_taylor_degree + 1) {
    throw ValidationError("LFD order exceeds the supported Taylor degree cap");
  }
  const Regularity reg = regularity_at(spec, y, th.max_taylor_degree);
  const int degree = std::min(reg.taylor_degree, n - 1);
  const auto windows = sample_windows(residual_sampler(spec, y, side, degree), schedule);
  auto e = classify_lfd(windows, q, side, th, ZeroRule::AllWindows);
  e.taylor_degree = degree;
  return e;
}

ScalingDiagnostics scale_exponent(const FunctionSpec& spec, double y, FracOrder q, Side side,
                                  const WindowSchedule& schedule, const Thresholds& th) {
  th.validate();
  if (!(q.value() > 0.0) || q.is_integer()) {
    throw ValidationError("scale exponent needs a positive non-integer order");
  }
  const int n = q.ceil_order();
  if (n > th.max_taylor_degree + 1) {
    throw ValidationError("order exceeds the supported Taylor degree cap");
  }
  const Regularity reg = regularity_at(spec, y, th.max_taylor_degree);
  const int degree = std::min(reg.taylor_degree, n - 1);
  const auto windows = sample_windows(residual_sampler(spec, y, side, degree), schedule);
  return scaling_diagnostics(windows, q, th);
}

CriticalOrderEstimate critical_order(const FunctionSpec& spec, double y, Side side,
                                     const WindowSchedule& schedule,
                                     std::span<const double> probe_offsets, const Thresholds& th) {
  th.validate();
  const Regularity reg = regularity_at(spec, y, th.max_taylor_degree);
  if (reg.smooth) {
    CriticalOrderEstimate est;
    est.taylor_degree = reg.taylor_degree;
    return est;
  }
  const auto windows =
      sample_windows(residual_sampler(spec, y, side, reg.taylor_degree), schedule);
  return critical_order_from_windows(windows, reg.taylor_degree, probe_offsets, th,
                                     ZeroRule::AllWindows);
}

CriticalOrderEstimate critical_order(const FunctionSpec& spec, double y, Side side,
                                     const WindowSchedule& schedule, const Thresholds& th) {
  const auto probes = default_probe_offsets();
  return critical_order(spec, y, side, schedule, probes, th);
}

}  // namespace lfdkit
