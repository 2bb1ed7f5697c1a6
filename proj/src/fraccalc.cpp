#include "lfdkit/fraccalc.hpp"

#include <algorithm>
#include <cmath>

#include "lfdkit/errors.hpp"
#include "lfdkit/kernels.hpp"

namespace lfdkit {

namespace {

constexpr int kMaxDerivativeOrder = 5;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

void check_index(const SampledPath& g, std::size_t at_index) {
  if (at_index < 1 || at_index > g.last_index()) {
    throw ValidationError("evaluation index must lie in [1, M]");
  }
}

// h^(-beta) / Gamma(2 - beta) * S_N
double l1_scale(double beta, double h) { return std::pow(h, -beta) / std::tgamma(2.0 - beta); }

}  // namespace

FracOrder::FracOrder(double q) : q_(q) {
  if (!std::isfinite(q)) throw ValidationError("fractional order must be finite");
}

bool FracOrder::is_integer() const { return q_ == std::floor(q_); }

int FracOrder::ceil_order() const { return static_cast<int>(std::ceil(q_)); }

SampledPath::SampledPath(double h, std::vector<double> values) : h_(h), values_(std::move(values)) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("grid step must be > 0");
  if (values_.size() < 3) throw ValidationError("sampled path needs M >= 2");
  const double base = values_.front();
  for (auto& v : values_) v -= base;
}

double gamma_value(double x) {
  if (is_nonpositive_integer(x)) throw ValidationError("Gamma has a pole at non-positive integers");
  return std::tgamma(x);
}

double power_law_rl_derivative(double p, double q, double x) {
  if (!(p > -1.0)) throw ValidationError("power-law exponent must be > -1");
  if (!(x > 0.0)) throw ValidationError("evaluation point must be > 0");
  const double denom_arg = p - q + 1.0;
  if (is_nonpositive_integer(denom_arg)) return 0.0;
  return std::tgamma(p + 1.0) / std::tgamma(denom_arg) * std::pow(x, p - q);
}

double rl_frac_integral(const SampledPath& g, FracOrder q, std::size_t at_index) {
  if (!(q.value() < 0.0)) throw ValidationError("fractional integral needs q < 0");
  check_index(g, at_index);
  const double a = -q.value();
  const double n = static_cast<double>(at_index);
  const double e = a + 1.0;

  // Product trapezoidal weights for the node t_N = N h.
  double acc = (std::pow(n - 1.0, e) - (n - 1.0 - a) * std::pow(n, a)) * g[0];
  for (std::size_t j = 1; j < at_index; ++j) {
    const double r = static_cast<double>(at_index - j);
    acc += (std::pow(r + 1.0, e) + std::pow(r - 1.0, e) - 2.0 * std::pow(r, e)) * g[j];
  }
  acc += g[at_index];
  return std::pow(g.step(), a) / std::tgamma(a + 2.0) * acc;
}

double rl_frac_derivative(const SampledPath& g, FracOrder q, std::size_t at_index) {
  if (!(q.value() > 0.0 && q.value() < 1.0)) {
    throw ValidationError("L1 derivative needs 0 < q < 1");
  }
  check_index(g, at_index);
  const auto w = kernels::l1_weights(q.value(), at_index);
  return l1_scale(q.value(), g.step()) * kernels::serial::l1_point(g.values(), w, at_index);
}

std::vector<double> finite_difference_weights(int order, double x0,
                                              std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  if (order < 0 || n < static_cast<std::size_t>(order) + 1) {
    throw ValidationError("stencil too small for derivative order");
  }
  const auto m = static_cast<std::size_t>(order);
  // c[i][k]: weight of node i for the k-th derivative.
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k > 0; --k) {
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k > 0; --k) {
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = c[i][m];
  return out;
}

std::vector<double> derivative_at_nodes(std::span<const double> g, double h, int order,
                                        std::size_t last) {
  if (order < 1 || order > kMaxDerivativeOrder) {
    throw ValidationError("derivative order out of range");
  }
  const auto m = static_cast<std::size_t>(order);
  if (last >= g.size() || last < m + 1) {
    throw ValidationError("path too short for derivative stencil");
  }
  const std::size_t r = (m + 1) / 2;
  const double scale = std::pow(h, -order);

  std::vector<double> out(last + 1, 0.0);
  std::vector<double> nodes;
  std::vector<double> central;
  for (std::size_t k = 1; k <= last; ++k) {
    std::size_t lo = 0;
    std::size_t hi = 0;
    const bool interior = k >= r && k + r <= last;
    if (interior) {
      lo = k - r;
      hi = k + r;
    } else if (k < r) {
      lo = 0;
      hi = m + 1;
    } else {
      lo = last - m - 1;
      hi = last;
    }
    std::vector<double> local;
    const std::vector<double>* w = nullptr;
    if (interior && !central.empty()) {
      w = &central;
    } else {
      nodes.clear();
      for (std::size_t i = lo; i <= hi; ++i) nodes.push_back(static_cast<double>(i));
      local = finite_difference_weights(order, static_cast<double>(k), nodes);
      if (interior) {
        central = std::move(local);
        w = &central;
      } else {
        w = &local;
      }
    }
    double acc = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) acc += (*w)[i - lo] * g[i];
    out[k] = acc * scale;
  }
  return out;
}

double rl_frac_derivative_general(const SampledPath& g, FracOrder q, std::size_t at_index) {
  if (!(q.value() > 0.0)) throw ValidationError("fractional derivative needs q > 0");
  check_index(g, at_index);
  const int n = q.ceil_order();
  if (n > kMaxDerivativeOrder) throw ValidationError("derivative order above 5 is not supported");

  if (q.is_integer()) {
    const auto m = static_cast<std::size_t>(n);
    if (at_index < m + 1) throw ValidationError("path too short for derivative stencil");
    std::vector<double> nodes;
    for (std::size_t i = at_index - m - 1; i <= at_index; ++i) {
      nodes.push_back(static_cast<double>(i));
    }
    const auto w = finite_difference_weights(n, static_cast<double>(at_index), nodes);
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * g[at_index - m - 1 + i];
    return acc * std::pow(g.step(), -n);
  }
  if (n == 1) return rl_frac_derivative(g, q, at_index);

  const auto inner = derivative_at_nodes(g.values(), g.step(), n - 1, at_index);
  const double beta = q.value() - (n - 1);
  const auto w = kernels::l1_weights(beta, at_index);
  return l1_scale(beta, g.step()) * kernels::serial::l1_point(inner, w, at_index);
}

std::vector<double> rl_frac_derivative_path(const SampledPath& g, FracOrder q) {
  if (!(q.value() > 0.0) || q.is_integer()) {
    throw ValidationError("path derivative needs a positive non-integer order");
  }
  const int n = q.ceil_order();
  if (n > kMaxDerivativeOrder) throw ValidationError("derivative order above 5 is not supported");
  const std::size_t last = g.last_index();
  const double beta = q.value() - (n - 1);

  std::vector<double> inner;
  std::span<const double> source = g.values();
  if (n > 1) {
    inner = derivative_at_nodes(g.values(), g.step(), n - 1, last);
    source = inner;
  }
  const auto w = kernels::l1_weights(beta, last);
  std::vector<double> out(last + 1);
  kernels::l1_path(source, w, out);
  const double scale = l1_scale(beta, g.step());
  for (auto& v : out) v *= scale;
  return out;
}

ScalingCheckReport scaling_defect(const FunctionSpec& spec, double beta, FracOrder q, double x,
                                  double h) {
  if (!(beta > 0.0)) throw ValidationError("scale factor beta must be > 0");
  if (!(x > 0.0) || !(h > 0.0)) throw ValidationError("x and h must be > 0");
  if (!(q.value() > 0.0 && q.value() < 1.0)) throw ValidationError("scaling check needs 0 < q < 1");
  const auto m = static_cast<std::size_t>(std::llround(x / h));
  if (m < 2) throw ValidationError("x / h must be at least 2");

  std::vector<double> scaled(m + 1);
  std::vector<double> plain(m + 1);
  const double bh = beta * h;
  for (std::size_t j = 0; j <= m; ++j) {
    const double t = static_cast<double>(j) * h;
    scaled[j] = eval_1d(spec, beta * t);
    plain[j] = eval_1d(spec, static_cast<double>(j) * bh);
  }
  ScalingCheckReport r;
  r.beta = beta;
  r.q = q.value();
  r.lhs = rl_frac_derivative(SampledPath(h, std::move(scaled)), q, m);
  r.rhs = std::pow(beta, q.value()) * rl_frac_derivative(SampledPath(bh, std::move(plain)), q, m);
  r.defect = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace lfdkit
