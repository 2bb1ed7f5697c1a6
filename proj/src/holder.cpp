#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lfdkit/engine.hpp"

namespace lfdkit {

namespace {

// Deficit below n + 1 that counts as "the residual decays slower than the
// next Taylor term", i.e. f is not C^{n+1}-like at y.
constexpr double kOrderMargin = 0.1;

struct WindowResidual {
  double delta;
  double oscillation;
  double floor;
};

// Least-squares fit of f(y + t) - f(y) by c_1 u + ... + c_n u^n, u = t / delta,
// on the two-sided grid; returns max - min of the residual.
WindowResidual fit_window(const FunctionSpec& spec, double y, double delta, int samples, int n,
                          double zero_floor_scale) {
  const int rows = 2 * samples + 1;
  const double fy = eval_1d(spec, y);
  Eigen::VectorXd g(rows);
  Eigen::MatrixXd basis(rows, std::max(n, 1));
  double scale = std::abs(fy);
  for (int i = 0; i < rows; ++i) {
    const double u = static_cast<double>(i - samples) / samples;
    const double fx = eval_1d(spec, y + u * delta);
    scale = std::max(scale, std::abs(fx));
    g(i) = fx - fy;
    double p = 1.0;
    for (int k = 0; k < n; ++k) {
      p *= u;
      basis(i, k) = p;
    }
  }
  Eigen::VectorXd residual = g;
  if (n > 0) {
    const Eigen::MatrixXd a = basis.leftCols(n);
    const Eigen::VectorXd c = a.colPivHouseholderQr().solve(g);
    residual = g - a * c;
  }
  return {delta, residual.maxCoeff() - residual.minCoeff(), zero_floor_scale * scale};
}

}  // namespace

HolderEstimate holder_exponent_oracle(const FunctionSpec& spec, double y,
                                      const WindowSchedule& schedule, const Thresholds& th) {
  th.validate();
  HolderEstimate est;
  for (int n = 0; n <= th.max_taylor_degree; ++n) {
    std::vector<double> log_delta;
    std::vector<double> log_osc;
    for (double delta : schedule.windows()) {
      const auto w = fit_window(spec, y, delta, schedule.samples(), n, th.zero_floor_scale);
      if (w.oscillation > w.floor * 1e3) {
        log_delta.push_back(std::log(w.delta));
        log_osc.push_back(std::log(w.oscillation));
      }
    }
    // The residual vanishes to rounding: f is a polynomial of degree <= n here.
    if (log_delta.size() < 3) return est;

    const double k = static_cast<double>(log_delta.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < log_delta.size(); ++i) {
      mx += log_delta[i];
      my += log_osc[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < log_delta.size(); ++i) {
      sxx += (log_delta[i] - mx) * (log_delta[i] - mx);
      sxy += (log_delta[i] - mx) * (log_osc[i] - my);
      syy += (log_osc[i] - my) * (log_osc[i] - my);
    }
    const double slope = sxy / sxx;
    if (slope < n + 1 - kOrderMargin) {
      est.h = slope;
      est.infinite = false;
      est.poly_order = n;
      est.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
      return est;
    }
  }
  return est;
}

}  // namespace lfdkit
