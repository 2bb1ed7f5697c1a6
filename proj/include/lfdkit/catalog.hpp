#pragma once

// Closed-form test functions: lacunary Weierstrass series in one and two
// variables, Hölder cusps a + b x + c|x|^gamma, and smooth reference kinds.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace lfdkit {

enum class FunctionKind {
  Weierstrass1D,
  WeierstrassSum2D,
  WeierstrassProd2D,
  HolderCusp,
  Polynomial,
  Sine,
  Constant,
};

std::span<const FunctionKind> all_kinds();
std::string_view kind_name(FunctionKind kind);
/// Throws ValidationError for unknown names.
FunctionKind parse_kind(std::string_view name);

/// Parameters of sum_{k>=1} lambda^((s-2)k) sin(lambda^k t), truncated so that
/// the discarded geometric tail is bounded by `tol`.
class WeierstrassParams {
 public:
  WeierstrassParams(double lambda, double s, double tol = 1e-12);

  double lambda() const { return lambda_; }
  double s() const { return s_; }
  double tol() const { return tol_; }
  int depth() const { return static_cast<int>(amplitudes_.size()); }

  /// Truncated series at `arg`.
  double sum(double arg) const;

 private:
  double lambda_;
  double s_;
  double tol_;
  std::vector<double> amplitudes_;
  std::vector<double> frequencies_;
};

/// Smallest K >= 1 whose discarded tail lambda^((s-2)(K+1)) / (1 - lambda^(s-2))
/// does not exceed tol.
int truncation_depth(const WeierstrassParams& p);

struct CuspParams {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double gamma = 0.5;
};

/// A sin(omega x + phase).
struct SineParams {
  double amplitude = 1.0;
  double omega = 1.0;
  double phase = 0.0;
};

/// c_0 + c_1 x + ... + c_d x^d.
struct PolynomialParams {
  std::vector<double> coefficients;
};

struct ConstantParams {
  double value = 0.0;
};

using FunctionParams =
    std::variant<WeierstrassParams, CuspParams, SineParams, PolynomialParams, ConstantParams>;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Immutable catalog entry. Use the named constructors; they validate.
class FunctionSpec {
 public:
  static FunctionSpec weierstrass_1d(WeierstrassParams p);
  static FunctionSpec weierstrass_sum_2d(WeierstrassParams p);
  static FunctionSpec weierstrass_prod_2d(WeierstrassParams p);
  static FunctionSpec holder_cusp(double a, double b, double c, double gamma);
  static FunctionSpec polynomial(std::vector<double> coefficients);
  static FunctionSpec sine(double amplitude = 1.0, double omega = 1.0, double phase = 0.0);
  static FunctionSpec constant(double value);

  FunctionKind kind() const { return kind_; }
  int arity() const;
  const FunctionParams& params() const { return params_; }

 private:
  FunctionSpec(FunctionKind kind, FunctionParams params)
      : kind_(kind), params_(std::move(params)) {}

  FunctionKind kind_;
  FunctionParams params_;
};

/// Throws ValidationError on arity mismatch.
double eval_1d(const FunctionSpec& spec, double t);
double eval_2d(const FunctionSpec& spec, double x, double y);

/// f(base + dir * t) for an arity-2 spec. The series argument is expanded in t
/// before evaluation, so a direction along which the argument is constant
/// yields exactly f(base).
double eval_on_line(const FunctionSpec& spec, Point2 base, Point2 dir, double t);

/// Exact n-th derivative (n >= 1) of an arity-1 spec where one exists;
/// std::nullopt where no finite n-th derivative exists at `point`.
std::optional<double> analytic_derivative(const FunctionSpec& spec, int order, double point);

// JSON form: {"kind": string, "params": object, "arity": int}.
nlohmann::json to_json(const FunctionSpec& spec);
FunctionSpec function_from_json(const nlohmann::json& j);
/// Parameter schema for `catalog --kind`.
nlohmann::json param_schema(FunctionKind kind);

}  // namespace lfdkit
