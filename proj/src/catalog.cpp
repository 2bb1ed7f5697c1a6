#include "lfdkit/catalog.hpp"

#include <cmath>
#include <numbers>

#include "lfdkit/errors.hpp"

namespace lfdkit {

namespace {

constexpr std::array<FunctionKind, 7> kKinds = {
    FunctionKind::Weierstrass1D, FunctionKind::WeierstrassSum2D, FunctionKind::WeierstrassProd2D,
    FunctionKind::HolderCusp,    FunctionKind::Polynomial,       FunctionKind::Sine,
    FunctionKind::Constant,
};

bool is_weierstrass(FunctionKind k) {
  return k == FunctionKind::Weierstrass1D || k == FunctionKind::WeierstrassSum2D ||
         k == FunctionKind::WeierstrassProd2D;
}

void require_arity(const FunctionSpec& spec, int arity) {
  if (spec.arity() != arity) {
    throw ValidationError(std::string(kind_name(spec.kind())) + " has arity " +
                          std::to_string(spec.arity()) + ", expected " + std::to_string(arity));
  }
}

double eval_cusp(const CuspParams& p, double t) {
  return p.a + p.b * t + p.c * std::pow(std::abs(t), p.gamma);
}

double eval_poly(const PolynomialParams& p, double t) {
  double acc = 0.0;
  for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) acc = acc * t + *it;
  return acc;
}

// gamma (gamma - 1) ... (gamma - n + 1)
double falling_factorial(double gamma, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= gamma - i;
  return r;
}

double require_number(const nlohmann::json& params, const char* key) {
  if (!params.contains(key) || !params.at(key).is_number()) {
    throw ValidationError(std::string("missing numeric parameter '") + key + "'");
  }
  return params.at(key).get<double>();
}

double number_or(const nlohmann::json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  if (!params.at(key).is_number()) {
    throw ValidationError(std::string("parameter '") + key + "' must be a number");
  }
  return params.at(key).get<double>();
}

}  // namespace

std::span<const FunctionKind> all_kinds() { return kKinds; }

std::string_view kind_name(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::Weierstrass1D: return "Weierstrass1D";
    case FunctionKind::WeierstrassSum2D: return "WeierstrassSum2D";
    case FunctionKind::WeierstrassProd2D: return "WeierstrassProd2D";
    case FunctionKind::HolderCusp: return "HolderCusp";
    case FunctionKind::Polynomial: return "Polynomial";
    case FunctionKind::Sine: return "Sine";
    case FunctionKind::Constant: return "Constant";
  }
  return "?";
}

FunctionKind parse_kind(std::string_view name) {
  for (auto k : kKinds) {
    if (kind_name(k) == name) return k;
  }
  throw ValidationError("unknown function kind '" + std::string(name) + "'");
}

WeierstrassParams::WeierstrassParams(double lambda, double s, double tol)
    : lambda_(lambda), s_(s), tol_(tol) {
  if (!(lambda > 1.0)) throw ValidationError("Weierstrass lambda must be > 1");
  if (!(s > 1.0 && s < 2.0)) throw ValidationError("Weierstrass s must lie in (1, 2)");
  if (!(tol > 0.0)) throw ValidationError("Weierstrass tol must be > 0");

  const double ratio = std::pow(lambda, s - 2.0);
  int depth = 1;
  while (std::pow(ratio, depth + 1) / (1.0 - ratio) > tol) ++depth;

  amplitudes_.reserve(depth);
  frequencies_.reserve(depth);
  for (int k = 1; k <= depth; ++k) {
    amplitudes_.push_back(std::pow(lambda, (s - 2.0) * k));
    frequencies_.push_back(std::pow(lambda, k));
  }
}

double WeierstrassParams::sum(double arg) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
    acc += amplitudes_[k] * std::sin(frequencies_[k] * arg);
  }
  return acc;
}

int truncation_depth(const WeierstrassParams& p) { return p.depth(); }

FunctionSpec FunctionSpec::weierstrass_1d(WeierstrassParams p) {
  return {FunctionKind::Weierstrass1D, std::move(p)};
}
FunctionSpec FunctionSpec::weierstrass_sum_2d(WeierstrassParams p) {
  return {FunctionKind::WeierstrassSum2D, std::move(p)};
}
FunctionSpec FunctionSpec::weierstrass_prod_2d(WeierstrassParams p) {
  return {FunctionKind::WeierstrassProd2D, std::move(p)};
}

FunctionSpec FunctionSpec::holder_cusp(double a, double b, double c, double gamma) {
  if (!(gamma > 0.0)) throw ValidationError("HolderCusp gamma must be > 0");
  if (gamma == std::floor(gamma)) throw ValidationError("HolderCusp gamma must not be an integer");
  if (c == 0.0) throw ValidationError("HolderCusp c must be nonzero");
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw ValidationError("HolderCusp coefficients must be finite");
  }
  return {FunctionKind::HolderCusp, CuspParams{a, b, c, gamma}};
}

FunctionSpec FunctionSpec::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) throw ValidationError("Polynomial needs at least one coefficient");
  return {FunctionKind::Polynomial, PolynomialParams{std::move(coefficients)}};
}

FunctionSpec FunctionSpec::sine(double amplitude, double omega, double phase) {
  if (!std::isfinite(amplitude) || !std::isfinite(omega) || !std::isfinite(phase)) {
    throw ValidationError("Sine parameters must be finite");
  }
  return {FunctionKind::Sine, SineParams{amplitude, omega, phase}};
}

FunctionSpec FunctionSpec::constant(double value) {
  if (!std::isfinite(value)) throw ValidationError("Constant value must be finite");
  return {FunctionKind::Constant, ConstantParams{value}};
}

int FunctionSpec::arity() const {
  return (kind_ == FunctionKind::WeierstrassSum2D || kind_ == FunctionKind::WeierstrassProd2D) ? 2
                                                                                               : 1;
}

double eval_1d(const FunctionSpec& spec, double t) {
  require_arity(spec, 1);
  switch (spec.kind()) {
    case FunctionKind::Weierstrass1D:
      return std::get<WeierstrassParams>(spec.params()).sum(t);
    case FunctionKind::HolderCusp:
      return eval_cusp(std::get<CuspParams>(spec.params()), t);
    case FunctionKind::Polynomial:
      return eval_poly(std::get<PolynomialParams>(spec.params()), t);
    case FunctionKind::Sine: {
      const auto& p = std::get<SineParams>(spec.params());
      return p.amplitude * std::sin(p.omega * t + p.phase);
    }
    case FunctionKind::Constant:
      return std::get<ConstantParams>(spec.params()).value;
    default:
      break;
  }
  throw ValidationError("unsupported 1D kind");
}

double eval_2d(const FunctionSpec& spec, double x, double y) {
  require_arity(spec, 2);
  const auto& p = std::get<WeierstrassParams>(spec.params());
  return spec.kind() == FunctionKind::WeierstrassSum2D ? p.sum(x + y) : p.sum(x * y);
}

double eval_on_line(const FunctionSpec& spec, Point2 base, Point2 dir, double t) {
  require_arity(spec, 2);
  const auto& p = std::get<WeierstrassParams>(spec.params());
  if (spec.kind() == FunctionKind::WeierstrassSum2D) {
    return p.sum((base.x + base.y) + (dir.x + dir.y) * t);
  }
  // (x + vx t)(y + vy t) = xy + (x vy + y vx) t + vx vy t^2
  const double linear = base.x * dir.y + base.y * dir.x;
  const double quadratic = dir.x * dir.y;
  return p.sum(base.x * base.y + (linear + quadratic * t) * t);
}

std::optional<double> analytic_derivative(const FunctionSpec& spec, int order, double point) {
  require_arity(spec, 1);
  if (order < 1) throw ValidationError("derivative order must be >= 1");

  switch (spec.kind()) {
    case FunctionKind::Weierstrass1D:
      return std::nullopt;
    case FunctionKind::Constant:
      return 0.0;
    case FunctionKind::Sine: {
      const auto& p = std::get<SineParams>(spec.params());
      return p.amplitude * std::pow(p.omega, order) *
             std::sin(p.omega * point + p.phase + order * std::numbers::pi / 2.0);
    }
    case FunctionKind::Polynomial: {
      const auto& c = std::get<PolynomialParams>(spec.params()).coefficients;
      double acc = 0.0;
      for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(order);) {
        acc = acc * point + c[k] * falling_factorial(static_cast<double>(k), order);
      }
      return acc;
    }
    case FunctionKind::HolderCusp: {
      const auto& p = std::get<CuspParams>(spec.params());
      const double smooth = order == 1 ? p.b : 0.0;
      if (point == 0.0) {
        // c|x|^gamma has a vanishing n-th derivative at 0 for n < gamma, none otherwise.
        if (order < p.gamma) return smooth;
        return std::nullopt;
      }
      const double sign = point > 0.0 ? 1.0 : ((order % 2 == 0) ? 1.0 : -1.0);
      return smooth + p.c * falling_factorial(p.gamma, order) *
                          std::pow(std::abs(point), p.gamma - order) * sign;
    }
    default:
      break;
  }
  return std::nullopt;
}

nlohmann::json to_json(const FunctionSpec& spec) {
  nlohmann::json params = nlohmann::json::object();
  std::visit(
      [&params](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, WeierstrassParams>) {
          params = {{"lambda", p.lambda()}, {"s", p.s()}, {"tol", p.tol()}};
        } else if constexpr (std::is_same_v<T, CuspParams>) {
          params = {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"gamma", p.gamma}};
        } else if constexpr (std::is_same_v<T, SineParams>) {
          params = {{"amplitude", p.amplitude}, {"omega", p.omega}, {"phase", p.phase}};
        } else if constexpr (std::is_same_v<T, PolynomialParams>) {
          params = {{"coefficients", p.coefficients}};
        } else {
          params = {{"value", p.value}};
        }
      },
      spec.params());
  return {{"kind", std::string(kind_name(spec.kind()))}, {"params", params}, {"arity", spec.arity()}};
}

FunctionSpec function_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("function spec must be a JSON object");
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw ValidationError("function spec needs a string 'kind'");
  }
  const FunctionKind kind = parse_kind(j.at("kind").get<std::string>());
  const nlohmann::json params = j.value("params", nlohmann::json::object());
  if (!params.is_object()) throw ValidationError("'params' must be an object");

  FunctionSpec spec = [&]() -> FunctionSpec {
    if (is_weierstrass(kind)) {
      WeierstrassParams p(require_number(params, "lambda"), require_number(params, "s"),
                          number_or(params, "tol", 1e-12));
      if (kind == FunctionKind::Weierstrass1D) return FunctionSpec::weierstrass_1d(std::move(p));
      if (kind == FunctionKind::WeierstrassSum2D) {
        return FunctionSpec::weierstrass_sum_2d(std::move(p));
      }
      return FunctionSpec::weierstrass_prod_2d(std::move(p));
    }
    switch (kind) {
      case FunctionKind::HolderCusp:
        return FunctionSpec::holder_cusp(number_or(params, "a", 0.0), number_or(params, "b", 0.0),
                                         require_number(params, "c"),
                                         require_number(params, "gamma"));
      case FunctionKind::Polynomial: {
        if (!params.contains("coefficients") || !params.at("coefficients").is_array()) {
          throw ValidationError("Polynomial needs a 'coefficients' array");
        }
        std::vector<double> c;
        for (const auto& v : params.at("coefficients")) {
          if (!v.is_number()) throw ValidationError("Polynomial coefficients must be numbers");
          c.push_back(v.get<double>());
        }
        return FunctionSpec::polynomial(std::move(c));
      }
      case FunctionKind::Sine:
        return FunctionSpec::sine(number_or(params, "amplitude", 1.0),
                                  number_or(params, "omega", 1.0), number_or(params, "phase", 0.0));
      default:
        return FunctionSpec::constant(require_number(params, "value"));
    }
  }();

  if (j.contains("arity")) {
    if (!j.at("arity").is_number_integer() || j.at("arity").get<int>() != spec.arity()) {
      throw ValidationError("'arity' does not match kind " + std::string(kind_name(kind)));
    }
  }
  return spec;
}

nlohmann::json param_schema(FunctionKind kind) {
  using nlohmann::json;
  auto field = [](const char* type, const char* doc, bool required) {
    return json{{"type", type}, {"description", doc}, {"required", required}};
  };
  json schema;
  switch (kind) {
    case FunctionKind::Weierstrass1D:
    case FunctionKind::WeierstrassSum2D:
    case FunctionKind::WeierstrassProd2D:
      schema = {{"lambda", field("number", "scale factor, > 1", true)},
                {"s", field("number", "box-dimension parameter, 1 < s < 2", true)},
                {"tol", field("number", "series truncation tolerance, default 1e-12", false)}};
      break;
    case FunctionKind::HolderCusp:
      schema = {{"a", field("number", "constant term, default 0", false)},
                {"b", field("number", "linear coefficient, default 0", false)},
                {"c", field("number", "cusp coefficient, nonzero", true)},
                {"gamma", field("number", "cusp exponent, > 0 and non-integer", true)}};
      break;
    case FunctionKind::Polynomial:
      schema = {{"coefficients", field("array", "c0, c1, ..., cd (ascending powers)", true)}};
      break;
    case FunctionKind::Sine:
      schema = {{"amplitude", field("number", "default 1", false)},
                {"omega", field("number", "angular frequency, default 1", false)},
                {"phase", field("number", "default 0", false)}};
      break;
    case FunctionKind::Constant:
      schema = {{"value", field("number", "constant value", true)}};
      break;
  }
  const int arity =
      (kind == FunctionKind::WeierstrassSum2D || kind == FunctionKind::WeierstrassProd2D) ? 2 : 1;
  return {{"kind", std::string(kind_name(kind))}, {"arity", arity}, {"params", schema}};
}

}  // namespace lfdkit
