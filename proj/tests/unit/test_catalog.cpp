#include <doctest.h>

#include <cmath>
#include <random>

#include "lfdkit/catalog.hpp"
#include "lfdkit/errors.hpp"

using namespace lfdkit;

TEST_CASE("truncation depth matches the tail-bound iteration") {
  // Frozen from tests/oracles/generate.py.
  CHECK(truncation_depth(WeierstrassParams(2, 1.5, 1e-12)) == 83);
  CHECK(truncation_depth(WeierstrassParams(4, 1.5, 1e-12)) == 40);
  CHECK(truncation_depth(WeierstrassParams(2, 1.25, 1e-12)) == 54);
  CHECK(truncation_depth(WeierstrassParams(4, 1.75, 1e-12)) == 83);
  CHECK(truncation_depth(WeierstrassParams(2, 1.5, 10.0)) == 1);
}

TEST_CASE("Weierstrass parameters are range-checked") {
  CHECK_THROWS_AS(WeierstrassParams(1.0, 1.5), ValidationError);
  CHECK_THROWS_AS(WeierstrassParams(2.0, 1.0), ValidationError);
  CHECK_THROWS_AS(WeierstrassParams(2.0, 2.0), ValidationError);
  CHECK_THROWS_AS(WeierstrassParams(2.0, 1.5, 0.0), ValidationError);
}

TEST_CASE("cusp parameters are range-checked") {
  CHECK_THROWS_AS(FunctionSpec::holder_cusp(0, 0, 1, 0.0), ValidationError);
  CHECK_THROWS_AS(FunctionSpec::holder_cusp(0, 0, 1, 2.0), ValidationError);
  CHECK_THROWS_AS(FunctionSpec::holder_cusp(0, 0, 0, 0.5), ValidationError);
  CHECK_THROWS_AS(FunctionSpec::polynomial({}), ValidationError);
}

TEST_CASE("one-variable evaluation") {
  const auto w = FunctionSpec::weierstrass_1d(WeierstrassParams(2, 1.5));
  CHECK(eval_1d(w, 0.0) == 0.0);
  CHECK(eval_1d(FunctionSpec::holder_cusp(1, 2, 3, 0.5), 4.0) == doctest::Approx(15.0).epsilon(1e-15));
  CHECK(eval_1d(FunctionSpec::holder_cusp(1, 2, 3, 0.5), -4.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(eval_1d(FunctionSpec::polynomial({1, -2, 3}), 2.0) == 9.0);
  CHECK(eval_1d(FunctionSpec::constant(4.5), -7.0) == 4.5);
  CHECK(eval_1d(FunctionSpec::sine(2.0, 3.0, 0.5), 0.1) == doctest::Approx(2.0 * std::sin(0.8)));
  CHECK_THROWS_AS(eval_1d(FunctionSpec::weierstrass_sum_2d(WeierstrassParams(2, 1.5)), 0.1),
                  ValidationError);
  CHECK_THROWS_AS(eval_2d(w, 0.1, 0.2), ValidationError);
}

TEST_CASE("Weierstrass is odd term by term") {
  const auto w = FunctionSpec::weierstrass_1d(WeierstrassParams(2, 1.5));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double t = u(rng);
    CHECK(eval_1d(w, -t) == -eval_1d(w, t));
  }
}

TEST_CASE("truncation consistency at random arguments") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (auto [lambda, s] : {std::pair{2.0, 1.5}, std::pair{2.0, 1.25}, std::pair{4.0, 1.75}}) {
    const double eps = 1e-6;
    const auto coarse = FunctionSpec::weierstrass_1d(WeierstrassParams(lambda, s, eps));
    const auto fine = FunctionSpec::weierstrass_1d(WeierstrassParams(lambda, s, eps / 100));
    for (int i = 0; i < 100; ++i) {
      const double t = u(rng);
      CHECK(std::abs(eval_1d(coarse, t) - eval_1d(fine, t)) <= eps);
    }
  }
}

TEST_CASE("two-variable reductions") {
  const WeierstrassParams p(2, 1.5);
  const auto w = FunctionSpec::weierstrass_1d(p);
  const auto sum = FunctionSpec::weierstrass_sum_2d(p);
  const auto prod = FunctionSpec::weierstrass_prod_2d(p);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    CHECK(eval_2d(sum, x, -x) == 0.0);
    CHECK(eval_2d(prod, x, 0.0) == 0.0);
    CHECK(std::abs(eval_2d(sum, x, y) - eval_1d(w, x + y)) <= 2 * p.tol());
    CHECK(std::abs(eval_2d(prod, x, y) - eval_1d(w, x * y)) <= 2 * p.tol());
  }
}

TEST_CASE("line evaluation is exact along degenerate directions") {
  const WeierstrassParams p(2, 1.5);
  const auto sum = FunctionSpec::weierstrass_sum_2d(p);
  const auto prod = FunctionSpec::weierstrass_prod_2d(p);
  const double d = std::sqrt(0.5);
  for (double t : {1e-6, 1e-3, 0.05, 0.1}) {
    CHECK(eval_on_line(sum, {1.0, 0.0}, {d, -d}, t) == eval_on_line(sum, {1.0, 0.0}, {d, -d}, 0.0));
    CHECK(eval_on_line(prod, {1.0, 0.0}, {1.0, 0.0}, t) == 0.0);
    // Same rounded argument on both routes; other splits differ by the
    // rounding of the argument times the series' Lipschitz blow-up.
    CHECK(eval_on_line(sum, {0.5, 0.0}, {1.0, 0.0}, t) == eval_2d(sum, 0.5 + t, 0.0));
  }
}

TEST_CASE("analytic derivatives") {
  const auto cusp15 = FunctionSpec::holder_cusp(1, 2, 3, 1.5);
  CHECK(analytic_derivative(cusp15, 1, 0.0) == 2.0);
  CHECK_FALSE(analytic_derivative(cusp15, 2, 0.0).has_value());
  const auto cusp25 = FunctionSpec::holder_cusp(1, 2, 3, 2.5);
  CHECK(analytic_derivative(cusp25, 2, 0.0) == 0.0);
  CHECK_FALSE(analytic_derivative(cusp25, 3, 0.0).has_value());
  CHECK_FALSE(analytic_derivative(FunctionSpec::holder_cusp(1, 2, 3, 0.5), 1, 0.0).has_value());
  // Away from the origin the cusp is smooth: d/dx (2x + 3 x^1.5) at x = 4 is 2 + 4.5 * 2.
  CHECK(*analytic_derivative(cusp15, 1, 4.0) == doctest::Approx(11.0));
  CHECK(*analytic_derivative(cusp15, 1, -4.0) == doctest::Approx(2.0 - 9.0));

  const auto w = FunctionSpec::weierstrass_1d(WeierstrassParams(2, 1.5));
  CHECK_FALSE(analytic_derivative(w, 1, 0.3).has_value());

  const auto poly = FunctionSpec::polynomial({1, -2, 3, 4});
  CHECK(*analytic_derivative(poly, 1, 2.0) == -2 + 12 + 48);
  CHECK(*analytic_derivative(poly, 3, 2.0) == 24);
  CHECK(*analytic_derivative(poly, 4, 2.0) == 0);

  const auto sine = FunctionSpec::sine(2.0, 3.0, 0.5);
  CHECK(*analytic_derivative(sine, 1, 0.1) == doctest::Approx(6.0 * std::cos(0.8)));
  CHECK(*analytic_derivative(sine, 2, 0.1) == doctest::Approx(-18.0 * std::sin(0.8)));
  CHECK(*analytic_derivative(FunctionSpec::constant(3.0), 2, 1.0) == 0.0);
  CHECK_THROWS_AS(analytic_derivative(sine, 0, 0.1), ValidationError);
}

TEST_CASE("JSON round trip for every kind") {
  const WeierstrassParams p(2, 1.5, 1e-10);
  const FunctionSpec specs[] = {
      FunctionSpec::weierstrass_1d(p),         FunctionSpec::weierstrass_sum_2d(p),
      FunctionSpec::weierstrass_prod_2d(p),    FunctionSpec::holder_cusp(1, 2, 3, 0.5),
      FunctionSpec::polynomial({1, 0, -1}),    FunctionSpec::sine(1.5, 2.0, 0.25),
      FunctionSpec::constant(-2.0)};
  CHECK(std::size(specs) == all_kinds().size());
  for (const auto& s : specs) {
    const auto j = to_json(s);
    const auto back = function_from_json(j);
    CHECK(back.kind() == s.kind());
    CHECK(to_json(back) == j);
    CHECK(j.at("arity").get<int>() == s.arity());
    CHECK(param_schema(s.kind()).is_object());
  }
}

TEST_CASE("malformed function specs are validation errors") {
  using nlohmann::json;
  CHECK_THROWS_AS(function_from_json(json::array()), ValidationError);
  CHECK_THROWS_AS(function_from_json(json{{"kind", "Unknown"}}), ValidationError);
  CHECK_THROWS_AS(function_from_json(json{{"kind", "Weierstrass1D"}, {"params", {{"s", 1.5}}}}),
                  ValidationError);
  CHECK_THROWS_AS(function_from_json(json{{"kind", "Weierstrass1D"},
                                          {"params", {{"lambda", 2}, {"s", 1.5}}},
                                          {"arity", 2}}),
                  ValidationError);
  CHECK_THROWS_AS(function_from_json(json{{"kind", "HolderCusp"}, {"params", {{"c", "x"}, {"gamma", 0.5}}}}),
                  ValidationError);
  CHECK_THROWS_AS(parse_kind("weierstrass"), ValidationError);
}
