#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "sres/expression.hpp"
#include "sres/operators.hpp"

using namespace sres;
using Catch::Approx;

namespace {

CoefficientField coeffs(const BoxGrid& g, const std::string& a1) {
  return CoefficientField::from_expressions(g, {Expression(a1, 3), Expression("1", 3), Expression("1", 3)});
}

std::size_t center(const BoxGrid& g) {
  const std::vector<int> k{2, 2, 2};
  return g.linear_index(k);
}

double sine_product(std::span<const double> x) {
  return std::sin(std::numbers::pi * x[0]) * std::sin(std::numbers::pi * x[1]) * std::sin(std::numbers::pi * x[2]);
}

}  // namespace

TEST_CASE("T on simple functions", "[operators]") {
  const BoxGrid g = BoxGrid::cube(3, 5);
  const auto c = CoefficientField::constant(g, {1, 1, 1});
  const auto x1 = GridFunction::from_scalar(g, [](std::span<const double> x) { return x[0]; });
  const auto x1e1 = GridFunction::from_scalar(g, [](std::span<const double> x) { return x[0]; }, BasisIndex(1));
  const auto t1 = apply_T(x1, c);
  const auto t2 = apply_T(x1e1, c);
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    CHECK(max_abs_difference(t1.value(k), MultiVector::generator(3, 1)) < 1e-12);
    CHECK(max_abs_difference(t2.value(k), MultiVector::scalar(3, -1.0)) < 1e-12);
  }
}

TEST_CASE("T^2 one-node hand evaluations on 5^3", "[operators]") {
  const BoxGrid g = BoxGrid::cube(3, 5);
  const std::size_t k = center(g);

  // a1 = 1 + x1/4, u = x1^2 at x1 = 1/2, h = 1/4:
  // -a1(1/2) [a1(5/8)(9/16 - 1/4) - a1(3/8)(1/4 - 1/16)] / h^2 = -1.125 * 2.5;
  // the first-order part vanishes since e1 B1 = -a1 d1 a1.
  const auto u = GridFunction::from_scalar(g, [](std::span<const double> x) { return x[0] * x[0]; });
  const auto r = apply_T2(u, coeffs(g, "1 + x1/4"));
  CHECK(r.component(k, BasisIndex{}) == Approx(-2.8125));
  for (std::uint32_t a = 1; a < 8; ++a) CHECK(r.component(k, BasisIndex(a)) == Approx(0.0).margin(1e-12));

  // a1 = 1 + x2/4, u = x1: only -(e1 B1) D1 u = -(1/4) e1 e2 survives.
  const auto v = GridFunction::from_scalar(g, [](std::span<const double> x) { return x[0]; });
  const auto q = apply_T2(v, coeffs(g, "1 + x2/4"));
  CHECK(q.component(k, BasisIndex(0b011u)) == Approx(-0.25));
  CHECK(q.component(k, BasisIndex{}) == Approx(0.0).margin(1e-12));

  // and that is T(Tu) exactly: Tu = e1 (1 + x2/4) is linear
  const auto c = coeffs(g, "1 + x2/4");
  const auto tt = apply_T(apply_T(v, c), c);
  CHECK(max_abs_difference(tt.value(k), q.value(k)) < 1e-12);
}

TEST_CASE("constant coefficients: T^2 = -sum a_i^2 d_i^2", "[operators]") {
  const BoxGrid g = BoxGrid::cube(3, 9);
  const auto c = CoefficientField::constant(g, {1.0, 2.0, 0.5});
  // quadratic u: the second differences are exact
  const auto u = GridFunction::from_scalar(
      g, [](std::span<const double> x) { return x[0] * x[0] + 3 * x[1] * x[1] - x[2] * x[2] + x[0] * x[1]; });
  const auto r = apply_T2(u, c);
  const double want = -(1.0 * 2 + 4.0 * 6 + 0.25 * -2);
  for (std::size_t k : g.interior_nodes()) CHECK(r.component(k, BasisIndex{}) == Approx(want));
}

TEST_CASE("Q_s reduces to T^2 at s = 0 and to the eigen relation on the sine product", "[operators]") {
  const BoxGrid g = BoxGrid::cube(3, 9);
  const auto c = coeffs(g, "1 + x1/4 + x2*x3/5");
  const auto u = GridFunction::from_scalar(g, sine_product, BasisIndex(0b110u));
  const auto q0 = apply_Q_s(u, c, Paravector(0.0, {0, 0, 0}));
  const auto t2 = apply_T2(u, c);
  CHECK(max_abs_difference(q0.value(center(g)), t2.value(center(g))) == 0.0);
  CHECK(interior_l2_norm(q0 - t2) == 0.0);

  const Paravector s(0.5, {1.0, 0.0, 2.0});
  const double lam = 3 * std::numbers::pi * std::numbers::pi + s.norm_squared();
  double prev = INFINITY;
  for (int m : {9, 17, 33}) {
    const BoxGrid h = BoxGrid::cube(3, m);
    const auto one = CoefficientField::constant(h, {1, 1, 1});
    const auto w = GridFunction::from_scalar(h, sine_product);
    const auto lhs = apply_Q_s(w, one, s);
    const auto rhs = w * lam - apply_T(w, one) * (2 * s.scalar());
    auto diff = lhs - rhs;
    const double rel = interior_l2_norm(diff) / interior_l2_norm(w * lam);
    CHECK(rel < prev);
    prev = rel;
  }
  CHECK(prev < 0.01);
}
