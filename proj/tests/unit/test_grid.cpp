#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "../support/oracles.hpp"
#include "sres/errors.hpp"
#include "sres/grid.hpp"

using namespace sres;
using Catch::Approx;

namespace {

GridFunction random_function(const BoxGrid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  GridFunction u(g);
  for (auto& x : u.data()) x = d(rng);
  return u;
}

double sine_product(std::span<const double> x) {
  double v = 1.0;
  for (double xi : x) v *= std::sin(std::numbers::pi * xi);
  return v;
}

}  // namespace

TEST_CASE("indexing and geometry", "[grid]") {
  const BoxGrid g({1.0, 2.0, 3.0}, {3, 5, 4});
  CHECK(g.node_count() == 60);
  CHECK(g.spacing(1) == 0.5);
  CHECK(g.stride(0) == 1);
  CHECK(g.stride(2) == 15);
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    const auto m = g.multi_index(k);
    REQUIRE(g.linear_index(m) == k);
    CHECK(g.is_boundary(k) == oracle::on_boundary(g, m));
    CHECK(g.weight(k) == Approx(oracle::trapezoid(g, m)));
  }
  CHECK(g.interior_nodes().size() == 1 * 3 * 2);
  CHECK(g.volume() == Approx(6.0));
  CHECK(g.surface_area() == Approx(2 * (2.0 + 3.0 + 6.0)));

  const std::vector<int> corner{0, 0, 0};
  CHECK(g.faces_of(g.linear_index(corner)).size() == 3);
  CHECK_THROWS_AS(BoxGrid({1.0, 1.0}, {3, 3, 3}), DimensionMismatch);
  CHECK_THROWS_AS(BoxGrid({1.0, 1.0, 1.0}, {3, 2, 3}), InputError);
  CHECK_THROWS_AS(BoxGrid({1.0, -1.0, 1.0}, {3, 3, 3}), InputError);
}

TEST_CASE("quadrature weights integrate constants", "[grid]") {
  const BoxGrid g({1.0, 2.0, 0.5}, {5, 4, 3});
  double vol = 0, surf = 0;
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    vol += g.weight(k);
    for (const auto& f : g.faces_of(k)) surf += g.face_weight(k, f.axis);
  }
  CHECK(vol == Approx(g.volume()));
  CHECK(surf == Approx(g.surface_area()));
  GridFunction one = GridFunction::from_scalar(g, [](auto) { return 1.0; });
  CHECK(l2_norm(one) == Approx(std::sqrt(g.volume())));
  CHECK(trace_norm(one) == Approx(std::sqrt(g.surface_area())));
  CHECK(sobolev_seminorm(one) == 0.0);
}

TEST_CASE("module norm properties on grid functions", "[grid]") {
  std::mt19937_64 rng(21);
  for (int n : {3, 4}) {
    const BoxGrid g = BoxGrid::cube(n, 3);
    const double c = std::pow(2.0, n / 2.0);
    for (int t = 0; t < 20; ++t) {
      const auto v = random_function(g, rng);
      const auto w = random_function(g, rng);
      const auto x = oracle::random_multivector(n, rng);
      const auto p = oracle::random_paravector(n, rng).to_multivector();
      CHECK(l2_norm(right_multiply(v, x)) <= c * norm(x) * l2_norm(v) * (1 + 1e-12));
      CHECK(l2_norm(left_multiply(x, v)) <= c * norm(x) * l2_norm(v) * (1 + 1e-12));
      CHECK(l2_norm(right_multiply(v, p)) == Approx(norm(p) * l2_norm(v)).epsilon(1e-12));
      CHECK(l2_norm(left_multiply(p, v)) == Approx(norm(p) * l2_norm(v)).epsilon(1e-12));
      CHECK(norm(inner_product(v, w)) <= c * l2_norm(v) * l2_norm(w) * (1 + 1e-12));
      CHECK(std::abs(sc_inner(v, w)) <= l2_norm(v) * l2_norm(w) * (1 + 1e-12));
      CHECK(scalar_part(inner_product(v, v)) == Approx(l2_norm(v) * l2_norm(v)).epsilon(1e-12));

      // <v, w x> = <v, w> x, <v x, w> = conj(x) <v, w>, <v, x w> = <conj(x) v, w>
      const double s = norm(x) * l2_norm(v) * l2_norm(w) * 1e-12 * c;
      CHECK(max_abs_difference(inner_product(v, right_multiply(w, x)), inner_product(v, w) * x) <= s);
      CHECK(max_abs_difference(inner_product(right_multiply(v, x), w), conjugate(x) * inner_product(v, w)) <= s);
      CHECK(max_abs_difference(inner_product(v, left_multiply(x, w)), inner_product(left_multiply(conjugate(x), v), w)) <=
            s);
    }
  }
}

TEST_CASE("derivatives and the discrete seminorm", "[grid]") {
  const BoxGrid g = BoxGrid::cube(3, 5);
  auto u = GridFunction::from_scalar(g, [](std::span<const double> x) { return 2 * x[0] - x[2]; });
  const auto d0 = partial_derivative(u, 0);
  const auto d2 = partial_derivative(u, 2);
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    CHECK(d0.component(k, BasisIndex{}) == Approx(2.0));
    CHECK(d2.component(k, BasisIndex{}) == Approx(-1.0));
  }
  CHECK(derivative_norm_squared(u, 0) == Approx(4.0));
  CHECK(sobolev_seminorm(u) == Approx(std::sqrt(5.0)));

  // ||u||_D^2 of the sine product tends to 3 pi^2 / 8 at second order.
  double prev = INFINITY;
  for (int m : {9, 17, 33}) {
    const BoxGrid h = BoxGrid::cube(3, m);
    const auto s = GridFunction::from_scalar(h, sine_product);
    const double err = std::abs(std::pow(sobolev_seminorm(s), 2) - 3 * std::numbers::pi * std::numbers::pi / 8);
    CHECK(err < prev / 3.5);
    prev = err;
  }
}

TEST_CASE("CSV round trip", "[grid]") {
  std::mt19937_64 rng(2);
  const BoxGrid g({1.0, 1.0, 2.0}, {3, 4, 3});
  const auto u = random_function(g, rng);
  std::stringstream ss;
  write_csv(ss, u);
  std::string header;
  std::getline(std::stringstream(ss.str()), header);
  CHECK(header.rfind("k1,k2,k3,1,e1,e2,e12,e3", 0) == 0);
  const auto back = read_csv(ss, g);
  for (std::size_t i = 0; i < u.data().size(); ++i) CHECK(back.data()[i] == u.data()[i]);

  std::stringstream bad("k1,k2,k3,1\n0,0,0,1\n");
  CHECK_THROWS(read_csv(bad, g));
}

TEST_CASE("grid mismatch is an error", "[grid]") {
  GridFunction a(BoxGrid::cube(3, 3)), b(BoxGrid::cube(3, 4)), c(BoxGrid::cube(4, 3));
  CHECK_THROWS_AS(a += b, DimensionMismatch);
  CHECK_THROWS_AS(sc_inner(a, c), DimensionMismatch);
}
