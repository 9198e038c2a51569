#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "../support/oracles.hpp"
#include "sres/clifford.hpp"
#include "sres/errors.hpp"

using namespace sres;
using Catch::Approx;

TEST_CASE("product signs match the permutation-sort oracle", "[clifford]") {
  for (int n = 1; n <= 6; ++n) {
    const std::uint32_t size = 1u << n;
    for (std::uint32_t a = 0; a < size; ++a) {
      for (std::uint32_t b = 0; b < size; ++b) {
        const auto got = basis_product(BasisIndex(a), BasisIndex(b));
        const auto want = oracle::permutation_sort_product(a, b, n);
        REQUIRE(got.sign == want.sign);
        REQUIRE(got.index.mask() == want.mask);
      }
    }
  }
}

TEST_CASE("generators square to -1 and anticommute", "[clifford]") {
  const int n = 4;
  for (int i = 1; i <= n; ++i) {
    const auto ei = MultiVector::generator(n, i);
    CHECK(max_abs_difference(ei * ei, MultiVector::scalar(n, -1.0)) == 0.0);
    for (int j = i + 1; j <= n; ++j) {
      const auto ej = MultiVector::generator(n, j);
      CHECK(max_abs_difference(ei * ej, -(ej * ei)) == 0.0);
    }
  }
}

TEST_CASE("basis labels and generator lists", "[clifford]") {
  CHECK(BasisIndex{}.label() == "1");
  CHECK(BasisIndex::from_generators({1, 2}).label() == "e12");
  CHECK(BasisIndex::from_generators({1, 10}).label() == "e1_10");
  CHECK(BasisIndex::from_generators({3, 1}).mask() == 0b101u);
  CHECK(BasisIndex(0b1011u).generators() == std::vector<int>{1, 2, 4});
  CHECK_THROWS_AS(BasisIndex::from_generators({2, 2}), InputError);
  CHECK_THROWS_AS(BasisIndex::from_generators({0}), InputError);
}

TEST_CASE("hand products", "[clifford]") {
  const int n = 3;
  const auto e1 = MultiVector::generator(n, 1), e2 = MultiVector::generator(n, 2), e3 = MultiVector::generator(n, 3);
  // moving the last e1 to the front costs two swaps, then e1 e1 = -1
  const auto lhs = e1 * e2 * e3 * e1;
  CHECK(max_abs_difference(lhs, -(e2 * e3)) == 0.0);
  // (1 + e1)(1 - e1) = 1 - e1^2 = 2
  const auto p = (MultiVector::scalar(n, 1) + e1) * (MultiVector::scalar(n, 1) - e1);
  CHECK(max_abs_difference(p, MultiVector::scalar(n, 2)) == 0.0);
  // conj(e12) = conj(e2) conj(e1) = e2 e1 = -e12
  CHECK(conjugation_sign(BasisIndex::from_generators({1, 2})) == -1);
  CHECK(conjugation_sign(BasisIndex::from_generators({1, 2, 3})) == 1);
  CHECK(conjugation_sign(BasisIndex::generator(2)) == -1);
}

TEST_CASE("algebra identities on random elements", "[clifford]") {
  std::mt19937_64 rng(11);
  for (int n : {3, 4, 5}) {
    for (int t = 0; t < 100; ++t) {
      const auto x = oracle::random_multivector(n, rng);
      const auto y = oracle::random_multivector(n, rng);
      const auto z = oracle::random_multivector(n, rng);
      const double scale = norm(x) * norm(y) * norm(z);
      CHECK(max_abs_difference((x * y) * z, x * (y * z)) <= 1e-12 * scale);
      CHECK(max_abs_difference(conjugate(x * y), conjugate(y) * conjugate(x)) <= 1e-12 * norm(x) * norm(y));
      CHECK(norm_squared(x) == Approx(scalar_part(x * conjugate(x))).epsilon(1e-12));
      CHECK(norm_squared(x) == Approx(scalar_part(conjugate(x) * x)).epsilon(1e-12));
      for (std::uint32_t a = 0; a < x.size(); ++a) {
        const auto ea = MultiVector::basis(n, BasisIndex(a));
        CHECK(scalar_part(x * conjugate(ea)) == Approx(x.component(a)).margin(1e-13));
      }
    }
  }
}

TEST_CASE("left multiplication matrix reproduces the product", "[clifford]") {
  std::mt19937_64 rng(3);
  const int n = 4;
  const auto x = oracle::random_multivector(n, rng);
  const auto y = oracle::random_multivector(n, rng);
  const auto L = left_multiplication_matrix(x);
  const auto xy = x * y;
  for (std::size_t c = 0; c < x.size(); ++c) {
    double acc = 0;
    for (std::size_t a = 0; a < x.size(); ++a) acc += L[c * x.size() + a] * y.component(a);
    CHECK(acc == Approx(xy.component(c)).margin(1e-13));
  }
}

TEST_CASE("paravectors multiply isometrically", "[clifford]") {
  std::mt19937_64 rng(5);
  for (int n : {3, 5}) {
    for (int t = 0; t < 50; ++t) {
      const auto s = oracle::random_paravector(n, rng).to_multivector();
      const auto x = oracle::random_multivector(n, rng);
      CHECK(norm(s * x) == Approx(norm(s) * norm(x)).epsilon(1e-12));
      CHECK(norm(x * s) == Approx(norm(s) * norm(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("paravector accessors", "[clifford]") {
  const Paravector s(0.5, {0.0, 3.0, 4.0});
  CHECK(s.imaginary_norm() == 5.0);
  CHECK(s.norm_squared() == 25.25);
  CHECK(s.conjugate().vector_part()[1] == -3.0);
  const auto sl = Paravector::on_slice(4, -1.0, 2.0);
  CHECK(sl.dimension() == 4);
  CHECK(sl.vector_part()[0] == 2.0);
  CHECK(sl.to_multivector()[BasisIndex::generator(1)] == 2.0);
}

TEST_CASE("dimension guards", "[clifford]") {
  CHECK_THROWS_AS(require_dimension(2), InputError);
  CHECK_THROWS_AS(require_dimension(13), InputError);
  CHECK_NOTHROW(require_dimension(3));
  CHECK_THROWS_AS(require_same_dimension(3, 4), DimensionMismatch);
  CHECK_THROWS_AS(MultiVector(3) + MultiVector(4), DimensionMismatch);
  CHECK_THROWS_AS(MultiVector(3, std::vector<double>(7)), DimensionMismatch);
}
