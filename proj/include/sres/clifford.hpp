#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace sres {

inline constexpr int kMinDimension = 3;
inline constexpr int kMaxDimension = 12;

/// Basis blade e_A of the Clifford algebra R_n, stored as the bitmask of
/// its generator set: bit (i-1) set <=> e_i is a factor. The scalar unit
/// e_0 = 1 is the empty mask. Canonical order of the generators is
/// ascending, so e_A = e_{i_1} ... e_{i_r} with i_1 < ... < i_r.
class BasisIndex {
 public:
  constexpr BasisIndex() = default;
  constexpr explicit BasisIndex(std::uint32_t mask) : mask_(mask) {}

  /// Builds e_A from 1-based generator indices; throws on repeats or zero.
  static BasisIndex from_generators(std::initializer_list<int> generators);
  static BasisIndex from_generators(std::span<const int> generators);
  static constexpr BasisIndex generator(int i) { return BasisIndex(1u << (i - 1)); }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr int grade() const { return std::popcount(mask_); }
  constexpr bool is_scalar() const { return mask_ == 0; }
  constexpr bool contains(int i) const { return (mask_ >> (i - 1)) & 1u; }

  /// Ascending 1-based generator list.
  std::vector<int> generators() const;

  /// "1" for the scalar unit, otherwise "e" followed by the generator
  /// digits ("e12"); indices above 9 are separated by underscores ("e1_10").
  std::string label() const;

  friend constexpr bool operator==(BasisIndex, BasisIndex) = default;

 private:
  std::uint32_t mask_ = 0;
};

struct SignedBasis {
  int sign;
  BasisIndex index;
};

/// e_A e_B = sign * e_C with C the symmetric difference of A and B.
constexpr SignedBasis basis_product(BasisIndex a, BasisIndex b) {
  // Moving each generator of B leftwards past the larger generators of A
  // costs one transposition each; every shared generator contracts to -1.
  std::uint32_t am = a.mask();
  std::uint32_t bm = b.mask();
  int parity = std::popcount(am & bm);
  for (std::uint32_t rest = bm; rest != 0; rest &= rest - 1) {
    const int bit = std::countr_zero(rest);
    parity += std::popcount(am >> (bit + 1));
  }
  return {(parity & 1) ? -1 : 1, BasisIndex(am ^ bm)};
}

/// conj(e_A) = (-1)^{|A|(|A|+1)/2} e_A.
constexpr int conjugation_sign(BasisIndex a) {
  const int k = a.grade();
  return ((k * (k + 1) / 2) & 1) ? -1 : 1;
}

/// Element of R_n as 2^n real coefficients in bitmask order.
class MultiVector {
 public:
  explicit MultiVector(int n);
  MultiVector(int n, std::vector<double> components);

  static MultiVector scalar(int n, double value);
  static MultiVector basis(int n, BasisIndex index, double coefficient = 1.0);
  static MultiVector generator(int n, int i) { return basis(n, BasisIndex::generator(i)); }

  int dimension() const { return n_; }
  std::size_t size() const { return comps_.size(); }

  double operator[](BasisIndex a) const { return comps_[a.mask()]; }
  double& operator[](BasisIndex a) { return comps_[a.mask()]; }
  double component(std::size_t mask) const { return comps_[mask]; }
  std::span<const double> components() const { return comps_; }
  std::span<double> components() { return comps_; }

  MultiVector& operator+=(const MultiVector& other);
  MultiVector& operator-=(const MultiVector& other);
  MultiVector& operator*=(double factor);

  friend MultiVector operator+(MultiVector lhs, const MultiVector& rhs) { return lhs += rhs; }
  friend MultiVector operator-(MultiVector lhs, const MultiVector& rhs) { return lhs -= rhs; }
  friend MultiVector operator*(MultiVector lhs, double f) { return lhs *= f; }
  friend MultiVector operator*(double f, MultiVector rhs) { return rhs *= f; }
  friend MultiVector operator-(MultiVector v) { return v *= -1.0; }
  friend MultiVector operator*(const MultiVector& x, const MultiVector& y);

 private:
  int n_;
  std::vector<double> comps_;
};

MultiVector mul(const MultiVector& x, const MultiVector& y);
MultiVector conjugate(const MultiVector& x);
double scalar_part(const MultiVector& x);
double norm_squared(const MultiVector& x);
double norm(const MultiVector& x);
double max_abs_difference(const MultiVector& x, const MultiVector& y);

/// Row-major 2^n x 2^n real matrix L with (x y)_C = sum_A L[C][A] y_A.
std::vector<double> left_multiplication_matrix(const MultiVector& x);

/// Paravector s = s0 + s1 e1 + ... + sn en.
class Paravector {
 public:
  Paravector(double s0, std::vector<double> vector_part);

  /// s0 + im * e1 in dimension n; the slice used for 2-D sweeps.
  static Paravector on_slice(int n, double s0, double im);

  int dimension() const { return static_cast<int>(vec_.size()); }
  double scalar() const { return s0_; }
  std::span<const double> vector_part() const { return vec_; }
  double imaginary_norm() const;
  double norm() const;
  double norm_squared() const;

  Paravector conjugate() const;
  MultiVector to_multivector() const;

 private:
  double s0_;
  std::vector<double> vec_;
};

void require_dimension(int n);
void require_same_dimension(int n1, int n2);

}  // namespace sres
