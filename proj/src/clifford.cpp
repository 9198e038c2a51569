#include "sres/clifford.hpp"

#include <algorithm>
#include <cmath>

#include "sres/errors.hpp"

namespace sres {

void require_dimension(int n) {
  if (n < kMinDimension || n > kMaxDimension) {
    throw InputError("Clifford dimension n=" + std::to_string(n) + " outside [" +
                     std::to_string(kMinDimension) + ", " + std::to_string(kMaxDimension) + "]");
  }
}

void require_same_dimension(int n1, int n2) {
  if (n1 != n2) {
    throw DimensionMismatch("incompatible Clifford algebras: R_" + std::to_string(n1) +
                            " vs R_" + std::to_string(n2));
  }
}

BasisIndex BasisIndex::from_generators(std::initializer_list<int> generators) {
  return from_generators(std::span<const int>(generators.begin(), generators.size()));
}

BasisIndex BasisIndex::from_generators(std::span<const int> generators) {
  std::uint32_t mask = 0;
  for (int g : generators) {
    if (g < 1 || g > kMaxDimension) {
      throw InputError("generator index " + std::to_string(g) + " out of range");
    }
    const std::uint32_t bit = 1u << (g - 1);
    if (mask & bit) throw InputError("repeated generator e" + std::to_string(g));
    mask |= bit;
  }
  return BasisIndex(mask);
}

std::vector<int> BasisIndex::generators() const {
  std::vector<int> out;
  for (std::uint32_t rest = mask_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest) + 1);
  }
  return out;
}

std::string BasisIndex::label() const {
  if (mask_ == 0) return "1";
  std::string out = "e";
  bool wide = (mask_ >> 9) != 0;
  bool first = true;
  for (int g : generators()) {
    if (wide && !first) out += '_';
    out += std::to_string(g);
    first = false;
  }
  return out;
}

MultiVector::MultiVector(int n) : n_(n) {
  require_dimension(n);
  comps_.assign(std::size_t{1} << n, 0.0);
}

MultiVector::MultiVector(int n, std::vector<double> components) : n_(n), comps_(std::move(components)) {
  require_dimension(n);
  if (comps_.size() != (std::size_t{1} << n)) {
    throw DimensionMismatch("multivector of R_" + std::to_string(n) + " needs " +
                            std::to_string(std::size_t{1} << n) + " components, got " +
                            std::to_string(comps_.size()));
  }
}

MultiVector MultiVector::scalar(int n, double value) {
  MultiVector out(n);
  out.comps_[0] = value;
  return out;
}

MultiVector MultiVector::basis(int n, BasisIndex index, double coefficient) {
  MultiVector out(n);
  if (index.mask() >= out.comps_.size()) {
    throw DimensionMismatch("basis blade " + index.label() + " not in R_" + std::to_string(n));
  }
  out.comps_[index.mask()] = coefficient;
  return out;
}

MultiVector& MultiVector::operator+=(const MultiVector& other) {
  require_same_dimension(n_, other.n_);
  for (std::size_t a = 0; a < comps_.size(); ++a) comps_[a] += other.comps_[a];
  return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& other) {
  require_same_dimension(n_, other.n_);
  for (std::size_t a = 0; a < comps_.size(); ++a) comps_[a] -= other.comps_[a];
  return *this;
}

MultiVector& MultiVector::operator*=(double factor) {
  for (double& c : comps_) c *= factor;
  return *this;
}

MultiVector operator*(const MultiVector& x, const MultiVector& y) { return mul(x, y); }

MultiVector mul(const MultiVector& x, const MultiVector& y) {
  require_same_dimension(x.dimension(), y.dimension());
  MultiVector out(x.dimension());
  const std::size_t size = x.size();
  auto xs = x.components();
  auto ys = y.components();
  auto os = out.components();
  for (std::size_t a = 0; a < size; ++a) {
    if (xs[a] == 0.0) continue;
    for (std::size_t b = 0; b < size; ++b) {
      if (ys[b] == 0.0) continue;
      const auto [sign, c] = basis_product(BasisIndex(static_cast<std::uint32_t>(a)),
                                           BasisIndex(static_cast<std::uint32_t>(b)));
      os[c.mask()] += sign * xs[a] * ys[b];
    }
  }
  return out;
}

MultiVector conjugate(const MultiVector& x) {
  MultiVector out = x;
  auto os = out.components();
  for (std::size_t a = 0; a < os.size(); ++a) {
    os[a] *= conjugation_sign(BasisIndex(static_cast<std::uint32_t>(a)));
  }
  return out;
}

double scalar_part(const MultiVector& x) { return x.component(0); }

double norm_squared(const MultiVector& x) {
  double acc = 0.0;
  for (double c : x.components()) acc += c * c;
  return acc;
}

double norm(const MultiVector& x) { return std::sqrt(norm_squared(x)); }

double max_abs_difference(const MultiVector& x, const MultiVector& y) {
  require_same_dimension(x.dimension(), y.dimension());
  double worst = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    worst = std::max(worst, std::abs(x.component(a) - y.component(a)));
  }
  return worst;
}

std::vector<double> left_multiplication_matrix(const MultiVector& x) {
  const std::size_t size = x.size();
  std::vector<double> mat(size * size, 0.0);
  auto xs = x.components();
  for (std::size_t b = 0; b < size; ++b) {
    if (xs[b] == 0.0) continue;
    for (std::size_t a = 0; a < size; ++a) {
      const auto [sign, c] = basis_product(BasisIndex(static_cast<std::uint32_t>(b)),
                                           BasisIndex(static_cast<std::uint32_t>(a)));
      mat[c.mask() * size + a] += sign * xs[b];
    }
  }
  return mat;
}

Paravector::Paravector(double s0, std::vector<double> vector_part) : s0_(s0), vec_(std::move(vector_part)) {
  require_dimension(static_cast<int>(vec_.size()));
}

Paravector Paravector::on_slice(int n, double s0, double im) {
  std::vector<double> vec(static_cast<std::size_t>(n), 0.0);
  if (n > 0) vec[0] = im;
  return Paravector(s0, std::move(vec));
}

double Paravector::imaginary_norm() const {
  double acc = 0.0;
  for (double v : vec_) acc += v * v;
  return std::sqrt(acc);
}

double Paravector::norm_squared() const {
  double acc = s0_ * s0_;
  for (double v : vec_) acc += v * v;
  return acc;
}

double Paravector::norm() const { return std::sqrt(norm_squared()); }

Paravector Paravector::conjugate() const {
  std::vector<double> neg = vec_;
  for (double& v : neg) v = -v;
  return Paravector(s0_, std::move(neg));
}

MultiVector Paravector::to_multivector() const {
  const int n = dimension();
  MultiVector out = MultiVector::scalar(n, s0_);
  for (int i = 1; i <= n; ++i) out[BasisIndex::generator(i)] = vec_[static_cast<std::size_t>(i - 1)];
  return out;
}

}  // namespace sres
