#pragma once

#include <cstddef>
#include <vector>

#include "sres/clifford.hpp"
#include "sres/expression.hpp"
#include "sres/grid.hpp"

namespace sres {

struct CoefficientBounds {
  double m_a = 0.0;        // min of every a_i over the sampled set
  double M_a = 0.0;        // (sum_i sup a_i^2)^{1/2}
  double M_a_prime = 0.0;  // (sum_{i,j} ||a_j d_j a_i||_{L^n}^2)^{1/2}
  std::vector<double> sup;  // per-axis sup a_i
};

/// Coefficients a_1..a_n of T = sum_i e_i a_i d/dx_i sampled on a grid:
/// values at nodes and at the staggered midpoints x + h_i/2 e_i, and the
/// gradients d a_i / d x_j at nodes.
class CoefficientField {
 public:
  /// Closed-form coefficients with exact gradients.
  static CoefficientField from_expressions(const BoxGrid& grid, const std::vector<Expression>& a);
  /// Raw node samples a[i][node]; midpoints by linear interpolation,
  /// gradients by central differences (one-sided on the boundary).
  static CoefficientField from_samples(const BoxGrid& grid, std::vector<std::vector<double>> a);
  /// a_i = values[i] everywhere.
  static CoefficientField constant(const BoxGrid& grid, const std::vector<double>& values);

  const BoxGrid& grid() const { return grid_; }
  int dimension() const { return grid_.dimension(); }
  bool is_constant() const { return constant_; }

  double a(int i, std::size_t node) const { return node_[i][node]; }
  /// a_i at node + h_i/2 e_i; only meaningful where the forward neighbor exists.
  double a_mid(int i, std::size_t node) const { return mid_[i][node]; }
  /// d a_i / d x_j at node.
  double da(int i, int j, std::size_t node) const { return grad_[i * dimension() + j][node]; }

  /// B_i(x) = sum_j e_j a_j(x) d a_i/dx_j (x), a pure vector.
  MultiVector B(int i, std::size_t node) const;
  /// Vector components (B_i)_j = a_j d_j a_i.
  double B_component(int i, int j, std::size_t node) const { return node_[j][node] * da(i, j, node); }

 private:
  CoefficientField(BoxGrid grid) : grid_(std::move(grid)) {}
  void validate() const;

  BoxGrid grid_;
  bool constant_ = false;
  std::vector<std::vector<double>> node_;
  std::vector<std::vector<double>> mid_;
  std::vector<std::vector<double>> grad_;  // index i * n + j
};

/// m_a, M_a from node and midpoint samples; M_a' by trapezoidal quadrature
/// of |a_j d_j a_i|^n.
CoefficientBounds compute_bounds(const CoefficientField& coeffs);

}  // namespace sres
