#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sres/clifford.hpp"

namespace sres {

// Outward normal of a box face: exactly one nonzero component (+1 or -1).
struct BoundaryFace {
  int axis;  // 0-based
  int side;  // -1 at x_axis = 0, +1 at x_axis = L_axis
};

/// Tensor grid on the box [0, L_1] x ... x [0, L_n] with m_i >= 3 nodes per
/// axis. Nodes are numbered with axis 0 varying fastest.
class BoxGrid {
 public:
  BoxGrid(std::vector<double> lengths, std::vector<int> nodes_per_axis);

  /// Unit cube [0,1]^n with m nodes on every axis.
  static BoxGrid cube(int n, int m, double length = 1.0);

  int dimension() const { return static_cast<int>(lengths_.size()); }
  std::size_t components() const { return std::size_t{1} << dimension(); }
  double length(int axis) const { return lengths_[axis]; }
  int nodes(int axis) const { return nodes_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  std::size_t stride(int axis) const { return strides_[axis]; }
  std::size_t node_count() const { return node_count_; }
  std::span<const double> lengths() const { return lengths_; }
  std::span<const int> nodes_per_axis() const { return nodes_; }

  int index_along(std::size_t node, int axis) const {
    return static_cast<int>((node / strides_[axis]) % static_cast<std::size_t>(nodes_[axis]));
  }
  std::vector<int> multi_index(std::size_t node) const;
  std::size_t linear_index(std::span<const int> multi) const;
  double coordinate(int axis, int k) const { return k * spacing_[axis]; }
  std::vector<double> position(std::size_t node) const;
  void position(std::size_t node, std::span<double> out) const;

  bool is_boundary(std::size_t node) const;
  std::vector<BoundaryFace> faces_of(std::size_t node) const;
  bool has_forward_neighbor(std::size_t node, int axis) const {
    return index_along(node, axis) + 1 < nodes_[axis];
  }

  /// 1-D trapezoidal weight of index k along axis (h/2 at the ends).
  double axis_weight(int axis, int k) const;
  /// Tensor trapezoidal volume weight of a node.
  double weight(std::size_t node) const;
  /// Quadrature weight of the edge [node, node + h e_axis]: h_axis times the
  /// trapezoidal weights of the node in every other axis.
  double edge_weight(std::size_t node, int axis) const;
  /// Trapezoidal surface weight of a node on the face orthogonal to axis.
  double face_weight(std::size_t node, int axis) const;

  std::vector<std::size_t> interior_nodes() const;
  double volume() const;
  double surface_area() const;

  friend bool operator==(const BoxGrid& a, const BoxGrid& b) {
    return a.lengths_ == b.lengths_ && a.nodes_ == b.nodes_;
  }

 private:
  std::vector<double> lengths_;
  std::vector<int> nodes_;
  std::vector<double> spacing_;
  std::vector<std::size_t> strides_;
  std::size_t node_count_ = 0;
};

void require_same_grid(const BoxGrid& a, const BoxGrid& b);

/// Clifford-valued function on a BoxGrid: node-major N x 2^n real array.
class GridFunction {
 public:
  explicit GridFunction(BoxGrid grid);
  GridFunction(BoxGrid grid, std::vector<double> values);

  using PointFunction = std::function<MultiVector(std::span<const double>)>;
  using ScalarFunction = std::function<double(std::span<const double>)>;

  static GridFunction from_function(const BoxGrid& grid, const PointFunction& f);
  /// Real function placed in the single component e_A.
  static GridFunction from_scalar(const BoxGrid& grid, const ScalarFunction& f,
                                  BasisIndex component = BasisIndex{});

  const BoxGrid& grid() const { return grid_; }
  int dimension() const { return grid_.dimension(); }
  std::size_t components() const { return comps_; }
  std::size_t node_count() const { return grid_.node_count(); }

  double component(std::size_t node, BasisIndex a) const { return values_[node * comps_ + a.mask()]; }
  double& component(std::size_t node, BasisIndex a) { return values_[node * comps_ + a.mask()]; }
  std::span<const double> node_components(std::size_t node) const {
    return {values_.data() + node * comps_, comps_};
  }
  std::span<double> node_components(std::size_t node) { return {values_.data() + node * comps_, comps_}; }
  MultiVector value(std::size_t node) const;
  void set(std::size_t node, const MultiVector& x);

  std::span<const double> data() const { return values_; }
  std::span<double> data() { return values_; }

  /// Zeroes every boundary node (Dirichlet restriction).
  void clear_boundary();

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double f);
  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, double f) { return a *= f; }
  friend GridFunction operator*(double f, GridFunction a) { return a *= f; }

 private:
  BoxGrid grid_;
  std::size_t comps_;
  std::vector<double> values_;
};

/// Pointwise x u(.) (left Clifford multiplication).
GridFunction left_multiply(const MultiVector& x, const GridFunction& u);
/// Pointwise u(.) x (right Clifford multiplication).
GridFunction right_multiply(const GridFunction& u, const MultiVector& x);

/// <u, v> = sum_{A,B} <u_A, v_B> conj(e_A) e_B with trapezoidal quadrature.
MultiVector inner_product(const GridFunction& u, const GridFunction& v);
/// Sc <u, v>.
double sc_inner(const GridFunction& u, const GridFunction& v);
double l2_norm(const GridFunction& u);

/// Forward difference along axis; backward difference on the far face.
GridFunction partial_derivative(const GridFunction& u, int axis);

/// ||D+_axis u||^2 with edge quadrature: each edge [x, x + h e_axis]
/// contributes edge_weight * |u(x + h e_axis) - u(x)|^2 / h^2.
double derivative_norm_squared(const GridFunction& u, int axis);
/// (sum_i ||d u / d x_i||^2)^{1/2} with the edge quadrature above.
double sobolev_seminorm(const GridFunction& u);
double h1_norm(const GridFunction& u);

/// Trapezoidal surface L^2 norm of the boundary trace.
double trace_norm(const GridFunction& u);

/// CSV: header row, then one row per node: k_1..k_n, then the 2^n
/// components in bitmask order.
void write_csv(std::ostream& os, const GridFunction& u);
GridFunction read_csv(std::istream& is, const BoxGrid& grid);

}  // namespace sres
