#include "sres/grid.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "sres/errors.hpp"

namespace sres {

BoxGrid::BoxGrid(std::vector<double> lengths, std::vector<int> nodes_per_axis)
    : lengths_(std::move(lengths)), nodes_(std::move(nodes_per_axis)) {
  if (lengths_.size() != nodes_.size()) {
    throw DimensionMismatch("grid needs one node count per box side");
  }
  require_dimension(static_cast<int>(lengths_.size()));
  node_count_ = 1;
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    if (!(lengths_[i] > 0.0) || !std::isfinite(lengths_[i])) {
      throw InputError("box side " + std::to_string(i + 1) + " must be positive");
    }
    if (nodes_[i] < 3) {
      throw InputError("axis " + std::to_string(i + 1) + " needs at least 3 nodes");
    }
    spacing_.push_back(lengths_[i] / (nodes_[i] - 1));
    strides_.push_back(node_count_);
    node_count_ *= static_cast<std::size_t>(nodes_[i]);
  }
}

BoxGrid BoxGrid::cube(int n, int m, double length) {
  return BoxGrid(std::vector<double>(static_cast<std::size_t>(n), length),
                 std::vector<int>(static_cast<std::size_t>(n), m));
}

std::vector<int> BoxGrid::multi_index(std::size_t node) const {
  std::vector<int> out(nodes_.size());
  for (int i = 0; i < dimension(); ++i) out[i] = index_along(node, i);
  return out;
}

std::size_t BoxGrid::linear_index(std::span<const int> multi) const {
  std::size_t out = 0;
  for (int i = 0; i < dimension(); ++i) out += static_cast<std::size_t>(multi[i]) * strides_[i];
  return out;
}

std::vector<double> BoxGrid::position(std::size_t node) const {
  std::vector<double> out(nodes_.size());
  position(node, out);
  return out;
}

void BoxGrid::position(std::size_t node, std::span<double> out) const {
  for (int i = 0; i < dimension(); ++i) out[i] = coordinate(i, index_along(node, i));
}

bool BoxGrid::is_boundary(std::size_t node) const {
  for (int i = 0; i < dimension(); ++i) {
    const int k = index_along(node, i);
    if (k == 0 || k == nodes_[i] - 1) return true;
  }
  return false;
}

std::vector<BoundaryFace> BoxGrid::faces_of(std::size_t node) const {
  std::vector<BoundaryFace> out;
  for (int i = 0; i < dimension(); ++i) {
    const int k = index_along(node, i);
    if (k == 0) out.push_back({i, -1});
    if (k == nodes_[i] - 1) out.push_back({i, +1});
  }
  return out;
}

double BoxGrid::axis_weight(int axis, int k) const {
  const double h = spacing_[axis];
  return (k == 0 || k == nodes_[axis] - 1) ? 0.5 * h : h;
}

double BoxGrid::weight(std::size_t node) const {
  double w = 1.0;
  for (int i = 0; i < dimension(); ++i) w *= axis_weight(i, index_along(node, i));
  return w;
}

double BoxGrid::edge_weight(std::size_t node, int axis) const {
  double w = spacing_[axis];
  for (int j = 0; j < dimension(); ++j) {
    if (j != axis) w *= axis_weight(j, index_along(node, j));
  }
  return w;
}

double BoxGrid::face_weight(std::size_t node, int axis) const {
  double w = 1.0;
  for (int j = 0; j < dimension(); ++j) {
    if (j != axis) w *= axis_weight(j, index_along(node, j));
  }
  return w;
}

std::vector<std::size_t> BoxGrid::interior_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < node_count_; ++k) {
    if (!is_boundary(k)) out.push_back(k);
  }
  return out;
}

double BoxGrid::volume() const {
  double v = 1.0;
  for (double l : lengths_) v *= l;
  return v;
}

double BoxGrid::surface_area() const {
  const double v = volume();
  double area = 0.0;
  for (double l : lengths_) area += 2.0 * v / l;
  return area;
}

void require_same_grid(const BoxGrid& a, const BoxGrid& b) {
  if (!(a == b)) throw DimensionMismatch("grid functions live on different grids");
}

GridFunction::GridFunction(BoxGrid grid)
    : grid_(std::move(grid)), comps_(grid_.components()), values_(grid_.node_count() * comps_, 0.0) {}

GridFunction::GridFunction(BoxGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), comps_(grid_.components()), values_(std::move(values)) {
  if (values_.size() != grid_.node_count() * comps_) {
    throw DimensionMismatch("grid function needs " + std::to_string(grid_.node_count() * comps_) +
                            " values, got " + std::to_string(values_.size()));
  }
}

GridFunction GridFunction::from_function(const BoxGrid& grid, const PointFunction& f) {
  GridFunction out(grid);
  std::vector<double> x(static_cast<std::size_t>(grid.dimension()));
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    grid.position(k, x);
    out.set(k, f(x));
  }
  return out;
}

GridFunction GridFunction::from_scalar(const BoxGrid& grid, const ScalarFunction& f, BasisIndex component) {
  if (component.mask() >= grid.components()) {
    throw DimensionMismatch("component " + component.label() + " not in the algebra");
  }
  GridFunction out(grid);
  std::vector<double> x(static_cast<std::size_t>(grid.dimension()));
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    grid.position(k, x);
    out.component(k, component) = f(x);
  }
  return out;
}

MultiVector GridFunction::value(std::size_t node) const {
  auto c = node_components(node);
  return MultiVector(dimension(), std::vector<double>(c.begin(), c.end()));
}

void GridFunction::set(std::size_t node, const MultiVector& x) {
  require_same_dimension(dimension(), x.dimension());
  auto c = node_components(node);
  auto xs = x.components();
  std::copy(xs.begin(), xs.end(), c.begin());
}

void GridFunction::clear_boundary() {
  for (std::size_t k = 0; k < node_count(); ++k) {
    if (grid_.is_boundary(k)) {
      auto c = node_components(k);
      std::fill(c.begin(), c.end(), 0.0);
    }
  }
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double f) {
  for (double& v : values_) v *= f;
  return *this;
}

GridFunction left_multiply(const MultiVector& x, const GridFunction& u) {
  require_same_dimension(x.dimension(), u.dimension());
  GridFunction out(u.grid());
  for (std::size_t k = 0; k < u.node_count(); ++k) out.set(k, mul(x, u.value(k)));
  return out;
}

GridFunction right_multiply(const GridFunction& u, const MultiVector& x) {
  require_same_dimension(x.dimension(), u.dimension());
  GridFunction out(u.grid());
  for (std::size_t k = 0; k < u.node_count(); ++k) out.set(k, mul(u.value(k), x));
  return out;
}

MultiVector inner_product(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u.grid(), v.grid());
  const std::size_t comps = u.components();
  // Real Gram matrix G[A][B] = <u_A, v_B>, then contract with conj(e_A) e_B.
  std::vector<double> gram(comps * comps, 0.0);
  for (std::size_t k = 0; k < u.node_count(); ++k) {
    const double w = u.grid().weight(k);
    auto uc = u.node_components(k);
    auto vc = v.node_components(k);
    for (std::size_t a = 0; a < comps; ++a) {
      if (uc[a] == 0.0) continue;
      const double wa = w * uc[a];
      for (std::size_t b = 0; b < comps; ++b) gram[a * comps + b] += wa * vc[b];
    }
  }
  MultiVector out(u.dimension());
  auto os = out.components();
  for (std::size_t a = 0; a < comps; ++a) {
    const BasisIndex ea(static_cast<std::uint32_t>(a));
    const int ca = conjugation_sign(ea);
    for (std::size_t b = 0; b < comps; ++b) {
      const double g = gram[a * comps + b];
      if (g == 0.0) continue;
      const auto [sign, c] = basis_product(ea, BasisIndex(static_cast<std::uint32_t>(b)));
      os[c.mask()] += ca * sign * g;
    }
  }
  return out;
}

double sc_inner(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u.grid(), v.grid());
  const std::size_t comps = u.components();
  double acc = 0.0;
  for (std::size_t k = 0; k < u.node_count(); ++k) {
    auto uc = u.node_components(k);
    auto vc = v.node_components(k);
    double dot = 0.0;
    for (std::size_t a = 0; a < comps; ++a) dot += uc[a] * vc[a];
    acc += u.grid().weight(k) * dot;
  }
  return acc;
}

double l2_norm(const GridFunction& u) { return std::sqrt(std::max(0.0, sc_inner(u, u))); }

GridFunction partial_derivative(const GridFunction& u, int axis) {
  const BoxGrid& g = u.grid();
  if (axis < 0 || axis >= g.dimension()) throw InputError("axis out of range");
  GridFunction out(g);
  const std::size_t stride = g.stride(axis);
  const double inv_h = 1.0 / g.spacing(axis);
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    const bool forward = g.has_forward_neighbor(k, axis);
    const std::size_t lo = forward ? k : k - stride;
    const std::size_t hi = forward ? k + stride : k;
    auto a = u.node_components(lo);
    auto b = u.node_components(hi);
    auto o = out.node_components(k);
    for (std::size_t c = 0; c < o.size(); ++c) o[c] = (b[c] - a[c]) * inv_h;
  }
  return out;
}

double derivative_norm_squared(const GridFunction& u, int axis) {
  const BoxGrid& g = u.grid();
  const std::size_t stride = g.stride(axis);
  const double inv_h = 1.0 / g.spacing(axis);
  double acc = 0.0;
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (!g.has_forward_neighbor(k, axis)) continue;
    auto a = u.node_components(k);
    auto b = u.node_components(k + stride);
    double sq = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
      const double d = (b[c] - a[c]) * inv_h;
      sq += d * d;
    }
    acc += g.edge_weight(k, axis) * sq;
  }
  return acc;
}

double sobolev_seminorm(const GridFunction& u) {
  double acc = 0.0;
  for (int i = 0; i < u.dimension(); ++i) acc += derivative_norm_squared(u, i);
  return std::sqrt(acc);
}

double h1_norm(const GridFunction& u) {
  const double l2 = l2_norm(u);
  const double d = sobolev_seminorm(u);
  return std::sqrt(l2 * l2 + d * d);
}

double trace_norm(const GridFunction& u) {
  const BoxGrid& g = u.grid();
  double acc = 0.0;
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (!g.is_boundary(k)) continue;
    double w = 0.0;
    for (const auto& face : g.faces_of(k)) w += g.face_weight(k, face.axis);
    double sq = 0.0;
    for (double c : u.node_components(k)) sq += c * c;
    acc += w * sq;
  }
  return std::sqrt(acc);
}

void write_csv(std::ostream& os, const GridFunction& u) {
  const BoxGrid& g = u.grid();
  const int n = g.dimension();
  for (int i = 1; i <= n; ++i) os << 'k' << i << ',';
  for (std::size_t a = 0; a < u.components(); ++a) {
    os << BasisIndex(static_cast<std::uint32_t>(a)).label() << (a + 1 < u.components() ? ',' : '\n');
  }
  os.precision(17);
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    for (int i = 0; i < n; ++i) os << g.index_along(k, i) << ',';
    auto c = u.node_components(k);
    for (std::size_t a = 0; a < c.size(); ++a) os << c[a] << (a + 1 < c.size() ? ',' : '\n');
  }
}

GridFunction read_csv(std::istream& is, const BoxGrid& grid) {
  GridFunction out(grid);
  const int n = grid.dimension();
  std::string line;
  if (!std::getline(is, line)) throw InputError("grid function CSV is empty");
  std::vector<bool> seen(grid.node_count(), false);
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(ss, cell, ',')) {
      try {
        cells.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InputError("CSV row " + std::to_string(row) + ": bad number '" + cell + "'");
      }
    }
    if (cells.size() != n + grid.components()) {
      throw InputError("CSV row " + std::to_string(row) + ": expected " +
                       std::to_string(n + grid.components()) + " columns");
    }
    std::vector<int> multi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      multi[i] = static_cast<int>(cells[i]);
      if (multi[i] < 0 || multi[i] >= grid.nodes(i) || multi[i] != cells[i]) {
        throw InputError("CSV row " + std::to_string(row) + ": node index out of range");
      }
    }
    const std::size_t k = grid.linear_index(multi);
    seen[k] = true;
    auto c = out.node_components(k);
    std::copy(cells.begin() + n, cells.end(), c.begin());
  }
  for (bool s : seen) {
    if (!s) throw InputError("CSV does not cover every grid node");
  }
  return out;
}

}  // namespace sres
