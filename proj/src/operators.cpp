#include "sres/operators.hpp"

#include <cmath>

#include "sres/errors.hpp"

namespace sres {

GridFunction apply_T(const GridFunction& u, const CoefficientField& coeffs) {
  const BoxGrid& g = coeffs.grid();
  require_same_grid(g, u.grid());
  const int n = g.dimension();
  GridFunction out(g);
  for (int i = 0; i < n; ++i) {
    const GridFunction du = partial_derivative(u, i);
    const MultiVector ei = MultiVector::generator(n, i + 1);
    for (std::size_t k = 0; k < g.node_count(); ++k) {
      const MultiVector t = mul(ei, du.value(k)) * coeffs.a(i, k);
      auto o = out.node_components(k);
      auto tc = t.components();
      for (std::size_t a = 0; a < o.size(); ++a) o[a] += tc[a];
    }
  }
  return out;
}

GridFunction apply_T2(const GridFunction& u, const CoefficientField& coeffs) {
  const BoxGrid& g = coeffs.grid();
  require_same_grid(g, u.grid());
  const int n = g.dimension();
  const std::size_t C = g.components();
  GridFunction out(g);
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (g.is_boundary(k)) continue;
    MultiVector acc(n);
    const MultiVector uk = u.value(k);
    for (int i = 0; i < n; ++i) {
      const std::size_t st = g.stride(i);
      const double h = g.spacing(i);
      const MultiVector up = u.value(k + st), um = u.value(k - st);
      const double ap = coeffs.a_mid(i, k), am = coeffs.a_mid(i, k - st);
      acc -= (coeffs.a(i, k) / (h * h)) * ((up - uk) * ap - (uk - um) * am);
      // e_i B_i + a_i d_i a_i
      MultiVector lower = mul(MultiVector::generator(n, i + 1), coeffs.B(i, k));
      lower[BasisIndex{}] += coeffs.a(i, k) * coeffs.da(i, i, k);
      acc -= mul(lower, (up - uk) * (1.0 / h));
    }
    auto o = out.node_components(k);
    auto ac = acc.components();
    for (std::size_t a = 0; a < C; ++a) o[a] = ac[a];
  }
  return out;
}

GridFunction apply_Q_s(const GridFunction& u, const CoefficientField& coeffs, const Paravector& s) {
  require_same_dimension(u.dimension(), s.dimension());
  GridFunction out = apply_T2(u, coeffs);
  const GridFunction tu = apply_T(u, coeffs);
  const double s0 = s.scalar(), s2 = s.norm_squared();
  const BoxGrid& g = coeffs.grid();
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (g.is_boundary(k)) continue;
    auto o = out.node_components(k);
    auto t = tu.node_components(k);
    auto uk = u.node_components(k);
    for (std::size_t a = 0; a < o.size(); ++a) o[a] += -2.0 * s0 * t[a] + s2 * uk[a];
  }
  return out;
}

double interior_l2_norm(const GridFunction& u) {
  const BoxGrid& g = u.grid();
  double acc = 0.0;
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (g.is_boundary(k)) continue;
    double sq = 0.0;
    for (double c : u.node_components(k)) sq += c * c;
    acc += g.weight(k) * sq;
  }
  return std::sqrt(acc);
}

}  // namespace sres
