#pragma once

#include "sres/clifford.hpp"
#include "sres/coefficients.hpp"
#include "sres/grid.hpp"

namespace sres {

/// Tu = sum_i e_i a_i D_i u at every node (D_i as in partial_derivative).
GridFunction apply_T(const GridFunction& u, const CoefficientField& coeffs);

/// Expanded second-order operator
///   T^2 u = -sum_i a_i d_i(a_i d_i u) - sum_i (e_i B_i + a_i d_i a_i) d_i u,
/// with the divergence part as a staggered central second difference and
/// forward differences in the first-order part. Interior nodes only;
/// boundary entries are zero.
GridFunction apply_T2(const GridFunction& u, const CoefficientField& coeffs);

/// Q_s(T) u = T^2 u - 2 s0 T u + |s|^2 u on interior nodes; zero on the boundary.
GridFunction apply_Q_s(const GridFunction& u, const CoefficientField& coeffs, const Paravector& s);

/// Weighted L^2 norm over interior nodes only.
double interior_l2_norm(const GridFunction& u);

}  // namespace sres
