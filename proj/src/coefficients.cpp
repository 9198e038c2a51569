#include "sres/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sres/errors.hpp"

namespace sres {

namespace {

std::string node_label(const BoxGrid& grid, std::size_t node) {
  std::string out = "(";
  for (int i = 0; i < grid.dimension(); ++i) {
    if (i) out += ",";
    out += std::to_string(grid.index_along(node, i));
  }
  return out + ")";
}

}  // namespace

CoefficientField CoefficientField::from_expressions(const BoxGrid& grid, const std::vector<Expression>& a) {
  const int n = grid.dimension();
  if (static_cast<int>(a.size()) != n) {
    throw DimensionMismatch("need " + std::to_string(n) + " coefficients, got " + std::to_string(a.size()));
  }
  CoefficientField out(grid);
  const std::size_t N = grid.node_count();
  out.node_.assign(n, std::vector<double>(N, 0.0));
  out.mid_.assign(n, std::vector<double>(N, 0.0));
  out.grad_.assign(static_cast<std::size_t>(n * n), std::vector<double>(N, 0.0));
  out.constant_ = std::all_of(a.begin(), a.end(), [](const Expression& e) { return e.is_constant(); });
  std::vector<double> x(n), g(n);
  for (std::size_t k = 0; k < N; ++k) {
    grid.position(k, x);
    for (int i = 0; i < n; ++i) {
      out.node_[i][k] = a[i].value_and_gradient(x, g);
      for (int j = 0; j < n; ++j) out.grad_[i * n + j][k] = g[j];
      if (grid.has_forward_neighbor(k, i)) {
        std::vector<double> xm = x;
        xm[i] += 0.5 * grid.spacing(i);
        out.mid_[i][k] = a[i].value(xm);
      } else {
        out.mid_[i][k] = out.node_[i][k];
      }
    }
  }
  out.validate();
  return out;
}

CoefficientField CoefficientField::from_samples(const BoxGrid& grid, std::vector<std::vector<double>> a) {
  const int n = grid.dimension();
  const std::size_t N = grid.node_count();
  if (static_cast<int>(a.size()) != n) {
    throw DimensionMismatch("need " + std::to_string(n) + " coefficient sample sets, got " +
                            std::to_string(a.size()));
  }
  for (int i = 0; i < n; ++i) {
    if (a[i].size() != N) {
      throw DimensionMismatch("coefficient a" + std::to_string(i + 1) + " needs " + std::to_string(N) +
                              " node samples, got " + std::to_string(a[i].size()));
    }
  }
  CoefficientField out(grid);
  out.node_ = std::move(a);
  out.mid_.assign(n, std::vector<double>(N, 0.0));
  out.grad_.assign(static_cast<std::size_t>(n * n), std::vector<double>(N, 0.0));
  out.constant_ = true;
  for (int i = 0; i < n; ++i) {
    const auto& ai = out.node_[i];
    if (std::any_of(ai.begin(), ai.end(), [&](double v) { return v != ai[0]; })) out.constant_ = false;
  }
  for (std::size_t k = 0; k < N; ++k) {
    for (int i = 0; i < n; ++i) {
      const auto& ai = out.node_[i];
      out.mid_[i][k] = grid.has_forward_neighbor(k, i) ? 0.5 * (ai[k] + ai[k + grid.stride(i)]) : ai[k];
      for (int j = 0; j < n; ++j) {
        const std::size_t st = grid.stride(j);
        const int kj = grid.index_along(k, j);
        const double h = grid.spacing(j);
        double d;
        if (kj == 0) d = (ai[k + st] - ai[k]) / h;
        else if (kj == grid.nodes(j) - 1) d = (ai[k] - ai[k - st]) / h;
        else d = (ai[k + st] - ai[k - st]) / (2.0 * h);
        out.grad_[i * n + j][k] = d;
      }
    }
  }
  out.validate();
  return out;
}

CoefficientField CoefficientField::constant(const BoxGrid& grid, const std::vector<double>& values) {
  std::vector<Expression> a;
  for (double v : values) a.push_back(Expression::constant(v, grid.dimension()));
  return from_expressions(grid, a);
}

void CoefficientField::validate() const {
  const int n = dimension();
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < grid_.node_count(); ++k) {
      const double v = node_[i][k];
      const double vm = mid_[i][k];
      if (!(v > 0.0) || !std::isfinite(v) || !(vm > 0.0) || !std::isfinite(vm)) {
        throw InputError("coefficient a" + std::to_string(i + 1) + " is not positive at node " +
                         node_label(grid_, k) + " (value " + std::to_string(std::min(v, vm)) + ")");
      }
    }
  }
}

MultiVector CoefficientField::B(int i, std::size_t node) const {
  MultiVector out(dimension());
  for (int j = 0; j < dimension(); ++j) out[BasisIndex::generator(j + 1)] = B_component(i, j, node);
  return out;
}

CoefficientBounds compute_bounds(const CoefficientField& coeffs) {
  const BoxGrid& g = coeffs.grid();
  const int n = g.dimension();
  CoefficientBounds out;
  out.m_a = std::numeric_limits<double>::infinity();
  out.sup.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < g.node_count(); ++k) {
      double lo = coeffs.a(i, k), hi = lo;
      if (g.has_forward_neighbor(k, i)) {
        lo = std::min(lo, coeffs.a_mid(i, k));
        hi = std::max(hi, coeffs.a_mid(i, k));
      }
      out.m_a = std::min(out.m_a, lo);
      out.sup[i] = std::max(out.sup[i], hi);
    }
  }
  double msq = 0.0;
  for (double s : out.sup) msq += s * s;
  out.M_a = std::sqrt(msq);

  double prime_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double integral = 0.0;
      for (std::size_t k = 0; k < g.node_count(); ++k) {
        integral += g.weight(k) * std::pow(std::abs(coeffs.B_component(i, j, k)), n);
      }
      const double ln = std::pow(integral, 1.0 / n);
      prime_sq += ln * ln;
    }
  }
  out.M_a_prime = std::sqrt(prime_sq);
  return out;
}

}  // namespace sres
