#include "sres/spectral_region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include <Eigen/SparseCholesky>

#include "sres/errors.hpp"

namespace sres {

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::Dirichlet: return "dirichlet";
    case Theorem::DirichletBounded: return "dirichlet_bounded";
    case Theorem::Robin: return "robin";
    case Theorem::RobinConstant: return "robin_constant";
  }
  return "?";
}

Theorem theorem_from_string(const std::string& name) {
  if (name == "dirichlet") return Theorem::Dirichlet;
  if (name == "dirichlet_bounded") return Theorem::DirichletBounded;
  if (name == "robin") return Theorem::Robin;
  if (name == "robin_constant") return Theorem::RobinConstant;
  throw InputError("unknown theorem '" + name + "'");
}

double sobolev_constant(int n) {
  if (n < 3) throw InputError("Sobolev constant needs n >= 3, got " + std::to_string(n));
  const double ratio = std::exp(std::lgamma(static_cast<double>(n)) - std::lgamma(0.5 * n));
  return std::pow(ratio, 1.0 / n) / std::sqrt(std::numbers::pi * n * (n - 2));
}

double poincare_constant(const BoxGrid& grid) {
  auto l = grid.lengths();
  return *std::min_element(l.begin(), l.end()) / std::numbers::pi;
}

double estimate_trace_norm(const BoxGrid& g, int iterations, double tolerance) {
  const auto N = static_cast<Eigen::Index>(g.node_count());
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd trace = Eigen::VectorXd::Zero(N);
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    const auto kk = static_cast<int>(k);
    trip.emplace_back(kk, kk, g.weight(k));
    for (const auto& face : g.faces_of(k)) trace[kk] += g.face_weight(k, face.axis);
    for (int i = 0; i < g.dimension(); ++i) {
      if (!g.has_forward_neighbor(k, i)) continue;
      const auto kp = static_cast<int>(k + g.stride(i));
      const double w = g.edge_weight(k, i) / (g.spacing(i) * g.spacing(i));
      trip.emplace_back(kk, kk, w);
      trip.emplace_back(kp, kp, w);
      trip.emplace_back(kk, kp, -w);
      trip.emplace_back(kp, kk, -w);
    }
  }
  Eigen::SparseMatrix<double> gram(N, N);
  gram.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(gram);
  if (ldlt.info() != Eigen::Success) throw SolverError("H1 Gram factorization failed", 0.0, true);

  Eigen::VectorXd x = Eigen::VectorXd::Ones(N);
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd y = ldlt.solve(trace.cwiseProduct(x));
    const double num = y.dot(trace.cwiseProduct(y));
    const double den = y.dot(gram * y);
    const double next = num / den;
    x = y / y.norm();
    if (std::abs(next - lambda) <= tolerance * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

RegionParams make_region_params(int n, const CoefficientBounds& bounds, double poincare,
                                const RegionInputs& inputs) {
  RegionParams p;
  p.n = n;
  p.bounds = bounds;
  p.C_S = sobolev_constant(n);
  p.C_P = poincare;
  if (!(p.C_P > 0.0)) throw InputError("Poincare constant must be positive");
  if (p.C_P > 1.0) {
    p.warnings.push_back("Poincare constant " + std::to_string(p.C_P) +
                         " exceeds 1; the bounded-domain estimates are evaluated with it anyway");
  }
  p.sobolev_h1_multiplier = inputs.sobolev_h1_multiplier;
  p.trace_norm = inputs.trace_norm;
  p.b_min = inputs.b_min;
  p.b_min_neg = std::max(0.0, -inputs.b_min);
  p.constant_coefficients = inputs.constant_coefficients;
  p.D_ab = p.C_S * p.sobolev_h1_multiplier * bounds.M_a_prime + p.b_min_neg * p.trace_norm * p.trace_norm;
  const double gap = bounds.m_a * bounds.m_a - p.C_S * bounds.M_a_prime;
  if (gap > 0.0) p.K_a = bounds.M_a / std::sqrt(gap);
  return p;
}

RegionParams make_region_params(const CoefficientField& coeffs, const RegionInputs& inputs) {
  RegionInputs in = inputs;
  in.constant_coefficients = in.constant_coefficients || coeffs.is_constant();
  return make_region_params(coeffs.dimension(), compute_bounds(coeffs),
                            inputs.poincare.value_or(poincare_constant(coeffs.grid())), in);
}

double require_K(const RegionParams& p) {
  if (!p.K_a) {
    const double lhs = p.bounds.m_a * p.bounds.m_a;
    const double rhs = p.C_S * p.bounds.M_a_prime;
    throw HypothesisViolation("m_a^2 > C_S M_a'",
                              "m_a^2 = " + std::to_string(lhs) + ", C_S M_a' = " + std::to_string(rhs));
  }
  return *p.K_a;
}

void require_robin_hypothesis(const RegionParams& p) {
  const double lhs = p.bounds.m_a * p.bounds.m_a;
  if (!(lhs > p.D_ab)) {
    throw HypothesisViolation("m_a^2 > D_ab",
                              "m_a^2 = " + std::to_string(lhs) + ", D_ab = " + std::to_string(p.D_ab));
  }
}

void require_robin_constant_hypothesis(const RegionParams& p) {
  if (!p.constant_coefficients) {
    throw HypothesisViolation("constant coefficients", "the coefficients vary over the domain");
  }
  if (p.b_min < 0.0) {
    throw HypothesisViolation("b >= 0", "min b = " + std::to_string(p.b_min));
  }
}

namespace {

void require_inside(bool inside, const char* what, double s0, double s_abs) {
  if (!inside) {
    throw OutsideRegion(std::string(what) + " requested outside the region at s0 = " + std::to_string(s0) +
                        ", |s| = " + std::to_string(s_abs));
  }
}

}  // namespace

bool region_dirichlet(double s0, double s_abs, const RegionParams& p) {
  return s_abs > require_K(p) * std::abs(s0);
}

TauPair dirichlet_tau(double s0, double s_abs, const RegionParams& p) {
  require_inside(region_dirichlet(s0, s_abs, p), "dirichlet_tau", s0, s_abs);
  const double K = *p.K_a;
  const double d = s_abs * s_abs - K * K * s0 * s0;
  return {1.0 / d, K * s_abs / (p.bounds.M_a * d)};
}

bool region_dirichlet_bounded(double s0, double s_abs, const RegionParams& p) {
  const double K = require_K(p);
  const double M = p.bounds.M_a, CP = p.C_P, a0 = std::abs(s0);
  const double s2 = s_abs * s_abs;
  if (a0 <= M / (CP * K * K)) return s2 > 2.0 * M * a0 / CP - M * M / (CP * CP * K * K);
  return s2 > K * K * s0 * s0;
}

KappaPair kappas(double s0, double s_abs, const RegionParams& p) {
  require_inside(region_dirichlet_bounded(s0, s_abs, p), "kappas", s0, s_abs);
  const double K = *p.K_a;
  const double M = p.bounds.M_a, CP = p.C_P, a0 = std::abs(s0);
  const double s2 = s_abs * s_abs;
  const double near = s2 - 2.0 * M * a0 / CP + M * M / (CP * CP * K * K);
  const double cone = s2 - K * K * s0 * s0;
  KappaPair out{};
  out.kappa0 = a0 <= M / (CP * K * K) ? near : cone;
  out.kappa1 = s2 <= M * a0 / CP ? CP * CP * near : M * M * cone / (K * K * s2);
  return out;
}

bool region_robin(double s0, double s_abs, const RegionParams& p) {
  require_robin_hypothesis(p);
  const double m2 = p.bounds.m_a * p.bounds.m_a, M = p.bounds.M_a, D = p.D_ab;
  return s_abs * s_abs > M * M * s0 * s0 / (m2 - D) + D;
}

double robin_denominator(double s0, double s_abs, const RegionParams& p) {
  const double m2 = p.bounds.m_a * p.bounds.m_a, M = p.bounds.M_a, D = p.D_ab;
  const double s2 = s_abs * s_abs;
  return s2 + m2 - 2.0 * D - std::sqrt((s2 - m2) * (s2 - m2) + 4.0 * M * M * s0 * s0);
}

double robin_bound(double s0, double s_abs, const RegionParams& p) {
  require_inside(region_robin(s0, s_abs, p), "robin_bound", s0, s_abs);
  return 2.0 / robin_denominator(s0, s_abs, p);
}

bool region_robin_constant(double s0, double s_abs, const RegionParams& p) {
  require_robin_constant_hypothesis(p);
  return s_abs > p.bounds.M_a / p.bounds.m_a * std::abs(s0);
}

TauPair robin_constant_tau(double s0, double s_abs, const RegionParams& p) {
  require_inside(region_robin_constant(s0, s_abs, p), "robin_constant_tau", s0, s_abs);
  const double m = p.bounds.m_a, M = p.bounds.M_a;
  const double tau1 = 1.0 / (s_abs * s_abs - M * M * s0 * s0 / (m * m));
  return {tau1, s_abs * tau1 / m};
}

BoundReport evaluate(Theorem t, double s0, double im_abs, const RegionParams& p) {
  BoundReport r;
  r.theorem = t;
  r.s0 = s0;
  r.im_abs = im_abs;
  const double s_abs = std::hypot(s0, im_abs);
  switch (t) {
    case Theorem::Dirichlet:
      r.in_region = region_dirichlet(s0, s_abs, p);
      if (r.in_region) {
        const auto tau = dirichlet_tau(s0, s_abs, p);
        r.tau1 = tau.tau1;
        r.tau2 = tau.tau2;
        r.l2_coefficient = tau.tau1;
        r.seminorm_coefficient = tau.tau2;
      }
      break;
    case Theorem::DirichletBounded:
      r.in_region = region_dirichlet_bounded(s0, s_abs, p);
      if (r.in_region) {
        const auto k = kappas(s0, s_abs, p);
        r.kappa0 = k.kappa0;
        r.kappa1 = k.kappa1;
        r.l2_coefficient = 1.0 / k.kappa0;
        r.seminorm_coefficient = 1.0 / std::sqrt(k.kappa0 * k.kappa1);
      }
      break;
    case Theorem::Robin:
      r.in_region = region_robin(s0, s_abs, p);
      if (r.in_region) {
        r.robin_denominator = robin_denominator(s0, s_abs, p);
        r.h1_coefficient = 2.0 / *r.robin_denominator;
      }
      break;
    case Theorem::RobinConstant:
      r.in_region = region_robin_constant(s0, s_abs, p);
      r.note = "M_a is the root-sum-square of the coefficient suprema, not max a_i";
      if (r.in_region) {
        const auto tau = robin_constant_tau(s0, s_abs, p);
        r.tau1 = tau.tau1;
        r.tau2 = tau.tau2;
        r.l2_coefficient = tau.tau1;
        r.seminorm_coefficient = tau.tau2;
      }
      break;
  }
  return r;
}

BoundReport evaluate(Theorem t, const Paravector& s, const RegionParams& p) {
  return evaluate(t, s.scalar(), s.imaginary_norm(), p);
}

std::vector<BoundReport> sweep(Theorem t, const RegionParams& p, const SweepWindow& w) {
  if (w.s0_points < 2 || w.im_points < 2) throw InputError("sweep resolution must be at least 2x2");
  if (!(w.s0_max > w.s0_min) || !(w.im_max > w.im_min) || w.im_min < 0.0) {
    throw InputError("sweep window must be a nonempty rectangle with im >= 0");
  }
  std::vector<BoundReport> out;
  out.reserve(static_cast<std::size_t>(w.s0_points) * static_cast<std::size_t>(w.im_points));
  for (int j = 0; j < w.im_points; ++j) {
    const double im = w.im_min + (w.im_max - w.im_min) * j / (w.im_points - 1);
    for (int i = 0; i < w.s0_points; ++i) {
      const double s0 = w.s0_min + (w.s0_max - w.s0_min) * i / (w.s0_points - 1);
      out.push_back(evaluate(t, s0, im, p));
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<BoundReport>& rows) {
  os << "s0,im_abs,in_region,tau1,tau2,kappa0,kappa1,robin_denom\n";
  os.precision(12);
  auto opt = [&os](const std::optional<double>& v) {
    os << ',';
    if (v) os << *v;
  };
  for (const auto& r : rows) {
    os << r.s0 << ',' << r.im_abs << ',' << (r.in_region ? 1 : 0);
    opt(r.tau1);
    opt(r.tau2);
    opt(r.kappa0);
    opt(r.kappa1);
    opt(r.robin_denominator);
    os << '\n';
  }
}

}  // namespace sres
