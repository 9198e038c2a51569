#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sres/clifford.hpp"
#include "sres/coefficients.hpp"
#include "sres/expression.hpp"
#include "sres/grid.hpp"
#include "sres/spectral_region.hpp"
#include "sres/weak_form.hpp"

namespace sres {

BoundaryKind boundary_of(Theorem t);

struct SourceTerm {
  std::string name;
  GridFunction f;
};

struct VerificationCase {
  Theorem theorem = Theorem::Dirichlet;
  CoefficientField coeffs;
  std::vector<double> b;  // per grid node; Robin theorems only
  RegionParams params;
  std::vector<Paravector> points;
  std::vector<SourceTerm> sources;
  double slack = 0.05;
  SolverOptions solver;
};

struct CaseResult {
  double s0 = 0.0;
  std::vector<double> s_vec;
  std::string source;
  bool in_region = false;
  double f_norm = 0.0;
  double l2 = 0.0, seminorm = 0.0, h1 = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool direct = true;
  std::optional<double> l2_bound, seminorm_bound, h1_bound;
  /// Largest measured / bound over the applicable norms.
  std::optional<double> worst_ratio;
  bool pass = true;
  std::string error;
};

struct VerificationReport {
  Theorem theorem = Theorem::Dirichlet;
  double slack = 0.05;
  std::vector<CaseResult> results;
  bool pass = true;
  bool solver_failure = false;
};

/// Solves at every point for every source and compares the measured norms
/// with (1 + slack) times the theorem bound. Out-of-region points are
/// solved and reported without a bound check. Points run on up to
/// `threads` workers; results keep input order.
VerificationReport run_case(const VerificationCase& c, int threads = 1);

struct ProbePoint {
  double s0 = 0.0;
  double s_abs = 0.0;
  double worst_margin = 0.0;  // min over samples of (Sc q(u,u) - bound) / bound
};

struct ProbeReport {
  std::vector<ProbePoint> points;
  double worst_margin = 0.0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

/// Random interior functions u (mixtures of node noise and smooth modes
/// with random Clifford amplitudes) tested against
///   Sc q(u,u) >= (m_a^2 - C_S M_a' - M_a|s0|/delta) ||u||_D^2 + (|s|^2 - M_a|s0| delta) ||u||^2
/// with delta = ||u||_D / ||u|| clamped to the admissible interval.
ProbeReport coercivity_probe(const CoefficientField& coeffs, const RegionParams& params,
                             const std::vector<Paravector>& points, std::size_t samples, std::uint64_t seed);

/// Lower bound for one u at one s; exposed for tests.
double coercivity_lower_bound(const RegionParams& params, double s0, double s_abs, double seminorm, double l2);

struct ConvergenceLevel {
  int nodes = 0;
  double h = 0.0;
  double error = 0.0;
};

struct ConvergenceResult {
  std::string name;
  std::vector<ConvergenceLevel> levels;
  double order = 0.0;  // least-squares slope of log error against log h
  bool exact = false;  // every error is zero
};

double fit_order(const std::vector<ConvergenceLevel>& levels);

using PointFunction = GridFunction::PointFunction;

/// L^2 error of the Dirichlet solve against the exact solution on cubes of
/// side 1 with m nodes per axis.
ConvergenceResult solution_convergence(int n, const std::vector<Expression>& coeffs, const Paravector& s,
                                       const PointFunction& f, const PointFunction& exact,
                                       const std::vector<int>& levels, const SolverOptions& solver = {});

/// ||T(Tu) - T^2 u|| over nodes in the middle half of every axis.
ConvergenceResult t2_consistency(int n, const std::vector<Expression>& coeffs, const PointFunction& u,
                                 const std::vector<int>& levels);

/// ||Q_s(T) u_f - f|| over interior nodes, u_f the Dirichlet Galerkin solution.
ConvergenceResult roundtrip_residual(int n, const std::vector<Expression>& coeffs, const Paravector& s,
                                     const PointFunction& f, const std::vector<int>& levels,
                                     const SolverOptions& solver = {});

}  // namespace sres
