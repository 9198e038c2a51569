#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sres/clifford.hpp"
#include "sres/coefficients.hpp"
#include "sres/grid.hpp"

namespace sres {

enum class Theorem { Dirichlet, DirichletBounded, Robin, RobinConstant };

std::string to_string(Theorem t);
/// Accepts "dirichlet", "dirichlet_bounded", "robin", "robin_constant".
Theorem theorem_from_string(const std::string& name);

/// C_S = (pi n (n-2))^{-1/2} (Gamma(n) / Gamma(n/2))^{1/n}, n >= 3.
double sobolev_constant(int n);
/// d / pi with d the shortest box side.
double poincare_constant(const BoxGrid& grid);

/// sqrt of the largest Rayleigh quotient ||u||^2_{L^2(boundary)} / ||u||^2_{H^1}
/// over discrete scalar functions, by power iteration.
double estimate_trace_norm(const BoxGrid& grid, int iterations = 200, double tolerance = 1e-10);

struct RegionInputs {
  std::optional<double> poincare;   // defaults to poincare_constant(grid)
  double sobolev_h1_multiplier = 1.0;
  double trace_norm = 0.0;           // ||tau_D||
  double b_min = 0.0;                // inf of the Robin coefficient
  bool constant_coefficients = false;
};

struct RegionParams {
  int n = 3;
  CoefficientBounds bounds;
  double C_S = 0.0;
  double C_P = 0.0;
  double sobolev_h1_multiplier = 1.0;
  double trace_norm = 0.0;
  double b_min = 0.0;
  double b_min_neg = 0.0;  // ||min{b, 0}||_inf
  double D_ab = 0.0;
  /// Empty when m_a^2 <= C_S M_a'.
  std::optional<double> K_a;
  bool constant_coefficients = false;
  std::vector<std::string> warnings;
};

RegionParams make_region_params(int n, const CoefficientBounds& bounds, double poincare,
                                const RegionInputs& inputs);
RegionParams make_region_params(const CoefficientField& coeffs, const RegionInputs& inputs);

/// Throws HypothesisViolation("m_a^2 > C_S M_a'") when K_a is undefined.
double require_K(const RegionParams& p);
/// Throws HypothesisViolation("m_a^2 > D_ab") for the Robin theorem.
void require_robin_hypothesis(const RegionParams& p);
/// Throws HypothesisViolation for the constant-coefficient Robin corollary.
void require_robin_constant_hypothesis(const RegionParams& p);

struct TauPair {
  double tau1;
  double tau2;
};
struct KappaPair {
  double kappa0;
  double kappa1;
};

bool region_dirichlet(double s0, double s_abs, const RegionParams& p);
TauPair dirichlet_tau(double s0, double s_abs, const RegionParams& p);

bool region_dirichlet_bounded(double s0, double s_abs, const RegionParams& p);
KappaPair kappas(double s0, double s_abs, const RegionParams& p);

bool region_robin(double s0, double s_abs, const RegionParams& p);
/// |s|^2 + m_a^2 - 2 D_ab - sqrt((|s|^2 - m_a^2)^2 + 4 M_a^2 s0^2).
double robin_denominator(double s0, double s_abs, const RegionParams& p);
/// 2 / robin_denominator; requires region membership.
double robin_bound(double s0, double s_abs, const RegionParams& p);

bool region_robin_constant(double s0, double s_abs, const RegionParams& p);
TauPair robin_constant_tau(double s0, double s_abs, const RegionParams& p);

struct BoundReport {
  Theorem theorem = Theorem::Dirichlet;
  double s0 = 0.0;
  double im_abs = 0.0;
  bool in_region = false;
  std::optional<double> tau1, tau2, kappa0, kappa1, robin_denominator;
  /// Bound coefficients per norm: ||u||_X <= coefficient * ||f||.
  std::optional<double> l2_coefficient, seminorm_coefficient, h1_coefficient;
  std::string note;
};

BoundReport evaluate(Theorem t, double s0, double im_abs, const RegionParams& p);
BoundReport evaluate(Theorem t, const Paravector& s, const RegionParams& p);

struct SweepWindow {
  double s0_min = -2.0, s0_max = 2.0;
  double im_min = 0.0, im_max = 2.0;
  int s0_points = 201, im_points = 101;
};

/// Row-major raster (im outer, s0 inner) over a linspace grid.
std::vector<BoundReport> sweep(Theorem t, const RegionParams& p, const SweepWindow& w);
void write_sweep_csv(std::ostream& os, const std::vector<BoundReport>& rows);

}  // namespace sres
