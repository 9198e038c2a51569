// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "sres/clifford.hpp"
#include "sres/errors.hpp"
#include "sres/expression.hpp"
#include "sres/maximization.hpp"
#include "sres/spectral_region.hpp"
#include "sres/verification.hpp"
#include "sres/weak_form.hpp"

using namespace sres;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<Expression> linear_coeffs() {
  return {Expression("1 + x1/4", 3), Expression("1 + x2/4", 3), Expression("1 + x3/4", 3)};
}

double sine_product(std::span<const double> x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]) * std::sin(pi * x[2]); }

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome clifford_suite() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  double worst = 0.0, worst_para = 0.0;
  bool exact = true;
  auto rel = [&](double got, double want, double scale) { worst = std::max(worst, std::abs(got - want) / scale); };
  auto le = [&](double lhs, double rhs) { worst = std::max(worst, (lhs - rhs) / rhs); };
  for (int n : {3, 4, 5}) {
    const auto one = MultiVector::scalar(n, 1.0);
    for (int i = 1; i <= n; ++i) {
      const auto ei = MultiVector::generator(n, i);
      exact = exact && max_abs_difference(ei * ei, -one) == 0.0;
      for (int j = i + 1; j <= n; ++j) {
        const auto ej = MultiVector::generator(n, j);
        exact = exact && max_abs_difference(ei * ej, -(ej * ei)) == 0.0;
      }
    }
    const double c = std::pow(2.0, n / 2.0);
    for (int t = 0; t < 1000; ++t) {
      const auto x = oracle::random_multivector(n, rng);
      const auto y = oracle::random_multivector(n, rng);
      const auto z = oracle::random_multivector(n, rng);
      const double nx = norm(x), ny = norm(y), nz = norm(z);
      rel(0, max_abs_difference((x * y) * z, x * (y * z)), nx * ny * nz);
      rel(0, max_abs_difference(conjugate(x * y), conjugate(y) * conjugate(x)), nx * ny);
      rel(norm_squared(x), scalar_part(x * conjugate(x)), nx * nx);
      rel(norm_squared(x), scalar_part(conjugate(x) * x), nx * nx);
      for (std::uint32_t a = 0; a < x.size(); ++a) {
        rel(scalar_part(x * conjugate(MultiVector::basis(n, BasisIndex(a)))), x.component(a), nx);
      }
      // module V = R_n with <v, w> = conj(v) w
      le(norm(x * y), c * nx * ny);
      le(norm(y * x), c * nx * ny);
      le(norm(conjugate(x) * y), c * nx * ny);
      le(std::abs(scalar_part(conjugate(x) * y)), nx * ny);
      rel(0, max_abs_difference(conjugate(y) * (z * x), conjugate(conjugate(z) * y) * x), nx * ny * nz);
      const auto s = oracle::random_paravector(n, rng);
      const double ns = s.norm();
      const auto sm = s.to_multivector();
      worst_para = std::max(worst_para, std::abs(norm(x * sm) - ns * nx) / (ns * nx));
      worst_para = std::max(worst_para, std::abs(norm(sm * x) - ns * nx) / (ns * nx));
    }
  }
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = exact && worst <= 1e-10 && worst_para <= 1e-12 && t < 10.0;
  o.detail = "generators exact " + std::string(exact ? "yes" : "no") + ", worst rel " + fmt("%.2e", worst) +
             ", paravector " + fmt("%.2e", worst_para) + ", " + fmt("%.2f s", t);
  return o;
}

Outcome sign_table() {
  std::size_t mismatches = 0, pairs = 0;
  for (int n = 1; n <= 6; ++n) {
    const std::uint32_t size = 1u << n;
    for (std::uint32_t a = 0; a < size; ++a) {
      for (std::uint32_t b = 0; b < size; ++b) {
        const auto got = basis_product(BasisIndex(a), BasisIndex(b));
        const auto want = oracle::permutation_sort_product(a, b, n);
        ++pairs;
        if (got.sign != want.sign || got.index.mask() != want.mask) ++mismatches;
      }
    }
  }
  return {mismatches == 0, std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches"};
}

Outcome lemma_suite() {
  const auto t0 = Clock::now();
  OracleOptions opt;
  opt.alpha_points = 10000;
  opt.delta_points = 300;
  int flag_mismatch = 0, cells = 0, in_region = 0;
  double worst_alpha = 0.0, worst_sup = 0.0;
  for (int i = 1; i <= 50; ++i) {
    for (int j = 1; j <= 50; ++j) {
      const double x = 3.0 * i / 50, y = 3.0 * j / 50;
      ++cells;
      const auto o = brute_force_oracle(x, y, opt);
      if (o.region != region_condition(x, y)) ++flag_mismatch;
      if (!o.region || !region_condition(x, y)) continue;
      ++in_region;
      const auto iv = alpha_interval(x, y);
      const double step = o.alpha_step + opt.margin;
      worst_alpha = std::max({worst_alpha, std::abs(o.alpha_lo - iv.alpha0) / step, std::abs(o.alpha_hi - iv.alpha1) / step});
      worst_sup = std::max({worst_sup, std::abs(o.sup1 - sup_problem1(x, y)), std::abs(o.sup2 - sup_problem2(x, y))});
    }
  }
  const double t = seconds_since(t0);
  Outcome o;
  o.pass = flag_mismatch == 0 && worst_alpha <= 1.0 + 1e-9 && worst_sup <= 2e-3 && t < 30.0;
  o.detail = std::to_string(cells) + " cells (" + std::to_string(in_region) + " in region), flag mismatches " +
             std::to_string(flag_mismatch) + ", alpha endpoints " + fmt("%.3f", worst_alpha) + " steps, sup error " +
             fmt("%.2e", worst_sup) + ", " + fmt("%.1f s", t);
  return o;
}

Outcome constants() {
  // Gamma(3) = 2, Gamma(3/2) = sqrt(pi)/2, Gamma(4) = 6, Gamma(2) = 1
  const double hand3 = std::pow(3 * pi, -0.5) * std::cbrt(2.0 / (std::sqrt(pi) / 2));
  const double hand4 = std::pow(8 * pi, -0.5) * std::pow(6.0, 0.25);
  const double c3 = sobolev_constant(3), c4 = sobolev_constant(4);
  bool pass = std::abs(c3 - 0.427259) <= 1e-5 && std::abs(c4 - 0.312195) <= 1e-5 && std::abs(c3 - hand3) <= 1e-12 &&
              std::abs(c4 - hand4) <= 1e-12;

  CoefficientBounds b{1.0, 1.5, 0.4, {1.5 / std::sqrt(3.0), 1.5 / std::sqrt(3.0), 1.5 / std::sqrt(3.0)}};
  const auto p = make_region_params(3, b, 0.6, {});
  const double K = *p.K_a, M = p.bounds.M_a, CP = p.C_P;
  double seam = 0.0;
  int checked = 0;
  const double a = M / (CP * K * K);
  for (double im : {1.5 * K * a, 3.0 * K * a, 10.0 * K * a}) {
    const double lo = a * (1 - 1e-12), hi = a * (1 + 1e-12);
    if (!region_dirichlet_bounded(lo, std::hypot(lo, im), p) || !region_dirichlet_bounded(hi, std::hypot(hi, im), p)) continue;
    seam = std::max(seam, std::abs(kappas(lo, std::hypot(lo, im), p).kappa0 - kappas(hi, std::hypot(hi, im), p).kappa0));
    ++checked;
  }
  for (double s0 : {0.05, 0.2, 0.3}) {
    const double s2 = M * s0 / CP;
    const double lo = std::sqrt(s2 * (1 - 1e-12)), hi = std::sqrt(s2 * (1 + 1e-12));
    if (!region_dirichlet_bounded(s0, lo, p) || !region_dirichlet_bounded(s0, hi, p)) continue;
    seam = std::max(seam, std::abs(kappas(s0, lo, p).kappa1 - kappas(s0, hi, p).kappa1));
    ++checked;
  }
  pass = pass && checked >= 4 && seam <= 1e-9;
  return {pass, "C_S(3) = " + fmt("%.7f", c3) + ", C_S(4) = " + fmt("%.7f", c4) + ", " + std::to_string(checked) +
                    " seam points, max jump " + fmt("%.1e", seam)};
}

Outcome analytic_solve() {
  const auto t0 = Clock::now();
  const BoxGrid g = BoxGrid::cube(3, 17);
  const auto c = CoefficientField::constant(g, {1, 1, 1});
  const Paravector s(0.0, {2, 0, 0});
  const auto f = GridFunction::from_scalar(g, sine_product);
  const auto form = assemble_dirichlet(s, c);
  const auto r = solve(form, f);
  const double nf = l2_norm(f);
  const double want = nf / (3 * pi * pi + 4);
  const auto bound = evaluate(Theorem::Dirichlet, s, make_region_params(c, {}));
  const double t = seconds_since(t0);
  const double dev = std::abs(r.l2 - want) / want;
  Outcome o;
  o.pass = bound.in_region && std::abs(*bound.tau1 - 0.25) < 1e-12 && std::abs(*bound.tau2 - 0.5) < 1e-12 &&
           dev <= 0.05 && r.l2 <= 0.25 * nf && r.seminorm <= 0.5 * nf && t < 60.0;
  o.detail = "||u|| / analytic - 1 = " + fmt("%.4f", r.l2 / want - 1) + ", ||u||/||f|| = " + fmt("%.4f", r.l2 / nf) +
             " (<= 0.25), ||u||_D/||f|| = " + fmt("%.4f", r.seminorm / nf) + " (<= 0.5), " + fmt("%.1f s", t);
  return o;
}

Outcome variable_bounds() {
  const BoxGrid g = BoxGrid::cube(3, 17);
  const auto coeffs = CoefficientField::from_expressions(g, linear_coeffs());
  const std::vector<Paravector> candidates{Paravector(0.0, {3, 0, 0}),   Paravector(0.2, {0, 4, 0}),
                                           Paravector(0.5, {2, 2, 2}),   Paravector(-0.4, {0, 0, 6}),
                                           Paravector(1.0, {10, 0, 0}), Paravector(0.0, {1, 1, 0}),
                                           Paravector(-1.5, {0, 8, 3}), Paravector(0.1, {2.5, 0, 0})};
  std::string detail;
  bool pass = true;
  for (Theorem th : {Theorem::Dirichlet, Theorem::Robin}) {
    RegionInputs in;
    in.b_min = 1.0;
    const auto params = make_region_params(coeffs, in);
    std::vector<Paravector> pts;
    for (const auto& s : candidates) {
      if (pts.size() < 5 && evaluate(th, s, params).in_region) pts.push_back(s);
    }
    const auto b = th == Theorem::Robin ? std::vector<double>(g.node_count(), 1.0) : std::vector<double>{};
    VerificationCase vc{th, coeffs, b, params, pts, {{"sine", GridFunction::from_scalar(g, sine_product)}}, 0.05, {}};
    const auto rep = run_case(vc, 1);
    double worst_ratio = 0.0, worst_res = 0.0;
    bool ok = pts.size() == 5 && rep.pass && !rep.solver_failure;
    for (const auto& r : rep.results) {
      ok = ok && r.in_region && r.worst_ratio && r.error.empty();
      if (r.worst_ratio) worst_ratio = std::max(worst_ratio, *r.worst_ratio);
      worst_res = std::max(worst_res, r.residual);
    }
    ok = ok && worst_ratio <= 1.05 && worst_res <= 1e-10;
    pass = pass && ok;
    detail += to_string(th) + ": " + std::to_string(pts.size()) + " points, worst measured/bound " +
              fmt("%.3f", worst_ratio) + ", residual " + fmt("%.1e", worst_res) + "; ";
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome consistency() {
  const std::vector<int> levels{9, 17, 33};
  const auto u = [](std::span<const double> x) {
    MultiVector v(3);
    v[BasisIndex{}] = std::sin(pi * x[0]) * std::cos(x[1]) * x[2];
    v[BasisIndex(0b110u)] = std::exp(x[0]) * x[1] * x[1];
    return v;
  };
  const auto tt = t2_consistency(3, linear_coeffs(), u, levels);
  const auto f = [](std::span<const double> x) { return MultiVector::scalar(3, sine_product(x)); };
  const auto rt = roundtrip_residual(3, linear_coeffs(), Paravector(0.2, {2, 0, 0}), f, levels);
  std::string e1, e2;
  for (const auto& l : tt.levels) e1 += fmt(" %.3g", l.error);
  for (const auto& l : rt.levels) e2 += fmt(" %.3g", l.error);
  return {tt.order >= 0.9 && rt.order >= 0.9,
          "T(Tu) vs T^2 u order " + fmt("%.2f", tt.order) + " (" + e1.substr(1) + "), Q_s round trip order " +
              fmt("%.2f", rt.order) + " (" + e2.substr(1) + ")"};
}

Outcome sweeps() {
  const BoxGrid g = BoxGrid::cube(3, 17);
  const auto coeffs = CoefficientField::from_expressions(g, linear_coeffs());
  const auto params = make_region_params(coeffs, {});
  bool pass = true;

  // imaginary axis: the s0 = 0 column of a three-column window
  SweepWindow axis{-1.0, 1.0, 5.0, 500.0, 3, 200};
  const auto rows = sweep(Theorem::Dirichlet, params, axis);
  std::vector<double> im, t1, t2;
  for (const auto& r : rows) {
    if (std::abs(r.s0) > 1e-12 || !r.in_region) continue;
    im.push_back(r.im_abs);
    t1.push_back(*r.tau1);
    t2.push_back(*r.tau2);
  }
  const double k1 = loglog_slope(im, t1), k2 = loglog_slope(im, t2);
  pass = pass && im.size() == 200 && std::abs(k1 + 2) <= 0.1 && std::abs(k2 + 1) <= 0.1;

  SweepWindow box{-1.0, 1.0, 0.0, 2.0, 201, 101};
  const auto bounded = sweep(Theorem::DirichletBounded, params, box);
  bool origin = false;
  for (const auto& r : bounded) {
    if (std::abs(r.s0) < 1e-12 && r.im_abs == 0.0) origin = r.in_region;
  }
  pass = pass && origin;

  // Robin, unit coefficients, b = -0.05 < 0 so that D_ab > 0
  const auto unit = CoefficientField::constant(g, {1, 1, 1});
  RegionInputs in;
  in.b_min = -0.05;
  in.trace_norm = estimate_trace_norm(g);
  const auto rp = make_region_params(unit, in);
  const double D = rp.D_ab, m2 = rp.bounds.m_a * rp.bounds.m_a, M2 = rp.bounds.M_a * rp.bounds.M_a;
  SweepWindow rw{-1.0, 1.0, 0.0, 2.5, 201, 251};
  const double pixel = (rw.im_max - rw.im_min) / (rw.im_points - 1);
  const auto robin = sweep(Theorem::Robin, rp, rw);
  double worst = 0.0, axis_edge = NAN;
  bool symmetric = true;
  for (int c = 0; c < rw.s0_points; ++c) {
    double first = NAN;
    for (int r = 0; r < rw.im_points; ++r) {
      const auto& px = robin[static_cast<std::size_t>(r * rw.s0_points + c)];
      const auto& mirror = robin[static_cast<std::size_t>(r * rw.s0_points + (rw.s0_points - 1 - c))];
      symmetric = symmetric && px.in_region == mirror.in_region;
      if (px.in_region && std::isnan(first)) first = px.im_abs;
    }
    const double s0 = robin[static_cast<std::size_t>(c)].s0;
    const double boundary = std::sqrt(std::max(0.0, M2 * s0 * s0 / (m2 - D) + D - s0 * s0));
    if (boundary > rw.im_max) continue;
    worst = std::max(worst, std::isnan(first) ? INFINITY : std::abs(first - boundary) / pixel);
    if (c == rw.s0_points / 2) axis_edge = first;
  }
  pass = pass && D > 0 && symmetric && worst <= 1.0 && std::abs(axis_edge - std::sqrt(D)) <= pixel;

  return {pass, "tau1 slope " + fmt("%.3f", k1) + ", tau2 slope " + fmt("%.3f", k2) + ", bounded-domain origin " +
                    (origin ? "in region" : "outside") + ", Robin D_ab = " + fmt("%.3f", D) + ", gap edge " +
                    fmt("%.3f", axis_edge) + " vs sqrt(D) " + fmt("%.3f", std::sqrt(D)) + ", worst column " +
                    fmt("%.2f", worst) + " px"};
}

Outcome coercivity() {
  const std::vector<Paravector> pts{Paravector(0.0, {3, 0, 0}), Paravector(0.3, {0, 4, 0}), Paravector(-0.5, {1, 2, 5})};
  std::vector<double> slack;
  std::vector<double> margins;
  bool region = true;
  for (int m : {9, 17}) {
    const BoxGrid g = BoxGrid::cube(3, m);
    const auto coeffs = CoefficientField::from_expressions(g, linear_coeffs());
    const auto params = make_region_params(coeffs, {});
    for (const auto& s : pts) region = region && evaluate(Theorem::Dirichlet, s, params).in_region;
    const auto rep = coercivity_probe(coeffs, params, pts, 200, 17);
    margins.push_back(rep.worst_margin);
    slack.push_back(std::max(0.0, -rep.worst_margin));
  }
  return {region && margins[0] >= -0.05 && margins[1] >= -0.05 && slack[1] <= slack[0],
          "worst margin " + fmt("%.4f", margins[0]) + " on 9^3, " + fmt("%.4f", margins[1]) + " on 17^3 (slack " +
              fmt("%.4f", slack[0]) + " -> " + fmt("%.4f", slack[1]) + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Clifford algebra identities, n = 3, 4, 5", clifford_suite},
      {"basis product sign table, n <= 6", sign_table},
      {"maximization closed forms against brute force", lemma_suite},
      {"Sobolev constants and kappa seams", constants},
      {"constant-coefficient analytic solve on 17^3", analytic_solve},
      {"variable-coefficient bounds, Dirichlet and Robin", variable_bounds},
      {"discretization consistency over 9, 17, 33", consistency},
      {"region sweeps", sweeps},
      {"coercivity probe", coercivity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
