#include "sres/verification.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "sres/errors.hpp"
#include "sres/operators.hpp"

namespace sres {

BoundaryKind boundary_of(Theorem t) {
  return (t == Theorem::Dirichlet || t == Theorem::DirichletBounded) ? BoundaryKind::Dirichlet
                                                                      : BoundaryKind::Robin;
}

namespace {

void check(CaseResult& r, double measured, const std::optional<double>& bound, double slack) {
  if (!bound) return;
  const double ratio = *bound > 0.0 ? measured / *bound : (measured > 0.0 ? INFINITY : 0.0);
  r.worst_ratio = std::max(r.worst_ratio.value_or(0.0), ratio);
  if (measured > (1.0 + slack) * *bound) r.pass = false;
}

std::vector<CaseResult> run_point(const VerificationCase& c, const Paravector& s) {
  std::vector<CaseResult> out;
  const BoundReport br = evaluate(c.theorem, s, c.params);
  auto base = [&](const SourceTerm& src) {
    CaseResult r;
    r.s0 = s.scalar();
    r.s_vec.assign(s.vector_part().begin(), s.vector_part().end());
    r.source = src.name;
    r.in_region = br.in_region;
    r.f_norm = l2_norm(src.f);
    return r;
  };
  try {
    const AssembledForm form = boundary_of(c.theorem) == BoundaryKind::Dirichlet
                                   ? assemble_dirichlet(s, c.coeffs)
                                   : assemble_robin(s, c.coeffs, c.b);
    const FormSolver solver(form, c.solver);
    for (const auto& src : c.sources) {
      CaseResult r = base(src);
      const SolveReport sol = solver.solve(src.f);
      r.l2 = sol.l2;
      r.seminorm = sol.seminorm;
      r.h1 = sol.h1;
      r.residual = sol.relative_residual;
      r.iterations = sol.iterations;
      r.direct = sol.direct;
      if (br.in_region) {
        if (br.l2_coefficient) r.l2_bound = *br.l2_coefficient * r.f_norm;
        if (br.seminorm_coefficient) r.seminorm_bound = *br.seminorm_coefficient * r.f_norm;
        if (br.h1_coefficient) r.h1_bound = *br.h1_coefficient * r.f_norm;
        check(r, r.l2, r.l2_bound, c.slack);
        check(r, r.seminorm, r.seminorm_bound, c.slack);
        check(r, r.h1, r.h1_bound, c.slack);
      }
      out.push_back(std::move(r));
    }
  } catch (const SolverError& e) {
    for (const auto& src : c.sources) {
      CaseResult r = base(src);
      r.pass = false;
      r.residual = e.residual();
      r.error = e.what();
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace

VerificationReport run_case(const VerificationCase& c, int threads) {
  VerificationReport rep;
  rep.theorem = c.theorem;
  rep.slack = c.slack;
  if (boundary_of(c.theorem) == BoundaryKind::Robin && c.b.size() != c.coeffs.grid().node_count()) {
    throw InputError("Robin verification needs one b sample per grid node");
  }
  std::vector<std::vector<CaseResult>> per_point(c.points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < c.points.size(); i = next++) per_point[i] = run_point(c, c.points[i]);
  };
  const std::size_t nthreads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1,
                                                       std::max<std::size_t>(c.points.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& v : per_point) {
    for (auto& r : v) {
      if (!r.error.empty()) rep.solver_failure = true;
      rep.pass = rep.pass && r.pass;
      rep.results.push_back(std::move(r));
    }
  }
  return rep;
}

double coercivity_lower_bound(const RegionParams& p, double s0, double s_abs, double seminorm, double l2) {
  const double c1 = p.bounds.m_a * p.bounds.m_a - p.C_S * p.bounds.M_a_prime;
  const double M = p.bounds.M_a;
  const double a0 = std::abs(s0);
  const double D2 = seminorm * seminorm, L2 = l2 * l2;
  if (a0 == 0.0) return c1 * D2 + s_abs * s_abs * L2;
  const double lo = M * a0 / c1, hi = s_abs * s_abs / (M * a0);
  double delta = l2 > 0.0 ? seminorm / l2 : hi;
  delta = std::clamp(delta, lo, std::max(lo, hi));
  return (c1 - M * a0 / delta) * D2 + (s_abs * s_abs - M * a0 * delta) * L2;
}

ProbeReport coercivity_probe(const CoefficientField& coeffs, const RegionParams& params,
                             const std::vector<Paravector>& points, std::size_t samples, std::uint64_t seed) {
  const BoxGrid& g = coeffs.grid();
  const int n = g.dimension();
  const std::size_t C = g.components();
  ProbeReport rep;
  rep.seed = seed;
  rep.samples = samples;
  rep.worst_margin = INFINITY;

  // One fixed sample set shared by all points.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> mode(1, 3);
  std::vector<GridFunction> us;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::size_t it = 0; it < samples; ++it) {
    GridFunction u(g);
    const int kind = static_cast<int>(it % 3);  // noise, smooth, mixed
    const double noise = kind == 1 ? 0.0 : (kind == 0 ? 1.0 : 0.1);
    std::vector<int> freq(static_cast<std::size_t>(n));
    for (auto& f : freq) f = mode(rng);
    std::vector<double> amp(C);
    for (auto& a : amp) a = unif(rng);
    for (std::size_t k = 0; k < g.node_count(); ++k) {
      if (g.is_boundary(k)) continue;
      g.position(k, x);
      double smooth = kind == 0 ? 0.0 : 1.0;
      for (int i = 0; i < n; ++i) smooth *= std::sin(freq[i] * std::numbers::pi * x[i] / g.length(i));
      auto c = u.node_components(k);
      for (std::size_t a = 0; a < C; ++a) c[a] = amp[a] * smooth + noise * unif(rng);
    }
    us.push_back(std::move(u));
  }

  for (const auto& s : points) {
    ProbePoint pp;
    pp.s0 = s.scalar();
    pp.s_abs = s.norm();
    pp.worst_margin = INFINITY;
    const AssembledForm form = assemble_dirichlet(s, coeffs);
    for (const auto& u : us) {
      const double q = form.sc_value(u, u);
      const double bound = coercivity_lower_bound(params, pp.s0, pp.s_abs, sobolev_seminorm(u), l2_norm(u));
      const double margin = bound > 0.0 ? (q - bound) / bound : (q >= bound ? 0.0 : -INFINITY);
      pp.worst_margin = std::min(pp.worst_margin, margin);
    }
    if (us.empty()) pp.worst_margin = 0.0;
    rep.worst_margin = std::min(rep.worst_margin, pp.worst_margin);
    rep.points.push_back(pp);
  }
  if (rep.points.empty()) rep.worst_margin = 0.0;
  return rep;
}

double fit_order(const std::vector<ConvergenceLevel>& levels) {
  if (levels.size() < 2) throw InputError("order fit needs at least two levels");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(levels.size());
  for (const auto& l : levels) {
    const double lx = std::log(l.h), ly = std::log(l.error);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

namespace {

void finish(ConvergenceResult& r) {
  if (r.levels.size() < 3) throw InputError("convergence study needs at least 3 levels");
  r.exact = std::all_of(r.levels.begin(), r.levels.end(), [](const auto& l) { return l.error == 0.0; });
  r.order = r.exact ? INFINITY : fit_order(r.levels);
}

CoefficientField field_on(const BoxGrid& g, const std::vector<Expression>& coeffs) {
  return CoefficientField::from_expressions(g, coeffs);
}

}  // namespace

ConvergenceResult solution_convergence(int n, const std::vector<Expression>& coeffs, const Paravector& s,
                                       const PointFunction& f, const PointFunction& exact,
                                       const std::vector<int>& levels, const SolverOptions& solver) {
  ConvergenceResult r{"solution_l2_error", {}, 0.0, false};
  for (int m : levels) {
    const BoxGrid g = BoxGrid::cube(n, m);
    const CoefficientField c = field_on(g, coeffs);
    const SolveReport sol = solve(assemble_dirichlet(s, c), GridFunction::from_function(g, f), solver);
    GridFunction ref = GridFunction::from_function(g, exact);
    ref.clear_boundary();
    r.levels.push_back({m, g.spacing(0), l2_norm(sol.solution - ref)});
  }
  finish(r);
  return r;
}

ConvergenceResult t2_consistency(int n, const std::vector<Expression>& coeffs, const PointFunction& u,
                                 const std::vector<int>& levels) {
  ConvergenceResult r{"t_squared_consistency", {}, 0.0, false};
  for (int m : levels) {
    const BoxGrid g = BoxGrid::cube(n, m);
    const CoefficientField c = field_on(g, coeffs);
    const GridFunction ug = GridFunction::from_function(g, u);
    const GridFunction diff = apply_T(apply_T(ug, c), c) - apply_T2(ug, c);
    // Fixed window [L/4, 3L/4] per axis, so every level measures the same
    // region; T(Tu) also needs two forward neighbours.
    double acc = 0.0;
    for (std::size_t k = 0; k < g.node_count(); ++k) {
      bool deep = true;
      for (int i = 0; i < n; ++i) {
        const int ki = g.index_along(k, i);
        const double x = g.coordinate(i, ki), L = g.length(i), tol = 1e-9 * L;
        deep = deep && ki >= 1 && ki <= g.nodes(i) - 3 && x >= L / 4 - tol && x <= 3 * L / 4 + tol;
      }
      if (!deep) continue;
      double sq = 0.0;
      for (double v : diff.node_components(k)) sq += v * v;
      acc += g.weight(k) * sq;
    }
    r.levels.push_back({m, g.spacing(0), std::sqrt(acc)});
  }
  finish(r);
  return r;
}

ConvergenceResult roundtrip_residual(int n, const std::vector<Expression>& coeffs, const Paravector& s,
                                     const PointFunction& f, const std::vector<int>& levels,
                                     const SolverOptions& solver) {
  ConvergenceResult r{"q_s_roundtrip_residual", {}, 0.0, false};
  for (int m : levels) {
    const BoxGrid g = BoxGrid::cube(n, m);
    const CoefficientField c = field_on(g, coeffs);
    GridFunction fg = GridFunction::from_function(g, f);
    const SolveReport sol = solve(assemble_dirichlet(s, c), fg, solver);
    fg.clear_boundary();
    r.levels.push_back({m, g.spacing(0), interior_l2_norm(apply_Q_s(sol.solution, c, s) - fg)});
  }
  finish(r);
  return r;
}

}  // namespace sres
