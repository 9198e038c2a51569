// Command-line front end: bounds | region | solve | verify | sweep | maxcheck.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "sres/config.hpp"
#include "sres/errors.hpp"
#include "sres/maximization.hpp"
#include "sres/report_json.hpp"

namespace fs = std::filesystem;
using namespace sres;

namespace {

enum Exit { kOk = 0, kBoundFailed = 1, kConfig = 2, kHypothesis = 3, kSolver = 4 };

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::vector<std::string> points;
  bool export_matrix = false;
};

fs::path output_dir(const Options& o, const Config& c) {
  fs::path dir = o.out.empty() ? fs::path(c.output_dir) : fs::path(o.out);
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream os(path);
  os << j.dump(2) << '\n';
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "-"; }

struct Problem {
  BoxGrid grid;
  CoefficientField coeffs;
  std::vector<double> b;
  RegionParams params;
};

Problem load_problem(const Config& c) {
  BoxGrid g = build_grid(c);
  CoefficientField coeffs = build_coefficients(c, g);
  std::vector<double> b = build_robin_b(c, g);
  RegionParams p = build_region_params(c, coeffs, b);
  for (const auto& w : p.warnings) std::cerr << "warning: " << w << '\n';
  return {std::move(g), std::move(coeffs), std::move(b), std::move(p)};
}

void require_hypotheses(Theorem t, const RegionParams& p) {
  switch (t) {
    case Theorem::Dirichlet:
    case Theorem::DirichletBounded:
      require_K(p);
      break;
    case Theorem::Robin:
      require_robin_hypothesis(p);
      break;
    case Theorem::RobinConstant:
      require_robin_constant_hypothesis(p);
      break;
  }
}

std::vector<Paravector> points_of(const Options& o, const Config& c) {
  if (o.points.empty()) return c.points;
  std::string joined;
  for (const auto& p : o.points) joined += p + ";";
  return parse_points(joined, c.dimension);
}

int cmd_bounds(const Options& o, const Config& c) {
  const Problem pr = load_problem(c);
  const Json j = to_json(pr.params);
  write_json(output_dir(o, c) / "bounds.json", j);
  const auto& b = pr.params.bounds;
  std::cout << "m_a: " << fmt(b.m_a) << "\nM_a: " << fmt(b.M_a) << "\nM_a': " << fmt(b.M_a_prime)
            << "\nC_S: " << fmt(pr.params.C_S) << "\nC_P: " << fmt(pr.params.C_P) << "\nK_a: " << fmt(pr.params.K_a)
            << "\nD_ab: " << fmt(pr.params.D_ab) << '\n';
  require_hypotheses(c.theorem, pr.params);
  return kOk;
}

int cmd_region(const Options& o, const Config& c) {
  const Problem pr = load_problem(c);
  require_hypotheses(c.theorem, pr.params);
  Json all = Json::array();
  for (const auto& s : points_of(o, c)) {
    const BoundReport r = evaluate(c.theorem, s, pr.params);
    all.push_back(to_json(r));
    std::cout << "s0: " << fmt(r.s0) << ", |Im s|: " << fmt(r.im_abs)
              << ", in_region: " << (r.in_region ? "true" : "false");
    if (r.tau1) std::cout << ", tau1: " << fmt(r.tau1) << ", tau2: " << fmt(r.tau2);
    if (r.kappa0) std::cout << ", kappa0: " << fmt(r.kappa0) << ", kappa1: " << fmt(r.kappa1);
    if (r.robin_denominator) std::cout << ", robin_denom: " << fmt(r.robin_denominator);
    std::cout << '\n';
  }
  write_json(output_dir(o, c) / "region.json", Json{{"theorem", to_string(c.theorem)}, {"points", all}});
  return kOk;
}

int cmd_sweep(const Options& o, const Config& c) {
  const Problem pr = load_problem(c);
  require_hypotheses(c.theorem, pr.params);
  const auto rows = sweep(c.theorem, pr.params, c.sweep);
  const fs::path path = output_dir(o, c) / "sweep.csv";
  std::ofstream os(path);
  write_sweep_csv(os, rows);
  std::cout << "wrote " << rows.size() << " rows to " << path.string() << '\n';
  return kOk;
}

int cmd_solve(const Options& o, const Config& c) {
  const Problem pr = load_problem(c);
  const fs::path dir = output_dir(o, c);
  const auto sources = build_sources(c, pr.grid);
  Json all = Json::array();
  int idx = 0;
  for (const auto& s : points_of(o, c)) {
    const BoundReport br = evaluate(c.theorem, s, pr.params);
    if (!br.in_region) std::cerr << "note: s" << idx << " lies outside the certified region\n";
    const AssembledForm form = boundary_of(c.theorem) == BoundaryKind::Dirichlet
                                   ? assemble_dirichlet(s, pr.coeffs)
                                   : assemble_robin(s, pr.coeffs, pr.b);
    if (o.export_matrix) {
      std::ofstream ms(dir / ("matrix_s" + std::to_string(idx) + ".txt"));
      form.write_triplets(ms);
    }
    const FormSolver solver(form, c.solver);
    for (const auto& src : sources) {
      const SolveReport rep = solver.solve(src.f);
      const std::string stem = "solution_s" + std::to_string(idx) + "_" + src.name;
      std::ofstream us(dir / (stem + ".csv"));
      write_csv(us, rep.solution);
      all.push_back({{"s0", s.scalar()},
                     {"s_vec", std::vector<double>(s.vector_part().begin(), s.vector_part().end())},
                     {"source", src.name},
                     {"in_region", br.in_region},
                     {"relative_residual", rep.relative_residual},
                     {"iterations", rep.iterations},
                     {"direct", rep.direct},
                     {"l2", rep.l2},
                     {"seminorm", rep.seminorm},
                     {"h1", rep.h1},
                     {"solution_csv", stem + ".csv"}});
      std::cout << "s" << idx << " " << src.name << ": ||u||=" << fmt(rep.l2) << " ||u||_D=" << fmt(rep.seminorm)
                << " residual=" << fmt(rep.relative_residual) << '\n';
    }
    ++idx;
  }
  write_json(dir / "solve.json", Json{{"theorem", to_string(c.theorem)}, {"solves", all}});
  return kOk;
}

int cmd_verify(const Options& o, const Config& c) {
  VerificationCase vc = build_case(c);
  for (const auto& w : vc.params.warnings) std::cerr << "warning: " << w << '\n';
  if (!o.points.empty()) vc.points = points_of(o, c);
  require_hypotheses(c.theorem, vc.params);
  const VerificationReport rep = run_case(vc, o.threads);
  Json j = to_json(rep);
  const std::uint64_t seed = o.seed.value_or(c.seed);
  j["seed"] = seed;
  bool probe_ok = true;
  if (c.probe_samples > 0 && boundary_of(c.theorem) == BoundaryKind::Dirichlet) {
    std::vector<Paravector> inside;
    for (const auto& s : vc.points) {
      if (region_dirichlet(s.scalar(), s.norm(), vc.params)) inside.push_back(s);
    }
    const ProbeReport pr = coercivity_probe(vc.coeffs, vc.params, inside, c.probe_samples, seed);
    j["coercivity_probe"] = to_json(pr);
    probe_ok = pr.worst_margin >= -c.slack;
    std::cout << "coercivity probe worst margin: " << fmt(pr.worst_margin) << '\n';
  }
  j["pass"] = rep.pass && probe_ok;
  write_json(output_dir(o, c) / "verify.json", j);

  std::cout << std::left << std::setw(11) << "s0" << std::setw(13) << "|Im s|" << std::setw(10) << "source"
            << std::setw(8) << "region" << std::setw(17) << "||u||" << std::setw(17) << "bound" << std::setw(17)
            << "||u||_D" << std::setw(17) << "bound" << std::setw(17) << "||u||_H1" << std::setw(17) << "bound"
            << "status\n";
  for (const auto& r : rep.results) {
    double im = 0.0;
    for (double v : r.s_vec) im += v * v;
    std::cout << std::setw(11) << fmt(r.s0) << std::setw(13) << fmt(std::sqrt(im)) << std::setw(10) << r.source
              << std::setw(8) << (r.in_region ? "in" : "out") << std::setw(17) << fmt(r.l2) << std::setw(17)
              << fmt(r.l2_bound) << std::setw(17) << fmt(r.seminorm) << std::setw(17) << fmt(r.seminorm_bound)
              << std::setw(17) << fmt(r.h1) << std::setw(17) << fmt(r.h1_bound)
              << (!r.error.empty() ? "SOLVER FAILURE" : (!r.in_region ? "n/a" : (r.pass ? "ok" : "FAIL"))) << '\n';
  }
  if (rep.solver_failure) return kSolver;
  return rep.pass && probe_ok ? kOk : kBoundFailed;
}

int cmd_maxcheck(const Options& o, const Config& c) {
  const auto& m = c.maxcheck;
  const fs::path path = output_dir(o, c) / "maxcheck.csv";
  std::ofstream os(path);
  os << "x,y,region,alpha0,alpha1,sup1_closed,sup1_oracle,sup2_closed,sup2_oracle,max_abs_dev\n";
  os << std::setprecision(12);
  OracleOptions oo;
  oo.alpha_points = m.alpha_points;
  oo.delta_points = m.delta_points;
  bool ok = true;
  double worst = 0.0;
  for (int i = 1; i <= m.grid; ++i) {
    for (int j = 1; j <= m.grid; ++j) {
      const double x = m.x_max * i / m.grid, y = m.y_max * j / m.grid;
      const bool region = region_condition(x, y);
      const OracleResult orc = brute_force_oracle(x, y, oo);
      if (region != orc.region) ok = false;
      os << x << ',' << y << ',' << (region ? 1 : 0);
      if (region && orc.region) {
        const AlphaInterval iv = alpha_interval(x, y);
        const double s1 = sup_problem1(x, y), s2 = sup_problem2(x, y);
        const double dev = std::max(std::abs(s1 - orc.sup1), std::abs(s2 - orc.sup2));
        worst = std::max(worst, dev);
        if (dev > m.tolerance) ok = false;
        os << ',' << iv.alpha0 << ',' << iv.alpha1 << ',' << s1 << ',' << orc.sup1 << ',' << s2 << ',' << orc.sup2
           << ',' << dev << '\n';
      } else {
        os << ",,,,,,,\n";
      }
    }
  }
  std::cout << "maxcheck: " << m.grid * m.grid << " points, max deviation " << fmt(worst)
            << (ok ? ", all consistent" : ", MISMATCH") << "\nwrote " << path.string() << '\n';
  return ok ? kOk : kBoundFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"S-resolvent estimates for T = sum_i e_i a_i(x) d/dx_i"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "output directory (overrides [output] dir)");
  app.add_option("--seed", o.seed, "random seed (overrides [output] seed)");
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* bounds = app.add_subcommand("bounds", "coefficient bounds and theorem constants");
  auto* region = app.add_subcommand("region", "region membership and bound coefficients at spectral points");
  auto* solve_cmd = app.add_subcommand("solve", "solve the weak problem at spectral points");
  auto* verify = app.add_subcommand("verify", "check measured norms against the theorem bounds");
  auto* sweep_cmd = app.add_subcommand("sweep", "raster of the (s0, |Im s|) half-plane as CSV");
  auto* maxcheck = app.add_subcommand("maxcheck", "closed forms against the brute-force maximization oracle");
  for (auto* sub : {region, solve_cmd, verify}) {
    sub->add_option("--point", o.points, "spectral point \"s0 s1 ... sn\" (repeatable)");
  }
  solve_cmd->add_flag("--export-matrix", o.export_matrix, "write the Galerkin matrix as coordinate triplets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    Config c = o.config.empty() ? parse_config("") : load_config(o.config);
    if (o.seed) c.seed = *o.seed;
    if (*bounds) return cmd_bounds(o, c);
    if (*region) return cmd_region(o, c);
    if (*solve_cmd) return cmd_solve(o, c);
    if (*verify) return cmd_verify(o, c);
    if (*sweep_cmd) return cmd_sweep(o, c);
    if (*maxcheck) return cmd_maxcheck(o, c);
  } catch (const HypothesisViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kHypothesis;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}
