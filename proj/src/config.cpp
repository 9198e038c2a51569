#include "sres/config.hpp"

#include <algorithm>
#include <filesystem>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sres/errors.hpp"
#include "sres/expression.hpp"

namespace sres {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

double to_double(const std::string& where, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) throw ConfigError(where + ": expected a number, got '" + text + "'");
  return v;
}

long long to_integer(const std::string& where, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) throw ConfigError(where + ": expected an integer, got '" + text + "'");
  return v;
}

// Parses "1", "scalar", "e12", "e1_10" into a blade of R_n.
BasisIndex parse_label(const std::string& where, const std::string& label, int n) {
  if (label == "1" || label == "scalar") return BasisIndex{};
  if (label.size() < 2 || label[0] != 'e') throw ConfigError(where + ": bad component label '" + label + "'");
  std::vector<int> gens;
  const std::string body = label.substr(1);
  if (body.find('_') != std::string::npos) {
    std::stringstream ss(body);
    for (std::string part; std::getline(ss, part, '_');) {
      gens.push_back(static_cast<int>(to_integer(where, part)));
    }
  } else {
    for (char ch : body) {
      if (ch < '1' || ch > '9') throw ConfigError(where + ": bad component label '" + label + "'");
      gens.push_back(ch - '0');
    }
  }
  if (!std::is_sorted(gens.begin(), gens.end())) {
    throw ConfigError(where + ": generators in '" + label + "' must be ascending");
  }
  for (int g : gens) {
    if (g < 1 || g > n) throw ConfigError(where + ": generator e" + std::to_string(g) + " not in R_" + std::to_string(n));
  }
  try {
    return BasisIndex::from_generators(gens);
  } catch (const InputError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

class Section {
 public:
  Section(std::string name, const pt::ptree* tree, std::set<std::string> allowed)
      : name_(std::move(name)), tree_(tree), allowed_(std::move(allowed)) {
    if (!tree_) return;
    for (const auto& [key, child] : *tree_) {
      if (!child.empty()) throw ConfigError("[" + name_ + "]: nested key '" + key + "'");
      if (!allowed_.count(key)) throw ConfigError("[" + name_ + "]: unknown key '" + key + "'");
    }
  }

  std::optional<std::string> get(const std::string& key) const {
    if (!tree_) return std::nullopt;
    auto it = tree_->find(key);
    if (it == tree_->not_found()) return std::nullopt;
    return trim(it->second.data());
  }
  std::string where(const std::string& key) const { return "[" + name_ + "] " + key; }

  template <typename T>
  void read_double(const std::string& key, T& out) const {
    if (auto v = get(key)) out = static_cast<T>(to_double(where(key), *v));
  }
  template <typename T>
  void read_int(const std::string& key, T& out) const {
    if (auto v = get(key)) {
      const long long x = to_integer(where(key), *v);
      if (x < 0 && std::is_unsigned_v<T>) throw ConfigError(where(key) + ": must be nonnegative");
      out = static_cast<T>(x);
    }
  }

 private:
  std::string name_;
  const pt::ptree* tree_;
  std::set<std::string> allowed_;
};

const pt::ptree* child(const pt::ptree& root, const std::string& name) {
  auto it = root.find(name);
  return it == root.not_found() ? nullptr : &it->second;
}

}  // namespace

std::vector<Paravector> parse_points(const std::string& text, int n) {
  std::vector<Paravector> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ';');) {
    const auto words = split_ws(item);
    if (words.empty()) continue;
    if (static_cast<int>(words.size()) > n + 1) {
      throw ConfigError("spectral point '" + trim(item) + "' has more than " + std::to_string(n + 1) + " entries");
    }
    std::vector<double> vec(static_cast<std::size_t>(n), 0.0);
    const double s0 = to_double("spectral point", words[0]);
    for (std::size_t i = 1; i < words.size(); ++i) vec[i - 1] = to_double("spectral point", words[i]);
    out.emplace_back(s0, std::move(vec));
  }
  return out;
}

Config parse_config(const std::string& text, const std::string& base_dir) {
  pt::ptree root;
  try {
    std::istringstream is(text);
    pt::read_ini(is, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  Config c;
  c.source_path = base_dir;

  const std::set<std::string> known = {"problem", "coefficients", "robin",   "constants", "spectral",
                                       "sweep",   "solver",       "verify",  "maxcheck",  "output"};
  for (const auto& [name, tree] : root) {
    if (tree.empty() && !tree.data().empty()) throw ConfigError("key '" + name + "' outside any section");
    if (!known.count(name) && name.rfind("source.", 0) != 0) throw ConfigError("unknown section [" + name + "]");
  }

  const Section problem("problem", child(root, "problem"), {"dimension", "lengths", "nodes", "theorem"});
  problem.read_int("dimension", c.dimension);
  if (c.dimension < kMinDimension || c.dimension > kMaxDimension) {
    throw ConfigError("[problem] dimension: must lie in [" + std::to_string(kMinDimension) + ", " +
                      std::to_string(kMaxDimension) + "]");
  }
  const auto n = static_cast<std::size_t>(c.dimension);
  c.lengths.assign(n, 1.0);
  c.nodes.assign(n, 17);
  if (auto v = problem.get("lengths")) {
    const auto w = split_ws(*v);
    if (w.size() != 1 && w.size() != n) throw ConfigError("[problem] lengths: need 1 or n values");
    for (std::size_t i = 0; i < n; ++i) c.lengths[i] = to_double("[problem] lengths", w[w.size() == 1 ? 0 : i]);
  }
  if (auto v = problem.get("nodes")) {
    const auto w = split_ws(*v);
    if (w.size() != 1 && w.size() != n) throw ConfigError("[problem] nodes: need 1 or n values");
    for (std::size_t i = 0; i < n; ++i) {
      c.nodes[i] = static_cast<int>(to_integer("[problem] nodes", w[w.size() == 1 ? 0 : i]));
    }
  }
  if (auto v = problem.get("theorem")) {
    try {
      c.theorem = theorem_from_string(*v);
    } catch (const InputError& e) {
      throw ConfigError(std::string("[problem] theorem: ") + e.what());
    }
  }

  std::set<std::string> coeff_keys = {"samples"};
  for (int i = 1; i <= c.dimension; ++i) coeff_keys.insert("a" + std::to_string(i));
  const Section coeffs("coefficients", child(root, "coefficients"), coeff_keys);
  if (auto v = coeffs.get("samples")) c.coefficient_samples = *v;
  for (int i = 1; i <= c.dimension; ++i) {
    auto v = coeffs.get("a" + std::to_string(i));
    if (v && !c.coefficient_samples.empty()) {
      throw ConfigError("[coefficients]: give either samples or a1..an, not both");
    }
    c.coefficients.push_back(v.value_or("1"));
  }

  const Section robin("robin", child(root, "robin"), {"b", "trace_norm"});
  if (auto v = robin.get("b")) c.robin_b = *v;
  if (auto v = robin.get("trace_norm")) c.trace_norm = to_double(robin.where("trace_norm"), *v);

  const Section constants("constants", child(root, "constants"), {"poincare", "sobolev_h1_multiplier"});
  if (auto v = constants.get("poincare")) c.poincare = to_double(constants.where("poincare"), *v);
  constants.read_double("sobolev_h1_multiplier", c.sobolev_h1_multiplier);

  const Section spectral("spectral", child(root, "spectral"), {"points"});
  if (auto v = spectral.get("points")) c.points = parse_points(*v, c.dimension);

  const Section sweep("sweep", child(root, "sweep"),
                      {"s0_min", "s0_max", "im_min", "im_max", "s0_points", "im_points"});
  sweep.read_double("s0_min", c.sweep.s0_min);
  sweep.read_double("s0_max", c.sweep.s0_max);
  sweep.read_double("im_min", c.sweep.im_min);
  sweep.read_double("im_max", c.sweep.im_max);
  sweep.read_int("s0_points", c.sweep.s0_points);
  sweep.read_int("im_points", c.sweep.im_points);

  const Section solver("solver", child(root, "solver"), {"tolerance", "max_iterations", "direct_limit", "restart"});
  solver.read_double("tolerance", c.solver.tolerance);
  solver.read_int("max_iterations", c.solver.max_iterations);
  solver.read_int("direct_limit", c.solver.direct_limit);
  solver.read_int("restart", c.solver.restart);

  const Section verify("verify", child(root, "verify"), {"slack", "probe_samples"});
  verify.read_double("slack", c.slack);
  verify.read_int("probe_samples", c.probe_samples);

  const Section maxcheck("maxcheck", child(root, "maxcheck"),
                         {"grid", "x_max", "y_max", "alpha_points", "delta_points", "tolerance"});
  maxcheck.read_int("grid", c.maxcheck.grid);
  maxcheck.read_double("x_max", c.maxcheck.x_max);
  maxcheck.read_double("y_max", c.maxcheck.y_max);
  maxcheck.read_int("alpha_points", c.maxcheck.alpha_points);
  maxcheck.read_int("delta_points", c.maxcheck.delta_points);
  maxcheck.read_double("tolerance", c.maxcheck.tolerance);

  const Section output("output", child(root, "output"), {"seed", "dir"});
  output.read_int("seed", c.seed);
  if (auto v = output.get("dir")) c.output_dir = *v;

  for (const auto& [name, tree] : root) {
    if (name.rfind("source.", 0) != 0) continue;
    SourceSpec src;
    src.name = name.substr(7);
    if (src.name.empty()) throw ConfigError("[source.]: empty source name");
    std::set<std::uint32_t> seen;
    for (const auto& [key, value] : tree) {
      const std::string where = "[" + name + "] " + key;
      const BasisIndex idx = parse_label(where, key, c.dimension);
      if (!seen.insert(idx.mask()).second) throw ConfigError(where + ": component given twice");
      src.components[idx.label()] = trim(value.data());
    }
    c.sources.push_back(std::move(src));
  }

  // Semantic checks that need no computation.
  for (std::size_t i = 0; i < n; ++i) {
    if (!(c.lengths[i] > 0.0)) throw ConfigError("[problem] lengths: must be positive");
    if (c.nodes[i] < 3) throw ConfigError("[problem] nodes: need at least 3 per axis");
  }
  if (!(c.solver.tolerance > 0.0)) throw ConfigError("[solver] tolerance: must be positive");
  if (c.solver.restart < 1 || c.solver.max_iterations < 1) throw ConfigError("[solver]: iteration counts must be positive");
  if (!(c.slack >= 0.0)) throw ConfigError("[verify] slack: must be nonnegative");
  if (c.sweep.s0_points < 2 || c.sweep.im_points < 2) throw ConfigError("[sweep]: resolution must be at least 2x2");
  if (c.maxcheck.grid < 1 || c.maxcheck.alpha_points < 2 || c.maxcheck.delta_points < 2) {
    throw ConfigError("[maxcheck]: grid sizes too small");
  }
  // Expressions must parse.
  try {
    for (const auto& e : c.coefficients) Expression(e, c.dimension);
    Expression(c.robin_b, c.dimension);
    for (const auto& s : c.sources) {
      for (const auto& [label, e] : s.components) Expression(e, c.dimension);
    }
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), dir.empty() ? "." : dir.string());
}

BoxGrid build_grid(const Config& c) { return BoxGrid(c.lengths, c.nodes); }

CoefficientField build_coefficients(const Config& c, const BoxGrid& g) {
  if (c.coefficient_samples.empty()) {
    std::vector<Expression> a;
    for (const auto& e : c.coefficients) a.emplace_back(e, c.dimension);
    return CoefficientField::from_expressions(g, a);
  }
  std::filesystem::path p(c.coefficient_samples);
  if (p.is_relative()) p = std::filesystem::path(c.source_path) / p;
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot open coefficient samples '" + p.string() + "'");
  const int n = g.dimension();
  std::vector<std::vector<double>> a(static_cast<std::size_t>(n), std::vector<double>(g.node_count(), 0.0));
  std::vector<bool> seen(g.node_count(), false);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::stringstream ss(line);
    std::vector<double> cells;
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(to_double("coefficient samples", cell));
    if (static_cast<int>(cells.size()) != 2 * n) throw ConfigError("coefficient samples: need k1..kn,a1..an per row");
    std::vector<int> multi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      multi[i] = static_cast<int>(cells[i]);
      if (multi[i] < 0 || multi[i] >= g.nodes(i)) throw ConfigError("coefficient samples: node index out of range");
    }
    const std::size_t k = g.linear_index(multi);
    seen[k] = true;
    for (int i = 0; i < n; ++i) a[i][k] = cells[n + i];
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ConfigError("coefficient samples do not cover every node");
  }
  return CoefficientField::from_samples(g, std::move(a));
}

std::vector<double> build_robin_b(const Config& c, const BoxGrid& g) {
  const Expression b(c.robin_b, c.dimension);
  std::vector<double> out(g.node_count(), 0.0);
  std::vector<double> x(static_cast<std::size_t>(g.dimension()));
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (!g.is_boundary(k)) continue;
    g.position(k, x);
    out[k] = b.value(x);
  }
  return out;
}

RegionParams build_region_params(const Config& c, const CoefficientField& coeffs, const std::vector<double>& b) {
  const BoxGrid& g = coeffs.grid();
  RegionInputs in;
  in.poincare = c.poincare;
  in.sobolev_h1_multiplier = c.sobolev_h1_multiplier;
  double bmin = INFINITY;
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    if (g.is_boundary(k)) bmin = std::min(bmin, b[k]);
  }
  in.b_min = bmin;
  if (c.trace_norm) {
    in.trace_norm = *c.trace_norm;
  } else if (bmin < 0.0 && boundary_of(c.theorem) == BoundaryKind::Robin) {
    in.trace_norm = estimate_trace_norm(g);
  }
  RegionParams p = make_region_params(coeffs, in);
  if (!c.trace_norm && bmin < 0.0 && boundary_of(c.theorem) == BoundaryKind::Robin) {
    p.warnings.push_back("trace norm estimated by power iteration: " + std::to_string(in.trace_norm));
  }
  return p;
}

std::vector<SourceTerm> build_sources(const Config& c, const BoxGrid& g) {
  std::vector<SourceTerm> out;
  const int n = c.dimension;
  if (c.sources.empty()) {
    GridFunction f = GridFunction::from_scalar(g, [&](std::span<const double> x) {
      double v = 1.0;
      for (int i = 0; i < n; ++i) v *= std::sin(std::numbers::pi * x[i] / g.length(i));
      return v;
    });
    out.push_back({"sine", std::move(f)});
    return out;
  }
  for (const auto& spec : c.sources) {
    GridFunction f(g);
    for (const auto& [label, text] : spec.components) {
      const BasisIndex idx = parse_label("[source." + spec.name + "]", label, n);
      const Expression e(text, n);
      f += GridFunction::from_scalar(g, [&](std::span<const double> x) { return e.value(x); }, idx);
    }
    out.push_back({spec.name, std::move(f)});
  }
  return out;
}

VerificationCase build_case(const Config& c) {
  const BoxGrid g = build_grid(c);
  CoefficientField coeffs = build_coefficients(c, g);
  std::vector<double> b = build_robin_b(c, g);
  RegionParams params = build_region_params(c, coeffs, b);
  VerificationCase vc{c.theorem, std::move(coeffs), std::move(b), std::move(params), c.points,
                      build_sources(c, g), c.slack, c.solver};
  return vc;
}

}  // namespace sres
