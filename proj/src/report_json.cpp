#include "sres/report_json.hpp"

#include <cmath>

#include "sres/errors.hpp"

namespace sres {

namespace {

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// JSON has no infinity; report it as null.
Json finite(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const CoefficientBounds& b) {
  return Json{{"m_a", b.m_a}, {"M_a", b.M_a}, {"M_a_prime", b.M_a_prime}, {"sup", b.sup}};
}

Json to_json(const RegionParams& p) {
  return Json{{"n", p.n},
              {"bounds", to_json(p.bounds)},
              {"C_S", p.C_S},
              {"C_P", p.C_P},
              {"sobolev_h1_multiplier", p.sobolev_h1_multiplier},
              {"trace_norm", p.trace_norm},
              {"b_min", finite(p.b_min)},
              {"b_min_neg", p.b_min_neg},
              {"D_ab", p.D_ab},
              {"K_a", opt(p.K_a)},
              {"constant_coefficients", p.constant_coefficients},
              {"warnings", p.warnings}};
}

RegionParams region_params_from_json(const Json& j) {
  try {
    RegionParams p;
    p.n = j.at("n").get<int>();
    const Json& b = j.at("bounds");
    p.bounds.m_a = b.at("m_a").get<double>();
    p.bounds.M_a = b.at("M_a").get<double>();
    p.bounds.M_a_prime = b.at("M_a_prime").get<double>();
    p.bounds.sup = b.at("sup").get<std::vector<double>>();
    p.C_S = j.at("C_S").get<double>();
    p.C_P = j.at("C_P").get<double>();
    p.sobolev_h1_multiplier = j.at("sobolev_h1_multiplier").get<double>();
    p.trace_norm = j.at("trace_norm").get<double>();
    p.b_min = j.at("b_min").is_null() ? INFINITY : j.at("b_min").get<double>();
    p.b_min_neg = j.at("b_min_neg").get<double>();
    p.D_ab = j.at("D_ab").get<double>();
    if (!j.at("K_a").is_null()) p.K_a = j.at("K_a").get<double>();
    p.constant_coefficients = j.at("constant_coefficients").get<bool>();
    p.warnings = j.at("warnings").get<std::vector<std::string>>();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("region parameters JSON: ") + e.what());
  }
}

Json to_json(const BoundReport& r) {
  Json j{{"theorem", to_string(r.theorem)},
         {"s0", r.s0},
         {"im_abs", r.im_abs},
         {"in_region", r.in_region},
         {"tau1", opt(r.tau1)},
         {"tau2", opt(r.tau2)},
         {"kappa0", opt(r.kappa0)},
         {"kappa1", opt(r.kappa1)},
         {"robin_denominator", opt(r.robin_denominator)},
         {"l2_coefficient", opt(r.l2_coefficient)},
         {"seminorm_coefficient", opt(r.seminorm_coefficient)},
         {"h1_coefficient", opt(r.h1_coefficient)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const CaseResult& r) {
  Json j{{"s0", r.s0},
         {"s_vec", r.s_vec},
         {"source", r.source},
         {"in_region", r.in_region},
         {"bound_check", r.in_region ? "applied" : "not applicable"},
         {"f_norm", r.f_norm},
         {"l2", r.l2},
         {"seminorm", r.seminorm},
         {"h1", r.h1},
         {"l2_bound", opt(r.l2_bound)},
         {"seminorm_bound", opt(r.seminorm_bound)},
         {"h1_bound", opt(r.h1_bound)},
         {"worst_ratio", opt(r.worst_ratio)},
         {"pass", r.pass},
         {"solver", {{"relative_residual", finite(r.residual)}, {"iterations", r.iterations}, {"direct", r.direct}}}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

Json to_json(const VerificationReport& r) {
  Json cases = Json::array();
  for (const auto& c : r.results) cases.push_back(to_json(c));
  return Json{{"theorem", to_string(r.theorem)},
              {"slack", r.slack},
              {"pass", r.pass},
              {"solver_failure", r.solver_failure},
              {"cases", cases}};
}

Json to_json(const ProbeReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"s0", p.s0}, {"s_abs", p.s_abs}, {"worst_margin", finite(p.worst_margin)}});
  }
  return Json{{"seed", r.seed}, {"samples", r.samples}, {"worst_margin", finite(r.worst_margin)}, {"points", pts}};
}

Json to_json(const ConvergenceResult& r) {
  Json lv = Json::array();
  for (const auto& l : r.levels) lv.push_back({{"nodes", l.nodes}, {"h", l.h}, {"error", l.error}});
  return Json{{"name", r.name}, {"order", finite(r.order)}, {"exact", r.exact}, {"levels", lv}};
}

}  // namespace sres
