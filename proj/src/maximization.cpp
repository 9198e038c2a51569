#include "sres/maximization.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sres/errors.hpp"

namespace sres {

namespace {

void require_positive(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw InputError("maximization needs x, y > 0 (got " + std::to_string(x) + ", " + std::to_string(y) + ")");
  }
}

void require_region(double x, double y) {
  if (!region_condition(x, y)) {
    throw OutsideRegion("(x, y) = (" + std::to_string(x) + ", " + std::to_string(y) +
                        ") violates the positivity condition");
  }
}

}  // namespace

double alpha_polynomial(double x, double y, double alpha) { return (x - 2.0) * y + 2.0 * alpha * y - alpha * alpha; }

bool region_condition(double x, double y) {
  require_positive(x, y);
  // Same strict inequalities as y > 1/x and y > 2 - x, written in the form
  // the interval formulas use so that grid points on the boundary agree.
  return x <= 1.0 ? x * y > 1.0 : x + y - 2.0 > 0.0;
}

AlphaInterval alpha_interval(double x, double y) {
  require_region(x, y);
  const double root = std::sqrt(y * (x + y - 2.0));
  return {x <= 2.0 ? y - root : 0.0, y <= 1.0 / x ? y + root : 1.0};
}

DeltaInterval delta_interval(double alpha, double x, double y) {
  const AlphaInterval iv = alpha_interval(x, y);
  if (!(alpha > iv.alpha0 && alpha < iv.alpha1)) {
    throw OutsideRegion("alpha = " + std::to_string(alpha) + " outside (" + std::to_string(iv.alpha0) + ", " +
                        std::to_string(iv.alpha1) + ")");
  }
  return {alpha / (x - 2.0 + 2.0 * alpha), y / alpha};
}

double sup_problem1(double x, double y) {
  require_region(x, y);
  return y <= 1.0 ? y : 2.0 - 1.0 / y;
}

double sup_problem2(double x, double y) {
  require_region(x, y);
  return x >= 1.0 ? 0.0 : 2.0 - x - 1.0 / x;
}

OracleResult brute_force_oracle(double x, double y, const OracleOptions& options) {
  require_positive(x, y);
  OracleResult out;
  const std::size_t na = options.alpha_points;
  const std::size_t nd = options.delta_points;
  const double eps = options.margin;
  out.alpha_step = (1.0 - 2.0 * eps) / static_cast<double>(na - 1);
  out.sup1 = -std::numeric_limits<double>::infinity();
  out.sup2 = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < na; ++k) {
    const double alpha = eps + out.alpha_step * static_cast<double>(k);
    if (!(alpha_polynomial(x, y, alpha) > 0.0)) continue;
    if (!out.region) out.alpha_lo = alpha;
    out.region = true;
    out.alpha_hi = alpha;
    out.sup1 = std::max(out.sup1, alpha * (2.0 - alpha / y));

    const double d0 = alpha / (x - 2.0 + 2.0 * alpha) * (1.0 + eps);
    const double d1 = y / alpha * (1.0 - eps);
    if (!(d1 > d0)) continue;
    // Geometric progression in delta and in 1/delta, no divisions in the loop.
    const double ratio = std::pow(d1 / d0, 1.0 / static_cast<double>(nd - 1));
    const double inv_ratio = 1.0 / ratio;
    double delta = d0, inv_delta = 1.0 / d0, best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nd; ++j) {
      best = std::max(best, 2.0 - inv_delta - delta);
      delta *= ratio;
      inv_delta *= inv_ratio;
    }
    out.sup2 = std::max(out.sup2, alpha * best);
  }
  if (!out.region) {
    out.sup1 = std::numeric_limits<double>::quiet_NaN();
    out.sup2 = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace sres
