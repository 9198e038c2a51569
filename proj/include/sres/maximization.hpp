#pragma once

#include <cstddef>

namespace sres {

/// p(alpha) = (x - 2) y + 2 alpha y - alpha^2.
double alpha_polynomial(double x, double y, double alpha);

/// y > 1/x for x <= 1, y > 2 - x for x >= 1 (strict). Requires x, y > 0.
bool region_condition(double x, double y);

struct AlphaInterval {
  double alpha0;
  double alpha1;
};

/// Open interval where p > 0 inside (0, 1). Throws OutsideRegion.
AlphaInterval alpha_interval(double x, double y);

struct DeltaInterval {
  double delta0;  // alpha / (x - 2 + 2 alpha)
  double delta1;  // y / alpha
};

/// Requires alpha strictly inside alpha_interval(x, y).
DeltaInterval delta_interval(double alpha, double x, double y);

/// sup over the alpha interval of alpha (2 - alpha / y).
double sup_problem1(double x, double y);
/// sup over alpha and delta in the delta interval of alpha (2 - 1/delta - delta).
double sup_problem2(double x, double y);

struct OracleOptions {
  std::size_t alpha_points = 10000;
  std::size_t delta_points = 300;
  double margin = 1e-6;
};

struct OracleResult {
  bool region = false;
  double alpha_lo = 0.0;  // first grid alpha with p > 0
  double alpha_hi = 0.0;  // last grid alpha with p > 0
  double alpha_step = 0.0;
  double sup1 = 0.0;
  double sup2 = 0.0;
};

/// Dense-grid maximization over alpha in (0, 1) and, per alpha, a
/// log-spaced delta grid strictly inside (delta0, delta1).
OracleResult brute_force_oracle(double x, double y, const OracleOptions& options = {});

}  // namespace sres
