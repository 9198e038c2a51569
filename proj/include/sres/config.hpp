#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sres/clifford.hpp"
#include "sres/coefficients.hpp"
#include "sres/grid.hpp"
#include "sres/spectral_region.hpp"
#include "sres/verification.hpp"
#include "sres/weak_form.hpp"

namespace sres {

struct SourceSpec {
  std::string name;
  // component label ("1", "e1", "e12", ...) -> expression text
  std::map<std::string, std::string> components;
};

struct MaxcheckSpec {
  int grid = 50;
  double x_max = 3.0, y_max = 3.0;
  std::size_t alpha_points = 10000;
  std::size_t delta_points = 300;
  double tolerance = 2e-3;
};

struct Config {
  int dimension = 3;
  std::vector<double> lengths;
  std::vector<int> nodes;
  Theorem theorem = Theorem::Dirichlet;

  std::vector<std::string> coefficients;  // a1..an expressions
  std::string coefficient_samples;        // CSV path, alternative to expressions

  std::string robin_b = "1";
  std::optional<double> trace_norm;

  std::optional<double> poincare;
  double sobolev_h1_multiplier = 1.0;

  std::vector<Paravector> points;
  SweepWindow sweep;
  SolverOptions solver;
  double slack = 0.05;
  std::size_t probe_samples = 0;
  std::vector<SourceSpec> sources;
  MaxcheckSpec maxcheck;

  std::uint64_t seed = 1;
  std::string output_dir = "out";
  std::string source_path;  // directory of the config file, for relative paths
};

/// INI text; throws ConfigError on unknown sections or keys and on bad values.
Config parse_config(const std::string& text, const std::string& base_dir = ".");
Config load_config(const std::string& path);

BoxGrid build_grid(const Config& c);
CoefficientField build_coefficients(const Config& c, const BoxGrid& g);
/// Robin coefficient sampled at every node (only boundary values are used).
std::vector<double> build_robin_b(const Config& c, const BoxGrid& g);
/// Estimates ||tau_D|| when the config does not fix it and b can be negative.
RegionParams build_region_params(const Config& c, const CoefficientField& coeffs, const std::vector<double>& b);
std::vector<SourceTerm> build_sources(const Config& c, const BoxGrid& g);
VerificationCase build_case(const Config& c);

/// "s0 s1 ... sk; ..." with missing vector components set to zero.
std::vector<Paravector> parse_points(const std::string& text, int n);

}  // namespace sres
