#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "sres/clifford.hpp"
#include "sres/coefficients.hpp"
#include "sres/grid.hpp"

namespace sres {

enum class BoundaryKind { Dirichlet, Robin };

std::string to_string(BoundaryKind kind);

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

/// Real Galerkin matrix of Sc q_s(u, v) for
///   q_s(u, v) = sum_i <d_i u, a_i^2 d_i v + (2 s0 a_i - B_i) e_i v> + |s|^2 <u, v>
///               [+ <b u, v>_{boundary} for Robin].
/// Row (node, A) is the test direction v = e_A at that node, column
/// (node, B) the trial direction; unknowns are interior nodes (Dirichlet)
/// or all nodes (Robin).
class AssembledForm {
 public:
  BoundaryKind kind() const { return kind_; }
  const Paravector& s() const { return s_; }
  const BoxGrid& grid() const { return grid_; }
  const SparseMatrix& matrix() const { return matrix_; }
  /// Principal, mass and boundary terms on one component; the full matrix
  /// is this block on every component plus the first-order coupling.
  const SparseMatrix& scalar_block() const { return scalar_; }
  std::size_t unknown_nodes() const { return nodes_.size(); }
  std::size_t unknowns() const { return nodes_.size() * grid_.components(); }
  /// Grid node of the j-th unknown node.
  std::size_t node_of(std::size_t j) const { return nodes_[j]; }
  /// Unknown-node slot of a grid node, or -1 when it is not an unknown.
  long slot_of(std::size_t node) const { return slot_[node]; }

  /// Coefficient vector of u on the unknowns (boundary values dropped for Dirichlet).
  Eigen::VectorXd restrict(const GridFunction& u) const;
  GridFunction extend(const Eigen::VectorXd& x) const;
  /// Load vector Sc <f, v> for every test direction.
  Eigen::VectorXd load(const GridFunction& f) const;

  /// Sc q(u, v) through the matrix.
  double sc_value(const GridFunction& u, const GridFunction& v) const;
  /// Full Clifford value q(u, v) = sum_A Sc q(u, v conj(e_A)) e_A.
  MultiVector value(const GridFunction& u, const GridFunction& v) const;

  /// Coordinate triplets "row col value", one per line, 0-based.
  void write_triplets(std::ostream& os) const;

 private:
  friend AssembledForm assemble(BoundaryKind, const Paravector&, const CoefficientField&,
                                const std::vector<double>*);
  AssembledForm(BoundaryKind kind, Paravector s, BoxGrid grid)
      : kind_(kind), s_(std::move(s)), grid_(std::move(grid)) {}

  BoundaryKind kind_;
  Paravector s_;
  BoxGrid grid_;
  std::vector<std::size_t> nodes_;
  std::vector<long> slot_;
  SparseMatrix matrix_;
  SparseMatrix scalar_;
};

AssembledForm assemble_dirichlet(const Paravector& s, const CoefficientField& coeffs);
/// b holds one value per grid node; only boundary entries are read.
AssembledForm assemble_robin(const Paravector& s, const CoefficientField& coeffs, const std::vector<double>& b);

/// Direct Clifford-valued evaluation of the discrete form without a matrix.
/// For Dirichlet the boundary values of u and v are ignored.
MultiVector evaluate_form(BoundaryKind kind, const Paravector& s, const CoefficientField& coeffs,
                          const std::vector<double>* b, const GridFunction& u, const GridFunction& v);

struct SolverOptions {
  double tolerance = 1e-10;
  int max_iterations = 20000;
  std::size_t direct_limit = 50000;
  int restart = 50;
};

struct SolveReport {
  GridFunction solution;
  double relative_residual = 0.0;
  int iterations = 0;
  bool direct = true;
  double l2 = 0.0;
  double seminorm = 0.0;
  double h1 = 0.0;
};

/// Factorizes (or preconditions) a form once and solves for many sources.
class FormSolver {
 public:
  FormSolver(const AssembledForm& form, SolverOptions options = {});
  ~FormSolver();
  FormSolver(const FormSolver&) = delete;
  FormSolver& operator=(const FormSolver&) = delete;

  /// Solves q(u_f, v) = <f, v> for every test v. Throws SolverError.
  SolveReport solve(const GridFunction& f) const;
  bool direct() const;

 private:
  struct Impl;
  const AssembledForm& form_;
  SolverOptions options_;
  std::unique_ptr<Impl> impl_;
};

SolveReport solve(const AssembledForm& form, const GridFunction& f, const SolverOptions& options = {});

}  // namespace sres
