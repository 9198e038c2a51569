#include "sres/weak_form.hpp"

#include <cmath>
#include <ostream>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <Eigen/UmfPackSupport>
#include <unsupported/Eigen/IterativeSolvers>

#include "sres/errors.hpp"

namespace sres {

std::string to_string(BoundaryKind kind) { return kind == BoundaryKind::Dirichlet ? "dirichlet" : "robin"; }

namespace {

// x e_i with x = 2 s0 a_i - B_i at one node.
MultiVector convection_factor(const Paravector& s, const CoefficientField& c, int i, std::size_t node) {
  const int n = c.dimension();
  MultiVector x = MultiVector::scalar(n, 2.0 * s.scalar() * c.a(i, node));
  for (int j = 0; j < n; ++j) x[BasisIndex::generator(j + 1)] = -c.B_component(i, j, node);
  return mul(x, MultiVector::generator(n, i + 1));
}

// Nodes (lo, hi) of the one-sided difference used at node k along axis.
std::pair<std::size_t, std::size_t> difference_pair(const BoxGrid& g, std::size_t k, int axis) {
  if (g.has_forward_neighbor(k, axis)) return {k, k + g.stride(axis)};
  return {k - g.stride(axis), k};
}

double boundary_weight(const BoxGrid& g, std::size_t k) {
  double w = 0.0;
  for (const auto& face : g.faces_of(k)) w += g.face_weight(k, face.axis);
  return w;
}

}  // namespace

AssembledForm assemble(BoundaryKind kind, const Paravector& s, const CoefficientField& coeffs,
                       const std::vector<double>* b) {
  const BoxGrid& g = coeffs.grid();
  const int n = g.dimension();
  require_same_dimension(n, s.dimension());
  const std::size_t C = g.components();
  const std::size_t N = g.node_count();
  AssembledForm form(kind, s, g);
  form.slot_.assign(N, -1);
  for (std::size_t k = 0; k < N; ++k) {
    if (kind == BoundaryKind::Robin || !g.is_boundary(k)) {
      form.slot_[k] = static_cast<long>(form.nodes_.size());
      form.nodes_.push_back(k);
    }
  }
  if (form.nodes_.empty()) throw InputError("grid has no interior nodes");
  if (kind == BoundaryKind::Robin && (!b || b->size() != N)) {
    throw DimensionMismatch("Robin coefficient needs one sample per grid node");
  }

  std::vector<Eigen::Triplet<double, int>> trip, scalar;
  trip.reserve(form.nodes_.size() * C * (1 + 2 * n + 2 * n * (n + 1)));
  auto dof = [&](std::size_t node, std::size_t a) { return static_cast<int>(form.slot_[node] * C + a); };
  const double s2 = s.norm_squared();

  // Principal part on every edge [k, k + h_i e_i]; edges leaving a Dirichlet
  // boundary node still touch an unknown at the far end.
  for (std::size_t k = 0; k < N; ++k) {
    for (int i = 0; i < n; ++i) {
      if (g.has_forward_neighbor(k, i)) {
        const std::size_t kp = k + g.stride(i);
        const double h = g.spacing(i);
        const double am = coeffs.a_mid(i, k);
        const double w = g.edge_weight(k, i) * am * am / (h * h);
        const bool lo = form.slot_[k] >= 0, hi = form.slot_[kp] >= 0;
        const int sl = static_cast<int>(form.slot_[k]), sh = static_cast<int>(form.slot_[kp]);
        if (lo) scalar.emplace_back(sl, sl, w);
        if (hi) scalar.emplace_back(sh, sh, w);
        if (lo && hi) {
          scalar.emplace_back(sl, sh, -w);
          scalar.emplace_back(sh, sl, -w);
        }
        for (std::size_t a = 0; a < C; ++a) {
          if (lo) trip.emplace_back(dof(k, a), dof(k, a), w);
          if (hi) trip.emplace_back(dof(kp, a), dof(kp, a), w);
          if (lo && hi) {
            trip.emplace_back(dof(k, a), dof(kp, a), -w);
            trip.emplace_back(dof(kp, a), dof(k, a), -w);
          }
        }
      }
    }
  }

  for (std::size_t k : form.nodes_) {
    double diag = s2 * g.weight(k);
    if (kind == BoundaryKind::Robin && g.is_boundary(k)) diag += (*b)[k] * boundary_weight(g, k);
    for (std::size_t a = 0; a < C; ++a) trip.emplace_back(dof(k, a), dof(k, a), diag);
    scalar.emplace_back(static_cast<int>(form.slot_[k]), static_cast<int>(form.slot_[k]), diag);

    for (int i = 0; i < n; ++i) {
      // Convection: w_k d_i u(k) . (x e_i v(k)) = v(k) . L^T d_i u(k).
      const MultiVector x = convection_factor(s, coeffs, i, k);
      const std::vector<double> L = left_multiplication_matrix(x);
      const auto [lo, hi] = difference_pair(g, k, i);
      const double f = g.weight(k) / g.spacing(i);
      for (std::size_t bb = 0; bb < C; ++bb) {
        for (std::size_t a = 0; a < C; ++a) {
          const double l = L[bb * C + a];
          if (l == 0.0) continue;
          if (form.slot_[hi] >= 0) trip.emplace_back(dof(k, a), dof(hi, bb), f * l);
          if (form.slot_[lo] >= 0) trip.emplace_back(dof(k, a), dof(lo, bb), -f * l);
        }
      }
    }
  }
  const int dim = static_cast<int>(form.unknowns());
  form.matrix_.resize(dim, dim);
  form.matrix_.setFromTriplets(trip.begin(), trip.end());
  form.matrix_.makeCompressed();
  const int nodes = static_cast<int>(form.nodes_.size());
  form.scalar_.resize(nodes, nodes);
  form.scalar_.setFromTriplets(scalar.begin(), scalar.end());
  form.scalar_.makeCompressed();
  return form;
}

AssembledForm assemble_dirichlet(const Paravector& s, const CoefficientField& coeffs) {
  return assemble(BoundaryKind::Dirichlet, s, coeffs, nullptr);
}

AssembledForm assemble_robin(const Paravector& s, const CoefficientField& coeffs, const std::vector<double>& b) {
  return assemble(BoundaryKind::Robin, s, coeffs, &b);
}

Eigen::VectorXd AssembledForm::restrict(const GridFunction& u) const {
  require_same_grid(grid_, u.grid());
  const std::size_t C = grid_.components();
  Eigen::VectorXd x(static_cast<Eigen::Index>(unknowns()));
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    auto c = u.node_components(nodes_[j]);
    for (std::size_t a = 0; a < C; ++a) x[static_cast<Eigen::Index>(j * C + a)] = c[a];
  }
  return x;
}

GridFunction AssembledForm::extend(const Eigen::VectorXd& x) const {
  const std::size_t C = grid_.components();
  if (static_cast<std::size_t>(x.size()) != unknowns()) throw DimensionMismatch("vector length mismatch");
  GridFunction u(grid_);
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    auto c = u.node_components(nodes_[j]);
    for (std::size_t a = 0; a < C; ++a) c[a] = x[static_cast<Eigen::Index>(j * C + a)];
  }
  return u;
}

Eigen::VectorXd AssembledForm::load(const GridFunction& f) const {
  require_same_grid(grid_, f.grid());
  const std::size_t C = grid_.components();
  Eigen::VectorXd r(static_cast<Eigen::Index>(unknowns()));
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double w = grid_.weight(nodes_[j]);
    auto c = f.node_components(nodes_[j]);
    for (std::size_t a = 0; a < C; ++a) r[static_cast<Eigen::Index>(j * C + a)] = w * c[a];
  }
  return r;
}

double AssembledForm::sc_value(const GridFunction& u, const GridFunction& v) const {
  return restrict(v).dot(matrix_ * restrict(u));
}

MultiVector AssembledForm::value(const GridFunction& u, const GridFunction& v) const {
  const int n = grid_.dimension();
  const Eigen::VectorXd mu = matrix_ * restrict(u);
  MultiVector out(n);
  for (std::size_t a = 0; a < grid_.components(); ++a) {
    const BasisIndex ea(static_cast<std::uint32_t>(a));
    const GridFunction va = right_multiply(v, conjugate(MultiVector::basis(n, ea)));
    out[ea] = restrict(va).dot(mu);
  }
  return out;
}

void AssembledForm::write_triplets(std::ostream& os) const {
  os.precision(17);
  for (int col = 0; col < matrix_.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(matrix_, col); it; ++it) {
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
}

MultiVector evaluate_form(BoundaryKind kind, const Paravector& s, const CoefficientField& coeffs,
                          const std::vector<double>* b, const GridFunction& u_in, const GridFunction& v_in) {
  const BoxGrid& g = coeffs.grid();
  require_same_grid(g, u_in.grid());
  require_same_grid(g, v_in.grid());
  const int n = g.dimension();
  GridFunction u = u_in, v = v_in;
  if (kind == BoundaryKind::Dirichlet) {
    u.clear_boundary();
    v.clear_boundary();
  } else if (!b || b->size() != g.node_count()) {
    throw DimensionMismatch("Robin coefficient needs one sample per grid node");
  }
  MultiVector out(n);
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    const MultiVector uk = u.value(k), vk = v.value(k);
    const MultiVector cu = conjugate(uk);
    double mass = s.norm_squared() * g.weight(k);
    if (kind == BoundaryKind::Robin && g.is_boundary(k)) mass += (*b)[k] * boundary_weight(g, k);
    out += mass * mul(cu, vk);
    for (int i = 0; i < n; ++i) {
      const double h = g.spacing(i);
      if (g.has_forward_neighbor(k, i)) {
        const std::size_t kp = k + g.stride(i);
        const double am = coeffs.a_mid(i, k);
        const MultiVector du = (u.value(kp) - uk) * (1.0 / h);
        const MultiVector dv = (v.value(kp) - vk) * (1.0 / h);
        out += (g.edge_weight(k, i) * am * am) * mul(conjugate(du), dv);
      }
      const auto [lo, hi] = difference_pair(g, k, i);
      const MultiVector du = (u.value(hi) - u.value(lo)) * (1.0 / h);
      out += g.weight(k) * mul(conjugate(du), mul(convection_factor(s, coeffs, i, k), vk));
    }
  }
  return out;
}

namespace {

// Exact LDL^T of the scalar block, applied to each component. What is left
// for GMRES is the first-order coupling, bounded relative to the block.
class ComponentBlockPreconditioner {
 public:
  ComponentBlockPreconditioner() = default;

  void setup(const SparseMatrix& block, std::size_t components) {
    components_ = components;
    ldlt_.compute(block);
    info_ = ldlt_.info();
  }

  template <typename Mat>
  ComponentBlockPreconditioner& analyzePattern(const Mat&) {
    return *this;
  }
  template <typename Mat>
  ComponentBlockPreconditioner& factorize(const Mat&) {
    return *this;
  }
  template <typename Mat>
  ComponentBlockPreconditioner& compute(const Mat&) {
    return *this;
  }
  template <typename Rhs>
  Eigen::VectorXd solve(const Rhs& b) const {
    const auto C = static_cast<Eigen::Index>(components_);
    const Eigen::VectorXd bv = b;
    const Eigen::MatrixXd rhs = Eigen::Map<const Eigen::MatrixXd>(bv.data(), C, bv.size() / C).transpose();
    const Eigen::MatrixXd x = ldlt_.solve(rhs);
    Eigen::VectorXd out(bv.size());
    Eigen::Map<Eigen::MatrixXd>(out.data(), C, bv.size() / C) = x.transpose();
    return out;
  }
  Eigen::ComputationInfo info() const { return info_; }

 private:
  std::size_t components_ = 1;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
  Eigen::ComputationInfo info_ = Eigen::Success;
};

double relative_residual(const SparseMatrix& m, const Eigen::VectorXd& x, const Eigen::VectorXd& b) {
  const double nb = b.norm();
  return nb == 0.0 ? (m * x).norm() : (b - m * x).norm() / nb;
}

}  // namespace

struct FormSolver::Impl {
  bool direct = true;
  Eigen::UmfPackLU<SparseMatrix> lu;
  Eigen::GMRES<SparseMatrix, ComponentBlockPreconditioner> gmres;
};

FormSolver::FormSolver(const AssembledForm& form, SolverOptions options)
    : form_(form), options_(options), impl_(std::make_unique<Impl>()) {
  const SparseMatrix& m = form_.matrix();
  impl_->direct = form_.unknowns() <= options_.direct_limit;
  if (impl_->direct) {
    impl_->lu.analyzePattern(m);
    impl_->lu.factorize(m);
    if (impl_->lu.info() != Eigen::Success) {
      throw SolverError("singular system at s (potential S-spectrum proximity)",
                        std::numeric_limits<double>::infinity(), true);
    }
  } else {
    impl_->gmres.set_restart(options_.restart);
    impl_->gmres.setMaxIterations(options_.max_iterations);
    impl_->gmres.setTolerance(options_.tolerance);
    impl_->gmres.preconditioner().setup(form_.scalar_block(), form_.grid().components());
    impl_->gmres.compute(m);
    if (impl_->gmres.preconditioner().info() != Eigen::Success) {
      throw SolverError("preconditioner construction failed", std::numeric_limits<double>::infinity(), false);
    }
  }
}

FormSolver::~FormSolver() = default;

bool FormSolver::direct() const { return impl_->direct; }

SolveReport FormSolver::solve(const GridFunction& f) const {
  const SparseMatrix& m = form_.matrix();
  const Eigen::VectorXd rhs = form_.load(f);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(rhs.size());
  SolveReport report{GridFunction(form_.grid())};
  report.direct = impl_->direct;
  if (rhs.norm() > 0.0) {
    double res = 0.0;
    if (impl_->direct) {
      x = impl_->lu.solve(rhs);
      res = relative_residual(m, x, rhs);
      // A few steps of iterative refinement if round-off left us short.
      for (int step = 0; step < 3 && res > options_.tolerance; ++step) {
        const Eigen::VectorXd r = rhs - m * x;
        x += impl_->lu.solve(r);
        res = relative_residual(m, x, rhs);
      }
      report.iterations = 1;
      // Refinement on an exact factorization only stalls when the pivots are
      // numerically zero.
      if (!(res <= options_.tolerance)) {
        throw SolverError("singular system at s (potential S-spectrum proximity)", res, true);
      }
    } else {
      int total = 0;
      res = relative_residual(m, x, rhs);
      while (res > options_.tolerance && total < options_.max_iterations) {
        x = impl_->gmres.solveWithGuess(rhs, x);
        total += static_cast<int>(impl_->gmres.iterations());
        res = relative_residual(m, x, rhs);
        if (impl_->gmres.iterations() == 0) break;
      }
      report.iterations = total;
    }
    if (!(res <= options_.tolerance)) {
      throw SolverError("solver did not reach relative residual " + std::to_string(options_.tolerance) +
                            " (reached " + std::to_string(res) + ")",
                        res, false);
    }
    report.relative_residual = res;
  }
  report.solution = form_.extend(x);
  report.l2 = l2_norm(report.solution);
  report.seminorm = sobolev_seminorm(report.solution);
  report.h1 = std::sqrt(report.l2 * report.l2 + report.seminorm * report.seminorm);
  return report;
}

SolveReport solve(const AssembledForm& form, const GridFunction& f, const SolverOptions& options) {
  FormSolver solver(form, options);
  return solver.solve(f);
}

}  // namespace sres
