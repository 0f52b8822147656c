#include "tracelab/tracescale/solvers.hpp"

#include <algorithm>
#include <string>

#include "tracelab/error.hpp"

namespace tracelab::tracescale {

namespace {

MatrixXd submatrix(const MatrixXd& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
    }
  }
  return out;
}

void require_factored(const Eigen::LLT<MatrixXd>& llt, const char* what) {
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::SolveFailure, what);
}

}  // namespace

PdeSolver::PdeSolver(const fem2d::Assembly& assembly) : a_(&assembly) {
  const auto& r = a_->restriction;
  gram_.compute(a_->stiffness + r.transpose() * a_->boundary_mass * r);
  require_factored(gram_, "G = K + R^T M_b R is singular");
  boundary_mass_.compute(a_->boundary_mass);
  require_factored(boundary_mass_, "boundary mass is singular");
  const auto& in = a_->mesh.interior_nodes;
  if (!in.empty()) {
    interior_stiffness_.compute(submatrix(a_->stiffness, in, in));
    require_factored(interior_stiffness_, "interior stiffness K_II is singular");
    interior_boundary_ = submatrix(a_->stiffness, in, a_->mesh.boundary_nodes);
  }
}

void PdeSolver::check_nodal(const VectorXd& v, const char* what) const {
  if (v.size() != a_->num_nodes()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + " needs one entry per node");
  }
}

void PdeSolver::check_boundary(const VectorXd& g) const {
  if (g.size() != a_->num_boundary()) {
    throw Error(ErrorKind::DimensionMismatch, "boundary data needs one entry per boundary node");
  }
}

VectorXd PdeSolver::interior(const VectorXd& nodal) const {
  const auto& in = a_->mesh.interior_nodes;
  VectorXd out(static_cast<Eigen::Index>(in.size()));
  for (std::size_t k = 0; k < in.size(); ++k) out(static_cast<Eigen::Index>(k)) = nodal(in[k]);
  return out;
}

VectorXd PdeSolver::boundary(const VectorXd& nodal) const { return a_->restriction * nodal; }

VectorXd PdeSolver::harmonic_extension(const VectorXd& g) const {
  check_boundary(g);
  VectorXd z = a_->restriction.transpose() * g;
  const auto& in = a_->mesh.interior_nodes;
  if (!in.empty()) {
    const VectorXd zi = interior_stiffness_.solve(-(interior_boundary_ * g));
    for (std::size_t k = 0; k < in.size(); ++k) z(in[k]) = zi(static_cast<Eigen::Index>(k));
  }
  return z;
}

VectorXd PdeSolver::robin_solve(const VectorXd& g) const {
  check_boundary(g);
  return gram_.solve(a_->restriction.transpose() * (a_->boundary_mass * g));
}

VectorXd PdeSolver::poisson_robin(const VectorXd& f) const {
  check_nodal(f, "source");
  return gram_.solve(a_->mass * f);
}

VectorXd PdeSolver::dirichlet_poisson(const VectorXd& f) const {
  check_nodal(f, "source");
  VectorXd u = VectorXd::Zero(a_->num_nodes());
  const auto& in = a_->mesh.interior_nodes;
  if (!in.empty()) {
    const VectorXd ui = interior_stiffness_.solve(interior(a_->mass * f));
    for (std::size_t k = 0; k < in.size(); ++k) u(in[k]) = ui(static_cast<Eigen::Index>(k));
  }
  return u;
}

double PdeSolver::interior_residual(const VectorXd& z) const {
  check_nodal(z, "nodal vector");
  return interior(a_->stiffness * z).norm();
}

VectorXd PdeSolver::normal_derivative(const VectorXd& z, double gate) const {
  if (interior_residual(z) > gate * z.norm()) {
    throw Error(ErrorKind::NotHarmonic, "normal derivative requested for a non-harmonic function");
  }
  return boundary_mass_.solve(boundary(a_->stiffness * z));
}

VectorXd PdeSolver::normal_derivative(const VectorXd& u, const VectorXd& f, double gate) const {
  check_nodal(u, "nodal vector");
  check_nodal(f, "source");
  const VectorXd flux = a_->stiffness * u - a_->mass * f;
  if (interior(flux).norm() > gate * std::max(u.norm(), (a_->mass * f).norm())) {
    throw Error(ErrorKind::NotHarmonic, "-Delta u = f does not hold at interior nodes");
  }
  return boundary_mass_.solve(boundary(flux));
}

double PdeSolver::green_residual(const VectorXd& z, const VectorXd& v, double gate) const {
  check_nodal(v, "test function");
  const VectorXd w = normal_derivative(z, gate);
  const double lhs = v.dot(a_->stiffness * z);
  const double rhs = w.dot(a_->boundary_mass * boundary(v));
  return std::abs(lhs - rhs) / std::max(z.norm() * v.norm(), 1.0);
}

VectorXd harmonic_extension(const fem2d::Assembly& a, const VectorXd& g) {
  return PdeSolver(a).harmonic_extension(g);
}

VectorXd robin_solve(const fem2d::Assembly& a, const VectorXd& g) { return PdeSolver(a).robin_solve(g); }

VectorXd poisson_robin(const fem2d::Assembly& a, const VectorXd& f) {
  return PdeSolver(a).poisson_robin(f);
}

VectorXd normal_derivative(const fem2d::Assembly& a, const VectorXd& z) {
  return PdeSolver(a).normal_derivative(z);
}

double green_residual(const fem2d::Assembly& a, const VectorXd& z, const VectorXd& v) {
  return PdeSolver(a).green_residual(z, v);
}

}  // namespace tracelab::tracescale
