#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "tracelab/fem2d/assembly.hpp"

namespace tracelab::tracescale {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Direct dense solvers for the boundary-value problems behind the trace
/// operator and its adjoints, with factorizations computed once.
///
/// Nodal vectors have one entry per mesh node; boundary vectors one entry
/// per position in mesh.boundary_nodes. The solver keeps a reference to
/// the assembly, which must outlive it.
class PdeSolver {
 public:
  explicit PdeSolver(const fem2d::Assembly& assembly);

  const fem2d::Assembly& assembly() const { return *a_; }

  /// Dirichlet problem: z = g on the boundary, K_II z_I + K_IB g = 0.
  VectorXd harmonic_extension(const VectorXd& g) const;

  /// Laplace with Robin data: G z = R^T M_b g, i.e. dz/dn + z = g weakly.
  VectorXd robin_solve(const VectorXd& g) const;

  /// Poisson with homogeneous Robin data: G u = M_dom f.
  VectorXd poisson_robin(const VectorXd& f) const;

  /// Poisson with homogeneous Dirichlet data: K_II u_I = (M_dom f)_I, u = 0 on the boundary.
  VectorXd dirichlet_poisson(const VectorXd& f) const;

  /// ||(K z)_I||, the discrete Laplacian of z at interior nodes.
  double interior_residual(const VectorXd& z) const;

  /// Weak normal derivative of a discrete-harmonic z: M_b w = (K z)_B.
  /// Throws NotHarmonic when interior_residual(z) > gate * ||z||.
  VectorXd normal_derivative(const VectorXd& z, double gate = 1e-8) const;

  /// Weak normal derivative with a supplied source: M_b w = (K u - M_dom f)_B,
  /// where -Delta u = f weakly at interior nodes.
  VectorXd normal_derivative(const VectorXd& u, const VectorXd& f, double gate = 1e-8) const;

  /// |v^T K z - <dz/dn, R v>_{M_b}| / max(||z|| ||v||, 1) for harmonic z.
  double green_residual(const VectorXd& z, const VectorXd& v, double gate = 1e-8) const;

 private:
  VectorXd interior(const VectorXd& nodal) const;
  VectorXd boundary(const VectorXd& nodal) const;
  void check_nodal(const VectorXd& v, const char* what) const;
  void check_boundary(const VectorXd& g) const;

  const fem2d::Assembly* a_;
  Eigen::LLT<MatrixXd> gram_;
  Eigen::LLT<MatrixXd> interior_stiffness_;
  Eigen::LLT<MatrixXd> boundary_mass_;
  MatrixXd interior_boundary_;  // K_IB
};

VectorXd harmonic_extension(const fem2d::Assembly& a, const VectorXd& g);
VectorXd robin_solve(const fem2d::Assembly& a, const VectorXd& g);
VectorXd poisson_robin(const fem2d::Assembly& a, const VectorXd& f);
VectorXd normal_derivative(const fem2d::Assembly& a, const VectorXd& z);
double green_residual(const fem2d::Assembly& a, const VectorXd& z, const VectorXd& v);

}  // namespace tracelab::tracescale
