#pragma once

#include <utility>

#include <Eigen/Core>

#include "tracelab/fem2d/mesh.hpp"
#include "tracelab/oplab/operator.hpp"

namespace tracelab::fem2d {

/// Dense P1 matrices for one mesh.
///
/// Boundary quantities (M_b, K_b) are indexed by position along
/// mesh.boundary_nodes; R maps nodal vectors to boundary vectors.
struct Assembly {
  Mesh mesh;
  Eigen::MatrixXd stiffness;           // K = int grad(phi_i) . grad(phi_j)
  Eigen::MatrixXd mass;                // M_dom = int phi_i phi_j
  Eigen::MatrixXd boundary_mass;       // M_b = int_bdry psi_i psi_j
  Eigen::MatrixXd boundary_stiffness;  // K_b = int_bdry psi_i' psi_j'
  Eigen::MatrixXd restriction;         // R, entries 0/1

  int num_nodes() const { return mesh.num_nodes(); }
  int num_boundary() const { return mesh.num_boundary(); }
};

/// Exact element matrices, consistent (not lumped) masses. The interval's
/// two-point boundary carries counting measure: M_b = I, K_b = 0.
Assembly assemble(Mesh mesh);

/// Nodal interpolant of a function of the coordinates.
template <typename Fn>
Eigen::VectorXd interpolate(const Mesh& mesh, Fn&& fn) {
  Eigen::VectorXd v(mesh.num_nodes());
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    const double x = mesh.nodes(i, 0);
    const double y = mesh.dimension() > 1 ? mesh.nodes(i, 1) : 0.0;
    v(i) = fn(x, y);
  }
  return v;
}

using SpacePtr = oplab::SpacePtr<double>;
using Operator = oplab::Operator<double>;

/// The four coefficient spaces of one assembly.
struct Spaces {
  SpacePtr h1_partial;   // G = K + R^T M_b R
  SpacePtr l2_domain;    // M_dom
  SpacePtr l2_boundary;  // M_b
  SpacePtr h1_boundary;  // M_b + K_b
};

/// Throws GramNotPD if any Gram fails validation (an assembly bug).
Spaces space_h1partial(const Assembly& a);

/// Trace H1_partial -> L2(boundary), matrix R.
Operator op_trace(const Assembly& a, const Spaces& spaces);
Operator op_trace(const Assembly& a);

/// Embedding H1_partial -> L2(domain), identity matrix.
Operator op_embed_domain(const Assembly& a, const Spaces& spaces);
Operator op_embed_domain(const Assembly& a);

/// U: H1(boundary) -> L2(boundary) and V = U^{-1}, both identity matrices.
std::pair<Operator, Operator> op_embed_boundary(const Assembly& a, const Spaces& spaces);
std::pair<Operator, Operator> op_embed_boundary(const Assembly& a);

}  // namespace tracelab::fem2d
