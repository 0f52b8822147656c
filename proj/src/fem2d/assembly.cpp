#include "tracelab/fem2d/assembly.hpp"

#include <string>

#include "tracelab/error.hpp"

namespace tracelab::fem2d {

namespace {

void assemble_interval(Assembly& a) {
  const Mesh& mesh = a.mesh;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const double h = element_measure(mesh, e);
    if (!(h > 0)) throw Error(ErrorKind::DegenerateElement, "segment " + std::to_string(e));
    const int i = mesh.elements(e, 0), j = mesh.elements(e, 1);
    a.stiffness(i, i) += 1 / h;
    a.stiffness(j, j) += 1 / h;
    a.stiffness(i, j) -= 1 / h;
    a.stiffness(j, i) -= 1 / h;
    a.mass(i, i) += h / 3;
    a.mass(j, j) += h / 3;
    a.mass(i, j) += h / 6;
    a.mass(j, i) += h / 6;
  }
  a.boundary_mass.setIdentity();
}

void assemble_triangles(Assembly& a) {
  const Mesh& mesh = a.mesh;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const double area = element_measure(mesh, e);
    if (!(area > 0)) throw Error(ErrorKind::DegenerateElement, "triangle " + std::to_string(e));
    const auto el = mesh.elements.row(e);
    Eigen::Vector3d b, c;
    for (int k = 0; k < 3; ++k) {
      const int j = el((k + 1) % 3), l = el((k + 2) % 3);
      b(k) = mesh.nodes(j, 1) - mesh.nodes(l, 1);
      c(k) = mesh.nodes(l, 0) - mesh.nodes(j, 0);
    }
    const Eigen::Matrix3d ke = (b * b.transpose() + c * c.transpose()) / (4 * area);
    Eigen::Matrix3d me = Eigen::Matrix3d::Constant(area / 12);
    me.diagonal().setConstant(area / 6);
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) {
        a.stiffness(el(p), el(q)) += ke(p, q);
        a.mass(el(p), el(q)) += me(p, q);
      }
    }
  }

  // One boundary edge joins boundary positions k and k+1 (mod nb).
  const int nb = mesh.num_boundary();
  for (int k = 0; k < nb; ++k) {
    const auto [u, v] = mesh.boundary_edges[static_cast<std::size_t>(k)];
    const double h = (mesh.nodes.row(v) - mesh.nodes.row(u)).norm();
    if (!(h > 0)) throw Error(ErrorKind::DegenerateElement, "boundary edge " + std::to_string(k));
    const int p = k, q = (k + 1) % nb;
    a.boundary_mass(p, p) += h / 3;
    a.boundary_mass(q, q) += h / 3;
    a.boundary_mass(p, q) += h / 6;
    a.boundary_mass(q, p) += h / 6;
    a.boundary_stiffness(p, p) += 1 / h;
    a.boundary_stiffness(q, q) += 1 / h;
    a.boundary_stiffness(p, q) -= 1 / h;
    a.boundary_stiffness(q, p) -= 1 / h;
  }
}

SpacePtr checked_space(const Eigen::MatrixXd& gram, const char* name) {
  try {
    return oplab::make_space<double>(gram.rows(), gram);
  } catch (const Error& e) {
    throw Error(ErrorKind::GramNotPD, std::string(name) + ": " + e.what());
  }
}

}  // namespace

Assembly assemble(Mesh mesh) {
  Assembly a;
  a.mesh = std::move(mesh);
  const int n = a.mesh.num_nodes();
  const int nb = a.mesh.num_boundary();
  a.stiffness = Eigen::MatrixXd::Zero(n, n);
  a.mass = Eigen::MatrixXd::Zero(n, n);
  a.boundary_mass = Eigen::MatrixXd::Zero(nb, nb);
  a.boundary_stiffness = Eigen::MatrixXd::Zero(nb, nb);
  a.restriction = Eigen::MatrixXd::Zero(nb, n);
  for (int k = 0; k < nb; ++k) a.restriction(k, a.mesh.boundary_nodes[static_cast<std::size_t>(k)]) = 1;

  if (a.mesh.dimension() == 1) {
    assemble_interval(a);
  } else {
    assemble_triangles(a);
  }
  return a;
}

Spaces space_h1partial(const Assembly& a) {
  const Eigen::MatrixXd& r = a.restriction;
  const Eigen::MatrixXd g = a.stiffness + r.transpose() * a.boundary_mass * r;
  return {checked_space(g, "H1_partial"), checked_space(a.mass, "L2(domain)"),
          checked_space(a.boundary_mass, "L2(boundary)"),
          checked_space(a.boundary_mass + a.boundary_stiffness, "H1(boundary)")};
}

Operator op_trace(const Assembly& a, const Spaces& spaces) {
  return Operator(spaces.h1_partial, spaces.l2_boundary, a.restriction);
}

Operator op_trace(const Assembly& a) { return op_trace(a, space_h1partial(a)); }

Operator op_embed_domain(const Assembly& a, const Spaces& spaces) {
  return Operator(spaces.h1_partial, spaces.l2_domain,
                  Eigen::MatrixXd::Identity(a.num_nodes(), a.num_nodes()));
}

Operator op_embed_domain(const Assembly& a) { return op_embed_domain(a, space_h1partial(a)); }

std::pair<Operator, Operator> op_embed_boundary(const Assembly& a, const Spaces& spaces) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(a.num_boundary(), a.num_boundary());
  return {Operator(spaces.h1_boundary, spaces.l2_boundary, id),
          Operator(spaces.l2_boundary, spaces.h1_boundary, id)};
}

std::pair<Operator, Operator> op_embed_boundary(const Assembly& a) {
  return op_embed_boundary(a, space_h1partial(a));
}

}  // namespace tracelab::fem2d
