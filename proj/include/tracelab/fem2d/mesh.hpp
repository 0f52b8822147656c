#pragma once

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace tracelab::fem2d {

enum class MeshKind { Interval, Square, LShape };

std::string_view to_string(MeshKind kind);

/// Parses "interval", "square" or "lshape"; throws BadParameter otherwise.
MeshKind parse_mesh_kind(std::string_view name);

/// Structured P1 mesh of (0,1), (0,1)^2, or the L-shape (0,1)^2 minus [1/2,1)^2.
///
/// Node coordinates are stored one row per node (one column in 1D, two in
/// 2D); elements one row per segment or counter-clockwise triangle. The
/// boundary of a 2D mesh is a single counter-clockwise loop starting at
/// the origin: boundary_edges[k] = (boundary_nodes[k], boundary_nodes[k+1])
/// with wrap-around. The interval's boundary is its two endpoints and it
/// has no boundary edges.
struct Mesh {
  MeshKind kind = MeshKind::Square;
  int n = 1;
  Eigen::MatrixXd nodes;
  Eigen::MatrixXi elements;
  std::vector<int> boundary_nodes;
  std::vector<std::array<int, 2>> boundary_edges;
  std::vector<int> interior_nodes;

  int dimension() const { return static_cast<int>(nodes.cols()); }
  int num_nodes() const { return static_cast<int>(nodes.rows()); }
  int num_elements() const { return static_cast<int>(elements.rows()); }
  int num_boundary() const { return static_cast<int>(boundary_nodes.size()); }
};

Mesh gen_mesh(MeshKind kind, int n);

/// Signed length (1D) or oriented area (2D) of element e.
double element_measure(const Mesh& mesh, int e);

/// |Omega| as the sum of element measures.
double domain_measure(const Mesh& mesh);

/// |boundary| as the sum of boundary edge lengths; the interval's boundary
/// carries counting measure, so this is 2 there.
double boundary_measure(const Mesh& mesh);

/// Plain-text dump with sections `nodes`, `elements`, `boundary`, index base 0.
void write_mesh(std::ostream& out, const Mesh& mesh);

}  // namespace tracelab::fem2d
