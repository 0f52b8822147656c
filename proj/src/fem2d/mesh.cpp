#include "tracelab/fem2d/mesh.hpp"

#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "tracelab/error.hpp"

namespace tracelab::fem2d {

std::string_view to_string(MeshKind kind) {
  switch (kind) {
    case MeshKind::Interval: return "interval";
    case MeshKind::Square: return "square";
    case MeshKind::LShape: return "lshape";
  }
  return "unknown";
}

MeshKind parse_mesh_kind(std::string_view name) {
  if (name == "interval") return MeshKind::Interval;
  if (name == "square") return MeshKind::Square;
  if (name == "lshape") return MeshKind::LShape;
  throw Error(ErrorKind::BadParameter, "unknown mesh kind '" + std::string(name) + "'");
}

namespace {

Mesh interval_mesh(int n) {
  Mesh mesh;
  mesh.kind = MeshKind::Interval;
  mesh.n = n;
  mesh.nodes.resize(n + 1, 1);
  for (int i = 0; i <= n; ++i) mesh.nodes(i, 0) = static_cast<double>(i) / n;
  mesh.elements.resize(n, 2);
  for (int e = 0; e < n; ++e) mesh.elements.row(e) << e, e + 1;
  mesh.boundary_nodes = {0, n};
  for (int i = 1; i < n; ++i) mesh.interior_nodes.push_back(i);
  return mesh;
}

// Grid nodes (i, j) with i, j in [0, n]; `keep_node` and `keep_cell` carve
// the domain out of the full grid.
template <typename KeepNode, typename KeepCell>
Mesh grid_mesh(MeshKind kind, int n, KeepNode keep_node, KeepCell keep_cell) {
  Mesh mesh;
  mesh.kind = kind;
  mesh.n = n;

  std::vector<int> index((n + 1) * (n + 1), -1);
  std::vector<std::pair<int, int>> coords;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      if (keep_node(i, j)) {
        index[j * (n + 1) + i] = static_cast<int>(coords.size());
        coords.emplace_back(i, j);
      }
    }
  }
  mesh.nodes.resize(static_cast<Eigen::Index>(coords.size()), 2);
  for (std::size_t k = 0; k < coords.size(); ++k) {
    mesh.nodes(static_cast<Eigen::Index>(k), 0) = static_cast<double>(coords[k].first) / n;
    mesh.nodes(static_cast<Eigen::Index>(k), 1) = static_cast<double>(coords[k].second) / n;
  }

  std::vector<std::array<int, 3>> tris;
  auto id = [&](int i, int j) { return index[j * (n + 1) + i]; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!keep_cell(i, j)) continue;
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      tris.push_back({a, b, c});
      tris.push_back({a, c, d});
    }
  }
  mesh.elements.resize(static_cast<Eigen::Index>(tris.size()), 3);
  for (std::size_t e = 0; e < tris.size(); ++e) {
    const auto row = static_cast<Eigen::Index>(e);
    mesh.elements.row(row) << tris[e][0], tris[e][1], tris[e][2];
  }

  // Edges seen by exactly one triangle form the boundary; the orientation
  // inherited from counter-clockwise triangles runs counter-clockwise
  // around the domain.
  std::map<std::pair<int, int>, int> count;
  std::map<std::pair<int, int>, std::pair<int, int>> oriented;
  for (const auto& t : tris) {
    for (int k = 0; k < 3; ++k) {
      const int u = t[k], v = t[(k + 1) % 3];
      const auto key = std::minmax(u, v);
      ++count[key];
      oriented[key] = {u, v};
    }
  }
  std::map<int, int> next;
  for (const auto& [key, c] : count) {
    if (c == 1) {
      const auto [u, v] = oriented[key];
      if (!next.emplace(u, v).second) {
        throw Error(ErrorKind::BadParameter, "boundary is not a simple loop");
      }
    }
  }
  const int start = id(0, 0);
  int cur = start;
  do {
    mesh.boundary_nodes.push_back(cur);
    const auto it = next.find(cur);
    if (it == next.end()) throw Error(ErrorKind::BadParameter, "boundary loop is open");
    mesh.boundary_edges.push_back({cur, it->second});
    cur = it->second;
  } while (cur != start && mesh.boundary_nodes.size() <= next.size());
  if (cur != start || mesh.boundary_nodes.size() != next.size()) {
    throw Error(ErrorKind::BadParameter, "boundary edges do not form a single loop");
  }

  std::vector<bool> on_boundary(coords.size(), false);
  for (int b : mesh.boundary_nodes) on_boundary[static_cast<std::size_t>(b)] = true;
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (!on_boundary[k]) mesh.interior_nodes.push_back(static_cast<int>(k));
  }
  return mesh;
}

}  // namespace

Mesh gen_mesh(MeshKind kind, int n) {
  if (n < 1) throw Error(ErrorKind::BadParameter, "refinement n must be >= 1");
  switch (kind) {
    case MeshKind::Interval:
      return interval_mesh(n);
    case MeshKind::Square:
      return grid_mesh(
          kind, n, [](int, int) { return true; }, [](int, int) { return true; });
    case MeshKind::LShape: {
      if (n % 2 != 0) throw Error(ErrorKind::BadParameter, "lshape needs an even refinement n");
      const int h = n / 2;
      return grid_mesh(
          kind, n, [h](int i, int j) { return i <= h || j <= h; },
          [h](int i, int j) { return i < h || j < h; });
    }
  }
  throw Error(ErrorKind::BadParameter, "unknown mesh kind");
}

double element_measure(const Mesh& mesh, int e) {
  const auto el = mesh.elements.row(e);
  if (mesh.dimension() == 1) return mesh.nodes(el(1), 0) - mesh.nodes(el(0), 0);
  const Eigen::Vector2d a = mesh.nodes.row(el(0)).transpose();
  const Eigen::Vector2d b = mesh.nodes.row(el(1)).transpose();
  const Eigen::Vector2d c = mesh.nodes.row(el(2)).transpose();
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

double domain_measure(const Mesh& mesh) {
  double total = 0;
  for (int e = 0; e < mesh.num_elements(); ++e) total += element_measure(mesh, e);
  return total;
}

double boundary_measure(const Mesh& mesh) {
  if (mesh.dimension() == 1) return static_cast<double>(mesh.boundary_nodes.size());
  double total = 0;
  for (const auto& [u, v] : mesh.boundary_edges) {
    total += (mesh.nodes.row(v) - mesh.nodes.row(u)).norm();
  }
  return total;
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out << "nodes " << mesh.num_nodes() << "\n";
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    for (int d = 0; d < mesh.dimension(); ++d) out << (d ? " " : "") << mesh.nodes(i, d);
    out << "\n";
  }
  out << "elements " << mesh.num_elements() << "\n";
  for (int e = 0; e < mesh.num_elements(); ++e) {
    for (int k = 0; k < mesh.elements.cols(); ++k) out << (k ? " " : "") << mesh.elements(e, k);
    out << "\n";
  }
  out << "boundary " << mesh.num_boundary() << "\n";
  for (int b : mesh.boundary_nodes) out << b << "\n";
}

}  // namespace tracelab::fem2d
