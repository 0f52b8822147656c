#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "tracelab/error.hpp"
#include "tracelab/fem2d/assembly.hpp"
#include "tracelab/oplab.hpp"

namespace {

using namespace tracelab;
using namespace tracelab::fem2d;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

bool symmetric(const Mat& m) { return (m - m.transpose()).norm() <= 1e-14 * std::max(1.0, m.norm()); }

double min_eigenvalue(const Mat& m) { return oplab::euclid::jacobi_eigen(m).values(0); }

TEST(GenMesh, IntervalSingleSegment) {
  const Mesh m = gen_mesh(MeshKind::Interval, 1);
  EXPECT_EQ(m.num_nodes(), 2);
  EXPECT_EQ(m.num_elements(), 1);
  EXPECT_EQ(m.boundary_nodes, (std::vector<int>{0, 1}));
  EXPECT_DOUBLE_EQ(m.nodes(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(m.nodes(1, 0), 1.0);
}

TEST(GenMesh, SquareSingleCell) {
  const Mesh m = gen_mesh(MeshKind::Square, 1);
  EXPECT_EQ(m.num_nodes(), 4);
  EXPECT_EQ(m.num_elements(), 2);
  EXPECT_EQ(m.num_boundary(), 4);
  EXPECT_DOUBLE_EQ(domain_measure(m), 1.0);
}

TEST(GenMesh, LShapeMeasures) {
  // perimeter 1 + 1/2 + 1/2 + 1/2 + 1/2 + 1 = 4, area 3/4
  const Mesh m = gen_mesh(MeshKind::LShape, 2);
  EXPECT_NEAR(domain_measure(m), 0.75, 1e-15);
  EXPECT_NEAR(boundary_measure(m), 4.0, 1e-15);
  EXPECT_EQ(m.num_nodes(), 8);
  EXPECT_EQ(m.num_elements(), 6);
}

TEST(GenMesh, RejectsBadParameters) {
  try {
    gen_mesh(MeshKind::LShape, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadParameter);
  }
  EXPECT_THROW(gen_mesh(MeshKind::Square, 0), Error);
  EXPECT_THROW(parse_mesh_kind("disk"), Error);
  EXPECT_EQ(parse_mesh_kind("lshape"), MeshKind::LShape);
}

TEST(GenMesh, CountsAndBoundaryLoops) {
  for (int n : {1, 2, 4, 8, 16, 32}) {
    const Mesh sq = gen_mesh(MeshKind::Square, n);
    EXPECT_EQ(sq.num_nodes(), (n + 1) * (n + 1));
    EXPECT_EQ(sq.num_elements(), 2 * n * n);
    EXPECT_EQ(sq.num_boundary(), 4 * n);
    EXPECT_NEAR(boundary_measure(sq), 4.0, 1e-12);
    EXPECT_EQ(sq.boundary_nodes.front(), 0);
    for (std::size_t k = 0; k < sq.boundary_edges.size(); ++k) {
      EXPECT_EQ(sq.boundary_edges[k][1], sq.boundary_nodes[(k + 1) % sq.boundary_nodes.size()]);
    }
    if (n % 2 == 0) {
      const Mesh l = gen_mesh(MeshKind::LShape, n);
      EXPECT_EQ(l.num_elements(), 2 * n * n * 3 / 4);
      EXPECT_EQ(l.num_boundary(), 4 * n);
      EXPECT_NEAR(boundary_measure(l), 4.0, 1e-12);
      EXPECT_NEAR(domain_measure(l), 0.75, 1e-12);
    }
    for (int e = 0; e < sq.num_elements(); ++e) EXPECT_GT(element_measure(sq, e), 0.0);
  }
}

TEST(Assemble, IntervalHandMatrices) {
  const Assembly a = assemble(gen_mesh(MeshKind::Interval, 1));
  Mat k(2, 2), m(2, 2);
  k << 1, -1, -1, 1;
  m << 1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3;
  EXPECT_TRUE(a.stiffness.isApprox(k, 1e-15));
  EXPECT_TRUE(a.mass.isApprox(m, 1e-15));
  EXPECT_EQ(a.boundary_mass, Mat::Identity(2, 2));
  EXPECT_EQ(a.restriction, Mat::Identity(2, 2));
  EXPECT_EQ(a.boundary_stiffness, Mat::Zero(2, 2));
}

TEST(Assemble, SquareMeasureTotals) {
  const Assembly a = assemble(gen_mesh(MeshKind::Square, 1));
  EXPECT_NEAR(a.mass.sum(), 1.0, 1e-15);
  EXPECT_NEAR(a.boundary_mass.sum(), 4.0, 1e-15);
}

TEST(Assemble, InvariantsOnEveryMesh) {
  for (MeshKind kind : {MeshKind::Interval, MeshKind::Square, MeshKind::LShape}) {
    for (int n : {1, 2, 4, 8, 16, 32}) {
      if (kind == MeshKind::LShape && n % 2) continue;
      const Assembly a = assemble(gen_mesh(kind, n));
      const std::string tag = std::string(to_string(kind)) + " n=" + std::to_string(n);
      EXPECT_TRUE(symmetric(a.stiffness)) << tag;
      EXPECT_TRUE(symmetric(a.mass)) << tag;
      EXPECT_TRUE(symmetric(a.boundary_mass)) << tag;
      EXPECT_TRUE(symmetric(a.boundary_stiffness)) << tag;
      EXPECT_EQ(Eigen::LLT<Mat>(a.mass).info(), Eigen::Success) << tag;
      EXPECT_EQ(Eigen::LLT<Mat>(a.boundary_mass).info(), Eigen::Success) << tag;
      EXPECT_LE((a.stiffness * Vec::Ones(a.num_nodes())).cwiseAbs().maxCoeff(), 1e-12) << tag;
      EXPECT_LE((a.boundary_stiffness * Vec::Ones(a.num_boundary())).cwiseAbs().maxCoeff(), 1e-11)
          << tag;
      EXPECT_NEAR(a.mass.sum(), domain_measure(a.mesh), 1e-10) << tag;
      EXPECT_NEAR(a.boundary_mass.sum(), boundary_measure(a.mesh), 1e-10) << tag;
      EXPECT_DOUBLE_EQ(a.restriction.sum(), a.num_boundary()) << tag;
      if (n <= 8) {
        EXPECT_GE(min_eigenvalue(a.stiffness), -1e-12) << tag;
        EXPECT_GE(min_eigenvalue(a.boundary_stiffness), -1e-10) << tag;
      }
    }
  }
}

TEST(Assemble, PatchTestLinearFunction) {
  for (MeshKind kind : {MeshKind::Square, MeshKind::LShape}) {
    const Assembly a = assemble(gen_mesh(kind, 8));
    const Vec u = interpolate(a.mesh, [](double x, double) { return x; });
    EXPECT_NEAR(u.dot(a.stiffness * u), domain_measure(a.mesh), 1e-10);
  }
}

TEST(Spaces, IntervalGram) {
  const Assembly a = assemble(gen_mesh(MeshKind::Interval, 1));
  const Spaces s = space_h1partial(a);
  Mat g(2, 2);
  g << 2, -1, -1, 2;
  EXPECT_TRUE(s.h1_partial->gram().isApprox(g, 1e-15));
}

TEST(Spaces, BoundaryTermRemovesStiffnessKernel) {
  const Assembly a = assemble(gen_mesh(MeshKind::LShape, 4));
  const Spaces s = space_h1partial(a);
  const Vec ones = Vec::Ones(a.num_nodes());
  EXPECT_GT((s.h1_partial->gram() * ones).norm(), 0.1);
  EXPECT_NEAR(s.h1_partial->squared_norm(ones), 4.0, 1e-12);
}

TEST(Spaces, SquareGramSmallestEigenvalue) {
  const Assembly a = assemble(gen_mesh(MeshKind::Square, 8));
  const double lo = min_eigenvalue(space_h1partial(a).h1_partial->gram());
  RecordProperty("min_eigenvalue", std::to_string(lo));
  EXPECT_GT(lo, 1e-4);
}

TEST(Spaces, DiscreteNecasEquivalenceIsMeshStable) {
  for (MeshKind kind : {MeshKind::Square, MeshKind::LShape}) {
    double prev_lo = 0, prev_hi = 0;
    for (int n : {2, 4, 8, 16}) {
      const Assembly a = assemble(gen_mesh(kind, n));
      const Mat g = space_h1partial(a).h1_partial->gram();
      const auto eig = oplab::euclid::generalized_eigen(g, Mat(a.stiffness + a.mass));
      const double lo = eig.values(0);
      const double hi = eig.values(eig.values.size() - 1);
      EXPECT_GT(lo, 0.0);
      if (n > 2) {
        EXPECT_LT(std::abs(lo - prev_lo) / prev_lo, 0.5) << to_string(kind) << " n=" << n;
        EXPECT_LT(std::abs(hi - prev_hi) / prev_hi, 0.5) << to_string(kind) << " n=" << n;
      }
      prev_lo = lo;
      prev_hi = hi;
    }
  }
}

TEST(OpTrace, ConstantsAndInteriorHats) {
  const Assembly a = assemble(gen_mesh(MeshKind::Square, 2));
  const auto gamma = op_trace(a);
  EXPECT_EQ(gamma(Vec(Vec::Ones(9))), Vec::Ones(8));
  ASSERT_EQ(a.mesh.interior_nodes, std::vector<int>{4});
  Vec hat = Vec::Zero(9);
  hat(4) = 1;
  EXPECT_EQ(gamma(hat), Vec::Zero(8));
}

TEST(OpTrace, RankEqualsBoundaryCount) {
  for (MeshKind kind : {MeshKind::Interval, MeshKind::Square, MeshKind::LShape}) {
    const Assembly a = assemble(gen_mesh(kind, 4));
    const auto gamma = op_trace(a);
    EXPECT_EQ(oplab::euclid::numerical_rank(gamma.matrix()), a.num_boundary());
    EXPECT_EQ(oplab::rank(gamma), a.num_boundary());
    // kernel = interior-node subspace
    Mat interior = Mat::Zero(a.num_nodes(), static_cast<Eigen::Index>(a.mesh.interior_nodes.size()));
    for (std::size_t k = 0; k < a.mesh.interior_nodes.size(); ++k) {
      interior(a.mesh.interior_nodes[k], static_cast<Eigen::Index>(k)) = 1;
    }
    EXPECT_EQ((gamma.matrix() * interior).norm(), 0.0);
  }
}

TEST(OpEmbedDomain, IdentityMatrixAndSingularValueDecay) {
  std::ostringstream table;
  double prev = 0;
  for (int n : {2, 4, 8}) {
    const Assembly a = assemble(gen_mesh(MeshKind::Square, n));
    const auto e = op_embed_domain(a);
    const Vec v = Vec::LinSpaced(a.num_nodes(), -1, 1);
    EXPECT_EQ(e(v), v);
    const Vec sv = Eigen::BDCSVD<Mat>(oplab::to_euclidean(e)).singularValues();
    const double c = sv(0);
    const Spaces s = space_h1partial(a);
    EXPECT_LE(s.l2_domain->norm(e(v)), c * s.h1_partial->norm(v) * (1 + 1e-12));
    table << "n=" << n << " sigma_max=" << c << " sigma_min=" << sv(sv.size() - 1) << "; ";
    if (n > 2) EXPECT_NEAR(c, prev, 0.5 * prev);
    prev = c;
  }
  RecordProperty("embedding_singular_values", table.str());
}

TEST(OpEmbedBoundary, InverseAdjointAndNorm) {
  const Assembly a = assemble(gen_mesh(MeshKind::Square, 4));
  const auto [u, v] = op_embed_boundary(a);
  EXPECT_EQ((u * v).matrix(), Mat::Identity(16, 16));
  EXPECT_GT((oplab::adjoint(u).matrix() - Mat::Identity(16, 16)).norm(), 1e-3);
  EXPECT_LE(oplab::operator_norm(u), 1.0 + 1e-12);
}

TEST(MeshDump, Sections) {
  std::ostringstream out;
  write_mesh(out, gen_mesh(MeshKind::Square, 1));
  std::istringstream in(out.str());
  std::string word;
  int count = 0;
  in >> word >> count;
  EXPECT_EQ(word, "nodes");
  EXPECT_EQ(count, 4);
  for (int i = 0; i < 8; ++i) in >> word;
  in >> word >> count;
  EXPECT_EQ(word, "elements");
  EXPECT_EQ(count, 2);
  for (int i = 0; i < 6; ++i) in >> word;
  in >> word >> count;
  EXPECT_EQ(word, "boundary");
  EXPECT_EQ(count, 4);
}

}  // namespace
