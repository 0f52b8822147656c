#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "tracelab/error.hpp"
#include "tracelab/fem2d/mesh.hpp"
#include "tracelab/oplab.hpp"
#include "tracelab/tracescale/hs_norm.hpp"
#include "tracelab/tracescale/solvers.hpp"
#include "tracelab/tracescale/suites.hpp"

using namespace tracelab;
using namespace tracelab::tracescale;
using fem2d::MeshKind;

namespace {

fem2d::Assembly mesh(MeshKind kind, int n) { return fem2d::assemble(fem2d::gen_mesh(kind, n)); }

VectorXd vec2(double a, double b) { return (VectorXd(2) << a, b).finished(); }

void expect_kind(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
    FAIL() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

void expect_all_pass(const SuiteReport& r) {
  for (const auto& v : r.verdicts) {
    EXPECT_TRUE(v.pass) << r.suite << "/" << r.mesh << "/" << r.n << ": " << v.name << " = " << v.value << " "
                        << v.relation << " " << v.threshold;
  }
  for (const auto& [name, value] : r.residuals) {
    EXPECT_TRUE(std::isfinite(value) && value >= 0) << name;
  }
}

SuiteOptions small_options() {
  SuiteOptions opt;
  opt.seed = 7;
  opt.trials = 20;
  opt.douglas_pairs = 10;
  opt.data_samples = 4;
  opt.identity_samples = 20;
  opt.necas_samples = 10;
  opt.interp_samples = 10;
  opt.duality_samples = 4;
  return opt;
}

}  // namespace

TEST(Solvers, IntervalHarmonicExtensionIsLinear) {
  for (int n : {1, 3, 8}) {
    const auto a = mesh(MeshKind::Interval, n);
    const VectorXd z = harmonic_extension(a, vec2(1, 0));
    const VectorXd expect = fem2d::interpolate(a.mesh, [](double x, double) { return 1 - x; });
    EXPECT_LT((z - expect).cwiseAbs().maxCoeff(), 1e-13) << n;
  }
}

TEST(Solvers, IntervalRobinHandValues) {
  for (int n : {1, 2, 8}) {
    const auto a = mesh(MeshKind::Interval, n);
    const VectorXd ones = robin_solve(a, vec2(1, 1));
    EXPECT_LT((ones - VectorXd::Ones(a.num_nodes())).cwiseAbs().maxCoeff(), 1e-13);
    const VectorXd z = robin_solve(a, vec2(1, 0));
    EXPECT_NEAR(z(0), 2.0 / 3.0, 1e-13);
    EXPECT_NEAR(z(n), 1.0 / 3.0, 1e-13);
    const VectorXd expect =
        fem2d::interpolate(a.mesh, [](double x, double) { return 2.0 / 3.0 * (1 - x) + x / 3.0; });
    EXPECT_LT((z - expect).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_EQ(robin_solve(a, vec2(0, 0)).norm(), 0.0);
  }
}

TEST(Solvers, ZeroSourceGivesZero) {
  const auto a = mesh(MeshKind::Square, 4);
  EXPECT_EQ(poisson_robin(a, VectorXd::Zero(a.num_nodes())).norm(), 0.0);
}

TEST(Solvers, PoissonRobinMatchesAnalyticSolution) {
  // -u'' = 1, -u'(0) + u(0) = 0, u'(1) + u(1) = 0  =>  u = -x^2/2 + x/2 + 1/2.
  double previous = 0;
  for (int n : {4, 8, 16, 32}) {
    const auto a = mesh(MeshKind::Interval, n);
    const VectorXd u = poisson_robin(a, VectorXd::Ones(a.num_nodes()));
    const VectorXd exact =
        fem2d::interpolate(a.mesh, [](double x, double) { return -x * x / 2 + x / 2 + 0.5; });
    const double err = (u - exact).cwiseAbs().maxCoeff();
    const double h = 1.0 / n;
    EXPECT_LE(err, h * h) << n;
    EXPECT_NEAR(u(0), 0.5, h * h);
    EXPECT_NEAR(u(n), 0.5, h * h);
    if (previous > 1e-12) EXPECT_LT(err, previous);
    previous = err;
  }
}

TEST(Solvers, NormalDerivativeHandValues) {
  const auto a = mesh(MeshKind::Interval, 5);
  const VectorXd z = fem2d::interpolate(a.mesh, [](double x, double) { return 1 - x; });
  const VectorXd w = normal_derivative(a, z);
  EXPECT_NEAR(w(0), 1.0, 1e-13);
  EXPECT_NEAR(w(1), -1.0, 1e-13);
  const VectorXd v = fem2d::interpolate(a.mesh, [](double x, double) { return x; });
  EXPECT_LT(green_residual(a, z, v), 1e-14);

  const auto sq = mesh(MeshKind::Square, 4);
  EXPECT_LT(normal_derivative(sq, VectorXd::Ones(sq.num_nodes())).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Solvers, NormalDerivativeRejectsNonHarmonic) {
  const auto a = mesh(MeshKind::Square, 4);
  VectorXd hat = VectorXd::Zero(a.num_nodes());
  hat(a.mesh.interior_nodes.front()) = 1;
  expect_kind(ErrorKind::NotHarmonic, [&] { normal_derivative(a, hat); });
  expect_kind(ErrorKind::NotHarmonic, [&] { green_residual(a, hat, hat); });
}

TEST(Solvers, DimensionChecks) {
  const auto a = mesh(MeshKind::Square, 2);
  expect_kind(ErrorKind::DimensionMismatch, [&] { harmonic_extension(a, VectorXd::Zero(3)); });
  expect_kind(ErrorKind::DimensionMismatch, [&] { poisson_robin(a, VectorXd::Zero(3)); });
}

TEST(Solvers, LinearHarmonicsReproducedOnSquare) {
  const auto a = mesh(MeshKind::Square, 8);
  const VectorXd x = fem2d::interpolate(a.mesh, [](double px, double) { return px; });
  const VectorXd z = harmonic_extension(a, a.restriction * x);
  EXPECT_LT((z - x).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Solvers, TwoPathAgreementOnLShape) {
  const auto a = mesh(MeshKind::LShape, 4);
  const auto spaces = fem2d::space_h1partial(a);
  const auto gamma = fem2d::op_trace(a, spaces);
  const auto lambda = oplab::pinv(gamma);
  const auto gamma_adj = oplab::adjoint(gamma);
  const auto e_adj = oplab::adjoint(fem2d::op_embed_domain(a, spaces));
  oplab::FixtureGenerator<> gen(3);
  PdeSolver solver(a);
  for (int k = 0; k < 10; ++k) {
    const VectorXd g = gen.normal_vector(a.num_boundary());
    const VectorXd f = gen.normal_vector(a.num_nodes());
    EXPECT_LT((solver.harmonic_extension(g) - lambda(g)).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LT((solver.robin_solve(g) - gamma_adj(g)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((solver.poisson_robin(f) - e_adj(f)).cwiseAbs().maxCoeff(), 1e-10);
    const VectorXd z = solver.robin_solve(g);
    EXPECT_LT((solver.normal_derivative(z) + a.restriction * z - g).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Solvers, DirichletPoissonFluxWithSource) {
  // -u'' = 1, u(0) = u(1) = 0: u = x(1-x)/2, outward flux -1/2 at both ends.
  const auto a = mesh(MeshKind::Interval, 8);
  PdeSolver solver(a);
  const VectorXd f = VectorXd::Ones(a.num_nodes());
  const VectorXd u = solver.dirichlet_poisson(f);
  const VectorXd exact = fem2d::interpolate(a.mesh, [](double x, double) { return x * (1 - x) / 2; });
  EXPECT_LT((u - exact).cwiseAbs().maxCoeff(), 1e-13);
  const VectorXd w = solver.normal_derivative(u, f);
  EXPECT_NEAR(w(0), -0.5, 1e-13);
  EXPECT_NEAR(w(1), -0.5, 1e-13);
}

TEST(HsNorm, IntervalScaleHandValues) {
  const auto a = mesh(MeshKind::Interval, 6);
  const TraceScale ts(a);
  const MatrixXd s_hand = (MatrixXd(2, 2) << 2, -1, -1, 2).finished();
  EXPECT_LT((ts.s().matrix() - s_hand).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(ts.shifted().eigenvalues(0), 2.0, 1e-12);
  EXPECT_NEAR(ts.shifted().eigenvalues(1), 4.0, 1e-12);

  const NormMatrix half = ts.gram(0.5);
  const VectorXd e0 = vec2(1, 0);
  EXPECT_NEAR(e0.dot(half.q * e0), 3.0, 1e-12);
  EXPECT_NEAR(ts.scale_norm(e0, 0.5), std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(ts.scale_norm(e0, 1.0), std::sqrt(10.0), 1e-12);
}

TEST(HsNorm, OrderZeroIsBoundaryMassExactly) {
  for (auto kind : {MeshKind::Interval, MeshKind::Square, MeshKind::LShape}) {
    const auto a = mesh(kind, 4);
    const NormMatrix q0 = hs_gram(a, 0.0);
    EXPECT_EQ(q0.q, a.boundary_mass);
    EXPECT_EQ(q0.s, 0.0);
  }
}

TEST(HsNorm, GramsSymmetricPositiveDefinite) {
  const auto a = mesh(MeshKind::LShape, 4);
  const TraceScale ts(a);
  for (double s : {-1.0, -0.5, 0.25, 0.5, 1.0}) {
    const MatrixXd q = ts.gram(s).q;
    EXPECT_EQ(q, q.transpose());
    EXPECT_EQ(Eigen::LLT<MatrixXd>(q).info(), Eigen::Success) << s;
  }
}

TEST(HsNorm, OrderOutOfRange) {
  const auto a = mesh(MeshKind::Interval, 1);
  expect_kind(ErrorKind::OrderOutOfRange, [&] { hs_gram(a, 1.5); });
  expect_kind(ErrorKind::OrderOutOfRange, [&] { hs_gram(a, -1.01); });
  expect_kind(ErrorKind::OrderOutOfRange, [&] { duality_check(a, 0.0); });
  expect_kind(ErrorKind::OrderOutOfRange, [&] { duality_check(a, 1.5); });
}

TEST(Equivalence, ScalingExamples) {
  const auto a = mesh(MeshKind::Square, 4);
  const TraceScale ts(a);
  const NormMatrix q = ts.gram(0.5);
  const Equivalence same = equivalence_constants(q, q);
  EXPECT_NEAR(same.c_min, 1.0, 1e-10);
  EXPECT_NEAR(same.c_max, 1.0, 1e-10);
  const Equivalence scaled = equivalence_constants(MatrixXd(4 * q.q), q.q);
  EXPECT_NEAR(scaled.c_min, 2.0, 1e-10);
  EXPECT_NEAR(scaled.c_max, 2.0, 1e-10);
}

TEST(Equivalence, IntervalHalfVersusL2) {
  const auto a = mesh(MeshKind::Interval, 3);
  const TraceScale ts(a);
  const Equivalence e = equivalence_constants(ts.gram(0.5), ts.gram(0.0));
  EXPECT_NEAR(e.c_min, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(e.c_max, 2.0, 1e-12);
  // Attained by the eigenvectors.
  auto ratio = [&](const VectorXd& x) { return std::sqrt(x.dot(ts.gram(0.5).q * x) / x.squaredNorm()); };
  EXPECT_NEAR(ratio(e.argmin), e.c_min, 1e-12);
  EXPECT_NEAR(ratio(e.argmax), e.c_max, 1e-12);
}

TEST(Equivalence, DimensionMismatch) {
  expect_kind(ErrorKind::DimensionMismatch,
              [] { equivalence_constants(MatrixXd::Identity(2, 2), MatrixXd::Identity(3, 3)); });
}

TEST(Interpolation, IntervalHandTriple) {
  const auto a = mesh(MeshKind::Interval, 2);
  const SuiteReport r = interpolation_check(a, vec2(1, 0), {0.0, 0.5, 1.0});
  expect_all_pass(r);
  // 3 <= sqrt(10): slack 1 - sqrt(3) / 10^{1/4}.
  EXPECT_NEAR(r.constants.at("interp_min_slack"), 1 - std::sqrt(3.0) / std::pow(10.0, 0.25), 1e-12);
  EXPECT_EQ(r.constants.at("interp_triples"), 1);
}

TEST(Interpolation, EigenvectorGivesEquality) {
  const auto a = mesh(MeshKind::Square, 4);
  const TraceScale ts(a);
  const VectorXd g = ts.shifted().eigenvectors.col(3);
  const SuiteReport r = interpolation_check(ts, g, {0.0, 0.2, 0.5, 0.9, 1.0});
  expect_all_pass(r);
  EXPECT_NEAR(r.constants.at("interp_min_slack"), 0.0, 1e-12);
}

TEST(Interpolation, Errors) {
  const auto a = mesh(MeshKind::Interval, 1);
  expect_kind(ErrorKind::ZeroVector, [&] { interpolation_check(a, vec2(0, 0), {0, 1}); });
  expect_kind(ErrorKind::OrderOutOfRange, [&] { interpolation_check(a, vec2(1, 0), {0, 1.2}); });
}

TEST(Duality, IntervalHalfIsResolvent) {
  const auto a = mesh(MeshKind::Interval, 1);
  const SuiteReport r = duality_check(a, 0.5);
  expect_all_pass(r);
  const MatrixXd q = hs_gram(a, -0.5).q;
  const MatrixXd hand = (MatrixXd(2, 2) << 3, 1, 1, 3).finished() / 8;
  EXPECT_LT((q - hand).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Duality, SquareOrderOne) {
  const auto a = mesh(MeshKind::Square, 8);
  const SuiteReport r = duality_check(a, 1.0);
  expect_all_pass(r);
  EXPECT_LE(r.residuals.at("duality_gram_s1"), 1e-9);
}

TEST(Stability, DriftAndGrowth) {
  EXPECT_NEAR(drift({1.0, 1.1, 1.21}), 0.1, 1e-12);
  EXPECT_NEAR(drift({4.0, 3.0, 3.0}), 0.25, 1e-12);
  EXPECT_DOUBLE_EQ(drift({2.0}), 0.0);
  EXPECT_DOUBLE_EQ(growth({1.0, 2.5, 2.0}), 2.5);
  EXPECT_TRUE(std::isinf(growth({0.0, 1.0})));
}

TEST(Stability, RefinementReportGates) {
  SuiteReport a, b;
  a.suite = b.suite = "h1";
  a.mesh = b.mesh = "square";
  a.constants = {{"q1_c_min", 1.0}, {"q1_c_max", 2.0}, {"seminorm_c_min", 1.0}, {"seminorm_c_max", 1.4}};
  b.constants = a.constants;
  b.constants["q1_c_max"] = 7.0;
  const SuiteReport r = refinement_report({a, b}, Tolerances());
  EXPECT_EQ(r.suite, "h1_refinement");
  EXPECT_FALSE(r.passed());
  int failing = 0;
  for (const auto& v : r.verdicts) failing += !v.pass;
  EXPECT_EQ(failing, 1);
  EXPECT_FALSE(has_refinement_gates("pde"));
}

TEST(Report, NonFiniteResidualStoredAsInfinity) {
  SuiteReport r;
  r.gate_residual("x", std::nan(""), 1.0);
  r.residual("y", -1.0);
  EXPECT_TRUE(std::isinf(r.residuals.at("x")));
  EXPECT_TRUE(std::isinf(r.residuals.at("y")));
  EXPECT_FALSE(r.passed());
}

TEST(Report, TolerancesValidateOverrides) {
  Tolerances tol;
  tol.set("green", 1e-8);
  EXPECT_EQ(tol.get("green"), 1e-8);
  expect_kind(ErrorKind::ConfigParseError, [&] { tol.set("nonsense", 1.0); });
  expect_kind(ErrorKind::ConfigParseError, [&] { tol.set("green", -1.0); });
}

TEST(Suites, PdeIntervalHandValues) {
  for (int n : {1, 8}) {
    const SuiteReport r = suite_pde(mesh(MeshKind::Interval, n), small_options());
    expect_all_pass(r);
    EXPECT_NEAR(r.constants.at("robin_a"), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(r.constants.at("robin_b"), 1.0 / 3.0, 1e-12);
    EXPECT_TRUE(r.residuals.count("hand_values"));
  }
}

TEST(Suites, PdeTwoDimensional) {
  expect_all_pass(suite_pde(mesh(MeshKind::Square, 4), small_options()));
  expect_all_pass(suite_pde(mesh(MeshKind::LShape, 4), small_options()));
}

TEST(Suites, HhalfSplitHandValue) {
  const SuiteReport r = suite_hhalf(mesh(MeshKind::Interval, 1), small_options());
  expect_all_pass(r);
  EXPECT_NEAR(r.constants.at("split_total"), 3.0, 1e-12);
  EXPECT_NEAR(r.constants.at("split_l2"), 1.0, 1e-12);
  EXPECT_NEAR(r.constants.at("split_extension"), 2.0, 1e-12);
  EXPECT_TRUE(r.matrices.count("S"));
}

TEST(Suites, HhalfSquare) {
  const SuiteReport r = suite_hhalf(mesh(MeshKind::Square, 4), small_options());
  expect_all_pass(r);
  EXPECT_NEAR(r.constants.at("quotient_c_min"), 1.0, 1e-9);
  EXPECT_NEAR(r.constants.at("quotient_c_max"), 1.0, 1e-9);
  EXPECT_GT(r.constants.at("h1_quotient_c_min"), 0.0);
}

TEST(Suites, H1IntervalAndSquare) {
  expect_all_pass(suite_h1(mesh(MeshKind::Interval, 2), small_options()));
  const SuiteReport r = suite_h1(mesh(MeshKind::Square, 4), small_options());
  expect_all_pass(r);
  EXPECT_NEAR(r.constants.at("ones_h1_norm"), 2.0, 1e-12);
  EXPECT_NEAR(r.constants.at("ones_l2_norm"), 2.0, 1e-12);
  EXPECT_GE(r.constants.at("seminorm_c_min"), 1.0 - 1e-12);
  EXPECT_LE(r.constants.at("seminorm_c_max"), std::sqrt(2.0) + 1e-12);
}

TEST(Suites, NecasFiniteConstants) {
  const SuiteReport r = necas_constants(mesh(MeshKind::Square, 4), 10, 5);
  expect_all_pass(r);
  EXPECT_GT(r.constants.at("rellich"), 0.0);
  EXPECT_EQ(r.constants.at("rellich_skipped"), 0.0);
}

TEST(Suites, InterpAndDual) {
  expect_all_pass(suite_interp(mesh(MeshKind::Interval, 1), small_options()));
  expect_all_pass(suite_interp(mesh(MeshKind::LShape, 4), small_options()));
  expect_all_pass(suite_dual(mesh(MeshKind::Interval, 1), small_options()));
  expect_all_pass(suite_dual(mesh(MeshKind::Square, 4), small_options()));
}

TEST(Suites, OplabFixtures) {
  const SuiteReport r = suite_oplab(small_options());
  expect_all_pass(r);
  EXPECT_GE(r.residuals.size(), 8u);
  EXPECT_EQ(r.mesh, "none");
}

TEST(Suites, DeterministicGivenSeed) {
  const auto a = mesh(MeshKind::Square, 4);
  const SuiteReport x = suite_pde(a, small_options());
  const SuiteReport y = suite_pde(a, small_options());
  EXPECT_EQ(x.residuals, y.residuals);
  EXPECT_EQ(x.constants, y.constants);
}
