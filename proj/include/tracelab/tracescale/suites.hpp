#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tracelab/fem2d/assembly.hpp"
#include "tracelab/report.hpp"
#include "tracelab/tracescale/hs_norm.hpp"

namespace tracelab::tracescale {

struct SuiteOptions {
  std::uint64_t seed = 0;
  Tolerances tol;
  int trials = 100;           // oplab fixtures
  int douglas_pairs = 50;
  int data_samples = 20;      // two-path comparisons, per population
  int identity_samples = 200; // Green and Robin identities
  int necas_samples = 100;
  int interp_samples = 100;
  int duality_samples = 20;
};

/// Random operator fixtures: Penrose relations, involutions, adjointness,
/// the six Labrousse identities, the norm splits, T_B and the
/// decomposition, then Douglas factorizations of constructed pairs.
SuiteReport suite_oplab(const SuiteOptions& opt);

/// Dirichlet, Robin and Poisson-Robin solvers against pinv/adjoint, Green's
/// formula, the Robin boundary identity and the interval hand values.
SuiteReport suite_pde(const fem2d::Assembly& a, const SuiteOptions& opt);

SuiteReport suite_hhalf(const fem2d::Assembly& a, const SuiteOptions& opt);
SuiteReport suite_h1(const fem2d::Assembly& a, const SuiteOptions& opt);

SuiteReport necas_constants(const fem2d::Assembly& a, int n_samples, std::uint64_t seed,
                            const Tolerances& tol = {});

/// Log-convexity of t -> ||(I+S)^t g|| over every triple of the grid.
SuiteReport interpolation_check(const TraceScale& ts, const VectorXd& g, const std::vector<double>& grid,
                                const Tolerances& tol = {});
SuiteReport interpolation_check(const fem2d::Assembly& a, const VectorXd& g,
                                const std::vector<double>& grid, const Tolerances& tol = {});

/// M_b Q_s^{-1} M_b = Q_{-s} and the attained dual sup, for s in (0, 1].
SuiteReport duality_check(const TraceScale& ts, double s, const Tolerances& tol = {},
                          std::uint64_t seed = 0, int samples = 20);
SuiteReport duality_check(const fem2d::Assembly& a, double s, const Tolerances& tol = {});

/// Random g on the standard five-point grid, plus the interval hand case.
SuiteReport suite_interp(const fem2d::Assembly& a, const SuiteOptions& opt);

/// duality_check at s = 1/4, 1/2, 3/4, 1.
SuiteReport suite_dual(const fem2d::Assembly& a, const SuiteOptions& opt);

/// Drift (largest successive relative change) or growth (max over min) of
/// the mesh-dependent constants of one suite across refinement levels,
/// gated against the suite's stability tolerance. Levels must share suite
/// and mesh kind and be ordered by n.
SuiteReport refinement_report(const std::vector<SuiteReport>& levels, const Tolerances& tol);

/// Whether refinement_report has anything to gate for this suite.
bool has_refinement_gates(const std::string& suite);

double drift(const std::vector<double>& values);
double growth(const std::vector<double>& values);

}  // namespace tracelab::tracescale
