#include <algorithm>
#include <cmath>
#include <limits>

#include "tracelab/oplab.hpp"
#include "tracelab/tracescale/suites.hpp"

namespace tracelab::tracescale {

namespace {

using Op = oplab::Operator<double>;

struct Max {
  double value = 0;
  void add(double x) {
    if (std::isnan(x)) x = std::numeric_limits<double>::infinity();
    value = std::max(value, x);
  }
};

}  // namespace

SuiteReport suite_oplab(const SuiteOptions& opt) {
  const Tolerances& tol = opt.tol;
  SuiteReport r;
  r.suite = "oplab";
  r.mesh = "none";
  oplab::FixtureGenerator<double> gen(opt.seed);

  Max penrose, inv_adj, inv_pinv, adjointness, norm_split, range_split;
  Max tb_penrose, tb_cross, tb_adjoint, tb_projection, decomposition;
  Max labrousse[6];
  int rank_deficient = 0;
  int labrousse5_applicable = 0;
  for (int t = 0; t < opt.trials; ++t) {
    const int m = gen.uniform_int(1, 12);
    const int n = gen.uniform_int(1, 12);
    const auto dom = gen.random_space(n);
    const auto cod = gen.random_space(m);
    const int full = std::min(m, n);
    const bool deficient = (t % 2 == 1) && full > 1;
    const Op a = gen.random_operator(dom, cod, deficient ? gen.uniform_int(1, full - 1) : full);
    rank_deficient += deficient;

    const Op b = oplab::pinv(a);
    for (double x : oplab::penrose_residuals(a, b)) penrose.add(x);
    inv_adj.add(oplab::relative_residual(oplab::adjoint(oplab::adjoint(a)), a));
    inv_pinv.add(oplab::relative_residual(oplab::pinv(b), a));

    const auto x = gen.normal_vector(n);
    const auto y = gen.normal_vector(m);
    const double scale = oplab::operator_norm(a) * dom->norm(x) * cod->norm(y);
    adjointness.add(std::abs(cod->inner(a(x), y) - dom->inner(x, oplab::adjoint(a)(y))) / std::max(scale, 1e-300));

    for (const auto& item : oplab::labrousse_check(a)) {
      const int k = item.name.back() - '1';
      if (item.applicable) labrousse[k].add(item.value);
      if (k == 4 && item.applicable) ++labrousse5_applicable;
    }

    const auto split = oplab::norm_identity_check(a, oplab::VectorX<double>(x));
    norm_split.add(split.split_residual);
    range_split.add(split.range_split_residual);

    const auto tb = oplab::build_tb(a);
    const auto check = oplab::verify_tb(a, tb);
    for (double v : check.penrose) tb_penrose.add(v);
    tb_cross.add(check.pinv_crosscheck);
    tb_adjoint.add(check.adjoint_residual);
    tb_projection.add(std::max(check.left_projection, check.right_projection));
    decomposition.add(oplab::decompose(a).residual);
  }
  r.constant("trials", opt.trials);
  r.constant("rank_deficient_trials", rank_deficient);
  r.constant("labrousse_5_applicable", labrousse5_applicable);
  r.gate_residual("penrose", penrose.value, tol.get("penrose"));
  r.gate_residual("involution_adjoint", inv_adj.value, tol.get("involution_adjoint"));
  r.gate_residual("involution_pinv", inv_pinv.value, tol.get("involution_pinv"));
  r.gate_residual("adjointness", adjointness.value, tol.get("adjointness"));
  for (int k = 0; k < 6; ++k) {
    r.gate_residual("labrousse_" + std::to_string(k + 1), labrousse[k].value, tol.get("labrousse"));
  }
  r.gate_residual("norm_split", norm_split.value, tol.get("norm_identity"));
  r.gate_residual("norm_split_range", range_split.value, tol.get("norm_identity"));
  r.gate_residual("tb_penrose", tb_penrose.value, tol.get("tb_penrose"));
  r.gate_residual("tb_pinv_crosscheck", tb_cross.value, tol.get("tb_crosscheck"));
  r.gate_residual("tb_adjoint", tb_adjoint.value, tol.get("tb_penrose"));
  r.gate_residual("tb_projections", tb_projection.value, tol.get("tb_penrose"));
  r.gate_residual("decompose", decomposition.value, tol.get("decompose"));

  // Douglas pairs A = B C0, so R(A) lies in R(B) by construction.
  Max factor, kernel, range, lower, inclusion;
  double tight = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < opt.douglas_pairs; ++t) {
    const int m = gen.uniform_int(2, 10);
    const int k = gen.uniform_int(1, 10);
    const int n = gen.uniform_int(1, 10);
    const auto h = gen.random_space(m);
    const auto inner = gen.random_space(k);
    const auto dom = gen.random_space(n);
    const Op b = gen.random_operator(inner, h, gen.uniform_int(1, std::min(m, k)));
    const Op c0 = gen.random_operator(dom, inner, gen.uniform_int(1, std::min(k, n)));
    const Op a = b * c0;
    const auto df = oplab::douglas_factor(a, b, tol.get("douglas_factor"));
    const auto check = oplab::verify_douglas(a, b, df);
    inclusion.add(df.range_residual);
    factor.add(check.factor_residual);
    kernel.add(check.kernel_residual);
    range.add(check.range_residual);
    lower.add(std::max(0.0, -check.lower_eigenvalue));
    tight = std::max(tight, check.below_eigenvalue);
    r.constant("douglas_mu_" + std::to_string(t), df.mu_min);
  }
  r.constant("douglas_pairs", opt.douglas_pairs);
  r.gate_residual("douglas_inclusion", inclusion.value, tol.get("douglas_factor"));
  r.gate_residual("douglas_factor", factor.value, tol.get("douglas_factor"));
  r.gate_residual("douglas_kernel", kernel.value, tol.get("douglas_kernel"));
  r.gate_residual("douglas_cokernel", range.value, tol.get("douglas_kernel"));
  r.gate_residual("douglas_mu_lower", lower.value, tol.get("douglas_mu_lower"));
  // Below mu_min the inequality must fail for every pair.
  if (opt.douglas_pairs > 0) r.gate("douglas_mu_tight", tight, "<", 0.0);
  return r;
}

}  // namespace tracelab::tracescale
