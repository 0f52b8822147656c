#pragma once

#include "tracelab/oplab/pinv.hpp"
#include "tracelab/oplab/spectral.hpp"

namespace tracelab::oplab {

/// Result of factoring A = B C through a range inclusion R(A) in R(B).
template <typename Scalar>
struct DouglasFactor {
  Operator<Scalar> factor;  // C = B^dagger A
  Scalar mu_min;            // ||C||^2 = inf { mu : A A* <= mu B B* }
  Scalar range_residual;    // ||(I - B B^dagger) A|| / ||A||
};

template <typename Scalar>
DouglasFactor<Scalar> douglas_factor(const Operator<Scalar>& a, const Operator<Scalar>& b,
                                     Scalar tol = Scalar(1e-10)) {
  detail::require_same(*a.codomain(), *b.codomain(), "Douglas factorization needs a shared codomain");
  const Operator<Scalar> b_pinv = pinv(b);
  const Operator<Scalar> outside = a - b * (b_pinv * a);
  const Scalar scale = a.matrix().norm();
  const Scalar range_residual = scale > Scalar(0) ? outside.matrix().norm() / scale : Scalar(0);
  if (range_residual > tol) {
    throw Error(ErrorKind::RangeNotContained, "R(A) is not contained in R(B)");
  }
  Operator<Scalar> c = b_pinv * a;
  const Scalar norm_c = operator_norm(c);
  return {std::move(c), norm_c * norm_c, range_residual};
}

/// Residuals certifying every post-condition of a Douglas factorization.
template <typename Scalar>
struct DouglasCheck {
  Scalar factor_residual;     // ||BC - A|| relative
  Scalar kernel_residual;     // N(C) = N(A); +inf on rank mismatch
  Scalar range_residual;      // R(C) in R(B*): ||(I - P_{R(B*)}) C|| / ||C||
  Scalar lower_eigenvalue;    // min eig(mu B B* - A A*), relative to ||B B*||; should be >= -tol
  Scalar below_eigenvalue;    // min eig((mu - eps) B B* - A A*), relative; should be < 0 unless mu = 0
};

template <typename Scalar>
DouglasCheck<Scalar> verify_douglas(const Operator<Scalar>& a, const Operator<Scalar>& b,
                                    const DouglasFactor<Scalar>& df) {
  const Operator<Scalar>& c = df.factor;
  DouglasCheck<Scalar> out{};
  out.factor_residual = relative_residual(b * c, a);
  out.kernel_residual = kernel_mismatch<Scalar>(c.matrix(), a.matrix());

  const Operator<Scalar> off_range = c - pinv(b) * (b * c);
  const Scalar c_scale = c.matrix().norm();
  out.range_residual = c_scale > Scalar(0) ? off_range.matrix().norm() / c_scale : Scalar(0);

  const Operator<Scalar> aa = a * adjoint(a);
  const Operator<Scalar> bb = b * adjoint(b);
  const Scalar bb_scale = std::max(operator_norm(bb), std::numeric_limits<Scalar>::min());
  auto min_eig = [&](Scalar mu) {
    const Operator<Scalar> gap = mu * bb - aa;
    // Symmetrize in the Gram to absorb round-off before the definiteness test.
    const MatrixX<Scalar> g_gap = gap.codomain()->gram() * gap.matrix();
    const MatrixX<Scalar> sym = Scalar(0.5) * (g_gap + g_gap.transpose());
    Operator<Scalar> sym_gap(gap.domain(), gap.codomain(), gap.codomain()->solve(sym));
    return spectral_decompose(sym_gap, Scalar(1e-6)).eigenvalues.minCoeff() / bb_scale;
  };
  out.lower_eigenvalue = min_eig(df.mu_min);
  out.below_eigenvalue = df.mu_min > Scalar(0) ? min_eig(df.mu_min * (Scalar(1) - Scalar(1e-6)))
                                               : -std::numeric_limits<Scalar>::infinity();
  return out;
}

}  // namespace tracelab::oplab
