#pragma once

#include <cmath>
#include <string>

#include "tracelab/oplab/linalg.hpp"
#include "tracelab/oplab/operator.hpp"

namespace tracelab::oplab {

/// Eigenpairs of an operator S that is self-adjoint for the Gram G of its
/// space: S = V diag(lambda) V^T G with V^T G V = I.
template <typename Scalar>
struct SpectralDecomposition {
  SpacePtr<Scalar> space;
  VectorX<Scalar> eigenvalues;   // ascending
  MatrixX<Scalar> eigenvectors;  // G-orthonormal columns
};

template <typename Scalar>
Scalar self_adjointness_residual(const Operator<Scalar>& s) {
  const MatrixX<Scalar> gs = s.codomain()->gram() * s.matrix();
  return relative_residual(gs, gs.transpose());
}

template <typename Scalar>
SpectralDecomposition<Scalar> spectral_decompose(const Operator<Scalar>& s,
                                                 Scalar tol = Scalar(1e-10)) {
  if (!s.is_endomorphism()) {
    throw Error(ErrorKind::DimensionMismatch, "spectral decomposition needs an endomorphism");
  }
  if (self_adjointness_residual(s) > tol) {
    throw Error(ErrorKind::NotSelfAdjoint, "operator is not self-adjoint for its Gram");
  }
  const auto& llt = s.domain()->llt();
  // L^T S L^{-T} is symmetric exactly when G S is.
  MatrixX<Scalar> right = llt.matrixL().solve(s.matrix().transpose()).transpose();
  MatrixX<Scalar> sym = llt.matrixU() * right;
  auto eig = euclid::jacobi_eigen(sym);
  return {s.domain(), std::move(eig.values), llt.matrixU().solve(eig.vectors)};
}

/// f(S) = V diag(f(lambda)) V^T G.
template <typename Scalar, typename Fn>
Operator<Scalar> spectral_apply(const SpectralDecomposition<Scalar>& dec, Fn&& fn) {
  const auto& v = dec.eigenvectors;
  VectorX<Scalar> mapped = dec.eigenvalues.unaryExpr(fn);
  MatrixX<Scalar> mat = v * mapped.asDiagonal() * (v.transpose() * dec.space->gram());
  return Operator<Scalar>(dec.space, dec.space, std::move(mat));
}

namespace detail {

template <typename Scalar>
bool is_integer(Scalar t) {
  using std::round;
  return t == round(t);
}

}  // namespace detail

/// S^t from a precomputed decomposition. t = 0 gives the identity exactly.
template <typename Scalar>
Operator<Scalar> power(const SpectralDecomposition<Scalar>& dec, Scalar t,
                       Scalar tol = Scalar(1e-10)) {
  if (t == Scalar(0)) return identity(dec.space);
  const auto& lam = dec.eigenvalues;
  const Scalar scale = lam.size() ? lam.cwiseAbs().maxCoeff() : Scalar(0);
  if (!detail::is_integer(t) && lam.size() && lam.minCoeff() < -tol * scale) {
    throw Error(ErrorKind::NegativeEigenvalue,
                "fractional power of an operator with a negative eigenvalue");
  }
  const bool fractional = !detail::is_integer(t);
  return spectral_apply(dec, [t, fractional](Scalar l) {
    using std::pow;
    if (fractional && l < Scalar(0)) l = Scalar(0);
    return pow(l, t);
  });
}

template <typename Scalar>
Operator<Scalar> frac_power(const Operator<Scalar>& s, Scalar t, Scalar tol = Scalar(1e-10)) {
  if (t == Scalar(0)) {
    if (!s.is_endomorphism()) {
      throw Error(ErrorKind::DimensionMismatch, "power needs an endomorphism");
    }
    if (self_adjointness_residual(s) > tol) {
      throw Error(ErrorKind::NotSelfAdjoint, "operator is not self-adjoint for its Gram");
    }
    return identity(s.domain());
  }
  return power(spectral_decompose(s, tol), t, tol);
}

/// (I + S)^t for a self-adjoint positive semi-definite S.
template <typename Scalar>
Operator<Scalar> shifted_power(const Operator<Scalar>& s, Scalar t) {
  return frac_power(shift_identity(s), t);
}

}  // namespace tracelab::oplab
