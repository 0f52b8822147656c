#pragma once

#include <array>

#include "tracelab/oplab/linalg.hpp"
#include "tracelab/oplab/operator.hpp"

namespace tracelab::oplab {

/// Euclidean representative L_cod^T * mat * L_dom^{-T}: the matrix of A in
/// bases that are orthonormal for the two Grams.
template <typename Scalar>
MatrixX<Scalar> to_euclidean(const Operator<Scalar>& a) {
  const auto& dom = a.domain()->llt();
  const auto& cod = a.codomain()->llt();
  MatrixX<Scalar> right = dom.matrixL().solve(a.matrix().transpose()).transpose();
  return cod.matrixU() * right;
}

/// Inverse of to_euclidean for a matrix representing a map domain -> codomain.
template <typename Scalar>
Operator<Scalar> from_euclidean(const SpacePtr<Scalar>& domain, const SpacePtr<Scalar>& codomain,
                                const MatrixX<Scalar>& euclidean) {
  MatrixX<Scalar> left = codomain->llt().matrixU().solve(euclidean);
  MatrixX<Scalar> mat = left * domain->llt().matrixU();
  return Operator<Scalar>(domain, codomain, std::move(mat));
}

/// Moore-Penrose inverse with respect to the weighted inner products.
///
/// AB and BA are the orthogonal projections (in the codomain and domain
/// Grams) onto R(A) and N(A)^perp. Rank-deficient input is expected;
/// singular values below euclid::rank_threshold count as zero.
template <typename Scalar>
Operator<Scalar> pinv(const Operator<Scalar>& a) {
  return from_euclidean(a.codomain(), a.domain(), euclid::pinv(to_euclidean(a)));
}

/// Operator norm induced by the two Grams.
template <typename Scalar>
Scalar operator_norm(const Operator<Scalar>& a) {
  return euclid::spectral_norm(to_euclidean(a));
}

template <typename Scalar>
Eigen::Index rank(const Operator<Scalar>& a) {
  return euclid::numerical_rank(to_euclidean(a));
}

/// Orthogonal projection onto R(A) in the codomain.
template <typename Scalar>
Operator<Scalar> range_projection(const Operator<Scalar>& a) {
  return a * pinv(a);
}

/// Orthogonal projection onto N(A) in the domain.
template <typename Scalar>
Operator<Scalar> kernel_projection(const Operator<Scalar>& a) {
  return identity(a.domain()) - pinv(a) * a;
}

/// Relative residuals of the four Penrose relations for the pair (A, B):
/// ABA = A, BAB = B, (AB)* = AB, (BA)* = BA.
template <typename Scalar>
std::array<Scalar, 4> penrose_residuals(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  const Operator<Scalar> ab = a * b;
  const Operator<Scalar> ba = b * a;
  return {relative_residual(ab * a, a), relative_residual(ba * b, b),
          relative_residual(adjoint(ab), ab), relative_residual(adjoint(ba), ba)};
}

namespace detail {

/// Largest relative component of the columns of `basis` that `m` does not
/// annihilate, measured against ||m||.
template <typename Scalar>
Scalar annihilation_residual(const MatrixX<Scalar>& m, const MatrixX<Scalar>& basis) {
  if (basis.cols() == 0) return Scalar(0);
  const Scalar scale = euclid::spectral_norm(m);
  if (scale == Scalar(0)) return Scalar(0);
  return (m * basis).norm() / scale;
}

}  // namespace detail

/// Compares N(X) and N(Y) for two matrices with the same column count.
/// Returns +inf when the numerical ranks differ, otherwise the larger of
/// the two mutual-containment residuals.
template <typename Scalar>
Scalar kernel_mismatch(const MatrixX<Scalar>& x, const MatrixX<Scalar>& y) {
  if (x.cols() != y.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "kernel comparison needs equal domains");
  }
  const MatrixX<Scalar> nx = euclid::null_basis(x);
  const MatrixX<Scalar> ny = euclid::null_basis(y);
  if (nx.cols() != ny.cols()) return std::numeric_limits<Scalar>::infinity();
  return std::max(detail::annihilation_residual(x, ny), detail::annihilation_residual(y, nx));
}

}  // namespace tracelab::oplab
