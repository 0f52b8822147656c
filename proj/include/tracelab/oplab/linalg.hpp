#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Jacobi>
#include <Eigen/SVD>

#include "tracelab/oplab/inner_space.hpp"

// Euclidean kernels. Everything weighted is reduced to these through the
// Cholesky factors of the spaces involved.
namespace tracelab::oplab::euclid {

/// Singular values at or below this are treated as zero.
template <typename Scalar>
Scalar rank_threshold(Scalar sigma_max, Eigen::Index rows, Eigen::Index cols) {
  return Scalar(std::max(rows, cols)) * std::numeric_limits<Scalar>::epsilon() * sigma_max *
         Scalar(1e3);
}

template <typename Scalar>
struct Svd {
  MatrixX<Scalar> u;
  VectorX<Scalar> singular_values;
  MatrixX<Scalar> v;
  Eigen::Index rank = 0;
};

/// Full SVD (square U and V) with the numerical rank attached.
template <typename Derived>
Svd<typename Derived::Scalar> svd(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::BDCSVD<MatrixX<Scalar>> dec(m.eval(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Svd<Scalar> out{dec.matrixU(), dec.singularValues(), dec.matrixV(), 0};
  if (out.singular_values.size() > 0) {
    const Scalar cut = rank_threshold(out.singular_values(0), m.rows(), m.cols());
    for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
      if (out.singular_values(i) > cut) ++out.rank;
    }
  }
  return out;
}

template <typename Derived>
Eigen::Index numerical_rank(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::BDCSVD<MatrixX<Scalar>> dec(m.eval());
  const auto& s = dec.singularValues();
  if (s.size() == 0) return 0;
  const Scalar cut = rank_threshold(s(0), m.rows(), m.cols());
  return (s.array() > cut).count();
}

template <typename Derived>
MatrixX<typename Derived::Scalar> pinv(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Eigen::BDCSVD<MatrixX<Scalar>> dec(m.eval(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = dec.singularValues();
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(m.cols(), m.rows());
  if (s.size() == 0) return out;
  const Scalar cut = rank_threshold(s(0), m.rows(), m.cols());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) {
      out.noalias() += (dec.matrixV().col(i) / s(i)) * dec.matrixU().col(i).transpose();
    }
  }
  return out;
}

template <typename Derived>
typename Derived::Scalar spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.size() == 0) return Scalar(0);
  Eigen::BDCSVD<MatrixX<Scalar>> dec(m.eval());
  return dec.singularValues()(0);
}

/// Orthonormal basis of the null space (columns).
template <typename Derived>
MatrixX<typename Derived::Scalar> null_basis(const Eigen::MatrixBase<Derived>& m) {
  auto dec = svd(m);
  return dec.v.rightCols(m.cols() - dec.rank);
}

/// Orthonormal basis of the column space.
template <typename Derived>
MatrixX<typename Derived::Scalar> range_basis(const Eigen::MatrixBase<Derived>& m) {
  auto dec = svd(m);
  return dec.u.leftCols(dec.rank);
}

template <typename Scalar>
struct SymmetricEigen {
  VectorX<Scalar> values;   // ascending
  MatrixX<Scalar> vectors;  // orthonormal columns
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a symmetric matrix.
///
/// Sweeps over all (p, q) pairs until the off-diagonal Frobenius mass is
/// at most off_tol * ||S||_F, or until a sweep stops reducing it.
template <typename Derived>
SymmetricEigen<typename Derived::Scalar> jacobi_eigen(const Eigen::MatrixBase<Derived>& sym,
                                                      typename Derived::Scalar off_tol =
                                                          typename Derived::Scalar(1e-13)) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = sym.rows();
  MatrixX<Scalar> a = Scalar(0.5) * (sym + sym.transpose());
  MatrixX<Scalar> v = MatrixX<Scalar>::Identity(n, n);

  auto off_mass = [&]() {
    Scalar sum = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (i != j) sum += a(i, j) * a(i, j);
      }
    }
    using std::sqrt;
    return sqrt(sum);
  };

  const Scalar total = a.norm();
  const Scalar target = off_tol * total;
  const Scalar tiny = std::numeric_limits<Scalar>::min();
  int sweeps = 0;
  Scalar off = off_mass();
  constexpr int kMaxSweeps = 100;
  while (off > target && sweeps < kMaxSweeps) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        using std::abs;
        if (abs(a(p, q)) <= tiny) continue;
        Eigen::JacobiRotation<Scalar> rot;
        rot.makeJacobi(a(p, p), a(p, q), a(q, q));
        a.applyOnTheLeft(p, q, rot.adjoint());
        a.applyOnTheRight(p, q, rot);
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        v.applyOnTheRight(p, q, rot);
      }
    }
    ++sweeps;
    const Scalar next = off_mass();
    if (next >= off) {
      off = next;
      break;
    }
    off = next;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  SymmetricEigen<Scalar> out{VectorX<Scalar>(n), MatrixX<Scalar>(n, n), sweeps};
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src);
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

/// Generalized symmetric-definite problem A x = lambda B x by Cholesky
/// reduction (B = L L^T, C = L^{-1} A L^{-T}) followed by Jacobi.
/// Returned vectors are B-orthonormal.
template <typename DerivedA, typename DerivedB>
SymmetricEigen<typename DerivedA::Scalar> generalized_eigen(const Eigen::MatrixBase<DerivedA>& a,
                                                            const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::LLT<MatrixX<Scalar>> llt(Scalar(0.5) * (b + b.transpose()));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NotPositiveDefinite, "generalized eigenproblem: B is not positive definite");
  }
  MatrixX<Scalar> half = llt.matrixL().solve(a.eval());
  MatrixX<Scalar> c = llt.matrixL().solve(half.transpose());
  auto eig = jacobi_eigen(c);
  eig.vectors = llt.matrixU().solve(eig.vectors);
  return eig;
}

}  // namespace tracelab::oplab::euclid
