#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "tracelab/error.hpp"

namespace tracelab::oplab {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// A finite-dimensional real inner-product space, (x, y) = x^T G y.
///
/// The Gram matrix is validated once and its Cholesky factor G = L L^T is
/// kept alongside it; every weighted computation in this library goes
/// through that factor. Instances are immutable and shared between
/// operators through SpacePtr.
template <typename Scalar>
class InnerSpace {
 public:
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;

  static std::shared_ptr<const InnerSpace> make(Eigen::Index dim, const Matrix& gram,
                                                Scalar symmetry_tol = Scalar(1e-12)) {
    if (dim <= 0 || gram.rows() != dim || gram.cols() != dim) {
      throw Error(ErrorKind::DimensionMismatch,
                  "Gram matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    const Scalar scale = gram.norm();
    if (!(scale > Scalar(0)) || (gram - gram.transpose()).norm() > symmetry_tol * scale) {
      throw Error(ErrorKind::NotSymmetric, "Gram matrix is not symmetric");
    }
    Matrix sym = Scalar(0.5) * (gram + gram.transpose());
    Eigen::LLT<Matrix> llt(sym);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorKind::NotPositiveDefinite, "Cholesky factorization of the Gram matrix failed");
    }
    return std::shared_ptr<const InnerSpace>(new InnerSpace(std::move(sym), std::move(llt)));
  }

  Eigen::Index dim() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }
  const Eigen::LLT<Matrix>& llt() const { return llt_; }

  template <typename DerivedX, typename DerivedY>
  Scalar inner(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) const {
    return x.dot(gram_ * y);
  }

  template <typename Derived>
  Scalar squared_norm(const Eigen::MatrixBase<Derived>& x) const {
    return x.dot(gram_ * x);
  }

  template <typename Derived>
  Scalar norm(const Eigen::MatrixBase<Derived>& x) const {
    using std::sqrt;
    return sqrt(std::max(Scalar(0), squared_norm(x)));
  }

  /// G^{-1} rhs
  template <typename Derived>
  Matrix solve(const Eigen::MatrixBase<Derived>& rhs) const {
    return llt_.solve(rhs);
  }

  /// Two spaces are the same when they share identity or carry identical Grams.
  bool same_as(const InnerSpace& other) const {
    return this == &other || (dim() == other.dim() && gram_ == other.gram_);
  }

 private:
  InnerSpace(Matrix gram, Eigen::LLT<Matrix> llt) : gram_(std::move(gram)), llt_(std::move(llt)) {}

  Matrix gram_;
  Eigen::LLT<Matrix> llt_;
};

template <typename Scalar>
using SpacePtr = std::shared_ptr<const InnerSpace<Scalar>>;

template <typename Scalar>
SpacePtr<Scalar> make_space(Eigen::Index dim, const MatrixX<Scalar>& gram) {
  return InnerSpace<Scalar>::make(dim, gram);
}

template <typename Scalar = double>
SpacePtr<Scalar> euclidean_space(Eigen::Index dim) {
  return InnerSpace<Scalar>::make(dim, MatrixX<Scalar>::Identity(dim, dim));
}

}  // namespace tracelab::oplab
