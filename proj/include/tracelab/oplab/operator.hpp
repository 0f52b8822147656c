#pragma once

#include <string>
#include <utility>

#include "tracelab/oplab/inner_space.hpp"

namespace tracelab::oplab {

/// A linear map between two inner-product spaces, stored as a dense
/// codomain.dim x domain.dim matrix in the coefficient bases of the spaces.
template <typename Scalar>
class Operator {
 public:
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;

  Operator(SpacePtr<Scalar> domain, SpacePtr<Scalar> codomain, Matrix mat)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), mat_(std::move(mat)) {
    if (!domain_ || !codomain_) {
      throw Error(ErrorKind::DimensionMismatch, "operator spaces must be set");
    }
    if (mat_.rows() != codomain_->dim() || mat_.cols() != domain_->dim()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "matrix is " + std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()) +
                      " but spaces require " + std::to_string(codomain_->dim()) + "x" +
                      std::to_string(domain_->dim()));
    }
  }

  const SpacePtr<Scalar>& domain() const { return domain_; }
  const SpacePtr<Scalar>& codomain() const { return codomain_; }
  const Matrix& matrix() const { return mat_; }
  Eigen::Index rows() const { return mat_.rows(); }
  Eigen::Index cols() const { return mat_.cols(); }

  bool is_endomorphism() const { return domain_->same_as(*codomain_); }

  template <typename Derived>
  Vector operator()(const Eigen::MatrixBase<Derived>& x) const {
    if (x.rows() != mat_.cols()) {
      throw Error(ErrorKind::DimensionMismatch, "vector length does not match operator domain");
    }
    return mat_ * x;
  }

 private:
  SpacePtr<Scalar> domain_;
  SpacePtr<Scalar> codomain_;
  Matrix mat_;
};

namespace detail {

template <typename Scalar>
void require_same(const InnerSpace<Scalar>& a, const InnerSpace<Scalar>& b, const char* what) {
  if (!a.same_as(b)) {
    throw Error(ErrorKind::DimensionMismatch, what);
  }
}

}  // namespace detail

template <typename Scalar>
Operator<Scalar> identity(const SpacePtr<Scalar>& space) {
  return Operator<Scalar>(space, space, MatrixX<Scalar>::Identity(space->dim(), space->dim()));
}

template <typename Scalar>
Operator<Scalar> zero(const SpacePtr<Scalar>& domain, const SpacePtr<Scalar>& codomain) {
  return Operator<Scalar>(domain, codomain, MatrixX<Scalar>::Zero(codomain->dim(), domain->dim()));
}

/// Composition (A * B)(x) = A(B(x)).
template <typename Scalar>
Operator<Scalar> operator*(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  detail::require_same(*a.domain(), *b.codomain(), "composition: spaces do not chain");
  return Operator<Scalar>(b.domain(), a.codomain(), a.matrix() * b.matrix());
}

template <typename Scalar>
Operator<Scalar> operator+(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  detail::require_same(*a.domain(), *b.domain(), "sum: domains differ");
  detail::require_same(*a.codomain(), *b.codomain(), "sum: codomains differ");
  return Operator<Scalar>(a.domain(), a.codomain(), a.matrix() + b.matrix());
}

template <typename Scalar>
Operator<Scalar> operator-(const Operator<Scalar>& a, const Operator<Scalar>& b) {
  detail::require_same(*a.domain(), *b.domain(), "difference: domains differ");
  detail::require_same(*a.codomain(), *b.codomain(), "difference: codomains differ");
  return Operator<Scalar>(a.domain(), a.codomain(), a.matrix() - b.matrix());
}

template <typename Scalar>
Operator<Scalar> operator*(Scalar c, const Operator<Scalar>& a) {
  return Operator<Scalar>(a.domain(), a.codomain(), c * a.matrix());
}

/// Weighted adjoint: (A x, y)_codomain = (x, A* y)_domain, i.e.
/// mat(A*) = G_domain^{-1} mat(A)^T G_codomain.
template <typename Scalar>
Operator<Scalar> adjoint(const Operator<Scalar>& a) {
  MatrixX<Scalar> mat = a.domain()->solve(a.matrix().transpose() * a.codomain()->gram());
  return Operator<Scalar>(a.codomain(), a.domain(), std::move(mat));
}

/// I + A for an endomorphism A.
template <typename Scalar>
Operator<Scalar> shift_identity(const Operator<Scalar>& a) {
  detail::require_same(*a.domain(), *a.codomain(), "I + A needs an endomorphism");
  return identity(a.domain()) + a;
}

/// ||X - Y||_F / max(||X||_F, ||Y||_F), zero when both vanish.
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar relative_residual(const Eigen::MatrixBase<DerivedX>& x,
                                            const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  const Scalar scale = std::max(x.norm(), y.norm());
  if (scale == Scalar(0)) return Scalar(0);
  return (x - y).norm() / scale;
}

template <typename Scalar>
Scalar relative_residual(const Operator<Scalar>& x, const Operator<Scalar>& y) {
  return relative_residual(x.matrix(), y.matrix());
}

}  // namespace tracelab::oplab
