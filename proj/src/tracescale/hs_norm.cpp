#include "tracelab/tracescale/hs_norm.hpp"

#include <cmath>

#include "tracelab/error.hpp"
#include "tracelab/oplab/pinv.hpp"

namespace tracelab::tracescale {

TraceScale::TraceScale(const fem2d::Assembly& assembly)
    : a_(&assembly),
      spaces_(fem2d::space_h1partial(assembly)),
      gamma_(fem2d::op_trace(assembly, spaces_)),
      lambda_(oplab::pinv(gamma_)),
      s_(oplab::adjoint(lambda_) * lambda_),
      shifted_(oplab::spectral_decompose(oplab::shift_identity(s_))) {}

fem2d::Operator TraceScale::power(double t) const { return oplab::power(shifted_, t); }

NormMatrix TraceScale::gram(double s) const {
  if (!(s >= -1.0 && s <= 1.0)) throw Error(ErrorKind::OrderOutOfRange, "order s must lie in [-1, 1]");
  const MatrixXd& mb = spaces_.l2_boundary->gram();
  MatrixXd q = mb * power(2 * s).matrix();
  q = 0.5 * (q + q.transpose()).eval();
  return {spaces_.l2_boundary, s, std::move(q)};
}

double TraceScale::scale_norm(const VectorXd& g, double t) const {
  if (g.size() != a_->num_boundary()) {
    throw Error(ErrorKind::DimensionMismatch, "boundary data needs one entry per boundary node");
  }
  // Coordinates in the M_b-orthonormal eigenbasis.
  const VectorXd c = shifted_.eigenvectors.transpose() * (spaces_.l2_boundary->gram() * g);
  const VectorXd scaled = c.cwiseProduct(shifted_.eigenvalues.array().pow(t).matrix());
  return scaled.norm();
}

NormMatrix hs_gram(const fem2d::Assembly& a, double s) {
  if (!(s >= -1.0 && s <= 1.0)) throw Error(ErrorKind::OrderOutOfRange, "order s must lie in [-1, 1]");
  return TraceScale(a).gram(s);
}

NormMatrix boundary_norm(const fem2d::SpacePtr& space, const MatrixXd& q, double s) {
  return {space, s, q};
}

Equivalence equivalence_constants(const MatrixXd& qa, const MatrixXd& qb) {
  if (qa.rows() != qb.rows() || qa.cols() != qb.cols() || qa.rows() != qa.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "equivalence constants need Grams of equal size");
  }
  const auto eig = oplab::euclid::generalized_eigen(qa, qb);
  const Eigen::Index last = eig.values.size() - 1;
  Equivalence e;
  e.c_min = std::sqrt(std::max(eig.values(0), 0.0));
  e.c_max = std::sqrt(std::max(eig.values(last), 0.0));
  e.argmin = eig.vectors.col(0);
  e.argmax = eig.vectors.col(last);
  return e;
}

Equivalence equivalence_constants(const NormMatrix& qa, const NormMatrix& qb) {
  return equivalence_constants(qa.q, qb.q);
}

}  // namespace tracelab::tracescale
