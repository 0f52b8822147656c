#pragma once

#include <Eigen/Core>

#include "tracelab/fem2d/assembly.hpp"
#include "tracelab/oplab/spectral.hpp"

namespace tracelab::tracescale {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// ||g||_s^2 = g^T q g on the boundary coefficient space.
struct NormMatrix {
  fem2d::SpacePtr space;  // L2(boundary), Gram M_b
  double s = 0;
  MatrixXd q;
};

/// Gamma, Lambda = pinv(Gamma), S = Lambda* Lambda and the spectral
/// decomposition of I + S for one assembly. Holds a reference to it.
class TraceScale {
 public:
  explicit TraceScale(const fem2d::Assembly& assembly);

  const fem2d::Assembly& assembly() const { return *a_; }
  const fem2d::Spaces& spaces() const { return spaces_; }
  const fem2d::Operator& trace() const { return gamma_; }
  const fem2d::Operator& extension() const { return lambda_; }
  const fem2d::Operator& s() const { return s_; }
  const oplab::SpectralDecomposition<double>& shifted() const { return shifted_; }

  /// (I + S)^t.
  fem2d::Operator power(double t) const;

  /// Q_s = M_b (I + S)^{2s}; throws OrderOutOfRange unless s in [-1, 1].
  NormMatrix gram(double s) const;

  /// ||(I + S)^t g||_{L2(boundary)} straight from the eigenpairs.
  double scale_norm(const VectorXd& g, double t) const;

 private:
  const fem2d::Assembly* a_;
  fem2d::Spaces spaces_;
  fem2d::Operator gamma_;
  fem2d::Operator lambda_;
  fem2d::Operator s_;
  oplab::SpectralDecomposition<double> shifted_;
};

NormMatrix hs_gram(const fem2d::Assembly& a, double s);

/// Wraps a plain Gram on the boundary space, e.g. M_b + K_b.
NormMatrix boundary_norm(const fem2d::SpacePtr& space, const MatrixXd& q, double s = 0);

struct Equivalence {
  double c_min = 0;
  double c_max = 0;
  VectorXd argmin;  // attains c_min
  VectorXd argmax;  // attains c_max
};

/// Tight c_min ||g||_b <= ||g||_a <= c_max ||g||_b.
Equivalence equivalence_constants(const NormMatrix& qa, const NormMatrix& qb);
Equivalence equivalence_constants(const MatrixXd& qa, const MatrixXd& qb);

}  // namespace tracelab::tracescale
