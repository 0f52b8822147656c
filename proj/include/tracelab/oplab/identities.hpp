#pragma once

#include <string>
#include <vector>

#include "tracelab/oplab/pinv.hpp"
#include "tracelab/oplab/spectral.hpp"

// Identities linking a bounded operator A, its Moore-Penrose inverse
// B = A^dagger, and the resolvent-type operators (I + A*A)^{-1},
// (I + BB*)^{-1/2}. Every identity is stated for finite-dimensional
// operators, where all domains are total, so inclusions are tested as
// equalities.
namespace tracelab::oplab {

template <typename Scalar>
struct NamedResidual {
  std::string name;
  Scalar value = 0;
  bool applicable = true;
};

/// Labrousse identities for A and B = pinv(A):
///  1. A(I+A*A)^{-1} = B*(I+BB*)^{-1}
///  2. (I+A*A)^{-1} + (I+BB*)^{-1} = I + P_{N(B*)}
///  3. A*(I+AA*)^{-1} = B(I+B*B)^{-1}
///  4. (I+AA*)^{-1} + (I+B*B)^{-1} = I + P_{N(A*)}
///  5. (I+AA*)^{-1} + (I+B*B)^{-1} = I, only applicable when A* is injective
///  6. N(A*(I+AA*)^{-1/2}) = N(A*) = N(B)
template <typename Scalar>
std::vector<NamedResidual<Scalar>> labrousse_check(const Operator<Scalar>& a) {
  const Operator<Scalar> b = pinv(a);
  const Operator<Scalar> a_adj = adjoint(a);
  const Operator<Scalar> b_adj = adjoint(b);

  const Operator<Scalar> inv_aa_dom = frac_power(shift_identity(a_adj * a), Scalar(-1));   // H1
  const Operator<Scalar> inv_bb_dom = frac_power(shift_identity(b * b_adj), Scalar(-1));   // H1
  const Operator<Scalar> inv_aa_cod = frac_power(shift_identity(a * a_adj), Scalar(-1));   // H2
  const Operator<Scalar> inv_bb_cod = frac_power(shift_identity(b_adj * b), Scalar(-1));   // H2

  const Operator<Scalar> id_dom = identity(a.domain());
  const Operator<Scalar> id_cod = identity(a.codomain());
  const Operator<Scalar> p_ker_b_adj = kernel_projection(b_adj);  // on H1
  const Operator<Scalar> p_ker_a_adj = kernel_projection(a_adj);  // on H2

  std::vector<NamedResidual<Scalar>> out;
  out.push_back({"labrousse_1", relative_residual(a * inv_aa_dom, b_adj * inv_bb_dom)});
  out.push_back({"labrousse_2", relative_residual(inv_aa_dom + inv_bb_dom, id_dom + p_ker_b_adj)});
  out.push_back({"labrousse_3", relative_residual(a_adj * inv_aa_cod, b * inv_bb_cod)});
  out.push_back({"labrousse_4", relative_residual(inv_aa_cod + inv_bb_cod, id_cod + p_ker_a_adj)});

  const bool adjoint_injective = rank(a_adj) == a.codomain()->dim();
  out.push_back({"labrousse_5", adjoint_injective ? relative_residual(inv_aa_cod + inv_bb_cod, id_cod)
                                                  : Scalar(0),
                 adjoint_injective});

  const Operator<Scalar> damped = a_adj * frac_power(shift_identity(a * a_adj), Scalar(-0.5));
  const Scalar k1 = kernel_mismatch<Scalar>(damped.matrix(), a_adj.matrix());
  const Scalar k2 = kernel_mismatch<Scalar>(a_adj.matrix(), b.matrix());
  out.push_back({"labrousse_6", std::max(k1, k2)});
  return out;
}

template <typename Scalar>
struct NormIdentity {
  Scalar lhs = 0;             // ||x||^2
  Scalar rhs = 0;             // ||B*(I+BB*)^{-1/2} x||^2 + ||(I+BB*)^{-1/2} x||^2
  Scalar split_residual = 0;  // |lhs - rhs| / ||x||^2
  Scalar range_split_residual = 0;  // same for the split on R(B), applied to P_{R(B)} x
};

/// Checks the two norm splittings of x in the domain of A:
///   ||x||^2 = ||B*(I+BB*)^{-1/2} x||^2 + ||(I+BB*)^{-1/2} x||^2      (all x)
///   ||y||^2 = ||(I+BB*)^{-1/2} y||^2 + ||(I+A*A)^{-1/2} y||^2        (y in R(B))
/// The second uses y = P_{R(B)} x = BAx.
template <typename Scalar>
NormIdentity<Scalar> norm_identity_check(const Operator<Scalar>& a, const VectorX<Scalar>& x) {
  if (x.size() != a.domain()->dim()) {
    throw Error(ErrorKind::DimensionMismatch, "x must live in the domain of A");
  }
  const Operator<Scalar> b = pinv(a);
  const Operator<Scalar> b_adj = adjoint(b);
  const Operator<Scalar> root_bb = frac_power(shift_identity(b * b_adj), Scalar(-0.5));
  const Operator<Scalar> root_aa = frac_power(shift_identity(adjoint(a) * a), Scalar(-0.5));
  const auto& h1 = *a.domain();
  const auto& h2 = *a.codomain();

  NormIdentity<Scalar> out;
  out.lhs = h1.squared_norm(x);
  const VectorX<Scalar> damped = root_bb(x);
  out.rhs = h2.squared_norm(b_adj(damped)) + h1.squared_norm(damped);
  if (out.lhs > Scalar(0)) {
    using std::abs;
    out.split_residual = abs(out.lhs - out.rhs) / out.lhs;
    const VectorX<Scalar> y = b(a(x));
    const Scalar y2 = h1.squared_norm(y);
    const Scalar y_rhs = h1.squared_norm(root_bb(y)) + h1.squared_norm(root_aa(y));
    out.range_split_residual = abs(y2 - y_rhs) / out.lhs;
  }
  return out;
}

template <typename Scalar>
struct TbPair {
  Operator<Scalar> t_b;      // B(I+B*B)^{-1/2} + A*(I+B*B)^{-1/2},  H2 -> H1
  Operator<Scalar> t_bstar;  // B*(I+BB*)^{-1/2} + A(I+BB*)^{-1/2},  H1 -> H2
};

template <typename Scalar>
TbPair<Scalar> build_tb(const Operator<Scalar>& a) {
  const Operator<Scalar> b = pinv(a);
  const Operator<Scalar> b_adj = adjoint(b);
  const Operator<Scalar> root_cod = frac_power(shift_identity(b_adj * b), Scalar(-0.5));
  const Operator<Scalar> root_dom = frac_power(shift_identity(b * b_adj), Scalar(-0.5));
  return {b * root_cod + adjoint(a) * root_cod, b_adj * root_dom + a * root_dom};
}

/// The damped operator B*(I+BB*)^{-1/2}, whose Moore-Penrose inverse T_B is.
template <typename Scalar>
Operator<Scalar> damped_adjoint_inverse(const Operator<Scalar>& a) {
  const Operator<Scalar> b = pinv(a);
  const Operator<Scalar> b_adj = adjoint(b);
  return b_adj * frac_power(shift_identity(b * b_adj), Scalar(-0.5));
}

template <typename Scalar>
struct TbCheck {
  std::array<Scalar, 4> penrose{};  // Penrose relations of (F, T_B), F = B*(I+BB*)^{-1/2}
  Scalar pinv_crosscheck = 0;       // T_B vs pinv(F)
  Scalar adjoint_residual = 0;      // adjoint(T_B) vs T_{B*}
  Scalar left_projection = 0;       // T_B F = P_{R(B)} = BA
  Scalar right_projection = 0;      // F T_B = P_{R(B*)} = AB
};

template <typename Scalar>
TbCheck<Scalar> verify_tb(const Operator<Scalar>& a, const TbPair<Scalar>& tb) {
  const Operator<Scalar> b = pinv(a);
  const Operator<Scalar> f = damped_adjoint_inverse(a);
  TbCheck<Scalar> out;
  out.penrose = penrose_residuals(f, tb.t_b);
  out.pinv_crosscheck = relative_residual(tb.t_b, pinv(f));
  out.adjoint_residual = relative_residual(adjoint(tb.t_b), tb.t_bstar);
  out.left_projection = relative_residual(tb.t_b * f, b * a);
  out.right_projection = relative_residual(f * tb.t_b, a * b);
  return out;
}

template <typename Scalar>
struct Decomposition {
  Operator<Scalar> factor_power;  // (I+B*B)^{-1/2} on the codomain
  Operator<Scalar> factor_t;      // T_{B*}
  Scalar residual = 0;            // ||A - product|| / max(||A||, 1)
};

/// A = (I+B*B)^{-1/2} T_{B*}.
template <typename Scalar>
Decomposition<Scalar> decompose(const Operator<Scalar>& a) {
  const Operator<Scalar> b = pinv(a);
  Operator<Scalar> factor_power = frac_power(shift_identity(adjoint(b) * b), Scalar(-0.5));
  Operator<Scalar> factor_t = build_tb(a).t_bstar;
  const MatrixX<Scalar> product = factor_power.matrix() * factor_t.matrix();
  const Scalar residual = (a.matrix() - product).norm() / std::max(a.matrix().norm(), Scalar(1));
  return {std::move(factor_power), std::move(factor_t), residual};
}

}  // namespace tracelab::oplab
