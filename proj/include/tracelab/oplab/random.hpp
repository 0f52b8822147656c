#pragma once

#include <cstdint>
#include <random>

#include "tracelab/oplab/operator.hpp"

namespace tracelab::oplab {

/// Seeded source of test fixtures: standard-normal matrices, Grams of the
/// form M^T M + I, and operators of prescribed rank built from thin
/// normal factors.
template <typename Scalar = double>
class FixtureGenerator {
 public:
  explicit FixtureGenerator(std::uint64_t seed) : engine_(seed) {}

  MatrixX<Scalar> normal(Eigen::Index rows, Eigen::Index cols) {
    MatrixX<Scalar> m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Scalar(dist_(engine_));
    }
    return m;
  }

  VectorX<Scalar> normal_vector(Eigen::Index n) { return normal(n, 1); }

  MatrixX<Scalar> spd_gram(Eigen::Index n) {
    const MatrixX<Scalar> m = normal(n, n);
    MatrixX<Scalar> g = m.transpose() * m + MatrixX<Scalar>::Identity(n, n);
    return Scalar(0.5) * (g + g.transpose());
  }

  SpacePtr<Scalar> random_space(Eigen::Index n) { return make_space<Scalar>(n, spd_gram(n)); }

  /// rank < min(rows, cols) gives a product of thin normal factors.
  Operator<Scalar> random_operator(const SpacePtr<Scalar>& domain, const SpacePtr<Scalar>& codomain,
                                   Eigen::Index rank) {
    const Eigen::Index m = codomain->dim();
    const Eigen::Index n = domain->dim();
    if (rank >= std::min(m, n)) return Operator<Scalar>(domain, codomain, normal(m, n));
    return Operator<Scalar>(domain, codomain, normal(m, rank) * normal(rank, n));
  }

  Operator<Scalar> random_operator(const SpacePtr<Scalar>& domain, const SpacePtr<Scalar>& codomain) {
    return random_operator(domain, codomain, std::min(domain->dim(), codomain->dim()));
  }

  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_{0.0, 1.0};
};

}  // namespace tracelab::oplab
