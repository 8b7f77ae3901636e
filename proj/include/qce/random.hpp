#pragma once

#include <cstdint>
#include <random>

#include "qce/linalg.hpp"

namespace qce {

/// Seeded generator used by all sampling paths. Fixed seed => fixed sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  cxd complex_normal() { return cxd(normal(), normal()); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Normalized Gaussian vector: Haar-uniform pure state.
inline CVector random_pure_state(std::size_t dim, Rng& rng) {
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  v.normalize();
  return v;
}

inline CMatrix random_complex_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_normal();
  return g;
}

/// Haar-distributed unitary via QR with phase fixing.
inline CMatrix random_unitary(std::size_t dim, Rng& rng) {
  CMatrix g = random_complex_matrix(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    cxd d = r(i, i);
    q.col(i) *= (std::abs(d) > 0 ? d / std::abs(d) : cxd(1, 0));
  }
  return q;
}

/// Random density matrix from the induced measure: G G^dag / Tr, G of shape dim x rank.
inline CMatrix random_density_matrix(std::size_t dim, std::size_t rank, Rng& rng) {
  CMatrix g = random_complex_matrix(dim, rank, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

}  // namespace qce
