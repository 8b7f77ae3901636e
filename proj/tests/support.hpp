#pragma once

// Shared test helpers: random channel generation, independent oracles, and a
// subsystem permutation utility. Everything here stays independent of the
// library paths it is used to check.

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qce/channels.hpp"
#include "qce/random.hpp"
#include "qce/states.hpp"

namespace qce::testsupport {

/// Random channel from a Haar isometry V: dim_in -> dim_out x env.
/// Requires dim_out * env >= dim_in.
inline KrausChannel random_kraus_channel(std::size_t dim_in, std::size_t dim_out, std::size_t env,
                                         Rng& rng) {
  const std::size_t rows = dim_out * env;
  if (rows < dim_in) throw std::invalid_argument("isometry needs dim_out*env >= dim_in");
  CMatrix g = random_complex_matrix(rows, dim_in, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  CMatrix v = q.leftCols(static_cast<Eigen::Index>(dim_in));

  KrausChannel c;
  c.dim_in = dim_in;
  c.dim_out = dim_out;
  for (std::size_t e = 0; e < env; ++e) {
    CMatrix k(static_cast<Eigen::Index>(dim_out), static_cast<Eigen::Index>(dim_in));
    for (std::size_t b = 0; b < dim_out; ++b)
      k.row(static_cast<Eigen::Index>(b)) = v.row(static_cast<Eigen::Index>(b * env + e));
    c.kraus.push_back(std::move(k));
  }
  return c;
}

/// Random measure-and-prepare channel: random prepared states against a
/// random POVM built by symmetric normalization of Wishart blocks.
inline KrausChannel random_holevo_channel(std::size_t dim, std::size_t terms, Rng& rng) {
  std::vector<DensityOperator> prepare;
  std::vector<CMatrix> povm;
  CMatrix total = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<CMatrix> raw;
  for (std::size_t k = 0; k < terms; ++k) {
    prepare.push_back(
        DensityOperator::make(random_density_matrix(dim, dim, rng), DimSpec{dim}));
    CMatrix g = random_complex_matrix(dim, dim, rng);
    raw.push_back(g * g.adjoint());
    total += raw.back();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(total);
  CMatrix inv_sqrt = es.operatorInverseSqrt();
  for (auto& g : raw) povm.push_back(inv_sqrt * g * inv_sqrt);
  return holevo_eb(prepare, povm);
}

/// Independent route through the channel-state duality:
/// N(rho) = dim_in * Tr_A[(rho^T (x) I) J].
inline DensityOperator apply_via_choi(const ChoiState& j, const DensityOperator& rho) {
  const std::size_t din = j.state.dims[0];
  const std::size_t dout = j.state.dims[1];
  const CMatrix lifted = kron(rho.matrix.transpose(), identity_matrix(dout));
  const CMatrix out =
      static_cast<double>(din) * partial_trace(lifted * j.state.matrix, j.state.dims, {1});
  return DensityOperator::trusted(out, DimSpec{dout});
}

/// Reorder subsystems: out has dims {dims[perm[0]], dims[perm[1]], ...} and
/// out multi-index k equals in multi-index perm[k].
inline CMatrix permute_subsystems(const CMatrix& m, const DimSpec& dims,
                                  const std::vector<std::size_t>& perm) {
  const std::size_t n = dims.size();
  std::vector<std::size_t> in_stride(n), out_stride(n), out_dims(n);
  std::size_t acc = 1;
  for (std::size_t k = n; k-- > 0;) {
    in_stride[k] = acc;
    acc *= dims[k];
  }
  for (std::size_t k = 0; k < n; ++k) out_dims[k] = dims[perm[k]];
  acc = 1;
  for (std::size_t k = n; k-- > 0;) {
    out_stride[k] = acc;
    acc *= out_dims[k];
  }
  const std::size_t total = dims.product();
  auto map_index = [&](std::size_t i) {
    std::size_t out = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t comp = (i / in_stride[perm[k]]) % dims[perm[k]];
      out += comp * out_stride[k];
    }
    return out;
  };
  std::vector<std::size_t> mapped(total);
  for (std::size_t i = 0; i < total; ++i) mapped[i] = map_index(i);
  CMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < total; ++r)
    for (std::size_t c = 0; c < total; ++c)
      out(static_cast<Eigen::Index>(mapped[r]), static_cast<Eigen::Index>(mapped[c])) =
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return out;
}

/// The two-qubit output of id (x) depolarizing on cos(a)|00> + sin(a)|11>,
/// written out entry by entry.
inline CMatrix alpha_output_matrix(double alpha, double p) {
  const double c2 = std::cos(alpha) * std::cos(alpha);
  const double s2 = std::sin(alpha) * std::sin(alpha);
  const double b1 = (1 - 0.5 * p) * c2;
  const double b2 = 0.5 * (1 - p) * std::sin(2 * alpha);
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = b1;
  m(0, 3) = b2;
  m(3, 0) = b2;
  m(1, 1) = 0.5 * p * c2;
  m(2, 2) = 0.5 * p * s2;
  m(3, 3) = (1 - 0.5 * p) - b1;
  return m;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qce::testsupport
