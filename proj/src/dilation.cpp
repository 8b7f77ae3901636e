#include "qce/dilation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qce {

IsometricExtension stinespring(const KrausChannel& channel) {
  require_valid(channel);
  const std::size_t env = channel.kraus.size();
  const std::size_t rows = channel.dim_out * env;
  CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(rows),
                            static_cast<Eigen::Index>(channel.dim_in));
  for (std::size_t i = 0; i < env; ++i)
    for (std::size_t b = 0; b < channel.dim_out; ++b)
      // output leg first, environment second: row index b*env + i
      v.row(static_cast<Eigen::Index>(b * env + i)) =
          channel.kraus[i].row(static_cast<Eigen::Index>(b));
  return IsometricExtension{std::move(v), channel.dim_out, env};
}

KrausChannel complementary(const KrausChannel& channel) {
  require_valid(channel);
  const std::size_t env = channel.kraus.size();
  KrausChannel comp;
  comp.dim_in = channel.dim_in;
  comp.dim_out = env;
  // One operator per output basis vector: row i of C_b is row b of K_i.
  for (std::size_t b = 0; b < channel.dim_out; ++b) {
    CMatrix c = CMatrix::Zero(static_cast<Eigen::Index>(env),
                              static_cast<Eigen::Index>(channel.dim_in));
    for (std::size_t i = 0; i < env; ++i)
      c.row(static_cast<Eigen::Index>(i)) = channel.kraus[i].row(static_cast<Eigen::Index>(b));
    comp.kraus.push_back(std::move(c));
  }
  return comp;
}

namespace {

// Purification |phi> = sum_k sqrt(l_k) |k>_R (x) |v_k>_AB, reference first.
CVector purify(const DensityOperator& rho, std::size_t& ref_dim) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix);
  const std::size_t n = rho.dim();
  ref_dim = 0;
  std::vector<std::pair<double, Eigen::Index>> kept;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
    if (solver.eigenvalues()(k) > 1e-12) kept.emplace_back(solver.eigenvalues()(k), k);
  ref_dim = kept.size();
  CVector phi = CVector::Zero(static_cast<Eigen::Index>(ref_dim * n));
  for (std::size_t k = 0; k < kept.size(); ++k)
    phi.segment(static_cast<Eigen::Index>(k * n), static_cast<Eigen::Index>(n)) =
        std::sqrt(kept[k].first) * solver.eigenvectors().col(kept[k].second);
  phi.normalize();
  return phi;
}

}  // namespace

LeakReport leak_report(const KrausChannel& channel, const DensityOperator& rho_ab,
                       bool purify_mixed) {
  if (!rho_ab.dims.is_bipartite()) throw DimensionError("leak report needs a bipartite state");
  if (rho_ab.dims[1] != channel.dim_in)
    throw DimensionError("channel input dimension does not match the B subsystem");

  LeakReport report;
  std::size_t da = rho_ab.dims[0];
  const std::size_t db = rho_ab.dims[1];

  // Extract the pure input vector, purifying first if needed.
  CVector input;
  const auto eigs = herm_eigvals(rho_ab.matrix);
  if (eigs.front() > 1.0 - 1e-9) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_ab.matrix);
    input = solver.eigenvectors().col(solver.eigenvalues().size() - 1);
  } else if (purify_mixed) {
    std::size_t ref = 0;
    input = purify(rho_ab, ref);
    report.purified = true;
    report.purification_dim = ref;
    da *= ref;  // reference folded into A
  } else {
    throw ValidationError("input state is mixed; pass purify_mixed to fold a reference into A");
  }

  const IsometricExtension ext = stinespring(channel);
  const std::size_t dbo = ext.dim_out;
  const std::size_t de = ext.dim_env;

  // |psi>_{A,Bout,E} = (I_A (x) V) |input>, via the B-slices of the input vector.
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(da * dbo * de));
  for (std::size_t a = 0; a < da; ++a) {
    CVector slice = input.segment(static_cast<Eigen::Index>(a * db),
                                  static_cast<Eigen::Index>(db));
    psi.segment(static_cast<Eigen::Index>(a * dbo * de),
                static_cast<Eigen::Index>(dbo * de)) = ext.isometry * slice;
  }

  const CMatrix full = psi * psi.adjoint();
  const DimSpec tri{da, dbo, de};
  const CMatrix rho_abo = partial_trace(full, tri, {0, 1});
  const CMatrix rho_ae = partial_trace(full, tri, {0, 2});
  const CMatrix rho_a = partial_trace(full, tri, {0});
  const CMatrix rho_bo = partial_trace(full, tri, {1});
  const CMatrix rho_e = partial_trace(full, tri, {2});

  const double s_abo = von_neumann(rho_abo);
  const double s_ae = von_neumann(rho_ae);
  const double s_a = von_neumann(rho_a);
  const double s_bo = von_neumann(rho_bo);
  const double s_e = von_neumann(rho_e);

  report.s_cond_a_given_bout = s_abo - s_bo;
  report.s_cond_a_given_env = s_ae - s_e;
  report.i_a_bout = s_a + s_bo - s_abo;
  report.i_a_env = s_a + s_e - s_ae;
  return report;
}

}  // namespace qce
