#pragma once

#include "qce/channels.hpp"
#include "qce/entropy.hpp"

namespace qce {

/// Stinespring isometry V = sum_i K_i (x) |i>_E, mapping the channel input
/// into output (x) environment. Environment basis follows Kraus list order.
struct IsometricExtension {
  CMatrix isometry;  // (dim_out * dim_env) x dim_in
  std::size_t dim_out = 0;
  std::size_t dim_env = 0;
};

IsometricExtension stinespring(const KrausChannel& channel);

/// Channel into the environment: rho -> Tr_out(V rho V^dag), with entries
/// Tr(K_j^dag K_i rho) at (i, j). Unique only up to an isometry on the
/// environment, so callers should compare spectra and entropies, not matrices.
KrausChannel complementary(const KrausChannel& channel);

/// Entropic audit of the tripartite pure output (I_A x V)|phi>_AB.
struct LeakReport {
  double s_cond_a_given_bout = 0;  // S(A|B~)
  double s_cond_a_given_env = 0;   // S(A|E)
  double i_a_bout = 0;             // I(A;B~)
  double i_a_env = 0;              // I(A;E)
  bool purified = false;           // input was mixed and got purified
  std::size_t purification_dim = 1;  // reference dimension folded into A
};

/// For pure rho_AB the identity S(A|B~) = -S(A|E) holds exactly.
/// Mixed inputs are rejected unless purify_mixed is set, in which case a
/// reference system purifying rho_AB is absorbed into A.
LeakReport leak_report(const KrausChannel& channel, const DensityOperator& rho_ab,
                       bool purify_mixed = false);

}  // namespace qce
