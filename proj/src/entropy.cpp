#include "qce/entropy.hpp"

#include <cmath>

namespace qce {

namespace {

constexpr double kEntropyCutoff = 1e-14;  // x log x -> 0

double shannon_bits(const std::vector<double>& probs) {
  double s = 0;
  for (double p : probs)
    if (p > kEntropyCutoff) s -= p * std::log2(p);
  return s;
}

double term_bits(double p) { return p > kEntropyCutoff ? -p * std::log2(p) : 0.0; }

}  // namespace

double von_neumann(const CMatrix& m) { return shannon_bits(herm_eigvals(m)); }

double von_neumann(const DensityOperator& rho) { return von_neumann(rho.matrix); }

double conditional_entropy(const DensityOperator& rho, std::size_t conditioned_on) {
  if (!rho.dims.is_bipartite())
    throw DimensionError("conditional entropy needs a bipartite DimSpec");
  if (conditioned_on > 1) throw DimensionError("conditioned_on must be 0 or 1");
  const CMatrix marg = partial_trace(rho.matrix, rho.dims, {conditioned_on});
  return von_neumann(rho.matrix) - von_neumann(marg);
}

double mutual_information(const DensityOperator& rho) {
  if (!rho.dims.is_bipartite())
    throw DimensionError("mutual information needs a bipartite DimSpec");
  const CMatrix a = partial_trace(rho.matrix, rho.dims, {0});
  const CMatrix b = partial_trace(rho.matrix, rho.dims, {1});
  return von_neumann(a) + von_neumann(b) - von_neumann(rho.matrix);
}

double coherent_info_state(const DensityOperator& rho) { return -conditional_entropy(rho, 1); }

EntropyReport entropy_report(const DensityOperator& rho) {
  if (!rho.dims.is_bipartite()) throw DimensionError("entropy report needs a bipartite DimSpec");
  EntropyReport r;
  r.s_ab = von_neumann(rho.matrix);
  r.s_a = von_neumann(partial_trace(rho.matrix, rho.dims, {0}));
  r.s_b = von_neumann(partial_trace(rho.matrix, rho.dims, {1}));
  r.s_cond_a_given_b = r.s_ab - r.s_b;
  r.mutual_info = r.s_a + r.s_b - r.s_ab;
  r.coherent_info = -r.s_cond_a_given_b;
  return r;
}

std::array<double, 5> alpha_family_eigenvalues(double alpha, double p) {
  if (alpha < -1e-12 || alpha > M_PI + 1e-12) throw ValidationError("alpha must lie in [0, pi]");
  if (p < -1e-12 || p > 1 + 1e-12) throw ValidationError("p must lie in [0, 1]");

  const double c2a = std::cos(2 * alpha);
  const double c4a = std::cos(4 * alpha);
  const double cos_sq = 0.5 * (1 + c2a);
  const double sin_sq = 0.5 * (1 - c2a);

  // Half-spread of the {|00>,|11>} block of the output matrix. Written as a
  // single radical: sqrt(8 - 12p + 5p^2 + (4p - 3p^2) cos 4a) / (4 sqrt 2).
  const double radicand = 5 * p * p - 12 * p + 8 + 4 * p * c4a - 3 * p * p * c4a;
  const double spread = std::sqrt(std::max(radicand, 0.0)) / (4.0 * std::sqrt(2.0));

  const double l1 = 0.5 * p * cos_sq;
  const double l2 = 0.5 * p * sin_sq;
  const double l3 = 0.5 - spread - 0.25 * p;
  const double l4 = 0.5 + spread - 0.25 * p;
  const double l5 = cos_sq - 0.5 * p * c2a;  // B-marginal eigenvalue
  return {l1, l2, l3, l4, l5};
}

double alpha_family_analytic(double alpha, double p) {
  const auto l = alpha_family_eigenvalues(alpha, p);
  const double s_joint = term_bits(l[0]) + term_bits(l[1]) + term_bits(std::max(l[2], 0.0)) +
                         term_bits(l[3]);
  const double s_marginal = term_bits(l[4]) + term_bits(1.0 - l[4]);
  return s_joint - s_marginal;
}

}  // namespace qce
