#pragma once

#include <array>

#include "qce/states.hpp"

namespace qce {

/// All entropies are in bits (base-2 logarithms).

/// -Tr(rho log2 rho); eigenvalues below 1e-14 are excluded from the sum.
double von_neumann(const DensityOperator& rho);

/// Entropy of a raw Hermitian PSD matrix (unit trace not required by the math,
/// but every caller passes a state or marginal).
double von_neumann(const CMatrix& m);

/// S(rest | subsystem) = S(full) - S(marginal on `conditioned_on`).
/// Bipartite dims only; conditioned_on is 0 or 1.
double conditional_entropy(const DensityOperator& rho, std::size_t conditioned_on = 1);

/// I(A;B) = S(A) + S(B) - S(AB), bipartite.
double mutual_information(const DensityOperator& rho);

/// I(A>B) = S(B) - S(AB) = -S(A|B).
double coherent_info_state(const DensityOperator& rho);

struct EntropyReport {
  double s_ab = 0;
  double s_a = 0;
  double s_b = 0;
  double s_cond_a_given_b = 0;
  double mutual_info = 0;
  double coherent_info = 0;
};

EntropyReport entropy_report(const DensityOperator& rho);

/// Joint spectrum {l1..l4} and B-marginal eigenvalue l5 of the two-qubit state
/// produced by sending the B half of cos(a)|00> + sin(a)|11> through a qubit
/// depolarizing channel with mixing parameter p (noise convention).
std::array<double, 5> alpha_family_eigenvalues(double alpha, double p);

/// Closed-form conditional entropy S(A|B) of that output, in bits.
double alpha_family_analytic(double alpha, double p);

}  // namespace qce
