#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qce/linalg.hpp"

namespace qce {

/// Unit-trace positive semi-definite operator with declared subsystem dimensions.
///
/// make() enforces: hermiticity defect <= 1e-10 (input is then symmetrized),
/// eigenvalues >= -1e-10, trace within 1e-9 of one. trusted() skips the checks
/// for values produced by operations that preserve validity by construction.
struct DensityOperator {
  CMatrix matrix;
  DimSpec dims;

  static DensityOperator make(CMatrix m, DimSpec dims);
  static DensityOperator trusted(CMatrix m, DimSpec dims);

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }

  /// Reduced state on the kept subsystems (strictly increasing indices).
  DensityOperator marginal(const std::vector<std::size_t>& keep) const;

  /// Same operator, re-annotated with a different subsystem split.
  DensityOperator with_dims(DimSpec d) const;

  static constexpr double hermiticity_tol = 1e-10;
  static constexpr double eigenvalue_tol = 1e-10;
  static constexpr double trace_tol = 1e-9;
};

/// Bell-diagonal correlation coefficients (c1, c2, c3); valid iff all four
/// induced Bell probabilities are non-negative.
struct BellDiagonalParams {
  double c1 = 0, c2 = 0, c3 = 0;

  /// {p00, p01, p10, p11} with p_mn = (1 + (-1)^m c1 - (-1)^(m+n) c2 + (-1)^n c3) / 4.
  std::array<double, 4> probabilities() const;
  bool in_tetrahedron(double tol = 1e-12) const;
};

/// Rank-1 projector of a normalized amplitude vector (norm within 1e-10).
DensityOperator pure_state_density(const CVector& amplitudes, DimSpec dims);

/// cos(a)|00> + sin(a)|11> on 2x2, a in [0, pi].
DensityOperator alpha_state(double alpha);
CVector alpha_state_vector(double alpha);

/// |phi+> = 1/sqrt(d) sum_i |i>|i> on d x d.
DensityOperator max_entangled(std::size_t d);
CVector max_entangled_vector(std::size_t d);

/// Mixture sum p_mn |gamma_mn><gamma_mn| over the four Bell states.
DensityOperator bell_diagonal(const BellDiagonalParams& params);

/// Uniform rejection sampling of the Bell tetrahedron; deterministic per seed.
std::vector<BellDiagonalParams> sample_tetrahedron(std::size_t count, std::uint64_t seed);

}  // namespace qce
