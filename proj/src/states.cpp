#include "qce/states.hpp"

#include <cmath>

#include "qce/random.hpp"

namespace qce {

DensityOperator DensityOperator::make(CMatrix m, DimSpec dims) {
  if (m.rows() != m.cols()) throw ValidationError("density operator must be square");
  dims.check_matches(static_cast<std::size_t>(m.rows()));
  if (!all_finite(m)) throw ValidationError("density operator has non-finite entries");

  const double defect = hermiticity_defect(m);
  if (!(defect <= hermiticity_tol))
    throw ValidationError("density operator not Hermitian (defect " + std::to_string(defect) + ")");
  CMatrix sym = 0.5 * (m + m.adjoint());

  const double tr = sym.trace().real();
  if (!(std::abs(tr - 1.0) <= trace_tol))
    throw ValidationError("density operator trace " + std::to_string(tr) + " is not 1");

  const double min_ev = min_herm_eigenvalue(sym, hermiticity_tol);
  if (min_ev < -eigenvalue_tol)
    throw ValidationError("density operator not positive semi-definite (min eigenvalue " +
                          std::to_string(min_ev) + ")");

  DensityOperator rho;
  rho.matrix = std::move(sym);
  rho.dims = std::move(dims);
  return rho;
}

DensityOperator DensityOperator::trusted(CMatrix m, DimSpec dims) {
  DensityOperator rho;
  rho.matrix = std::move(m);
  rho.dims = std::move(dims);
  return rho;
}

DensityOperator DensityOperator::marginal(const std::vector<std::size_t>& keep) const {
  CMatrix reduced = partial_trace(matrix, dims, keep);
  std::vector<std::size_t> kept_dims;
  for (std::size_t k : keep) kept_dims.push_back(dims[k]);
  return trusted(std::move(reduced), DimSpec(kept_dims));
}

DensityOperator DensityOperator::with_dims(DimSpec d) const {
  d.check_matches(dim());
  return trusted(matrix, std::move(d));
}

std::array<double, 4> BellDiagonalParams::probabilities() const {
  auto p = [&](int m, int n) {
    const double sm = (m % 2 == 0) ? 1.0 : -1.0;
    const double smn = ((m + n) % 2 == 0) ? 1.0 : -1.0;
    const double sn = (n % 2 == 0) ? 1.0 : -1.0;
    return 0.25 * (1.0 + sm * c1 - smn * c2 + sn * c3);
  };
  return {p(0, 0), p(0, 1), p(1, 0), p(1, 1)};
}

bool BellDiagonalParams::in_tetrahedron(double tol) const {
  for (double p : probabilities())
    if (p < -tol) return false;
  return true;
}

DensityOperator pure_state_density(const CVector& amplitudes, DimSpec dims) {
  dims.check_matches(static_cast<std::size_t>(amplitudes.size()));
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-10)
    throw ValidationError("state vector norm " + std::to_string(norm) + " is not 1");
  CMatrix proj = amplitudes * amplitudes.adjoint();
  return DensityOperator::trusted(std::move(proj), std::move(dims));
}

CVector alpha_state_vector(double alpha) {
  if (alpha < -1e-12 || alpha > M_PI + 1e-12)
    throw ValidationError("alpha must lie in [0, pi]");
  CVector v = CVector::Zero(4);
  v(0) = std::cos(alpha);
  v(3) = std::sin(alpha);
  return v;
}

DensityOperator alpha_state(double alpha) {
  return pure_state_density(alpha_state_vector(alpha), DimSpec{2, 2});
}

CVector max_entangled_vector(std::size_t d) {
  if (d < 2) throw ValidationError("maximally entangled state needs d >= 2");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d * d));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i * d + i)) = amp;
  return v;
}

DensityOperator max_entangled(std::size_t d) {
  return pure_state_density(max_entangled_vector(d), DimSpec{d, d});
}

namespace {

// |gamma_mn> = (|0,n> + (-1)^m |1, 1 xor n>) / sqrt(2)
CVector bell_vector(int m, int n) {
  CVector v = CVector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  v(0 * 2 + n) = s;
  v(1 * 2 + (1 ^ n)) = (m == 0 ? s : -s);
  return v;
}

}  // namespace

DensityOperator bell_diagonal(const BellDiagonalParams& params) {
  const auto probs = params.probabilities();
  for (double p : probs)
    if (p < -1e-12)
      throw ValidationError("Bell-diagonal parameters outside the tetrahedron (p = " +
                            std::to_string(p) + ")");
  CMatrix rho = CMatrix::Zero(4, 4);
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) {
      // probabilities() orders as p00, p01, p10, p11
      const double p = probs[static_cast<std::size_t>(m * 2 + n)];
      if (p > 0) {
        CVector g = bell_vector(m, n);
        rho += p * (g * g.adjoint());
      }
    }
  return DensityOperator::trusted(std::move(rho), DimSpec{2, 2});
}

std::vector<BellDiagonalParams> sample_tetrahedron(std::size_t count, std::uint64_t seed) {
  if (count == 0) throw ValidationError("sample count must be >= 1");
  Rng rng(seed);
  std::vector<BellDiagonalParams> out;
  out.reserve(count);
  while (out.size() < count) {
    BellDiagonalParams c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    if (c.in_tetrahedron(0.0)) out.push_back(c);
  }
  return out;
}

}  // namespace qce
