#include <doctest.h>

#include "qce/channels.hpp"
#include "qce/linalg.hpp"
#include "qce/random.hpp"
#include "qce/states.hpp"
#include "support.hpp"

using namespace qce;
using namespace qce::testsupport;

TEST_CASE("kron basics") {
  CHECK(max_abs_diff(kron(identity_matrix(2), identity_matrix(2)), identity_matrix(4)) == 0.0);

  CMatrix d10 = CMatrix::Zero(2, 2), d01 = CMatrix::Zero(2, 2);
  d10(0, 0) = 1;
  d01(1, 1) = 1;
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(1, 1) = 1;
  CHECK(max_abs_diff(kron(d10, d01), expected) < 1e-15);

  // (X (x) X) |00> = |11>
  CVector v00 = CVector::Zero(4);
  v00(0) = 1;
  CVector out = kron(pauli_x(), pauli_x()) * v00;
  CHECK(std::abs(out(3) - cxd(1, 0)) < 1e-15);
  CHECK(out.head(3).norm() < 1e-15);
}

TEST_CASE("kron associativity") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix a = random_complex_matrix(2, 3, rng);
    CMatrix b = random_complex_matrix(3, 2, rng);
    CMatrix c = random_complex_matrix(2, 2, rng);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
  }
}

TEST_CASE("partial trace basics") {
  const DensityOperator bell = max_entangled(2);
  CHECK(max_abs_diff(partial_trace(bell.matrix, bell.dims, {1}), 0.5 * identity_matrix(2)) <
        1e-14);

  Rng rng(7);
  CMatrix ra = random_density_matrix(2, 2, rng);
  CMatrix rb = random_density_matrix(3, 3, rng);
  CHECK(max_abs_diff(partial_trace(kron(ra, rb), DimSpec{2, 3}, {0}), ra) < 1e-13);

  // explicit 4x4 partial trace of the alpha-family output at maximal mixing
  const CMatrix out = alpha_output_matrix(M_PI / 4, 0.5);
  CHECK(max_abs_diff(partial_trace(out, DimSpec{2, 2}, {1}), 0.5 * identity_matrix(2)) < 1e-14);
}

TEST_CASE("partial trace over everything is the scalar trace") {
  Rng rng(3);
  CMatrix m = random_complex_matrix(6, 6, rng);
  const CMatrix full = partial_trace(m, DimSpec{2, 3}, {0, 1});
  CHECK(max_abs_diff(full, m) == 0.0);
  const CMatrix only_a = partial_trace(m, DimSpec{6}, {0});
  CHECK(max_abs_diff(only_a, m) == 0.0);
}

TEST_CASE("partial trace preserves trace and rejects bad dims") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    CMatrix m = random_complex_matrix(6, 6, rng);
    const cxd t0 = m.trace();
    const cxd t1 = partial_trace(m, DimSpec{2, 3}, {0}).trace();
    CHECK(std::abs(t0 - t1) < 1e-12);
  }
  CHECK_THROWS_AS(partial_trace(identity_matrix(4), DimSpec{2, 3}, {0}), DimensionError);
  CHECK_THROWS_AS(partial_trace(identity_matrix(4), DimSpec{2, 2}, {}), DimensionError);
}

TEST_CASE("partial transpose") {
  Rng rng(5);
  CMatrix ra = random_density_matrix(2, 2, rng);
  CMatrix rb = random_density_matrix(2, 2, rng);
  const CMatrix pt = partial_transpose(kron(ra, rb), DimSpec{2, 2}, 1);
  CHECK(max_abs_diff(pt, kron(ra, rb.transpose())) < 1e-14);
  CHECK(min_herm_eigenvalue(pt) > -1e-12);

  const DensityOperator bell = max_entangled(2);
  const auto ev = herm_eigvals(partial_transpose(bell.matrix, bell.dims, 1));
  CHECK(ev.back() == doctest::Approx(-0.5).epsilon(1e-12));

  // Choi of depolarizing at the separability boundary: min eigenvalue (3p-2)/4 = 0
  const ChoiState j = choi(depolarizing(2, 2.0 / 3.0));
  const double min_ev = min_herm_eigenvalue(partial_transpose(j.state.matrix, j.state.dims, 1));
  CHECK(std::abs(min_ev - 0.0) < 1e-12);
}

TEST_CASE("partial transpose is an involution and preserves trace") {
  Rng rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    CMatrix m = random_complex_matrix(4, 4, rng);
    const CMatrix twice = partial_transpose(partial_transpose(m, DimSpec{2, 2}, 0), DimSpec{2, 2}, 0);
    CHECK(max_abs_diff(twice, m) == 0.0);
  }
  CMatrix m = random_complex_matrix(6, 6, rng);
  CHECK(std::abs(partial_transpose(m, DimSpec{2, 3}, 1).trace() - m.trace()) < 1e-13);
}

TEST_CASE("herm_eigvals") {
  const auto flat = herm_eigvals(0.25 * identity_matrix(4));
  for (double v : flat) CHECK(v == doctest::Approx(0.25).epsilon(1e-14));

  const auto iso = herm_eigvals(alpha_output_matrix(M_PI / 4, 0.5));
  CHECK(iso[0] == doctest::Approx(5.0 / 8).epsilon(1e-12));
  for (int k = 1; k < 4; ++k) CHECK(iso[static_cast<std::size_t>(k)] == doctest::Approx(1.0 / 8).epsilon(1e-12));

  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(herm_eigvals(bad), ValidationError);
}

TEST_CASE("eigenvalue sum equals trace on random Hermitian matrices") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    CMatrix g = random_complex_matrix(n, n, rng);
    CMatrix h = 0.5 * (g + g.adjoint());
    const auto ev = herm_eigvals(h);
    double sum = 0;
    for (double v : ev) sum += v;
    CHECK(std::abs(sum - h.trace().real()) < 1e-9);
    CHECK(std::is_sorted(ev.rbegin(), ev.rend()));
  }
}

TEST_CASE("trace norm") {
  Rng rng(23);
  const DensityOperator rho =
      DensityOperator::trusted(random_density_matrix(4, 4, rng), DimSpec{4});
  CHECK(trace_norm(rho.matrix) == doctest::Approx(1.0).epsilon(1e-10));

  const DensityOperator bell = max_entangled(2);
  CHECK(trace_norm(bell.matrix - 0.25 * identity_matrix(4)) ==
        doctest::Approx(1.5).epsilon(1e-12));

  CHECK(trace_norm(CMatrix::Zero(3, 3)) == 0.0);
}
