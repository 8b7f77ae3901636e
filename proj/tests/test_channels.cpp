#include <doctest.h>

#include "qce/channels.hpp"
#include "qce/classify.hpp"
#include "qce/entropy.hpp"
#include "qce/random.hpp"
#include "support.hpp"

using namespace qce;
using namespace qce::testsupport;

TEST_CASE("validate") {
  CHECK(validate(identity_channel(2)).ok);

  KrausChannel half;
  half.dim_in = half.dim_out = 2;
  half.kraus.push_back(0.5 * identity_matrix(2));
  const auto report = validate(half);
  CHECK_FALSE(report.ok);
  CHECK(report.violation == doctest::Approx(0.75).epsilon(1e-12));

  for (double p : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    CHECK(validate(depolarizing(2, p)).ok);
    CHECK(validate(depolarizing(3, p)).ok);
    CHECK(validate(global_depolarizing(4, p)).ok);
  }

  KrausChannel poisoned = identity_channel(2);
  poisoned.kraus[0](0, 0) = cxd(std::nan(""), 0);
  CHECK_FALSE(validate(poisoned).ok);
}

TEST_CASE("weyl twirl realizes full mixing") {
  Rng rng(71);
  for (std::size_t d : {2, 3}) {
    const CMatrix rho = random_density_matrix(d, d, rng);
    CMatrix acc = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const CMatrix w = weyl_operator(d, a, b);
        acc += w * rho * w.adjoint();
      }
    acc /= static_cast<double>(d * d);
    CHECK(max_abs_diff(acc, identity_matrix(d) / static_cast<double>(d)) < 1e-12);
  }
}

TEST_CASE("apply") {
  Rng rng(73);
  const DensityOperator rho =
      DensityOperator::trusted(random_density_matrix(2, 2, rng), DimSpec{2});
  CHECK(max_abs_diff(apply(identity_channel(2), rho).matrix, rho.matrix) < 1e-14);
  CHECK(max_abs_diff(apply(depolarizing(2, 1.0), rho).matrix, 0.5 * identity_matrix(2)) < 1e-12);

  CVector zero = CVector::Zero(2);
  zero(0) = 1;
  const DensityOperator out = apply(depolarizing(2, 0.5), pure_state_density(zero, DimSpec{2}));
  CHECK(out.matrix(0, 0).real() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(out.matrix(1, 1).real() == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(apply(depolarizing(3, 0.5), rho), DimensionError);
}

TEST_CASE("depolarizing action matches its map form in any dimension") {
  Rng rng(79);
  for (std::size_t d : {2, 3, 4}) {
    for (double p : {0.0, 0.3, 0.7, 1.0}) {
      const CMatrix rho = random_density_matrix(d, d, rng);
      const CMatrix expected =
          (1 - p) * rho + p * identity_matrix(d) / static_cast<double>(d);
      const CMatrix got =
          apply(depolarizing(d, p), DensityOperator::trusted(rho, DimSpec{d})).matrix;
      CHECK(max_abs_diff(got, expected) < 1e-12);
    }
  }
  CHECK_THROWS_AS(depolarizing(2, 1.5), ValidationError);
  CHECK_THROWS_AS(depolarizing(2, -0.1), ValidationError);
}

TEST_CASE("apply_to_B") {
  Rng rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityOperator rho =
        DensityOperator::trusted(random_density_matrix(4, 4, rng), DimSpec{2, 2});
    // identity on B leaves everything alone
    CHECK(max_abs_diff(apply_to_B(identity_channel(2), rho).matrix, rho.matrix) < 1e-14);
    // A marginal is untouched by any trace-preserving channel on B
    const DensityOperator out = apply_to_B(depolarizing(2, 0.37), rho);
    CHECK(max_abs_diff(out.marginal({0}).matrix, rho.marginal({0}).matrix) < 1e-12);
  }

  for (double p : {0.1, 0.5, 0.9}) {
    const DensityOperator out = apply_to_B(depolarizing(2, p), max_entangled(2));
    const CMatrix expected =
        (1 - p) * max_entangled(2).matrix + p * 0.25 * identity_matrix(4);
    CHECK(max_abs_diff(out.matrix, expected) < 1e-12);
  }

  const auto iso = herm_eigvals(apply_to_B(depolarizing(2, 0.5), max_entangled(2)).matrix);
  CHECK(iso[0] == doctest::Approx(5.0 / 8).epsilon(1e-12));
  CHECK(iso[3] == doctest::Approx(1.0 / 8).epsilon(1e-12));
}

TEST_CASE("choi states") {
  const ChoiState j_id = choi(identity_channel(2));
  CHECK(max_abs_diff(j_id.state.matrix, max_entangled(2).matrix) < 1e-14);

  Rng rng(89);
  const DensityOperator sigma =
      DensityOperator::trusted(random_density_matrix(2, 2, rng), DimSpec{2});
  const ChoiState j_rep = choi(replacer(sigma, 2));
  CHECK(max_abs_diff(j_rep.state.matrix, kron(0.5 * identity_matrix(2), sigma.matrix)) < 1e-12);

  for (double p : {0.2, 0.6, 1.0}) {
    const auto ev = herm_eigvals(choi(depolarizing(2, p)).state.matrix);
    CHECK(ev[0] == doctest::Approx(1 - 0.75 * p).epsilon(1e-12));
    for (int k = 1; k < 4; ++k)
      CHECK(ev[static_cast<std::size_t>(k)] == doctest::Approx(0.25 * p).epsilon(1e-12));
  }
}

TEST_CASE("choi input marginal is maximally mixed for every valid channel") {
  Rng rng(97);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t din = 2 + trial % 2, dout = 2 + (trial / 2) % 2;
    const auto channel = random_kraus_channel(din, dout, 2, rng);
    const ChoiState j = choi(channel);
    CHECK(max_abs_diff(j.state.marginal({0}).matrix,
                       identity_matrix(din) / static_cast<double>(din)) < 1e-9);
  }
}

TEST_CASE("channel-state duality roundtrip") {
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t din = 2 + trial % 2, dout = 2 + (trial / 3) % 2;
    const auto channel = random_kraus_channel(din, dout, 1 + trial % 3 + (din > dout ? 1 : 0), rng);
    const ChoiState j = choi(channel);
    const DensityOperator rho =
        DensityOperator::trusted(random_density_matrix(din, din, rng), DimSpec{din});
    CHECK(max_abs_diff(apply_via_choi(j, rho).matrix, apply(channel, rho).matrix) < 1e-9);
  }
}

TEST_CASE("serial composition") {
  Rng rng(103);
  const auto n = random_kraus_channel(2, 2, 2, rng);
  const DensityOperator rho =
      DensityOperator::trusted(random_density_matrix(2, 2, rng), DimSpec{2});
  CHECK(max_abs_diff(apply(compose_serial(identity_channel(2), n), rho).matrix,
                     apply(n, rho).matrix) < 1e-13);

  for (double p : {0.2, 0.6})
    for (double q : {0.3, 0.9}) {
      const auto composed = compose_serial(depolarizing(2, p), depolarizing(2, q));
      const double expected_p = p + q - p * q;
      CHECK(composed.family.family == ChannelFamily::Depolarizing);
      CHECK(composed.family.param == doctest::Approx(expected_p).epsilon(1e-12));
      CHECK(max_abs_diff(apply(composed, rho).matrix,
                         apply(depolarizing(2, expected_p), rho).matrix) < 1e-10);
      CHECK(validate(composed).ok);
    }

  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_kraus_channel(2, 3, 2, rng);
    const auto b = random_kraus_channel(3, 2, 2, rng);
    const auto ab = compose_serial(b, a);
    const DensityOperator x =
        DensityOperator::trusted(random_density_matrix(2, 2, rng), DimSpec{2});
    CHECK(max_abs_diff(apply(ab, x).matrix, apply(b, apply(a, x)).matrix) < 1e-10);
  }

  // breaking channels compose to breaking channels
  const auto eb2 = compose_serial(depolarizing(2, 0.7), depolarizing(2, 0.8));
  CHECK(is_eb(eb2).status == Status::Yes);
}

TEST_CASE("parallel composition") {
  Rng rng(107);
  const auto both = compose_parallel(identity_channel(2), identity_channel(2));
  const DensityOperator rho =
      DensityOperator::trusted(random_density_matrix(4, 4, rng), DimSpec{4});
  CHECK(max_abs_diff(apply(both, rho).matrix, rho.matrix) < 1e-13);

  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_kraus_channel(2, 2, 2, rng);
    const auto b = random_kraus_channel(3, 3, 2, rng);
    CHECK(validate(compose_parallel(a, b)).ok);
  }
}

TEST_CASE("parallel composition acts leg by leg") {
  Rng rng(109);
  // state |phi+>_{A1 B1} (x) rho_{A2 B2}, then reordered to (A1 A2 B1 B2)
  const CMatrix rho2 = random_density_matrix(4, 4, rng);
  const CMatrix joint = kron(max_entangled(2).matrix, rho2);
  // current order (A1, B1, A2, B2) -> (A1, A2, B1, B2)
  const CMatrix reordered = permute_subsystems(joint, DimSpec{2, 2, 2, 2}, {0, 2, 1, 3});
  const DensityOperator input = DensityOperator::trusted(reordered, DimSpec{4, 4});

  const auto channel = compose_parallel(depolarizing(2, 1.0), identity_channel(2));
  const DensityOperator out = apply_to_B(channel, input);

  // leg B1 is fully mixed, legs (A2, B2) still carry rho2 exactly
  const CMatrix full = out.matrix;
  const DimSpec four{2, 2, 2, 2};
  CHECK(max_abs_diff(partial_trace(full, four, {2}), 0.5 * identity_matrix(2)) < 1e-12);
  const CMatrix kept = partial_trace(full, four, {1, 3});
  CHECK(max_abs_diff(kept, rho2) < 1e-12);
}

TEST_CASE("kraus-level mixture") {
  Rng rng(113);
  const auto n1 = random_kraus_channel(2, 2, 2, rng);
  const auto n2 = random_kraus_channel(2, 2, 3, rng);
  const DensityOperator rho =
      DensityOperator::trusted(random_density_matrix(2, 2, rng), DimSpec{2});
  for (double lambda : {0.0, 0.25, 0.7, 1.0}) {
    const auto mixed = mix(n1, n2, lambda);
    CHECK(validate(mixed).ok);
    const CMatrix expected =
        lambda * apply(n1, rho).matrix + (1 - lambda) * apply(n2, rho).matrix;
    CHECK(max_abs_diff(apply(mixed, rho).matrix, expected) < 1e-12);
  }
  const auto dep_mix = mix(depolarizing(2, 0.3), depolarizing(2, 0.7), 0.25);
  CHECK(dep_mix.family.family == ChannelFamily::Depolarizing);
  CHECK(dep_mix.family.param == doctest::Approx(0.25 * 0.3 + 0.75 * 0.7).epsilon(1e-12));
}

TEST_CASE("global depolarizing") {
  Rng rng(127);
  const CMatrix rho = random_density_matrix(4, 4, rng);
  for (double p : {0.0, 0.4, 1.0}) {
    const CMatrix expected = p * rho + (1 - p) * 0.25 * identity_matrix(4);
    const CMatrix got =
        apply(global_depolarizing(4, p), DensityOperator::trusted(rho, DimSpec{4})).matrix;
    CHECK(max_abs_diff(got, expected) < 1e-12);
  }

  // spectrum on the maximally entangled input: (1 + 3p)/4 and three (1-p)/4
  for (double p : {0.1, 0.5, 0.9}) {
    const auto ev = herm_eigvals(
        apply(global_depolarizing(4, p), max_entangled(2).with_dims(DimSpec{4})).matrix);
    CHECK(ev[0] == doctest::Approx((1 + 3 * p) / 4).epsilon(1e-12));
    for (int k = 1; k < 4; ++k)
      CHECK(ev[static_cast<std::size_t>(k)] == doctest::Approx((1 - p) / 4).epsilon(1e-12));
  }
  CHECK_THROWS_AS(global_depolarizing(5, 0.5), ValidationError);
}

TEST_CASE("transpose depolarizing") {
  Rng rng(131);
  const auto td0 = transpose_depolarizing(4, 0.0);
  const DensityOperator rho =
      DensityOperator::trusted(random_density_matrix(4, 4, rng), DimSpec{4});
  CHECK(max_abs_diff(td0.apply(rho).matrix, 0.25 * identity_matrix(4)) < 1e-14);

  // pure inputs: spectrum coincides with the global depolarizing family
  const auto td = transpose_depolarizing(4, 0.2);
  const CVector psi = random_pure_state(4, rng);
  const auto ev = herm_eigvals(
      td.apply(DensityOperator::trusted(psi * psi.adjoint(), DimSpec{4})).matrix);
  CHECK(ev[0] == doctest::Approx(0.2 + 0.8 / 4).epsilon(1e-11));
  for (int k = 1; k < 4; ++k)
    CHECK(ev[static_cast<std::size_t>(k)] == doctest::Approx(0.8 / 4).epsilon(1e-11));

  // upper boundary t = 1/(d+1): the maximally entangled output stays PSD
  const auto tb = transpose_depolarizing(4, 1.0 / 3.0);
  const DensityOperator out = tb.apply(max_entangled(2).with_dims(DimSpec{4}));
  CHECK(min_herm_eigenvalue(out.matrix) > -1e-10);

  CHECK_THROWS_AS(transpose_depolarizing(4, 0.5), ValidationError);
  CHECK_THROWS_AS(transpose_depolarizing(4, -1.5), ValidationError);

  // below -1/(D-1) the affine map is not positive on near-pure inputs, and
  // constructing the output state reports that
  const auto tneg = transpose_depolarizing(4, -0.9);
  CHECK_THROWS_AS(tneg.apply(DensityOperator::trusted(psi * psi.adjoint(), DimSpec{4})),
                  ValidationError);
}

TEST_CASE("replacer") {
  Rng rng(137);
  const DensityOperator sigma =
      DensityOperator::trusted(random_density_matrix(3, 2, rng), DimSpec{3});
  const auto rep = replacer(sigma, 2);
  CHECK(validate(rep).ok);
  for (int j = 0; j < 2; ++j) {
    CVector basis = CVector::Zero(2);
    basis(j) = 1;
    CHECK(max_abs_diff(apply(rep, pure_state_density(basis, DimSpec{2})).matrix, sigma.matrix) <
          1e-12);
  }

  CVector one = CVector::Zero(2);
  one(1) = 1;
  CVector zero = CVector::Zero(2);
  zero(0) = 1;
  const auto rep0 = replacer(pure_state_density(zero, DimSpec{2}), 2);
  CHECK(max_abs_diff(apply(rep0, pure_state_density(one, DimSpec{2})).matrix,
                     pure_state_density(zero, DimSpec{2}).matrix) < 1e-14);

  const DensityOperator out = apply_to_B(rep, max_entangled(2));
  CHECK(mutual_information(out) < 1e-10);
}

TEST_CASE("holevo form") {
  // single term: R = I/2 against the trivial POVM is the full replacement
  const DensityOperator half = DensityOperator::trusted(0.5 * identity_matrix(2), DimSpec{2});
  const auto total = holevo_eb({half}, {identity_matrix(2)});
  CHECK(validate(total).ok);
  Rng rng(139);
  const DensityOperator rho =
      DensityOperator::trusted(random_density_matrix(2, 2, rng), DimSpec{2});
  CHECK(max_abs_diff(apply(total, rho).matrix, half.matrix) < 1e-12);

  // measure-and-prepare in the computational basis
  CMatrix p0 = CMatrix::Zero(2, 2), p1 = CMatrix::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  const auto mp = holevo_eb({DensityOperator::trusted(p0, DimSpec{2}),
                             DensityOperator::trusted(p1, DimSpec{2})},
                            {p0, p1});
  const DensityOperator out = apply_to_B(mp, max_entangled(2));
  CMatrix cc = CMatrix::Zero(4, 4);
  cc(0, 0) = cc(3, 3) = 0.5;
  CHECK(max_abs_diff(out.matrix, cc) < 1e-12);
  CHECK(conditional_entropy(out) == doctest::Approx(0.0).epsilon(1e-10));

  // action matches sum_k R_k Tr(F_k rho) on random instances
  for (int trial = 0; trial < 10; ++trial) {
    const auto channel = random_holevo_channel(2, 3, rng);
    CHECK(validate(channel).ok);
    CHECK(is_ppt_channel(channel).status == Status::Yes);
  }

  CHECK_THROWS_AS(holevo_eb({half}, {0.5 * identity_matrix(2)}), ValidationError);
}
