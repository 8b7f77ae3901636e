#include "qce/classify.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "nelder_mead.hpp"
#include "qce/random.hpp"

namespace qce {

std::string to_string(Status s) {
  switch (s) {
    case Status::Yes:
      return "yes";
    case Status::No:
      return "no";
    default:
      return "inconclusive";
  }
}

namespace {

constexpr double kPptTol = 1e-9;
constexpr double kProductChoiTol = 1e-9;
constexpr double kAUnitalTol = 1e-9;

bool family_is_covariant(const FamilyInfo& f) {
  // These families commute with unitary conjugation on their full input space,
  // so the maximally entangled input is decisive.
  switch (f.family) {
    case ChannelFamily::Identity:
    case ChannelFamily::Depolarizing:
    case ChannelFamily::DepolarizingKeep:
    case ChannelFamily::GlobalDepolarizing:
      return true;
    default:
      return false;
  }
}

double entropy_term(double p) { return p > 1e-14 ? -p * std::log2(p) : 0.0; }

}  // namespace

Verdict is_ppt_channel(const KrausChannel& channel) {
  require_valid(channel);
  const ChoiState j = choi(channel);
  const CMatrix pt = partial_transpose(j.state.matrix, j.state.dims, 1);
  const double min_ev = min_herm_eigenvalue(pt);

  Verdict v;
  v.method = "choi-partial-transpose";
  v.tolerance = kPptTol;
  v.certificate.violating_eigenvalue = min_ev;
  if (min_ev >= -kPptTol) {
    v.status = Status::Yes;
    v.detail = "partial transpose of the Choi state is positive semi-definite";
  } else {
    v.status = Status::No;
    v.detail = "partial transpose of the Choi state has a negative eigenvalue";
    v.certificate.witness_state = j.state;
  }
  return v;
}

Verdict is_eb(const KrausChannel& channel) {
  Verdict ppt = is_ppt_channel(channel);
  Verdict v;
  v.tolerance = kPptTol;
  v.certificate = ppt.certificate;
  const std::size_t product = channel.dim_in * channel.dim_out;
  if (product <= 6) {
    v.method = "choi-ppt (exact at dim_in*dim_out <= 6)";
    v.status = ppt.status;
    v.detail = ppt.status == Status::Yes
                   ? "Choi state is PPT, which is equivalent to separability here"
                   : "Choi state is NPT, hence entangled";
  } else {
    v.method = "choi-ppt (necessary condition only)";
    if (ppt.status == Status::No) {
      v.status = Status::No;
      v.detail = "Choi state is NPT, hence entangled";
    } else {
      v.status = Status::Inconclusive;
      v.detail = "Choi state is PPT, but PPT does not imply separability beyond "
                 "dim_in*dim_out = 6; bound entanglement cannot be excluded";
    }
  }
  return v;
}

Verdict is_mib(const KrausChannel& channel) {
  require_valid(channel);
  const ChoiState j = choi(channel);
  const CMatrix ja = partial_trace(j.state.matrix, j.state.dims, {0});
  const CMatrix jb = partial_trace(j.state.matrix, j.state.dims, {1});
  const double dist = trace_distance(j.state.matrix, kron(ja, jb));

  Verdict v;
  v.method = "product-choi";
  v.tolerance = kProductChoiTol;
  v.certificate.witness_value = dist;
  if (dist <= kProductChoiTol) {
    v.status = Status::Yes;
    v.detail = "Choi state is a product of its marginals: the channel is constant, "
               "so every extended output is a product state";
  } else {
    v.status = Status::No;
    v.detail = "Choi state carries correlations between input and output legs";
    v.certificate.witness_state = j.state;
  }
  return v;
}

double bell_input_conditional_entropy(const KrausChannel& channel) {
  const DensityOperator out = apply_to_B(channel, max_entangled(channel.dim_in));
  return conditional_entropy(out, 1);
}

// ---------------------------------------------------------------------------
// Pure-input searches
// ---------------------------------------------------------------------------

namespace {

// |phi> = sum_i sqrt(s_i) |i> (x) U|i> with s from squared weights and
// U = exp(iH) from a Hermitian parameter block. Covers every pure bipartite
// state up to a unitary on the A leg, which conditional entropy ignores.
CVector schmidt_unitary_state(const Eigen::VectorXd& x, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::VectorXd w = x.head(n).array().square();
  const double total = w.sum();
  if (total < 1e-12)
    w = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(d));
  else
    w /= total;

  CMatrix h = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) = x(n + i * n + i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const cxd val(x(n + i * n + j), x(n + j * n + i));
      h(i, j) = val;
      h(j, i) = std::conj(val);
    }
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CVector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lam = es.eigenvalues()(k);
    phases(k) = cxd(std::cos(lam), std::sin(lam));
  }
  const CMatrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

  CVector phi = CVector::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double amp = std::sqrt(w(i));
    if (amp == 0) continue;
    phi.segment(i * n, n) += amp * u.col(i);
  }
  phi.normalize();
  return phi;
}

CVector vector_from_params(const Eigen::VectorXd& x, std::size_t dim) {
  CVector psi(static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k)
    psi(static_cast<Eigen::Index>(k)) = cxd(x(static_cast<Eigen::Index>(2 * k)),
                                            x(static_cast<Eigen::Index>(2 * k + 1)));
  const double norm = psi.norm();
  if (norm < 1e-9) {
    psi.setZero();
    psi(0) = 1.0;
    return psi;
  }
  return psi / norm;
}

struct SearchOutcome {
  double best_value = 0;
  CVector best_state;
  SearchTrace trace;
};

SearchOutcome multistart_minimize(const std::function<double(const Eigen::VectorXd&)>& objective,
                                  const std::function<CVector(const Eigen::VectorXd&)>& to_state,
                                  const std::vector<Eigen::VectorXd>& deterministic_starts,
                                  std::size_t param_count, const OptimizerConfig& config) {
  std::size_t evals = 0;
  auto counted = [&](const Eigen::VectorXd& x) {
    ++evals;
    return objective(x);
  };

  Rng rng(config.seed);
  Eigen::VectorXd best_x;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < config.restarts; ++r) {
    Eigen::VectorXd x0;
    if (r < static_cast<int>(deterministic_starts.size())) {
      x0 = deterministic_starts[static_cast<std::size_t>(r)];
    } else {
      x0.resize(static_cast<Eigen::Index>(param_count));
      for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = rng.normal();
    }
    const auto result =
        detail::nelder_mead(counted, x0, 0.5, config.max_iterations, config.tolerance);
    if (result.value < best) {
      best = result.value;
      best_x = result.x;
    }
  }
  // polish from the incumbent with a tighter simplex
  const auto polished =
      detail::nelder_mead(counted, best_x, 0.05, config.max_iterations, config.tolerance);
  if (polished.value < best) {
    best = polished.value;
    best_x = polished.x;
  }

  SearchOutcome out;
  out.best_value = best;
  out.best_state = to_state(best_x);
  out.trace = SearchTrace{config.restarts, config.max_iterations, config.seed, evals, best};
  return out;
}

// Minimum of S(A|B~) over pure bipartite inputs of id (x) N.
SearchOutcome minimize_output_conditional_entropy(const KrausChannel& channel,
                                                  const OptimizerConfig& config) {
  const std::size_t d = channel.dim_in;
  const std::size_t params = d + d * d;

  auto to_state = [d](const Eigen::VectorXd& x) { return schmidt_unitary_state(x, d); };
  auto objective = [&channel, d, &to_state](const Eigen::VectorXd& x) {
    const CVector phi = to_state(x);
    const DensityOperator in =
        DensityOperator::trusted(phi * phi.adjoint(), DimSpec{d, d});
    return conditional_entropy(apply_to_B(channel, in), 1);
  };

  // maximally entangled and product starts, then seeded random restarts
  std::vector<Eigen::VectorXd> starts;
  Eigen::VectorXd bell = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(params));
  bell.head(static_cast<Eigen::Index>(d)).setOnes();
  starts.push_back(bell);
  Eigen::VectorXd product = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(params));
  product(0) = 1.0;
  starts.push_back(product);

  return multistart_minimize(objective, to_state, starts, params, config);
}

}  // namespace

double min_internal_conditional_entropy(const KrausChannel& channel, const DimSpec& partition,
                                        const OptimizerConfig& config, DensityOperator* witness,
                                        SearchTrace* trace) {
  require_valid(channel);
  if (!partition.is_bipartite())
    throw DimensionError("output partition must name exactly two subsystems");
  partition.check_matches(channel.dim_out);
  const std::size_t d_in = channel.dim_in;
  const std::size_t params = 2 * d_in;

  auto to_state = [d_in](const Eigen::VectorXd& x) { return vector_from_params(x, d_in); };
  auto objective = [&](const Eigen::VectorXd& x) {
    const CVector psi = to_state(x);
    const DensityOperator in = DensityOperator::trusted(psi * psi.adjoint(), DimSpec{d_in});
    return conditional_entropy(apply(channel, in).with_dims(partition), 1);
  };

  std::vector<Eigen::VectorXd> starts;
  Eigen::VectorXd basis = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(params));
  basis(0) = 1.0;
  // maximally entangled start when the input space itself is square-partitioned
  const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d_in))));
  if (root >= 2 && root * root == d_in) {
    const CVector me = max_entangled_vector(root);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(params));
    for (std::size_t k = 0; k < d_in; ++k) {
      x(static_cast<Eigen::Index>(2 * k)) = me(static_cast<Eigen::Index>(k)).real();
      x(static_cast<Eigen::Index>(2 * k + 1)) = me(static_cast<Eigen::Index>(k)).imag();
    }
    starts.push_back(x);
  }
  starts.push_back(basis);

  const auto outcome = multistart_minimize(objective, to_state, starts, params, config);
  if (witness) {
    const CVector psi = outcome.best_state;
    *witness = DensityOperator::trusted(psi * psi.adjoint(), DimSpec{d_in});
  }
  if (trace) *trace = outcome.trace;
  return outcome.best_value;
}

CoherentInfoResult channel_coherent_info(const KrausChannel& channel,
                                         const OptimizerConfig& config) {
  require_valid(channel);
  CoherentInfoResult result;
  if (config.covariant || family_is_covariant(channel.family)) {
    const double s_bell = bell_input_conditional_entropy(channel);
    result.exact = true;
    result.method = "covariant-bell";
    result.value = std::max(0.0, -s_bell);
    if (-s_bell > 0) {
      result.argmax_input = max_entangled(channel.dim_in);
    } else {
      // negative coherent information everywhere entangled; a product input
      // realizes the maximum value of zero
      CVector basis = CVector::Zero(static_cast<Eigen::Index>(channel.dim_in * channel.dim_in));
      basis(0) = 1.0;
      result.argmax_input = pure_state_density(basis, DimSpec{channel.dim_in, channel.dim_in});
    }
    result.trace = SearchTrace{0, 0, config.seed, 1, s_bell};
    return result;
  }

  const auto outcome = minimize_output_conditional_entropy(channel, config);
  result.exact = false;  // lower bound only
  result.method = "multistart-simplex";
  // pure product inputs give exactly zero, so zero always lower-bounds the max
  result.value = std::max(0.0, -outcome.best_value);
  const CVector phi = outcome.best_state;
  result.argmax_input =
      DensityOperator::trusted(phi * phi.adjoint(), DimSpec{channel.dim_in, channel.dim_in});
  result.trace = outcome.trace;
  return result;
}

Verdict is_nceb(const KrausChannel& channel, const OptimizerConfig& config) {
  require_valid(channel);

  // Zero-capacity route: a PPT Choi state certifies membership in any dimension.
  const Verdict ppt = is_ppt_channel(channel);
  if (ppt.status == Status::Yes) {
    Verdict v;
    v.status = Status::Yes;
    v.method = "choi-ppt";
    v.detail = "PPT channels have zero quantum capacity, hence zero coherent information, "
               "and cannot output negative conditional entropy";
    v.tolerance = kPptTol;
    v.certificate.violating_eigenvalue = ppt.certificate.violating_eigenvalue;
    return v;
  }

  if (config.covariant || family_is_covariant(channel.family)) {
    const double s_bell = bell_input_conditional_entropy(channel);
    Verdict v;
    v.method = "covariant-bell";
    v.tolerance = kClosedFormTol;
    v.certificate.witness_state = max_entangled(channel.dim_in);
    v.certificate.witness_value = s_bell;
    if (s_bell < -kClosedFormTol) {
      v.status = Status::No;
      v.detail = "maximally entangled input keeps negative conditional entropy";
    } else {
      v.status = Status::Yes;
      v.detail = "covariant channel: the maximally entangled input is decisive and its "
                 "output conditional entropy is non-negative";
    }
    return v;
  }

  const auto outcome = minimize_output_conditional_entropy(channel, config);
  Verdict v;
  v.method = "multistart-simplex";
  v.tolerance = kOptimizerTol;
  v.certificate.search = outcome.trace;
  if (outcome.best_value < -kOptimizerTol) {
    v.status = Status::No;
    const CVector phi = outcome.best_state;
    v.certificate.witness_state =
        DensityOperator::trusted(phi * phi.adjoint(), DimSpec{channel.dim_in, channel.dim_in});
    v.certificate.witness_value = outcome.best_value;
    v.detail = "found a pure input whose output has negative conditional entropy";
  } else {
    v.status = Status::Inconclusive;
    v.detail = "certified-up-to-budget: no violating pure input found; the search can only "
               "certify violations, never membership";
  }
  return v;
}

double isotropic_entropy(double p, std::size_t d) {
  const double dd = static_cast<double>(d * d);
  const double top = (1.0 + (dd - 1.0) * p) / dd;
  const double rest = (1.0 - p) / dd;
  if (top < -1e-12 || rest < -1e-12)
    throw ValidationError("isotropic weight outside the state range");
  return entropy_term(std::max(top, 0.0)) + (dd - 1.0) * entropy_term(std::max(rest, 0.0));
}

double isotropic_conditional_entropy(double p, std::size_t d) {
  return isotropic_entropy(p, d) - std::log2(static_cast<double>(d));
}

namespace {

Verdict ncea_from_isotropic(double p, std::size_t d, const DimSpec& partition) {
  if (!(partition.is_bipartite() && partition[0] == d && partition[1] == d))
    throw DimensionError("partition does not match the d x d structure of this family");
  const double s = isotropic_conditional_entropy(p, d);
  Verdict v;
  v.method = "isotropic-closed-form";
  v.tolerance = kClosedFormTol;
  v.certificate.witness_state = max_entangled(d);
  v.certificate.witness_value = s;
  if (s >= -kClosedFormTol) {
    v.status = Status::Yes;
    v.detail = "the maximally entangled input is the worst case for this family and its "
               "output conditional entropy is non-negative";
  } else {
    v.status = Status::No;
    v.detail = "maximally entangled input keeps negative internal conditional entropy";
  }
  return v;
}

}  // namespace

Verdict is_ncea(const KrausChannel& channel, const DimSpec& partition,
                const OptimizerConfig& config) {
  require_valid(channel);
  if (!partition.is_bipartite())
    throw DimensionError("output partition must name exactly two subsystems");
  partition.check_matches(channel.dim_out);

  if (channel.family.family == ChannelFamily::GlobalDepolarizing)
    return ncea_from_isotropic(channel.family.param, channel.family.sub_dim, partition);

  DensityOperator witness;
  SearchTrace trace;
  const double best = min_internal_conditional_entropy(channel, partition, config, &witness, &trace);
  Verdict v;
  v.method = "multistart-simplex";
  v.tolerance = kOptimizerTol;
  v.certificate.search = trace;
  if (best < -kOptimizerTol) {
    v.status = Status::No;
    v.certificate.witness_state = witness;
    v.certificate.witness_value = best;
    v.detail = "found a pure input whose output has negative internal conditional entropy";
  } else {
    v.status = Status::Inconclusive;
    v.detail = "certified-up-to-budget: no violating pure input found (pure inputs suffice "
               "by concavity of conditional entropy)";
  }
  return v;
}

Verdict is_ncea(const TransposeDepolarizing& channel, const DimSpec& partition) {
  const double floor_ev = (1.0 + (static_cast<double>(channel.dim) - 1.0) * channel.t) /
                          static_cast<double>(channel.dim);
  if (floor_ev < -1e-12)
    throw ValidationError("outputs are not positive semi-definite for t < -1/(D-1); "
                          "the annihilation question is ill-posed there");
  // Pure inputs transpose to pure inputs, so the output spectrum coincides
  // with the global depolarizing family at p = t.
  return ncea_from_isotropic(channel.t, channel.sub_dim, partition);
}

Verdict is_a_unital(const KrausChannel& channel, const DimSpec& partition, int samples,
                    std::uint64_t seed) {
  require_valid(channel);
  if (!partition.is_bipartite())
    throw DimensionError("partition must name exactly two subsystems");
  partition.check_matches(channel.dim_in);
  if (channel.dim_in != channel.dim_out)
    throw DimensionError("A-unitality is defined for square channels");

  const std::size_t da = partition[0];
  const std::size_t db = partition[1];
  const CMatrix ia = identity_matrix(da) / static_cast<double>(da);

  Rng rng(seed);
  Verdict v;
  v.method = "sampled-product-inputs";
  v.tolerance = kAUnitalTol;
  for (int i = 0; i < samples; ++i) {
    const CMatrix rho_b = random_density_matrix(db, db, rng);
    const DensityOperator input =
        DensityOperator::trusted(kron(ia, rho_b), DimSpec{da, db});
    const DensityOperator output = apply(channel, input).with_dims(partition);
    const CMatrix out_b = partial_trace(output.matrix, partition, {1});
    const double dist = trace_distance(output.matrix, kron(ia, out_b));
    if (dist > kAUnitalTol) {
      v.status = Status::No;
      v.detail = "found rho_B whose image does not keep the A marginal maximally mixed";
      v.certificate.witness_state = input;
      v.certificate.witness_value = dist;
      return v;
    }
  }
  v.status = Status::Yes;
  v.detail = "yes-up-to-samples: " + std::to_string(samples) +
             " random product inputs preserved the maximally mixed A marginal";
  v.certificate.search = SearchTrace{samples, 0, seed, static_cast<std::size_t>(samples), 0.0};
  return v;
}

double threshold(const std::function<bool(double)>& predicate, double lo, double hi, double tol,
                 int probe_points) {
  if (!(hi > lo)) throw ValidationError("threshold needs hi > lo");
  if (probe_points < 2) probe_points = 2;

  std::vector<std::pair<double, bool>> table;
  table.reserve(static_cast<std::size_t>(probe_points));
  for (int k = 0; k < probe_points; ++k) {
    const double x = lo + (hi - lo) * static_cast<double>(k) / (probe_points - 1);
    table.emplace_back(x, predicate(x));
  }
  int flips = 0;
  std::size_t flip_at = 0;
  for (std::size_t k = 0; k + 1 < table.size(); ++k)
    if (table[k].second != table[k + 1].second) {
      ++flips;
      flip_at = k;
    }
  if (flips != 1)
    throw NonMonotoneError(flips == 0 ? "predicate does not change over the probe grid"
                                      : "predicate changes more than once over the probe grid",
                           table);

  double a = table[flip_at].first;
  double b = table[flip_at + 1].first;
  bool va = table[flip_at].second;
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (predicate(mid) == va)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

double depolarizing_nceb_threshold(std::size_t d) {
  return threshold(
      [d](double p) {
        return bell_input_conditional_entropy(depolarizing(d, p)) >= -kClosedFormTol;
      },
      0.0, 1.0);
}

double choi_distance_lower_bound(const KrausChannel& n1, const KrausChannel& n2) {
  if (n1.dim_in != n2.dim_in || n1.dim_out != n2.dim_out)
    throw DimensionError("Choi distance requires equal channel dimensions");
  return trace_norm(choi(n1).state.matrix - choi(n2).state.matrix);
}

WitnessResult non_nceb_witness(const KrausChannel& channel, const OptimizerConfig& config) {
  WitnessResult result;
  const auto ci = channel_coherent_info(channel, config);
  result.coherent_info = ci.value;
  if (ci.value <= kOptimizerTol) {
    result.detected = false;
    result.w_lower_bound = 0.0;
    return result;
  }
  result.detected = true;
  result.witness_input = ci.argmax_input;

  if (channel.dim_in == channel.dim_out) {
    // Nearest breaking member of the depolarizing reference family, by golden
    // section on the convex Choi distance over the breaking range [p*, 1].
    const double p_star = depolarizing_nceb_threshold(channel.dim_in);
    auto g = [&](double p) {
      return choi_distance_lower_bound(channel, depolarizing(channel.dim_in, p));
    };
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = p_star, b = 1.0;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    while (b - a > 1e-8) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - phi * (b - a);
        f1 = g(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + phi * (b - a);
        f2 = g(x2);
      }
    }
    const double p_best = 0.5 * (a + b);
    result.nearest_family_param = p_best;
    result.w_lower_bound = g(p_best);
  } else {
    // no square reference family to measure against; detection stands on the
    // positive coherent information alone
    result.w_lower_bound = 0.0;
  }
  return result;
}

double two_local_ncea_threshold(const OptimizerConfig& config) {
  const DimSpec partition{2, 2};
  auto predicate = [&](double keep_p) {
    const KrausChannel local = depolarizing_keep(2, keep_p);
    const KrausChannel two_local = compose_parallel(local, local);
    return min_internal_conditional_entropy(two_local, partition, config) >= -kOptimizerTol;
  };
  return threshold(predicate, 0.0, 1.0);
}

}  // namespace qce
