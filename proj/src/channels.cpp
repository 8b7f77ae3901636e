#include "qce/channels.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

namespace qce {

std::optional<double> FamilyInfo::noise_param() const {
  switch (family) {
    case ChannelFamily::Depolarizing:
      return param;
    case ChannelFamily::DepolarizingKeep:
      return 1.0 - param;
    default:
      return std::nullopt;
  }
}

ValidationReport validate(const KrausChannel& channel) {
  ValidationReport report;
  if (channel.kraus.empty() || channel.dim_in == 0 || channel.dim_out == 0) {
    report.violation = 1.0;
    return report;
  }
  for (const CMatrix& k : channel.kraus)
    if (k.rows() != static_cast<Eigen::Index>(channel.dim_out) ||
        k.cols() != static_cast<Eigen::Index>(channel.dim_in) || !all_finite(k)) {
      report.violation = std::numeric_limits<double>::infinity();
      return report;
    }
  CMatrix sum = CMatrix::Zero(static_cast<Eigen::Index>(channel.dim_in),
                              static_cast<Eigen::Index>(channel.dim_in));
  for (const CMatrix& k : channel.kraus) sum += k.adjoint() * k;
  report.violation = (sum - identity_matrix(channel.dim_in)).cwiseAbs().maxCoeff();
  report.ok = report.violation <= kCompletenessTol;
  return report;
}

void require_valid(const KrausChannel& channel) {
  const auto report = validate(channel);
  if (!report.ok)
    throw ValidationError("Kraus completeness violated (deviation " +
                          std::to_string(report.violation) + ")");
}

DensityOperator apply(const KrausChannel& channel, const DensityOperator& rho) {
  if (rho.dim() != channel.dim_in)
    throw DimensionError("channel input dimension " + std::to_string(channel.dim_in) +
                         " does not match state dimension " + std::to_string(rho.dim()));
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(channel.dim_out),
                              static_cast<Eigen::Index>(channel.dim_out));
  for (const CMatrix& k : channel.kraus) out += k * rho.matrix * k.adjoint();
  return DensityOperator::trusted(std::move(out), DimSpec{channel.dim_out});
}

DensityOperator apply_to_B(const KrausChannel& channel, const DensityOperator& rho_ab) {
  if (!rho_ab.dims.is_bipartite()) throw DimensionError("apply_to_B needs a bipartite state");
  const std::size_t da = rho_ab.dims[0];
  const std::size_t db = rho_ab.dims[1];
  if (db != channel.dim_in)
    throw DimensionError("channel input dimension does not match the B subsystem");

  const CMatrix ia = identity_matrix(da);
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(da * channel.dim_out),
                              static_cast<Eigen::Index>(da * channel.dim_out));
  for (const CMatrix& k : channel.kraus) {
    const CMatrix lifted = kron(ia, k);
    out += lifted * rho_ab.matrix * lifted.adjoint();
  }
  return DensityOperator::trusted(std::move(out), DimSpec{da, channel.dim_out});
}

ChoiState choi(const KrausChannel& channel) {
  const DensityOperator phi = max_entangled(channel.dim_in);
  ChoiState j;
  j.state = apply_to_B(channel, phi);
  j.source = "kraus[" + std::to_string(channel.kraus.size()) + "] " +
             std::to_string(channel.dim_in) + "->" + std::to_string(channel.dim_out);
  return j;
}

namespace {

// Serial composition and Kraus-level mixing stay inside the depolarizing
// families, so the family tag can be propagated exactly:
//   noise convention: p_eff = p + q - p q;  keep convention: p_eff = p q;
//   mixture (either convention): p_eff = lambda p + (1 - lambda) q.
FamilyInfo composed_family(const FamilyInfo& f1, const FamilyInfo& f2) {
  if (f1.family != f2.family) {
    // identity composed with anything preserves the other family
    if (f1.family == ChannelFamily::Identity) return f2;
    if (f2.family == ChannelFamily::Identity) return f1;
    return {};
  }
  FamilyInfo out;
  switch (f1.family) {
    case ChannelFamily::Identity:
      return f1;
    case ChannelFamily::Depolarizing:
      out = f1;
      out.param = f1.param + f2.param - f1.param * f2.param;
      return out;
    case ChannelFamily::DepolarizingKeep:
      out = f1;
      out.param = f1.param * f2.param;
      return out;
    case ChannelFamily::GlobalDepolarizing:
      if (f1.sub_dim != f2.sub_dim) return {};
      out = f1;
      out.param = f1.param * f2.param;
      return out;
    case ChannelFamily::Replacer:
      return f1;  // the later replacer wins; caller passes n1 as the later one
    default:
      return {};
  }
}

FamilyInfo mixed_family(const FamilyInfo& f1, const FamilyInfo& f2, double lambda) {
  if (f1.family != f2.family) return {};
  if (!f1.is_depolarizing() && f1.family != ChannelFamily::GlobalDepolarizing) return {};
  if (f1.family == ChannelFamily::GlobalDepolarizing && f1.sub_dim != f2.sub_dim) return {};
  FamilyInfo out = f1;
  out.param = lambda * f1.param + (1 - lambda) * f2.param;
  return out;
}

}  // namespace

KrausChannel compose_serial(const KrausChannel& n1, const KrausChannel& n2) {
  if (n2.dim_out != n1.dim_in)
    throw DimensionError("serial composition: inner output dimension " +
                         std::to_string(n2.dim_out) + " != outer input dimension " +
                         std::to_string(n1.dim_in));
  KrausChannel out;
  out.dim_in = n2.dim_in;
  out.dim_out = n1.dim_out;
  out.kraus.reserve(n1.kraus.size() * n2.kraus.size());
  for (const CMatrix& a : n1.kraus)
    for (const CMatrix& b : n2.kraus) out.kraus.push_back(a * b);
  out.family = composed_family(n1.family, n2.family);
  return out;
}

KrausChannel compose_parallel(const KrausChannel& n1, const KrausChannel& n2) {
  KrausChannel out;
  out.dim_in = n1.dim_in * n2.dim_in;
  out.dim_out = n1.dim_out * n2.dim_out;
  out.kraus.reserve(n1.kraus.size() * n2.kraus.size());
  for (const CMatrix& a : n1.kraus)
    for (const CMatrix& b : n2.kraus) out.kraus.push_back(kron(a, b));
  return out;
}

KrausChannel mix(const KrausChannel& n1, const KrausChannel& n2, double lambda) {
  if (n1.dim_in != n2.dim_in || n1.dim_out != n2.dim_out)
    throw DimensionError("mixture requires equal channel dimensions");
  if (lambda < 0 || lambda > 1) throw ValidationError("mixture weight must lie in [0, 1]");
  KrausChannel out;
  out.dim_in = n1.dim_in;
  out.dim_out = n1.dim_out;
  const double s1 = std::sqrt(lambda), s2 = std::sqrt(1 - lambda);
  for (const CMatrix& a : n1.kraus) out.kraus.push_back(s1 * a);
  for (const CMatrix& b : n2.kraus) out.kraus.push_back(s2 * b);
  out.family = mixed_family(n1.family, n2.family, lambda);
  return out;
}

KrausChannel identity_channel(std::size_t d) {
  KrausChannel c;
  c.dim_in = c.dim_out = d;
  c.kraus.push_back(identity_matrix(d));
  c.family.family = ChannelFamily::Identity;
  return c;
}

KrausChannel unitary_channel(const CMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitary channel needs a square matrix");
  const double defect = (u.adjoint() * u - identity_matrix(static_cast<std::size_t>(u.rows())))
                            .cwiseAbs()
                            .maxCoeff();
  if (defect > 1e-9) throw ValidationError("matrix is not unitary");
  KrausChannel c;
  c.dim_in = c.dim_out = static_cast<std::size_t>(u.rows());
  c.kraus.push_back(u);
  return c;
}

CMatrix weyl_operator(std::size_t d, std::size_t a, std::size_t b) {
  CMatrix w = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const double theta = 2.0 * M_PI / static_cast<double>(d);
  for (std::size_t m = 0; m < d; ++m) {
    // X^a Z^b |m> = omega^(b m) |m + a mod d>
    const double phase = theta * static_cast<double>(b * m);
    w(static_cast<Eigen::Index>((m + a) % d), static_cast<Eigen::Index>(m)) =
        cxd(std::cos(phase), std::sin(phase));
  }
  return w;
}

KrausChannel depolarizing(std::size_t d, double p) {
  if (d < 2) throw ValidationError("depolarizing channel needs d >= 2");
  if (p < 0 || p > 1) throw ValidationError("mixing parameter must lie in [0, 1]");
  KrausChannel c;
  c.dim_in = c.dim_out = d;
  if (d == 2) {
    c.kraus.push_back(std::sqrt(1.0 - 0.75 * p) * identity_matrix(2));
    c.kraus.push_back(std::sqrt(0.25 * p) * pauli_x());
    c.kraus.push_back(std::sqrt(0.25 * p) * pauli_y());
    c.kraus.push_back(std::sqrt(0.25 * p) * pauli_z());
  } else {
    const double dd = static_cast<double>(d * d);
    c.kraus.push_back(std::sqrt(1.0 - p + p / dd) * identity_matrix(d));
    const double w = std::sqrt(p / dd);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        if (a == 0 && b == 0) continue;
        c.kraus.push_back(w * weyl_operator(d, a, b));
      }
  }
  c.family = {ChannelFamily::Depolarizing, p, 0};
  return c;
}

KrausChannel depolarizing_keep(std::size_t d, double p) {
  KrausChannel c = depolarizing(d, 1.0 - p);
  c.family = {ChannelFamily::DepolarizingKeep, p, 0};
  return c;
}

KrausChannel global_depolarizing(std::size_t D, double p) {
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(D))));
  if (d < 2 || d * d != D)
    throw ValidationError("global depolarizing dimension must be a perfect square >= 4");
  if (p < 0 || p > 1) throw ValidationError("mixing parameter must lie in [0, 1]");
  KrausChannel c;
  c.dim_in = c.dim_out = D;
  // {sqrt(p) I} plus all D^2 Weyl operators at weight sqrt(1-p)/D; the Weyl
  // twirl realizes the I/D replacement and completeness sums to p I + (1-p) I.
  c.kraus.push_back(std::sqrt(p) * identity_matrix(D));
  const double w = std::sqrt(1.0 - p) / static_cast<double>(D);
  for (std::size_t a = 0; a < D; ++a)
    for (std::size_t b = 0; b < D; ++b) c.kraus.push_back(w * weyl_operator(D, a, b));
  c.family = {ChannelFamily::GlobalDepolarizing, p, d};
  return c;
}

KrausChannel replacer(const DensityOperator& sigma, std::size_t dim_in) {
  if (dim_in == 0) throw DimensionError("replacer input dimension must be positive");
  // sigma = sum_a s_a |u_a><u_a|  =>  Kraus {sqrt(s_a) |u_a><j|} over all inputs j.
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sigma.matrix);
  KrausChannel c;
  c.dim_in = dim_in;
  c.dim_out = sigma.dim();
  for (Eigen::Index a = 0; a < solver.eigenvalues().size(); ++a) {
    const double s = solver.eigenvalues()(a);
    if (s < 1e-14) continue;
    const CVector u = solver.eigenvectors().col(a);
    for (std::size_t j = 0; j < dim_in; ++j) {
      CMatrix k = CMatrix::Zero(static_cast<Eigen::Index>(c.dim_out),
                                static_cast<Eigen::Index>(dim_in));
      k.col(static_cast<Eigen::Index>(j)) = std::sqrt(s) * u;
      c.kraus.push_back(std::move(k));
    }
  }
  c.family.family = ChannelFamily::Replacer;
  return c;
}

KrausChannel holevo_eb(const std::vector<DensityOperator>& prepare_states,
                       const std::vector<CMatrix>& povm) {
  if (prepare_states.empty() || prepare_states.size() != povm.size())
    throw ValidationError("Holevo form needs matching, non-empty state and POVM lists");
  const std::size_t dim_out = prepare_states.front().dim();
  const std::size_t dim_in = static_cast<std::size_t>(povm.front().rows());

  CMatrix povm_sum = CMatrix::Zero(static_cast<Eigen::Index>(dim_in),
                                   static_cast<Eigen::Index>(dim_in));
  for (const CMatrix& f : povm) {
    if (f.rows() != f.cols() || static_cast<std::size_t>(f.rows()) != dim_in)
      throw DimensionError("POVM elements must be square and equally sized");
    if (hermiticity_defect(f) > 1e-10) throw ValidationError("POVM element not Hermitian");
    if (min_herm_eigenvalue(f) < -1e-10)
      throw ValidationError("POVM element not positive semi-definite");
    povm_sum += f;
  }
  const double defect = (povm_sum - identity_matrix(dim_in)).cwiseAbs().maxCoeff();
  if (defect > kCompletenessTol)
    throw ValidationError("POVM completeness violated (deviation " + std::to_string(defect) + ")");

  KrausChannel c;
  c.dim_in = dim_in;
  c.dim_out = dim_out;
  for (std::size_t k = 0; k < povm.size(); ++k) {
    if (prepare_states[k].dim() != dim_out)
      throw DimensionError("prepared states must share one output dimension");
    Eigen::SelfAdjointEigenSolver<CMatrix> rs(prepare_states[k].matrix);
    Eigen::SelfAdjointEigenSolver<CMatrix> fs(0.5 * (povm[k] + povm[k].adjoint()));
    for (Eigen::Index a = 0; a < rs.eigenvalues().size(); ++a) {
      const double r = rs.eigenvalues()(a);
      if (r < 1e-14) continue;
      for (Eigen::Index b = 0; b < fs.eigenvalues().size(); ++b) {
        const double f = fs.eigenvalues()(b);
        if (f < 1e-14) continue;
        c.kraus.push_back(std::sqrt(r * f) * rs.eigenvectors().col(a) *
                          fs.eigenvectors().col(b).adjoint());
      }
    }
  }
  c.family.family = ChannelFamily::Holevo;
  return c;
}

TransposeDepolarizing transpose_depolarizing(std::size_t D, double t) {
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(D))));
  if (d < 2 || d * d != D)
    throw ValidationError("transpose depolarizing dimension must be a perfect square >= 4");
  const double lo = -1.0 / (static_cast<double>(d) - 1.0);
  const double hi = 1.0 / (static_cast<double>(d) + 1.0);
  if (t < lo - 1e-12 || t > hi + 1e-12)
    throw ValidationError("t outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return TransposeDepolarizing{D, d, t};
}

DensityOperator TransposeDepolarizing::apply(const DensityOperator& rho) const {
  if (rho.dim() != dim) throw DimensionError("transpose depolarizing dimension mismatch");
  CMatrix out = t * rho.matrix.transpose() +
                ((1.0 - t) / static_cast<double>(dim)) * identity_matrix(dim);
  // Not trusted: sufficiently negative t can push near-pure inputs outside PSD.
  return DensityOperator::make(std::move(out), DimSpec{sub_dim, sub_dim});
}

}  // namespace qce
