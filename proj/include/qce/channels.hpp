#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qce/states.hpp"

namespace qce {

/// Named parametric families. Carried through constructions that preserve the
/// family exactly (serial composition and Kraus-level mixing of depolarizing
/// channels), so classifiers can use closed-form results where they exist.
enum class ChannelFamily {
  Generic,
  Identity,
  Depolarizing,        // (1-p) rho + p I/d, "noise" convention
  DepolarizingKeep,    // p rho + (1-p) I/d,  "keep" convention
  GlobalDepolarizing,  // p rho + (1-p) I/D on a D = d*d system, keep convention
  Replacer,
  Holevo,
};

struct FamilyInfo {
  ChannelFamily family = ChannelFamily::Generic;
  double param = 0.0;       // p for the depolarizing families
  std::size_t sub_dim = 0;  // d of the d x d partition for GlobalDepolarizing

  bool is_depolarizing() const {
    return family == ChannelFamily::Depolarizing || family == ChannelFamily::DepolarizingKeep;
  }
  /// Mixing parameter translated to the noise convention, if meaningful.
  std::optional<double> noise_param() const;
};

/// Trace-preserving completely positive map in Kraus form.
/// Invariant: sum_i K_i^dag K_i = I within 1e-9 entrywise; at least one operator.
struct KrausChannel {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  std::vector<CMatrix> kraus;
  FamilyInfo family;
};

struct ValidationReport {
  bool ok = false;
  double violation = 0.0;  // max entrywise deviation of sum K^dag K from I
};

constexpr double kCompletenessTol = 1e-9;

/// Completeness check; never throws.
ValidationReport validate(const KrausChannel& channel);

/// Throws ValidationError if the channel fails validate().
void require_valid(const KrausChannel& channel);

DensityOperator apply(const KrausChannel& channel, const DensityOperator& rho);

/// (id_A x N) on a bipartite state; channel input dimension must equal d_B.
DensityOperator apply_to_B(const KrausChannel& channel, const DensityOperator& rho_ab);

/// Normalized Choi state (id x N)(|phi+><phi+|) on dim_in x dim_out.
struct ChoiState {
  DensityOperator state;
  std::string source;
};

ChoiState choi(const KrausChannel& channel);

/// n1 after n2; Kraus set is all products.
KrausChannel compose_serial(const KrausChannel& n1, const KrausChannel& n2);

/// n1 on the first leg, n2 on the second; Kraus set is all tensor products.
KrausChannel compose_parallel(const KrausChannel& n1, const KrausChannel& n2);

/// Convex mixture lambda n1 + (1-lambda) n2, realized exactly by the union of
/// sqrt(lambda)- and sqrt(1-lambda)-scaled Kraus sets.
KrausChannel mix(const KrausChannel& n1, const KrausChannel& n2, double lambda);

KrausChannel identity_channel(std::size_t d);
KrausChannel unitary_channel(const CMatrix& u);

/// (1-p) rho + p I/d. Pauli Kraus set for d=2, Weyl set for d>2.
KrausChannel depolarizing(std::size_t d, double p);

/// p rho + (1-p) I/d — same family, opposite parameter convention.
KrausChannel depolarizing_keep(std::size_t d, double p);

/// p rho + (1-p) I/D on a D = d*d system viewed as a d x d bipartition.
/// D must be a perfect square.
KrausChannel global_depolarizing(std::size_t D, double p);

/// Constant channel: every input maps to sigma.
KrausChannel replacer(const DensityOperator& sigma, std::size_t dim_in);

/// Measure-and-prepare channel rho -> sum_k R_k Tr(F_k rho).
/// R_k are states, F_k a POVM (PSD, summing to I within 1e-9).
KrausChannel holevo_eb(const std::vector<DensityOperator>& prepare_states,
                       const std::vector<CMatrix>& povm);

/// t rho^T + (1-t) I/D on a D = d*d system. Valid for t in
/// [-1/(d-1), 1/(d+1)]. Carried by its action only: the transpose is not
/// completely positive on its own, so there is no Kraus form to dilate and
/// Stinespring-based operations must reject this map.
struct TransposeDepolarizing {
  std::size_t dim = 0;      // D
  std::size_t sub_dim = 0;  // d with D = d*d
  double t = 0.0;

  DensityOperator apply(const DensityOperator& rho) const;
};

TransposeDepolarizing transpose_depolarizing(std::size_t D, double t);

/// Generalized Pauli (Weyl) operator X^a Z^b on dimension d.
CMatrix weyl_operator(std::size_t d, std::size_t a, std::size_t b);

}  // namespace qce
