#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "qce/channels.hpp"
#include "qce/dilation.hpp"

namespace qce {

enum class Status { Yes, No, Inconclusive };

std::string to_string(Status s);

struct SearchTrace {
  int restarts = 0;
  int max_iterations = 0;
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
  double best_value = 0;
};

struct Certificate {
  std::optional<DensityOperator> witness_state;
  std::optional<double> violating_eigenvalue;
  std::optional<double> witness_value;
  std::optional<SearchTrace> search;
};

struct Verdict {
  Status status = Status::Inconclusive;
  std::string method;
  std::string detail;
  Certificate certificate;
  double tolerance = 0;
};

/// Classifier tolerances: closed-form decision paths use 1e-9, optimizer
/// paths 1e-6, bisection resolves parameters to 1e-6.
constexpr double kClosedFormTol = 1e-9;
constexpr double kOptimizerTol = 1e-6;
constexpr double kBisectionTol = 1e-6;

struct OptimizerConfig {
  int restarts = 32;
  int max_iterations = 500;
  std::uint64_t seed = 7;
  double tolerance = 1e-9;
  /// Caller asserts the channel is unitarily covariant, so the maximally
  /// entangled input decides membership exactly. Auto-enabled for channels
  /// tagged with a depolarizing family.
  bool covariant = false;
};

/// Choi partial transpose test: yes iff min eigenvalue >= -1e-9.
Verdict is_ppt_channel(const KrausChannel& channel);

/// Entanglement breaking. Exact (PPT of the Choi) when dim_in*dim_out <= 6;
/// otherwise NPT decides "no" and PPT is reported inconclusive.
Verdict is_eb(const KrausChannel& channel);

/// Mutual information breaking: Choi within trace distance 1e-9 of the
/// product of its marginals. Zero mutual information on the maximally
/// entangled input forces a product Choi I/d (x) sigma, i.e. a constant
/// channel, and constant channels give product outputs for every input —
/// so the product-Choi test characterizes the class.
Verdict is_mib(const KrausChannel& channel);

/// S(A|B~) of (id (x) N)(|phi+><phi+|): the covariant-shortcut quantity.
double bell_input_conditional_entropy(const KrausChannel& channel);

struct CoherentInfoResult {
  double value = 0;
  DensityOperator argmax_input;
  bool exact = false;  // covariant shortcut: value is the true maximum
  SearchTrace trace;
  std::string method;
};

/// max over pure bipartite inputs of -S(A|B~) of the output. Exact when the
/// covariant shortcut applies; otherwise a lower bound from multistart
/// direct search over Schmidt coefficients plus a unitary on the channel leg
/// (conditional entropy is invariant under unitaries on the untouched A leg).
CoherentInfoResult channel_coherent_info(const KrausChannel& channel,
                                         const OptimizerConfig& config = {});

/// Negative-conditional-entropy breaking across the id (x) N bipartition.
/// Decision routes, in order: PPT Choi (zero-capacity channels break negative
/// conditional entropy), covariant shortcut, optimizer search (which can only
/// certify violations; finding none yields inconclusive-certified).
Verdict is_nceb(const KrausChannel& channel, const OptimizerConfig& config = {});

/// Negative-conditional-entropy annihilating across an output partition.
/// Exact for the global/transpose depolarizing families via the isotropic
/// closed form; generic channels are searched over pure inputs (sufficient by
/// concavity of conditional entropy).
Verdict is_ncea(const KrausChannel& channel, const DimSpec& partition,
                const OptimizerConfig& config = {});
Verdict is_ncea(const TransposeDepolarizing& channel, const DimSpec& partition);

/// Sampled A-unitality check: N(I/d_A (x) rho_B) stays of that form for
/// `samples` random rho_B (trace distance 1e-9); "no" carries a counterexample.
Verdict is_a_unital(const KrausChannel& channel, const DimSpec& partition, int samples = 25,
                    std::uint64_t seed = 11);

/// Entropy S(p,d) of the d^2-dimensional isotropic state with weight p on the
/// maximally entangled state, and the derived internal conditional entropy.
double isotropic_entropy(double p, std::size_t d);
double isotropic_conditional_entropy(double p, std::size_t d);  // S(p,d) - log2 d

/// Boundary parameter of a monotone yes/no predicate over [lo, hi], located by
/// bisection to `tol`. The predicate is probed on a grid first; more than one
/// flip raises NonMonotoneError carrying the probe table.
double threshold(const std::function<bool(double)>& predicate, double lo, double hi,
                 double tol = kBisectionTol, int probe_points = 11);

/// Noise parameter above which depolarizing(d, .) stops transmitting coherent
/// information (Bell-input conditional entropy crosses zero).
double depolarizing_nceb_threshold(std::size_t d = 2);

/// ||J(n1) - J(n2)||_1 on normalized Choi states; lower-bounds the diamond
/// distance between the channels.
double choi_distance_lower_bound(const KrausChannel& n1, const KrausChannel& n2);

struct WitnessResult {
  bool detected = false;
  double w_lower_bound = 0;
  double coherent_info = 0;
  std::optional<DensityOperator> witness_input;
  std::optional<double> nearest_family_param;
};

/// Detects channels outside the breaking class via positive coherent
/// information; reports the Choi-distance lower bound to the nearest member of
/// the depolarizing reference family (square channels only).
WitnessResult non_nceb_witness(const KrausChannel& channel, const OptimizerConfig& config = {});

/// Largest keep-convention p for which the two-qubit 2-local depolarizing
/// channel N_p (x) N_p annihilates negative conditional entropy, from pure-
/// input minimization inside a bisection.
double two_local_ncea_threshold(const OptimizerConfig& config = {});

/// Minimum over pure inputs of the output internal conditional entropy
/// (the oracle behind the generic is_ncea route).
double min_internal_conditional_entropy(const KrausChannel& channel, const DimSpec& partition,
                                        const OptimizerConfig& config, DensityOperator* witness = nullptr,
                                        SearchTrace* trace = nullptr);

}  // namespace qce
