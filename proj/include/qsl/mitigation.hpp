#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsl/fourier.hpp"
#include "qsl/sampler.hpp"
#include "qsl/spectral.hpp"

namespace qsl {

// Affine rescaling f_hat = A f + A' learned from near-Clifford training pairs.
struct CdrModel {
  double a = 1.0;
  double a_prime = 0.0;
  int training_size = 0;
  double residual = 0.0;   // mean absolute training error
  bool ls_fallback = false;  // least-squares used after IRLS non-convergence
};

enum class MitigationMethod { None, Filter, ThresholdHard, ThresholdSoft, RoundReconstruct };

MitigationMethod mitigation_method_from_string(const std::string& s);
std::string to_string(MitigationMethod m);

struct CdrConfig {
  bool enabled = false;
  int d_keep = 2;       // non-Clifford gates kept per training circuit
  int size = 32;        // training-set size
  double post_select_fraction = 1.0;  // keep largest-|f_C| fraction
  bool reuse_grid_cliffords = false;  // add grid points whose angles are Clifford
};

struct MitigationConfig {
  MitigationMethod method = MitigationMethod::None;
  double b = 3.0;  // threshold multiplier, T = b * median(|c|)
  CdrConfig cdr;
  std::uint64_t seed = 0;
};

// Named presets from the mitigation experiments: "ucc" (B = 3, D = 2) and
// "qaoa" (B = 10, D = 10 with post-selection).
MitigationConfig mitigation_preset(const std::string& name);

// Zeroes every coefficient whose frequency vector leaves the product support.
Spectrum filter_support(const Spectrum& s, const FrequencySupport& support);

// T = b * median(|c|) over all d^m coefficients (zeros included; even-count
// median takes the lower middle value). Hard: zero when |c| <= T. Soft:
// c * max(1 - T/|c|, 0).
Spectrum threshold(const Spectrum& s, double b, bool soft);
double threshold_value(const Spectrum& s, double b);

// Rounds the monomial-basis coefficients of a sampled spectrum to {0, +-1}
// on the lattice {-1, 0, 1}^m and zeroes the rest. Requires the
// perfect-reconstruction hypotheses (Clifford fixed gates, one +-1-multiplier
// gadget per parameter, stabiliser input, Pauli observable).
TrigForm round_reconstruct(const Spectrum& s, const ParamCircuit& c,
                           const PauliString& observable);

// (f_C exact, f~_C noisy) pairs from independent near-Clifford projections.
struct CdrPair {
  double f_exact = 0.0;
  double f_noisy = 0.0;
};

std::vector<CdrPair> cdr_training_set(const ParamCircuit& c, const NoiseSpec& noise,
                                      const Observable& obs, const std::vector<double>& theta,
                                      int d_keep, int size, std::uint64_t seed, long shots,
                                      double post_select_fraction = 1.0);

// L1 fit of f_exact ~ a f_noisy + a' by iteratively reweighted least squares.
CdrModel cdr_fit(const std::vector<CdrPair>& pairs);

struct Similarity {
  std::optional<double> cosine;  // absent when either vector has zero norm
  double euclidean = 0.0;
};

Similarity similarity(const Landscape& a, const Landscape& b);

struct CdrInputs {
  const ParamCircuit* circuit = nullptr;
  const NoiseSpec* noise = nullptr;
  const Observable* observable = nullptr;
  std::vector<double> theta;  // base point for training draws
  long shots = kExactShots;   // training shot budget (match the main run)
};

struct MitigationReport {
  std::string method;
  double b = 0.0;
  std::optional<double> threshold;
  std::optional<CdrModel> cdr;
  MeritReport merits_before;
  MeritReport merits_after;
  std::optional<Similarity> vs_exact_before;
  std::optional<Similarity> vs_exact_after;
};

struct MitigationResult {
  Landscape mitigated;
  MitigationReport report;
};

// Full pipeline: dft -> spectral step -> idft -> optional CDR rescale.
// `exact_reference` (when given) feeds the similarity metrics and the
// on/off-support merit split.
MitigationResult mitigate(const Landscape& noisy, const MitigationConfig& cfg,
                          const FrequencySupport& support,
                          const CdrInputs* cdr_inputs = nullptr,
                          const Landscape* exact_reference = nullptr);

}  // namespace qsl
