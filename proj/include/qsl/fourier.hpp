#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qsl/sampler.hpp"
#include "qsl/spectral.hpp"

namespace qsl {

// Complex Fourier coefficients on the signed frequency lattice [-N, N]^m.
// Tensor index j in [0, d) per axis maps to frequency k = j for j <= N and
// k = j - d otherwise. Convention: F[x]_k = (1/d^m) sum_j x_j e^{-i theta_j . k},
// so Parseval reads ||x||^2 = d^m ||F[x]||^2.
struct Spectrum {
  Grid grid;
  std::vector<std::complex<double>> coeffs;  // row-major like Landscape.values
  std::string provenance;

  int freq_to_index(long k) const;              // one axis
  long flat_index(const std::vector<long>& k) const;
  std::vector<long> freq_at(long flat) const;   // inverse of flat_index
  std::complex<double> at(const std::vector<long>& k) const;
  double power() const;                          // sum |c|^2
};

// Transform core on raw complex tensors (separable, one axis at a time,
// fixed row-major summation order).
std::vector<std::complex<double>> dft_tensor(const std::vector<std::complex<double>>& x,
                                             const Grid& g);
std::vector<std::complex<double>> idft_tensor(const std::vector<std::complex<double>>& c,
                                              const Grid& g);

Spectrum dft(const Landscape& l);
// Inverse transform; checks the imaginary residue of the reconstructed values
// (<= tol) and returns a real landscape.
Landscape idft(const Spectrum& s, double imag_tol = 1e-8);

struct MeritReport {
  double p_s = 0.0;  // power on the product support
  double p_n = 0.0;  // power in the extra (off-support) modes
  std::optional<double> p_n_on_support;   // sum_{k in S} |c~ - c|^2, needs reference
  std::optional<double> p_n_off_support;  // alias of p_n when a reference is given
  std::optional<double> snr;              // absent when no noise detected
  bool no_noise_detected = false;
};

// Splits spectral power against the product support Prod_i S_i. Frequencies
// must be integers representable on the grid (else ValidationError).
MeritReport figures_of_merit(const Spectrum& s, const FrequencySupport& support,
                             const Spectrum* reference = nullptr);

// Predicted per-coefficient std of Re/Im of a shot-noise limited spectrum:
// sigma = sqrt(1 - ||x||^2 / d^m) / sqrt(2 n_s d^m)   (k != 0).
double shot_noise_sigma(const Landscape& l, long n_s);

// Fourier coefficients of <P_i> landscapes over a set of Pauli observables,
// flattened as (frequency, pauli) -> complex.
struct PauliCoeffVector {
  Grid grid;
  int n_qubits = 0;
  bool exhaustive = true;             // all 4^n Paulis
  std::vector<PauliString> paulis;
  Eigen::MatrixXcd coeffs;            // points x paulis

  std::complex<double> inner(const PauliCoeffVector& rhs) const;  // this^dag rhs
};

// Builds the coefficient vector by dense simulation (noise == nullptr gives
// the exact circuit). Exhaustive over all Paulis for n <= max_exhaustive
// qubits; above that, `sample_paulis` random non-identity Paulis are used and
// the result is flagged as an estimate.
PauliCoeffVector pauli_coefficient_vector(const ParamCircuit& c, const NoiseSpec* noise,
                                          const Grid& g, int max_exhaustive = 3,
                                          int sample_paulis = 64,
                                          std::uint64_t seed = 0);

// <F>_theta = (1/2^n) c_exact^dag c_noisy  (real within 1e-9, clipped).
double average_fidelity(const PauliCoeffVector& exact, const PauliCoeffVector& noisy);
// <P>_theta = (1/2^n) |c_noisy|^2.
double average_purity(const PauliCoeffVector& noisy);

struct BootstrapResult {
  int resamples = 0;
  double p_s_std = 0.0;
  double p_n_std = 0.0;
  std::optional<double> snr_std;
  std::vector<double> coeff_re_std;  // per flat frequency index
};

// Resamples the per-point shot records, recomputes spectrum and merits, and
// reports standard deviations across resamples. Deterministic under seed.
BootstrapResult bootstrap_error(const Landscape& l, const FrequencySupport& support,
                                int resamples, std::uint64_t seed);

}  // namespace qsl
