#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qsl/pauli.hpp"

namespace qsl {

// Size guards for dense simulation.
inline constexpr int kMaxStatevectorQubits = 14;
inline constexpr int kMaxDensityQubits = 8;

struct PureState {
  int n_qubits = 0;
  Eigen::VectorXcd amplitudes;

  static PureState zeros(int n_qubits);
  static PureState basis(int n_qubits, std::uint64_t bits);
  static PureState plus(int n_qubits);

  std::uint64_t dim() const { return std::uint64_t(1) << n_qubits; }
  double norm_error() const;               // | ||psi||^2 - 1 |
  void validate(double tol = 1e-10) const; // throws ValidationError
};

struct DensityMatrix {
  int n_qubits = 0;
  Eigen::MatrixXcd matrix;

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

  std::uint64_t dim() const { return std::uint64_t(1) << n_qubits; }
  // Hermiticity within tol, unit trace within tol, eigenvalues >= -eig_tol.
  void validate(double tol = 1e-10, double eig_tol = 1e-9) const;
};

// Apply a dense 2^k x 2^k unitary to the given target qubits. Bit j of the
// local index corresponds to targets[j]. Throws on non-unitary input,
// duplicate or out-of-range targets.
void apply_gate(PureState& state, const Eigen::MatrixXcd& unitary,
                const std::vector<int>& targets);
void apply_gate(DensityMatrix& rho, const Eigen::MatrixXcd& unitary,
                const std::vector<int>& targets);

// Same kernels without the unitarity check (used for Kraus operators).
void apply_matrix_unchecked(PureState& state, const Eigen::MatrixXcd& m,
                            const std::vector<int>& targets);

void apply_pauli(PureState& state, const PauliString& p);
// rho -> P rho and rho -> rho P (in place).
void apply_pauli_left(DensityMatrix& rho, const PauliString& p);
void apply_pauli_right(DensityMatrix& rho, const PauliString& p);
// rho -> P rho P^dagger for Hermitian P.
void conjugate_by_pauli(DensityMatrix& rho, const PauliString& p);

// exp(-i angle P / 2) acting on the state, P a Hermitian Pauli string.
void apply_gadget(PureState& state, const PauliString& p, double angle);
void apply_gadget(DensityMatrix& rho, const PauliString& p, double angle);

// Real part of <P>, with the imaginary residue checked (<= 1e-9) and the
// result clipped to [-1, 1] for Hermitian Pauli observables.
double expectation_pauli(const PureState& state, const PauliString& p);
double expectation_pauli(const DensityMatrix& rho, const PauliString& p);

// <psi| rho |psi>, clipped to [0, 1].
double fidelity(const DensityMatrix& rho, const PureState& target);

// tr(rho^2); assumes rho Hermitian (validate() checks that separately).
double purity(const DensityMatrix& rho);

}  // namespace qsl
