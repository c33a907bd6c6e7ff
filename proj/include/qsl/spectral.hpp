#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qsl/circuit.hpp"
#include "qsl/pauli.hpp"
#include "qsl/state.hpp"

namespace qsl {

// Quasiprobability weights of the Z-rotation channel over {I, Z, S}
// conjugations: Z(theta) rho Z(theta)^dag = p_i rho + p_z ZrhoZ + p_s SrhoS^dag.
struct ZQuasiprob {
  double p_i = 0.0;
  double p_z = 0.0;
  double p_s = 0.0;
};

ZQuasiprob z_rotation_quasiprob(double theta);

// The three parameter-independent superoperators of a Pauli-gadget channel:
// U(theta) = C_0 + e^{i theta} C_{+1} + e^{-i theta} C_{-1}, each a weighted
// combination of the unitary conjugations U(0), U(pi), U(pi/2).
struct ProcessModeTerm {
  std::complex<double> coeff;
  enum class Base { U0, UPi, UPiHalf } base;
};

struct ProcessModeTriple {
  PauliString generator;
  std::array<std::vector<ProcessModeTerm>, 3> modes;  // [C_0, C_{+1}, C_{-1}]

  // Dense superoperator of mode k in {0 -> C_0, 1 -> C_{+1}, 2 -> C_{-1}}
  // (column-stacking convention; register size taken from the generator).
  Eigen::MatrixXcd mode_superoperator(int which) const;
  // Linear (not necessarily CP) action of a mode on a density matrix.
  DensityMatrix apply_mode(int which, const DensityMatrix& rho) const;
};

ProcessModeTriple process_modes(const PauliString& gadget_generator);

// vec(U rho U^dag) = (conj(U) ⊗ U) vec(rho).
Eigen::MatrixXcd unitary_channel_superoperator(const Eigen::MatrixXcd& u);
// Superoperator of the gadget channel exp(-i theta P/2) . exp(+i theta P/2).
Eigen::MatrixXcd gadget_channel_superoperator(const PauliString& p, double theta);

// --- frequency supports ------------------------------------------------------

struct FrequencySupport {
  // Sorted, deduplicated reachable frequencies per parameter; always contains
  // 0 and is symmetric under negation.
  std::vector<std::vector<double>> per_param;

  std::size_t product_size() const;
  // Integer frequencies per parameter. Throws ValidationError when any
  // frequency is not an integer within tol (incommensurate with a 2pi grid).
  std::vector<std::vector<long>> integer_per_param(double tol = 1e-9) const;
  double max_abs(int param) const;
  bool contains(const std::vector<long>& k, double tol = 1e-9) const;
};

// Support lattice from circuit multipliers: S_i = { a . k : k in {0,+-1}^{r_i} }.
// With an observable, only gadgets inside its lightcone contribute.
FrequencySupport frequency_support(const ParamCircuit& c,
                                   const Observable* obs = nullptr);

// Frequencies as eigenvalue differences { l_z - l_y } of a Hermitian generator,
// deduplicated with tolerance. Oracle route for frequency_support.
std::vector<double> eigenvalue_difference_spectrum(const Eigen::MatrixXcd& h,
                                                   double tol = 1e-9);

// Independent per-parameter support: Minkowski sum over the parameter's
// in-cone gadgets of the eigenvalue-difference sets of their dense generators
// (generator of exp(i theta H) form: H = -a P / 2).
FrequencySupport frequency_support_eigenvalue_oracle(const ParamCircuit& c,
                                                     const Observable* obs = nullptr);

// Number of nonzero Walsh-Hadamard coefficients of an eigenvalue vector,
// excluding the constant component.
int walsh_hadamard_rank(const std::vector<double>& eigs, double tol = 1e-9);

// --- exact trigonometric form ------------------------------------------------

// Expectation landscape of a Clifford+gadget circuit in the product basis
// {1, cos, sin} per parameterized gadget: value = sum_k c'_k prod_s phi_{k_s}.
// Slot s ranges over parameterized gadgets in circuit order; k_s in
// {0 -> 1, +1 -> cos(theta_i), -1 -> sin(theta_i)} with i = slot_param[s].
struct TrigForm {
  int m_params = 0;
  std::vector<int> slot_param;                 // parameter index per slot
  std::map<std::vector<int>, double> monomials;  // k vector -> c' in {0,+-1}

  double evaluate(const std::vector<double>& theta) const;
  // Exponential-basis coefficients merged per parameter: frequency vector in
  // Z^m -> complex coefficient.
  std::map<std::vector<long>, std::complex<double>> exponential_coefficients() const;
  bool operator==(const TrigForm& rhs) const;
};

// Heisenberg back-propagation of a Pauli observable through a circuit whose
// fixed gates are Clifford, parameterized gadgets have multiplier +-1 and no
// offset, and whose input is a stabiliser state. Throws HypothesisError when
// a precondition fails.
TrigForm exact_trig_form(const ParamCircuit& c, const PauliString& observable);

// <P> on the circuit's initial stabiliser state; exactly 0 or +-1.
double stabilizer_expectation(const PauliString& p, const InitialState& s);

}  // namespace qsl
