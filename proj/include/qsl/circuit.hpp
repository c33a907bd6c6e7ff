#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qsl/observable.hpp"
#include "qsl/pauli.hpp"
#include "qsl/state.hpp"

namespace qsl {

// angle = multiplier * theta[param_index] + offset, or a fixed angle when
// param_index is absent.
struct ParamExpr {
  double multiplier = 0.0;
  std::optional<int> param_index;
  double offset = 0.0;

  static ParamExpr fixed(double angle) { return {0.0, std::nullopt, angle}; }
  static ParamExpr linear(int param, double mult = 1.0, double off = 0.0) {
    return {mult, param, off};
  }
  bool is_parameterized() const { return param_index.has_value(); }
  double bind(const std::vector<double>& theta) const;
};

struct FixedGate {
  std::string name;          // "h", "s", "sdg", "x", "y", "z", "cx", "cz", "swap", "custom"
  Eigen::MatrixXcd matrix;   // 2^k x 2^k on `targets`
  std::vector<int> targets;
  bool is_clifford = false;
};

struct PauliGadget {
  PauliString generator;  // Hermitian, sign +1
  ParamExpr angle;        // realises exp(-i angle P / 2)
};

struct GateNode {
  std::variant<FixedGate, PauliGadget> op;

  bool is_gadget() const { return std::holds_alternative<PauliGadget>(op); }
  const PauliGadget& gadget() const { return std::get<PauliGadget>(op); }
  const FixedGate& fixed() const { return std::get<FixedGate>(op); }
  std::vector<int> targets() const;
};

struct InitialState {
  enum class Kind { Zeros, Basis, Plus };
  Kind kind = Kind::Zeros;
  std::uint64_t bits = 0;  // for Basis

  PureState prepare(int n_qubits) const;
  std::string describe() const;
};

struct ParamCircuit {
  int n_qubits = 0;
  int m_params = 0;
  std::vector<GateNode> gates;
  InitialState initial_state;

  void validate() const;
  int gadget_count() const;
};

struct BoundGadget {
  PauliString generator;
  double angle = 0.0;
};

struct BoundGate {
  std::variant<FixedGate, BoundGadget> op;

  bool is_gadget() const { return std::holds_alternative<BoundGadget>(op); }
  const BoundGadget& gadget() const { return std::get<BoundGadget>(op); }
  const FixedGate& fixed() const { return std::get<FixedGate>(op); }
};

struct BoundCircuit {
  int n_qubits = 0;
  std::vector<BoundGate> gates;
  InitialState initial_state;
};

// --- named fixed gates -------------------------------------------------------

// Known names: h, s, sdg, x, y, z, cx, cz, swap. All are Clifford.
FixedGate named_gate(const std::string& name, const std::vector<int>& targets);
// Checks whether `u` (2^k x 2^k) normalises the Pauli group on k qubits.
bool matrix_is_clifford(const Eigen::MatrixXcd& u, double tol = 1e-9);
// Conjugation P -> U^dag P U for a Clifford gate; result is a signed Pauli.
// Throws HypothesisError when the gate is not Clifford on this input.
PauliString clifford_conjugate_back(const FixedGate& gate, const PauliString& p);

// --- core operations ---------------------------------------------------------

BoundCircuit bind(const ParamCircuit& c, const std::vector<double>& theta);

// Per parameter, the absolute multipliers of the gadgets that reference it.
std::vector<std::vector<double>> parameter_multipliers(const ParamCircuit& c);

struct Lightcone {
  std::vector<bool> gate_in_cone;   // indexed like c.gates
  std::vector<bool> param_in_cone;  // indexed by parameter
  bool exact = true;                // false when the Pauli-propagation cap hit

  std::vector<int> params() const;
};

// Backward lightcone of the observable through the circuit. Uses exact Pauli
// back-propagation (commutation aware); falls back to a conservative
// target-intersection cone when the tracked Pauli set exceeds `cap`.
Lightcone lightcone(const ParamCircuit& c, const Observable& obs, std::size_t cap = 4096);

struct CliffordProjection {
  BoundCircuit circuit;
  std::vector<double> theta_c;      // per-parameter rounded values
  std::vector<int> kept_gates;      // gate indices left unrounded
};

// Binds at `theta`, then rounds every gadget angle to the nearest multiple of
// pi/2 except `keep` gadgets drawn uniformly among those with a non-Clifford
// angle. Deterministic under `seed`.
CliffordProjection nearest_clifford_projection(const ParamCircuit& c,
                                               const std::vector<double>& theta,
                                               int keep, std::uint64_t seed);

double round_to_clifford_angle(double angle);  // ties toward smaller magnitude
bool is_clifford_angle(double angle, double tol = 1e-9);

std::string export_qasm(const BoundCircuit& c);

// --- simulation --------------------------------------------------------------

PureState run_statevector(const BoundCircuit& c);

class NoiseSpec;  // fwd (channel.hpp)

// --- experiment builders -----------------------------------------------------

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  void validate() const;
  bool is_regular(int degree) const;
  bool is_triangle_free() const;
};

Graph random_regular_triangle_free_graph(int nodes, int degree, std::uint64_t seed);

// Paper experiment circuits.
ParamCircuit build_simple_2q(int pad_cnot_pairs = 0);
ParamCircuit build_ucc_2q();
ParamCircuit build_ucc_h2_singles(std::uint64_t seed);
ParamCircuit build_qaoa_maxcut(const Graph& g, int layers);

struct ExperimentConfig {
  int pad_cnot_pairs = 0;
  std::uint64_t seed = 0;
  std::optional<Graph> graph;
  int qaoa_layers = 1;
};

ParamCircuit build_experiment(const std::string& name, const ExperimentConfig& cfg = {});
Observable default_observable(const std::string& name, const ExperimentConfig& cfg = {});

}  // namespace qsl
