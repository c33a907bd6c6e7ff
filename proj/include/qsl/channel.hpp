#pragma once

#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qsl/pauli.hpp"
#include "qsl/state.hpp"

namespace qsl {

// Global depolarising on the full register: rho -> (1-p) rho + p I/2^n.
struct Depolarizing {
  double p = 0.0;
};

// rho -> (1-p) rho + p P rho P.
struct PauliNoise {
  double p = 0.0;
  PauliString pauli;
};

// Single-qubit amplitude damping with rate gamma.
struct AmplitudeDamping {
  double gamma = 0.0;
  int qubit = 0;
};

// Unitary error: conjugation by exp(-i epsilon P / 2).
struct Coherent {
  double epsilon = 0.0;
  PauliString pauli;
};

// Pauli channel whose probability is modulated by one circuit parameter:
// p(theta) = p0 (1 + sin(alpha * theta_j)) / 2.
struct ParamDependentPauli {
  double p0 = 0.0;
  double alpha = 1.0;
  int param_index = 0;
  PauliString pauli;
};

using ChannelModel = std::variant<Depolarizing, PauliNoise, AmplitudeDamping,
                                  Coherent, ParamDependentPauli>;

struct ChannelLocation {
  enum class Kind { AfterEveryGate, AfterGate, Terminal };
  Kind kind = Kind::Terminal;
  int gate_index = -1;  // for AfterGate
};

struct Channel {
  ChannelModel model;
  ChannelLocation location;

  // Throws ValidationError on bad probabilities / targets.
  void validate(int n_qubits, int m_params) const;
  bool is_param_dependent() const {
    return std::holds_alternative<ParamDependentPauli>(model);
  }
};

struct NoiseSpec {
  std::vector<Channel> channels;

  bool empty() const { return channels.empty(); }
  void validate(int n_qubits, int m_params) const;
  bool is_param_dependent() const;
  // Channels that fire right after gate `gate_index` (includes AfterEveryGate).
  std::vector<const Channel*> after_gate(int gate_index) const;
  std::vector<const Channel*> terminal() const;
};

// Applies the channel. `theta` is required for parameter-dependent channels
// and must be null or ignored otherwise.
void apply_channel(DensityMatrix& rho, const Channel& ch,
                   const std::vector<double>* theta = nullptr);

// Kraus operators on the full register (intended for small n; used by tests
// to check sum K^dag K = I).
std::vector<Eigen::MatrixXcd> kraus_operators(const Channel& ch, int n_qubits,
                                              const std::vector<double>* theta = nullptr);

}  // namespace qsl
