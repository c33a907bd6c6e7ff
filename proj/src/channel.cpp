#include "qsl/channel.hpp"

#include <cmath>

#include "qsl/errors.hpp"

namespace qsl {

namespace {

void check_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(what) + " must lie in [0, 1]");
}

void check_pauli_error(const PauliString& p, int n_qubits, const char* what) {
  if (p.n_qubits() != n_qubits)
    throw ValidationError(std::string(what) + ": Pauli size mismatch");
  if (!p.is_hermitian())
    throw ValidationError(std::string(what) + ": Pauli must be Hermitian");
}

double param_dependent_prob(const ParamDependentPauli& m, const std::vector<double>* theta) {
  if (theta == nullptr)
    throw ValidationError("parameter-dependent channel needs theta");
  if (m.param_index < 0 || std::size_t(m.param_index) >= theta->size())
    throw ValidationError("parameter-dependent channel: param index out of range");
  return m.p0 * (1.0 + std::sin(m.alpha * (*theta)[m.param_index])) / 2.0;
}

Eigen::MatrixXcd embed_single_qubit(const Eigen::Matrix2cd& op, int qubit, int n_qubits) {
  const std::uint64_t dim = std::uint64_t(1) << n_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const std::uint64_t bit = std::uint64_t(1) << qubit;
  for (std::uint64_t b = 0; b < dim; ++b) {
    const int lb = (b & bit) ? 1 : 0;
    for (int lr = 0; lr < 2; ++lr) {
      std::uint64_t r = (b & ~bit) | (lr ? bit : 0);
      if (op(lr, lb) != 0.0) out(r, b) = op(lr, lb);
    }
  }
  return out;
}

}  // namespace

void Channel::validate(int n_qubits, int m_params) const {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Depolarizing>) {
          check_prob(m.p, "depolarizing p");
        } else if constexpr (std::is_same_v<T, PauliNoise>) {
          check_prob(m.p, "pauli p");
          check_pauli_error(m.pauli, n_qubits, "pauli channel");
        } else if constexpr (std::is_same_v<T, AmplitudeDamping>) {
          check_prob(m.gamma, "amplitude damping gamma");
          if (m.qubit < 0 || m.qubit >= n_qubits)
            throw ValidationError("amplitude damping qubit out of range");
        } else if constexpr (std::is_same_v<T, Coherent>) {
          check_pauli_error(m.pauli, n_qubits, "coherent channel");
        } else if constexpr (std::is_same_v<T, ParamDependentPauli>) {
          check_prob(m.p0, "param-dependent p0");
          check_pauli_error(m.pauli, n_qubits, "param-dependent channel");
          if (m.param_index < 0 || m.param_index >= m_params)
            throw ValidationError("param-dependent channel: param index out of range");
        }
      },
      model);
  if (location.kind == ChannelLocation::Kind::AfterGate && location.gate_index < 0)
    throw ValidationError("channel location: gate index required");
}

void NoiseSpec::validate(int n_qubits, int m_params) const {
  for (const auto& ch : channels) ch.validate(n_qubits, m_params);
}

bool NoiseSpec::is_param_dependent() const {
  for (const auto& ch : channels)
    if (ch.is_param_dependent()) return true;
  return false;
}

std::vector<const Channel*> NoiseSpec::after_gate(int gate_index) const {
  std::vector<const Channel*> out;
  for (const auto& ch : channels) {
    if (ch.location.kind == ChannelLocation::Kind::AfterEveryGate ||
        (ch.location.kind == ChannelLocation::Kind::AfterGate &&
         ch.location.gate_index == gate_index))
      out.push_back(&ch);
  }
  return out;
}

std::vector<const Channel*> NoiseSpec::terminal() const {
  std::vector<const Channel*> out;
  for (const auto& ch : channels)
    if (ch.location.kind == ChannelLocation::Kind::Terminal) out.push_back(&ch);
  return out;
}

void apply_channel(DensityMatrix& rho, const Channel& ch, const std::vector<double>* theta) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Depolarizing>) {
          check_prob(m.p, "depolarizing p");
          const double dim = double(rho.dim());
          const std::complex<double> tr = rho.matrix.trace();
          rho.matrix *= (1.0 - m.p);
          rho.matrix += (m.p / dim) * tr * Eigen::MatrixXcd::Identity(rho.dim(), rho.dim());
        } else if constexpr (std::is_same_v<T, PauliNoise>) {
          check_prob(m.p, "pauli p");
          if (m.p == 0.0) return;
          DensityMatrix flipped = rho;
          conjugate_by_pauli(flipped, m.pauli);
          rho.matrix = (1.0 - m.p) * rho.matrix + m.p * flipped.matrix;
        } else if constexpr (std::is_same_v<T, AmplitudeDamping>) {
          check_prob(m.gamma, "amplitude damping gamma");
          const double g = m.gamma;
          Eigen::Matrix2cd k0, k1;
          k0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - g);
          k1 << 0.0, std::sqrt(g), 0.0, 0.0;
          const std::uint64_t bit = std::uint64_t(1) << m.qubit;
          const std::uint64_t dim = rho.dim();
          Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
          // K0 rho K0^dag + K1 rho K1^dag, exploiting that both Kraus
          // operators are sparse in the computational basis.
          const double s = std::sqrt(1.0 - g);
          for (std::uint64_t r = 0; r < dim; ++r) {
            const double lr = (r & bit) ? s : 1.0;
            for (std::uint64_t c = 0; c < dim; ++c) {
              const double lc = (c & bit) ? s : 1.0;
              out(r, c) = lr * lc * rho.matrix(r, c);
            }
          }
          for (std::uint64_t r = 0; r < dim; ++r) {
            if (r & bit) continue;  // K1 maps |1> -> |0| on the damped qubit
            for (std::uint64_t c = 0; c < dim; ++c) {
              if (c & bit) continue;
              out(r, c) += g * rho.matrix(r | bit, c | bit);
            }
          }
          rho.matrix.swap(out);
        } else if constexpr (std::is_same_v<T, Coherent>) {
          DensityMatrix tmp = rho;
          apply_gadget(tmp, m.pauli, m.epsilon);
          rho.matrix.swap(tmp.matrix);
        } else if constexpr (std::is_same_v<T, ParamDependentPauli>) {
          const double p = param_dependent_prob(m, theta);
          if (p == 0.0) return;
          DensityMatrix flipped = rho;
          conjugate_by_pauli(flipped, m.pauli);
          rho.matrix = (1.0 - p) * rho.matrix + p * flipped.matrix;
        }
      },
      ch.model);
}

std::vector<Eigen::MatrixXcd> kraus_operators(const Channel& ch, int n_qubits,
                                              const std::vector<double>* theta) {
  if (n_qubits > 6) throw ValidationError("kraus_operators: register too large to materialise");
  const std::uint64_t dim = std::uint64_t(1) << n_qubits;
  std::vector<Eigen::MatrixXcd> ks;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Depolarizing>) {
          // (1-p) rho + p I/2^n = sum over all Paulis with uniform weight on
          // the non-identity ones.
          const double dd = double(dim) * double(dim);
          ks.push_back(std::sqrt(1.0 - m.p + m.p / dd) *
                       Eigen::MatrixXcd::Identity(dim, dim));
          for (std::uint64_t xz = 1; xz < dd; ++xz) {
            const std::uint64_t x = xz % dim, z = xz / dim;
            PauliString p(n_qubits, x, z, 0);
            ks.push_back(std::sqrt(m.p / dd) * p.dense());
          }
        } else if constexpr (std::is_same_v<T, PauliNoise>) {
          ks.push_back(std::sqrt(1.0 - m.p) * Eigen::MatrixXcd::Identity(dim, dim));
          ks.push_back(std::sqrt(m.p) * m.pauli.dense());
        } else if constexpr (std::is_same_v<T, AmplitudeDamping>) {
          Eigen::Matrix2cd k0, k1;
          k0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - m.gamma);
          k1 << 0.0, std::sqrt(m.gamma), 0.0, 0.0;
          ks.push_back(embed_single_qubit(k0, m.qubit, n_qubits));
          ks.push_back(embed_single_qubit(k1, m.qubit, n_qubits));
        } else if constexpr (std::is_same_v<T, Coherent>) {
          const std::complex<double> c(std::cos(m.epsilon / 2.0), 0.0);
          const std::complex<double> mis(0.0, -std::sin(m.epsilon / 2.0));
          ks.push_back(c * Eigen::MatrixXcd::Identity(dim, dim) + mis * m.pauli.dense());
        } else if constexpr (std::is_same_v<T, ParamDependentPauli>) {
          const double p = param_dependent_prob(m, theta);
          ks.push_back(std::sqrt(1.0 - p) * Eigen::MatrixXcd::Identity(dim, dim));
          ks.push_back(std::sqrt(p) * m.pauli.dense());
        }
      },
      ch.model);
  return ks;
}

}  // namespace qsl
