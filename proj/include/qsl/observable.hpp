#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsl/pauli.hpp"
#include "qsl/state.hpp"

namespace qsl {

// One product of Z letters with a real weight: coeff * prod_{q in mask} Z_q.
struct ZTerm {
  double coeff = 1.0;
  std::uint64_t z_mask = 0;
};

// Measurement operator: either a single Hermitian Pauli string (two-outcome
// measurement) or a Z-diagonal Hamiltonian (value read off sampled
// bitstrings).
class Observable {
 public:
  enum class Kind { Pauli, DiagZ };

  static Observable pauli(const PauliString& p);
  static Observable diag_z(int n_qubits, std::vector<ZTerm> terms);

  Kind kind() const { return kind_; }
  bool is_pauli() const { return kind_ == Kind::Pauli; }
  int n_qubits() const { return n_; }
  const PauliString& pauli_string() const;
  const std::vector<ZTerm>& terms() const { return terms_; }

  // Qubits the observable acts on (for lightcone analysis).
  std::vector<int> support() const;

  // Eigenvalue on a computational basis state (DiagZ or diagonal Pauli).
  double value_on_basis(std::uint64_t b) const;

  double expectation(const PureState& state) const;
  double expectation(const DensityMatrix& rho) const;

  // Sum of |coeff| -- bounds the spectral range of a DiagZ observable.
  double one_norm() const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::Pauli;
  int n_ = 0;
  PauliString pauli_;
  std::vector<ZTerm> terms_;
};

}  // namespace qsl
