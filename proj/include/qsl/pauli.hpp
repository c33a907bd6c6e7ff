#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qsl {

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_to_char(PauliLetter l);
PauliLetter letter_from_char(char c);

// n-qubit Pauli operator stored in symplectic form:
//   P = i^phase * prod_q X_q^{x_q} Z_q^{z_q}
// Qubit q corresponds to bit q of a basis-state index. A letter Y at qubit q
// is x=z=1 with one factor of i folded into `phase` (so "Y" parses to a
// Hermitian operator).
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
              int phase_power = 0);

  static PauliString identity(int n_qubits);
  // Letters with qubit 0 first, e.g. "XZY" = X_0 Z_1 Y_2. Optional leading
  // sign/phase: "-", "+", "i", "-i".
  static PauliString from_string(const std::string& s);
  static PauliString single(int n_qubits, int qubit, PauliLetter l);

  int n_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  int phase_power() const { return phase_; }

  PauliLetter letter(int qubit) const;
  // Coefficient in front of the bare letter product: one of {1, i, -1, -i}.
  std::complex<double> coefficient() const;
  bool is_hermitian() const;
  bool is_identity_letters() const { return x_ == 0 && z_ == 0; }
  // Letters all in {I, Z}.
  bool is_diagonal() const { return x_ == 0; }
  std::vector<int> support() const;

  bool commutes_with(const PauliString& other) const;
  PauliString operator*(const PauliString& rhs) const;
  // i * (*this), useful for forming the Hermitian product of two
  // anticommuting Hermitian Paulis.
  PauliString times_i() const;

  // Action on a computational basis state: P|b> = basis_coeff(b) |b ^ flip_mask()>.
  std::uint64_t flip_mask() const { return x_; }
  std::complex<double> basis_coeff(std::uint64_t b) const;

  std::string to_string() const;  // letters only, qubit 0 first
  Eigen::MatrixXcd dense() const; // 2^n x 2^n, guarded for small n

  bool operator==(const PauliString& rhs) const {
    return n_ == rhs.n_ && x_ == rhs.x_ && z_ == rhs.z_ && phase_ == rhs.phase_;
  }

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;  // exponent of i, mod 4
};

}  // namespace qsl
