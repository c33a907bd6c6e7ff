#include "qsl/pauli.hpp"

#include <bit>

#include "qsl/errors.hpp"

namespace qsl {

char letter_to_char(PauliLetter l) {
  switch (l) {
    case PauliLetter::I: return 'I';
    case PauliLetter::X: return 'X';
    case PauliLetter::Y: return 'Y';
    case PauliLetter::Z: return 'Z';
  }
  return '?';
}

PauliLetter letter_from_char(char c) {
  switch (c) {
    case 'I': return PauliLetter::I;
    case 'X': return PauliLetter::X;
    case 'Y': return PauliLetter::Y;
    case 'Z': return PauliLetter::Z;
  }
  throw ValidationError(std::string("invalid Pauli letter '") + c + "'");
}

PauliString::PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
                         int phase_power)
    : n_(n_qubits), x_(x_mask), z_(z_mask), phase_(((phase_power % 4) + 4) % 4) {
  if (n_qubits < 0 || n_qubits > 63)
    throw ValidationError("PauliString: qubit count out of range");
  const std::uint64_t full = n_qubits == 0 ? 0 : ((~0ULL) >> (64 - n_qubits));
  if ((x_ & ~full) || (z_ & ~full))
    throw ValidationError("PauliString: mask exceeds qubit count");
}

PauliString PauliString::identity(int n_qubits) { return PauliString(n_qubits, 0, 0, 0); }

PauliString PauliString::from_string(const std::string& s) {
  // Optional prefix "+", "-", "i", "-i" (lowercase i = imaginary unit),
  // followed by uppercase letters, qubit 0 first.
  std::size_t pos = 0;
  int phase = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    if (s[pos] == '-') phase += 2;
    ++pos;
  }
  if (pos < s.size() && s[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  std::uint64_t x = 0, z = 0;
  int n = 0;
  for (; pos < s.size(); ++pos, ++n) {
    PauliLetter l = letter_from_char(s[pos]);
    if (l == PauliLetter::X || l == PauliLetter::Y) x |= 1ULL << n;
    if (l == PauliLetter::Z || l == PauliLetter::Y) z |= 1ULL << n;
    if (l == PauliLetter::Y) phase += 1;  // Y = i X Z
  }
  return PauliString(n, x, z, phase);
}

PauliString PauliString::single(int n_qubits, int qubit, PauliLetter l) {
  if (qubit < 0 || qubit >= n_qubits)
    throw ValidationError("PauliString::single: qubit out of range");
  std::uint64_t x = 0, z = 0;
  int phase = 0;
  if (l == PauliLetter::X || l == PauliLetter::Y) x |= 1ULL << qubit;
  if (l == PauliLetter::Z || l == PauliLetter::Y) z |= 1ULL << qubit;
  if (l == PauliLetter::Y) phase = 1;
  return PauliString(n_qubits, x, z, phase);
}

PauliLetter PauliString::letter(int qubit) const {
  bool xb = (x_ >> qubit) & 1, zb = (z_ >> qubit) & 1;
  if (xb && zb) return PauliLetter::Y;
  if (xb) return PauliLetter::X;
  if (zb) return PauliLetter::Z;
  return PauliLetter::I;
}

std::complex<double> PauliString::coefficient() const {
  // i^phase relative to the Hermitian letter product: each Y letter already
  // accounts for one i in `phase_`.
  int y_count = std::popcount(x_ & z_);
  int k = ((phase_ - y_count) % 4 + 4) % 4;
  static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[k];
}

bool PauliString::is_hermitian() const {
  int y_count = std::popcount(x_ & z_);
  return ((phase_ - y_count) % 2 + 2) % 2 == 0;
}

std::vector<int> PauliString::support() const {
  std::vector<int> qs;
  for (int q = 0; q < n_; ++q)
    if (((x_ | z_) >> q) & 1) qs.push_back(q);
  return qs;
}

bool PauliString::commutes_with(const PauliString& other) const {
  int anti = std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_);
  return anti % 2 == 0;
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (n_ != rhs.n_) throw ValidationError("PauliString product: size mismatch");
  // (X^x1 Z^z1)(X^x2 Z^z2): moving Z^z1 past X^x2 yields (-1)^{|z1 & x2|}.
  int phase = phase_ + rhs.phase_ + 2 * std::popcount(z_ & rhs.x_);
  return PauliString(n_, x_ ^ rhs.x_, z_ ^ rhs.z_, phase);
}

PauliString PauliString::times_i() const { return PauliString(n_, x_, z_, phase_ + 1); }

std::complex<double> PauliString::basis_coeff(std::uint64_t b) const {
  int k = phase_ + 2 * std::popcount(b & z_);
  k = ((k % 4) + 4) % 4;
  static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[k];
}

std::string PauliString::to_string() const {
  std::string s;
  s.reserve(n_);
  for (int q = 0; q < n_; ++q) s.push_back(letter_to_char(letter(q)));
  return s;
}

Eigen::MatrixXcd PauliString::dense() const {
  if (n_ > 12) throw ValidationError("PauliString::dense: too many qubits");
  const std::uint64_t dim = 1ULL << n_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b) m(b ^ x_, b) = basis_coeff(b);
  return m;
}

}  // namespace qsl
