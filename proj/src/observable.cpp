#include "qsl/observable.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "qsl/errors.hpp"

namespace qsl {

Observable Observable::pauli(const PauliString& p) {
  if (!p.is_hermitian()) throw ValidationError("observable Pauli must be Hermitian");
  Observable o;
  o.kind_ = Kind::Pauli;
  o.n_ = p.n_qubits();
  o.pauli_ = p;
  return o;
}

Observable Observable::diag_z(int n_qubits, std::vector<ZTerm> terms) {
  Observable o;
  o.kind_ = Kind::DiagZ;
  o.n_ = n_qubits;
  const std::uint64_t full = n_qubits == 0 ? 0 : ((~0ULL) >> (64 - n_qubits));
  for (const auto& t : terms)
    if (t.z_mask & ~full) throw ValidationError("diag_z term exceeds qubit count");
  o.terms_ = std::move(terms);
  return o;
}

const PauliString& Observable::pauli_string() const {
  if (kind_ != Kind::Pauli) throw ValidationError("observable is not a Pauli");
  return pauli_;
}

std::vector<int> Observable::support() const {
  if (kind_ == Kind::Pauli) return pauli_.support();
  std::uint64_t mask = 0;
  for (const auto& t : terms_) mask |= t.z_mask;
  std::vector<int> qs;
  for (int q = 0; q < n_; ++q)
    if ((mask >> q) & 1) qs.push_back(q);
  return qs;
}

double Observable::value_on_basis(std::uint64_t b) const {
  if (kind_ == Kind::Pauli) {
    if (!pauli_.is_diagonal())
      throw ValidationError("value_on_basis: Pauli observable not diagonal");
    return pauli_.basis_coeff(b).real();
  }
  double v = 0.0;
  for (const auto& t : terms_)
    v += t.coeff * (std::popcount(b & t.z_mask) % 2 ? -1.0 : 1.0);
  return v;
}

double Observable::expectation(const PureState& state) const {
  if (n_ != state.n_qubits) throw ValidationError("observable size mismatch");
  if (kind_ == Kind::Pauli) return expectation_pauli(state, pauli_);
  double acc = 0.0;
  for (std::uint64_t b = 0; b < state.dim(); ++b)
    acc += std::norm(state.amplitudes(b)) * value_on_basis(b);
  return acc;
}

double Observable::expectation(const DensityMatrix& rho) const {
  if (n_ != rho.n_qubits) throw ValidationError("observable size mismatch");
  if (kind_ == Kind::Pauli) return expectation_pauli(rho, pauli_);
  double acc = 0.0;
  for (std::uint64_t b = 0; b < rho.dim(); ++b)
    acc += rho.matrix(b, b).real() * value_on_basis(b);
  return acc;
}

double Observable::one_norm() const {
  if (kind_ == Kind::Pauli) return 1.0;
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return s;
}

std::string Observable::describe() const {
  if (kind_ == Kind::Pauli) return "pauli:" + pauli_.to_string();
  std::ostringstream os;
  os << "diag_z:";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << "+";
    os << terms_[i].coeff << "*Z[";
    bool first = true;
    for (int q = 0; q < n_; ++q)
      if ((terms_[i].z_mask >> q) & 1) {
        if (!first) os << ",";
        os << q;
        first = false;
      }
    os << "]";
  }
  return os.str();
}

}  // namespace qsl
