#include "qsl/state.hpp"

#include <algorithm>
#include <cmath>

#include "qsl/errors.hpp"

namespace qsl {

namespace {

void check_targets(int n_qubits, const std::vector<int>& targets) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= n_qubits)
      throw ValidationError("target qubit out of range");
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i] == targets[j]) throw ValidationError("duplicate target qubit");
  }
}

void check_unitary(const Eigen::MatrixXcd& u, std::size_t expected_dim) {
  if (u.rows() != u.cols() || std::size_t(u.rows()) != expected_dim)
    throw ValidationError("gate matrix dimension mismatch");
  Eigen::MatrixXcd err = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  if (err.cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("gate matrix is not unitary");
}

// Scatter local index bits into the global index according to `targets`.
struct TargetIndexer {
  std::vector<std::uint64_t> target_bit;
  std::uint64_t target_mask = 0;
  int n_qubits = 0;

  TargetIndexer(int n, const std::vector<int>& targets) : n_qubits(n) {
    for (int t : targets) {
      target_bit.push_back(std::uint64_t(1) << t);
      target_mask |= std::uint64_t(1) << t;
    }
  }

  std::uint64_t local_to_global(std::uint64_t local) const {
    std::uint64_t g = 0;
    for (std::size_t j = 0; j < target_bit.size(); ++j)
      if ((local >> j) & 1) g |= target_bit[j];
    return g;
  }

  // Enumerates base indices whose target bits are all zero.
  std::uint64_t base_count() const {
    return std::uint64_t(1) << (n_qubits - int(target_bit.size()));
  }
  std::uint64_t nth_base(std::uint64_t c) const {
    std::uint64_t base = 0;
    for (int q = 0; q < n_qubits; ++q) {
      std::uint64_t bit = std::uint64_t(1) << q;
      if (target_mask & bit) continue;
      if (c & 1) base |= bit;
      c >>= 1;
    }
    return base;
  }
};

void apply_matrix_vec(Eigen::VectorXcd& v, int n_qubits, const Eigen::MatrixXcd& m,
                      const std::vector<int>& targets) {
  const std::size_t k = targets.size();
  const std::uint64_t ldim = std::uint64_t(1) << k;
  TargetIndexer ix(n_qubits, targets);
  std::vector<std::uint64_t> idx(ldim);
  Eigen::VectorXcd in(ldim), out(ldim);
  const std::uint64_t bases = ix.base_count();
  for (std::uint64_t c = 0; c < bases; ++c) {
    const std::uint64_t base = ix.nth_base(c);
    for (std::uint64_t l = 0; l < ldim; ++l) {
      idx[l] = base | ix.local_to_global(l);
      in(l) = v(idx[l]);
    }
    out.noalias() = m * in;
    for (std::uint64_t l = 0; l < ldim; ++l) v(idx[l]) = out(l);
  }
}

}  // namespace

PureState PureState::zeros(int n_qubits) { return basis(n_qubits, 0); }

PureState PureState::basis(int n_qubits, std::uint64_t bits) {
  if (n_qubits < 1 || n_qubits > kMaxStatevectorQubits)
    throw ValidationError("statevector qubit count out of range");
  PureState s;
  s.n_qubits = n_qubits;
  s.amplitudes = Eigen::VectorXcd::Zero(std::int64_t(1) << n_qubits);
  if (bits >= s.dim()) throw ValidationError("basis state out of range");
  s.amplitudes(bits) = 1.0;
  return s;
}

PureState PureState::plus(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxStatevectorQubits)
    throw ValidationError("statevector qubit count out of range");
  PureState s;
  s.n_qubits = n_qubits;
  const std::uint64_t dim = std::uint64_t(1) << n_qubits;
  s.amplitudes = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim)));
  return s;
}

double PureState::norm_error() const { return std::abs(amplitudes.squaredNorm() - 1.0); }

void PureState::validate(double tol) const {
  if (amplitudes.size() != std::int64_t(dim()))
    throw ValidationError("PureState: amplitude length mismatch");
  if (norm_error() > tol) throw ValidationError("PureState: not normalised");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  DensityMatrix rho;
  rho.n_qubits = psi.n_qubits;
  if (psi.n_qubits > kMaxDensityQubits)
    throw ValidationError("density matrix qubit count out of range");
  rho.matrix = psi.amplitudes * psi.amplitudes.adjoint();
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxDensityQubits)
    throw ValidationError("density matrix qubit count out of range");
  DensityMatrix rho;
  rho.n_qubits = n_qubits;
  const std::uint64_t dim = std::uint64_t(1) << n_qubits;
  rho.matrix = Eigen::MatrixXcd::Identity(dim, dim) / double(dim);
  return rho;
}

void DensityMatrix::validate(double tol, double eig_tol) const {
  if (matrix.rows() != std::int64_t(dim()) || matrix.cols() != std::int64_t(dim()))
    throw ValidationError("DensityMatrix: dimension mismatch");
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw ValidationError("DensityMatrix: not Hermitian");
  if (std::abs(matrix.trace() - std::complex<double>(1.0)) > tol)
    throw ValidationError("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -eig_tol)
    throw ValidationError("DensityMatrix: negative eigenvalue");
}

void apply_gate(PureState& state, const Eigen::MatrixXcd& unitary,
                const std::vector<int>& targets) {
  check_targets(state.n_qubits, targets);
  check_unitary(unitary, std::size_t(1) << targets.size());
  apply_matrix_vec(state.amplitudes, state.n_qubits, unitary, targets);
}

void apply_matrix_unchecked(PureState& state, const Eigen::MatrixXcd& m,
                            const std::vector<int>& targets) {
  check_targets(state.n_qubits, targets);
  apply_matrix_vec(state.amplitudes, state.n_qubits, m, targets);
}

void apply_gate(DensityMatrix& rho, const Eigen::MatrixXcd& unitary,
                const std::vector<int>& targets) {
  check_targets(rho.n_qubits, targets);
  check_unitary(unitary, std::size_t(1) << targets.size());
  const std::int64_t dim = rho.dim();
  // rho -> U rho: kernel on each column; then rho -> rho U^dag: conj(U)
  // kernel on each row.
  for (std::int64_t c = 0; c < dim; ++c) {
    Eigen::VectorXcd col = rho.matrix.col(c);
    apply_matrix_vec(col, rho.n_qubits, unitary, targets);
    rho.matrix.col(c) = col;
  }
  const Eigen::MatrixXcd uc = unitary.conjugate();
  for (std::int64_t r = 0; r < dim; ++r) {
    Eigen::VectorXcd row = rho.matrix.row(r).transpose();
    apply_matrix_vec(row, rho.n_qubits, uc, targets);
    rho.matrix.row(r) = row.transpose();
  }
}

void apply_pauli(PureState& state, const PauliString& p) {
  if (p.n_qubits() != state.n_qubits) throw ValidationError("Pauli size mismatch");
  const std::uint64_t dim = state.dim();
  const std::uint64_t flip = p.flip_mask();
  Eigen::VectorXcd out(dim);
  for (std::uint64_t b = 0; b < dim; ++b) out(b ^ flip) = p.basis_coeff(b) * state.amplitudes(b);
  state.amplitudes.swap(out);
}

void apply_pauli_left(DensityMatrix& rho, const PauliString& p) {
  if (p.n_qubits() != rho.n_qubits) throw ValidationError("Pauli size mismatch");
  const std::uint64_t dim = rho.dim();
  const std::uint64_t flip = p.flip_mask();
  Eigen::MatrixXcd out(dim, dim);
  // (P rho)[r, c] = mu(r ^ flip) rho[r ^ flip, c]
  for (std::uint64_t r = 0; r < dim; ++r)
    out.row(r) = p.basis_coeff(r ^ flip) * rho.matrix.row(r ^ flip);
  rho.matrix.swap(out);
}

void apply_pauli_right(DensityMatrix& rho, const PauliString& p) {
  if (p.n_qubits() != rho.n_qubits) throw ValidationError("Pauli size mismatch");
  const std::uint64_t dim = rho.dim();
  const std::uint64_t flip = p.flip_mask();
  Eigen::MatrixXcd out(dim, dim);
  // (rho P)[r, c] = rho[r, c ^ flip] mu(c)
  for (std::uint64_t c = 0; c < dim; ++c)
    out.col(c) = p.basis_coeff(c) * rho.matrix.col(c ^ flip);
  rho.matrix.swap(out);
}

void conjugate_by_pauli(DensityMatrix& rho, const PauliString& p) {
  if (!p.is_hermitian()) throw ValidationError("conjugate_by_pauli: non-Hermitian Pauli");
  apply_pauli_left(rho, p);
  apply_pauli_right(rho, p);
}

void apply_gadget(PureState& state, const PauliString& p, double angle) {
  if (!p.is_hermitian()) throw ValidationError("gadget generator must be Hermitian");
  if (p.n_qubits() != state.n_qubits) throw ValidationError("Pauli size mismatch");
  const std::complex<double> c(std::cos(angle / 2.0), 0.0);
  const std::complex<double> mis(0.0, -std::sin(angle / 2.0));
  const std::uint64_t dim = state.dim();
  const std::uint64_t flip = p.flip_mask();
  Eigen::VectorXcd out(dim);
  for (std::uint64_t b = 0; b < dim; ++b)
    out(b ^ flip) = mis * p.basis_coeff(b) * state.amplitudes(b);
  out += c * state.amplitudes;
  state.amplitudes.swap(out);
}

void apply_gadget(DensityMatrix& rho, const PauliString& p, double angle) {
  if (!p.is_hermitian()) throw ValidationError("gadget generator must be Hermitian");
  if (p.n_qubits() != rho.n_qubits) throw ValidationError("Pauli size mismatch");
  // (cI - isP) rho (cI + isP) = c^2 rho + s^2 P rho P + ics(rho P - P rho)
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  DensityMatrix prho = rho, rhop = rho, prp = rho;
  apply_pauli_left(prho, p);
  apply_pauli_right(rhop, p);
  prp = prho;
  apply_pauli_right(prp, p);
  const std::complex<double> ics(0.0, c * s);
  rho.matrix = c * c * rho.matrix + s * s * prp.matrix +
               ics * (rhop.matrix - prho.matrix);
}

namespace {

double finish_pauli_expectation(std::complex<double> val, bool hermitian_pauli) {
  if (std::abs(val.imag()) > 1e-9)
    throw ValidationError("expectation has non-negligible imaginary part");
  double r = val.real();
  if (hermitian_pauli) r = std::clamp(r, -1.0, 1.0);
  return r;
}

}  // namespace

double expectation_pauli(const PureState& state, const PauliString& p) {
  if (p.n_qubits() != state.n_qubits) throw ValidationError("Pauli size mismatch");
  const std::uint64_t dim = state.dim();
  const std::uint64_t flip = p.flip_mask();
  std::complex<double> acc = 0.0;
  for (std::uint64_t b = 0; b < dim; ++b)
    acc += std::conj(state.amplitudes(b ^ flip)) * p.basis_coeff(b) * state.amplitudes(b);
  return finish_pauli_expectation(acc, p.is_hermitian());
}

double expectation_pauli(const DensityMatrix& rho, const PauliString& p) {
  if (p.n_qubits() != rho.n_qubits) throw ValidationError("Pauli size mismatch");
  const std::uint64_t dim = rho.dim();
  const std::uint64_t flip = p.flip_mask();
  std::complex<double> acc = 0.0;
  // tr(P rho) = sum_b mu(b) rho[b ^ flip ... ]: (P rho)[r,r] with r = b ^ flip
  for (std::uint64_t b = 0; b < dim; ++b) acc += p.basis_coeff(b) * rho.matrix(b, b ^ flip);
  return finish_pauli_expectation(acc, p.is_hermitian());
}

double fidelity(const DensityMatrix& rho, const PureState& target) {
  if (rho.n_qubits != target.n_qubits) throw ValidationError("fidelity: size mismatch");
  const std::complex<double> v = target.amplitudes.adjoint() * (rho.matrix * target.amplitudes);
  if (std::abs(v.imag()) > 1e-9)
    throw ValidationError("fidelity has non-negligible imaginary part");
  return std::clamp(v.real(), 0.0, 1.0);
}

double purity(const DensityMatrix& rho) {
  return std::min(rho.matrix.squaredNorm(), 1.0);
}

}  // namespace qsl
