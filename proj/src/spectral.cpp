#include "qsl/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>

#include "qsl/errors.hpp"

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

}  // namespace

ZQuasiprob z_rotation_quasiprob(double theta) {
  ZQuasiprob q;
  q.p_i = 0.5 * (-std::sin(theta) + std::cos(theta) + 1.0);
  q.p_z = 0.5 * (-std::sin(theta) - std::cos(theta) + 1.0);
  q.p_s = std::sin(theta);
  return q;
}

ProcessModeTriple process_modes(const PauliString& gadget_generator) {
  if (!gadget_generator.is_hermitian())
    throw ValidationError("process_modes: generator must be Hermitian");
  using Base = ProcessModeTerm::Base;
  ProcessModeTriple t;
  t.generator = gadget_generator;
  // C_0    = 1/2 (U(0) + U(pi))
  // C_{+1} = (1+i)/4 U(0) - (1-i)/4 U(pi) - i/2 U(pi/2)
  // C_{-1} = (1-i)/4 U(0) - (1+i)/4 U(pi) + i/2 U(pi/2)
  t.modes[0] = {{cd(0.5, 0.0), Base::U0}, {cd(0.5, 0.0), Base::UPi}};
  t.modes[1] = {{cd(0.25, 0.25), Base::U0},
                {cd(-0.25, 0.25), Base::UPi},
                {cd(0.0, -0.5), Base::UPiHalf}};
  t.modes[2] = {{cd(0.25, -0.25), Base::U0},
                {cd(-0.25, -0.25), Base::UPi},
                {cd(0.0, 0.5), Base::UPiHalf}};
  return t;
}

Eigen::MatrixXcd unitary_channel_superoperator(const Eigen::MatrixXcd& u) {
  const Eigen::Index d = u.rows();
  Eigen::MatrixXcd s(d * d, d * d);
  const Eigen::MatrixXcd uc = u.conjugate();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      s.block(i * d, j * d, d, d) = uc(i, j) * u;
  return s;
}

namespace {

Eigen::MatrixXcd gadget_unitary(const PauliString& p, double theta) {
  const Eigen::Index dim = Eigen::Index(1) << p.n_qubits();
  return std::cos(theta / 2.0) * Eigen::MatrixXcd::Identity(dim, dim) -
         cd(0.0, std::sin(theta / 2.0)) * p.dense();
}

}  // namespace

Eigen::MatrixXcd gadget_channel_superoperator(const PauliString& p, double theta) {
  if (p.n_qubits() > 3)
    throw ValidationError("superoperators materialised only up to 3 qubits");
  return unitary_channel_superoperator(gadget_unitary(p, theta));
}

Eigen::MatrixXcd ProcessModeTriple::mode_superoperator(int which) const {
  if (generator.n_qubits() > 3)
    throw ValidationError("superoperators materialised only up to 3 qubits");
  const Eigen::Index dim = Eigen::Index(1) << generator.n_qubits();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
  for (const auto& term : modes.at(which)) {
    double angle = term.base == ProcessModeTerm::Base::U0     ? 0.0
                   : term.base == ProcessModeTerm::Base::UPi ? kPi
                                                             : kPi / 2.0;
    s += term.coeff * unitary_channel_superoperator(gadget_unitary(generator, angle));
  }
  return s;
}

DensityMatrix ProcessModeTriple::apply_mode(int which, const DensityMatrix& rho) const {
  DensityMatrix out = rho;
  out.matrix.setZero();
  for (const auto& term : modes.at(which)) {
    double angle = term.base == ProcessModeTerm::Base::U0     ? 0.0
                   : term.base == ProcessModeTerm::Base::UPi ? kPi
                                                             : kPi / 2.0;
    DensityMatrix tmp = rho;
    apply_gadget(tmp, generator, angle);
    out.matrix += term.coeff * tmp.matrix;
  }
  return out;
}

std::size_t FrequencySupport::product_size() const {
  std::size_t n = 1;
  for (const auto& s : per_param) n *= s.size();
  return n;
}

std::vector<std::vector<long>> FrequencySupport::integer_per_param(double tol) const {
  std::vector<std::vector<long>> out;
  for (const auto& s : per_param) {
    std::vector<long> v;
    for (double f : s) {
      const double r = std::round(f);
      if (std::abs(f - r) > tol)
        throw ValidationError("frequency support not commensurate with integer grid");
      v.push_back(long(r));
    }
    out.push_back(std::move(v));
  }
  return out;
}

double FrequencySupport::max_abs(int param) const {
  double m = 0.0;
  for (double f : per_param.at(param)) m = std::max(m, std::abs(f));
  return m;
}

bool FrequencySupport::contains(const std::vector<long>& k, double tol) const {
  if (k.size() != per_param.size()) return false;
  for (std::size_t i = 0; i < k.size(); ++i) {
    bool found = false;
    for (double f : per_param[i])
      if (std::abs(f - double(k[i])) < tol) found = true;
    if (!found) return false;
  }
  return true;
}

namespace {

std::vector<double> dedup_sorted(std::vector<double> v, double tol) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || std::abs(x - out.back()) > tol) out.push_back(x);
  return out;
}

// Minkowski sum of per-gadget frequency sets.
std::vector<double> minkowski(const std::vector<std::vector<double>>& sets, double tol) {
  std::vector<double> acc = {0.0};
  for (const auto& s : sets) {
    std::vector<double> next;
    next.reserve(acc.size() * s.size());
    for (double a : acc)
      for (double b : s) next.push_back(a + b);
    acc = dedup_sorted(std::move(next), tol);
  }
  return acc;
}

// Per-parameter Minkowski sum over the in-cone gadgets for one observable
// term (or all gadgets when no lightcone is supplied).
std::vector<std::vector<double>> support_one_term(
    const ParamCircuit& c, const Lightcone* lc,
    const std::function<std::vector<double>(const PauliGadget&)>& gadget_set) {
  std::vector<std::vector<std::vector<double>>> sets(c.m_params);
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const auto& g = c.gates[gi];
    if (!g.is_gadget() || !g.gadget().angle.is_parameterized()) continue;
    if (lc && !lc->gate_in_cone[gi]) continue;
    sets[*g.gadget().angle.param_index].push_back(gadget_set(g.gadget()));
  }
  std::vector<std::vector<double>> out(c.m_params);
  for (int i = 0; i < c.m_params; ++i) out[i] = minkowski(sets[i], 1e-9);
  return out;
}

// A sum observable's landscape is the sum of per-term landscapes, so the
// support is the per-parameter union of per-term supports (each term with its
// own lightcone).
FrequencySupport support_impl(
    const ParamCircuit& c, const Observable* obs,
    const std::function<std::vector<double>(const PauliGadget&)>& gadget_set) {
  FrequencySupport fs;
  if (obs == nullptr) {
    fs.per_param = support_one_term(c, nullptr, gadget_set);
    return fs;
  }
  std::vector<Observable> parts;
  if (obs->is_pauli()) {
    parts.push_back(*obs);
  } else {
    for (const auto& t : obs->terms())
      parts.push_back(Observable::pauli(PauliString(obs->n_qubits(), 0, t.z_mask, 0)));
  }
  std::vector<std::vector<double>> acc(c.m_params);
  for (const auto& part : parts) {
    Lightcone lc = lightcone(c, part);
    auto s = support_one_term(c, &lc, gadget_set);
    for (int i = 0; i < c.m_params; ++i)
      acc[i].insert(acc[i].end(), s[i].begin(), s[i].end());
  }
  for (int i = 0; i < c.m_params; ++i) {
    if (acc[i].empty()) acc[i].push_back(0.0);
    fs.per_param.push_back(dedup_sorted(std::move(acc[i]), 1e-9));
  }
  return fs;
}

}  // namespace

FrequencySupport frequency_support(const ParamCircuit& c, const Observable* obs) {
  return support_impl(c, obs, [](const PauliGadget& g) {
    const double a = g.angle.multiplier;
    return std::vector<double>{-a, 0.0, a};
  });
}

std::vector<double> eigenvalue_difference_spectrum(const Eigen::MatrixXcd& h, double tol) {
  if (h.rows() != h.cols()) throw ValidationError("eigenvalue differences: non-square input");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw ValidationError("eigenvalue differences: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  std::vector<double> diffs;
  diffs.reserve(ev.size() * ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    for (Eigen::Index j = 0; j < ev.size(); ++j) diffs.push_back(ev(i) - ev(j));
  return dedup_sorted(std::move(diffs), tol);
}

FrequencySupport frequency_support_eigenvalue_oracle(const ParamCircuit& c,
                                                     const Observable* obs) {
  return support_impl(c, obs, [](const PauliGadget& g) {
    // Gadget exp(-i a theta P / 2) = exp(i theta H) with H = -a P / 2,
    // restricted to its support qubits to keep the eigenproblem small.
    const auto support = g.generator.support();
    const int k = std::max<std::size_t>(support.size(), 1);
    std::uint64_t lx = 0, lz = 0;
    for (std::size_t j = 0; j < support.size(); ++j) {
      const PauliLetter l = g.generator.letter(support[j]);
      if (l == PauliLetter::X || l == PauliLetter::Y) lx |= 1ULL << j;
      if (l == PauliLetter::Z || l == PauliLetter::Y) lz |= 1ULL << j;
    }
    const PauliString local(k, lx, lz, std::popcount(lx & lz));
    const Eigen::MatrixXcd h = (-g.angle.multiplier / 2.0) * local.dense();
    return eigenvalue_difference_spectrum(h);
  });
}

int walsh_hadamard_rank(const std::vector<double>& eigs, double tol) {
  const std::size_t n = eigs.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw ValidationError("walsh_hadamard_rank: length must be a power of two");
  std::vector<double> a = eigs;
  for (std::size_t len = 1; len < n; len <<= 1) {
    for (std::size_t i = 0; i < n; i += len << 1) {
      for (std::size_t j = i; j < i + len; ++j) {
        const double u = a[j], v = a[j + len];
        a[j] = u + v;
        a[j + len] = u - v;
      }
    }
  }
  int rank = 0;
  for (std::size_t j = 1; j < n; ++j)
    if (std::abs(a[j] / double(n)) > tol) ++rank;
  return rank;
}

double TrigForm::evaluate(const std::vector<double>& theta) const {
  double acc = 0.0;
  for (const auto& [k, coeff] : monomials) {
    double term = coeff;
    for (std::size_t s = 0; s < k.size(); ++s) {
      const double t = theta.at(slot_param[s]);
      if (k[s] == 1)
        term *= std::cos(t);
      else if (k[s] == -1)
        term *= std::sin(t);
    }
    acc += term;
  }
  return acc;
}

std::map<std::vector<long>, std::complex<double>> TrigForm::exponential_coefficients() const {
  std::map<std::vector<long>, cd> out;
  for (const auto& [k, coeff] : monomials) {
    // Expand each slot factor into e^{+-i theta}: 1 -> {0:1},
    // cos -> {+1: 1/2, -1: 1/2}, sin -> {+1: -i/2, -1: +i/2}.
    std::vector<std::pair<std::vector<long>, cd>> partial = {
        {std::vector<long>(m_params, 0), cd(coeff, 0.0)}};
    for (std::size_t s = 0; s < k.size(); ++s) {
      if (k[s] == 0) continue;
      std::vector<std::pair<std::vector<long>, cd>> next;
      for (auto& [freq, w] : partial) {
        for (int sign : {+1, -1}) {
          std::vector<long> f = freq;
          f[slot_param[s]] += sign;
          cd factor = (k[s] == 1) ? cd(0.5, 0.0)
                                  : (sign == 1 ? cd(0.0, -0.5) : cd(0.0, 0.5));
          next.emplace_back(std::move(f), w * factor);
        }
      }
      partial.swap(next);
    }
    for (auto& [freq, w] : partial) out[freq] += w;
  }
  // Drop numerically vanished entries.
  for (auto it = out.begin(); it != out.end();)
    it = (std::abs(it->second) < 1e-14) ? out.erase(it) : std::next(it);
  return out;
}

bool TrigForm::operator==(const TrigForm& rhs) const {
  if (m_params != rhs.m_params || slot_param != rhs.slot_param) return false;
  auto nonzero = [](const std::map<std::vector<int>, double>& m) {
    std::map<std::vector<int>, double> out;
    for (const auto& [k, v] : m)
      if (std::abs(v) > 1e-9) out[k] = v;
    return out;
  };
  const auto a = nonzero(monomials), b = nonzero(rhs.monomials);
  if (a.size() != b.size()) return false;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end() || std::abs(it->second - v) > 1e-9) return false;
  }
  return true;
}

double stabilizer_expectation(const PauliString& p, const InitialState& s) {
  if (!p.is_hermitian()) throw ValidationError("stabilizer_expectation: non-Hermitian Pauli");
  const double sign = p.coefficient().real();
  switch (s.kind) {
    case InitialState::Kind::Zeros:
    case InitialState::Kind::Basis: {
      if (!p.is_diagonal()) return 0.0;
      const std::uint64_t bits = s.kind == InitialState::Kind::Zeros ? 0 : s.bits;
      return sign * (std::popcount(bits & p.z_mask()) % 2 ? -1.0 : 1.0);
    }
    case InitialState::Kind::Plus: {
      if (p.z_mask() != 0) return 0.0;  // any Z or Y letter kills <+|P|+>
      return sign;
    }
  }
  throw ValidationError("unknown initial state");
}

TrigForm exact_trig_form(const ParamCircuit& c, const PauliString& observable) {
  c.validate();
  if (observable.n_qubits() != c.n_qubits)
    throw ValidationError("exact_trig_form: observable size mismatch");
  if (!observable.is_hermitian())
    throw ValidationError("exact_trig_form: observable must be Hermitian");

  // Slots: parameterized gadgets in circuit order.
  std::vector<int> slot_of_gate(c.gates.size(), -1);
  std::vector<int> slot_param;
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const auto& g = c.gates[gi];
    if (g.is_gadget() && g.gadget().angle.is_parameterized()) {
      const auto& e = g.gadget().angle;
      if (std::abs(std::abs(e.multiplier) - 1.0) > 1e-12)
        throw HypothesisError("exact_trig_form: gadget multiplier must be +-1");
      if (std::abs(e.offset) > 1e-12)
        throw HypothesisError("exact_trig_form: gadget offset must be 0");
      slot_of_gate[gi] = int(slot_param.size());
      slot_param.push_back(*e.param_index);
    } else if (g.is_gadget()) {
      if (!is_clifford_angle(g.gadget().angle.offset))
        throw HypothesisError("exact_trig_form: fixed gadget angle must be a multiple of pi/2");
    } else if (!g.fixed().is_clifford) {
      throw HypothesisError("exact_trig_form: non-Clifford fixed gate");
    }
  }
  const int n_slots = int(slot_param.size());

  struct Term {
    std::vector<int> k;  // per-slot monomial
    PauliString p;
    double sign;
  };
  std::vector<Term> terms = {{std::vector<int>(n_slots, 0), observable, 1.0}};

  auto merge = [&]() {
    std::map<std::pair<std::vector<int>, std::string>, Term> merged;
    for (auto& t : terms) {
      // Canonical key: monomial + letters; fold the +-1 string coefficient
      // into the sign so equal operators combine.
      const double coeff = t.p.coefficient().real();
      PauliString bare(t.p.n_qubits(), t.p.x_mask(), t.p.z_mask(),
                       std::popcount(t.p.x_mask() & t.p.z_mask()));
      auto key = std::make_pair(t.k, bare.to_string());
      auto it = merged.find(key);
      if (it == merged.end())
        merged.emplace(key, Term{t.k, bare, t.sign * coeff});
      else
        it->second.sign += t.sign * coeff;
    }
    terms.clear();
    for (auto& [key, t] : merged)
      if (std::abs(t.sign) > 1e-12) terms.push_back(std::move(t));
  };

  for (int gi = int(c.gates.size()) - 1; gi >= 0; --gi) {
    const auto& g = c.gates[gi];
    if (!g.is_gadget()) {
      for (auto& t : terms) t.p = clifford_conjugate_back(g.fixed(), t.p);
      continue;
    }
    const auto& gen = g.gadget().generator;
    const bool parameterized = g.gadget().angle.is_parameterized();
    std::vector<Term> next;
    next.reserve(terms.size() * 2);
    for (auto& t : terms) {
      if (gen.commutes_with(t.p)) {
        next.push_back(std::move(t));
        continue;
      }
      // e^{i phi P/2} Q e^{-i phi P/2} = cos(phi) Q + sin(phi) (i P Q)
      const PauliString branched = (gen * t.p).times_i();
      if (parameterized) {
        const double a = g.gadget().angle.multiplier;  // +-1
        Term tc = t;
        tc.k[slot_of_gate[gi]] = 1;  // cos(a theta) = cos(theta)
        next.push_back(std::move(tc));
        Term ts{t.k, branched, t.sign * a};  // sin(a theta) = a sin(theta)
        ts.k[slot_of_gate[gi]] = -1;
        next.push_back(std::move(ts));
      } else {
        const double phi = g.gadget().angle.offset;
        const double cphi = std::round(std::cos(phi));
        const double sphi = std::round(std::sin(phi));
        if (cphi != 0.0) {
          Term tc = t;
          tc.sign *= cphi;
          next.push_back(std::move(tc));
        }
        if (sphi != 0.0) next.push_back(Term{t.k, branched, t.sign * sphi});
      }
    }
    terms.swap(next);
    merge();
  }

  TrigForm form;
  form.m_params = c.m_params;
  form.slot_param = slot_param;
  for (const auto& t : terms) {
    const double v = t.sign * stabilizer_expectation(t.p, c.initial_state);
    if (v != 0.0) form.monomials[t.k] += v;
  }
  for (auto it = form.monomials.begin(); it != form.monomials.end();)
    it = (std::abs(it->second) < 1e-12) ? form.monomials.erase(it) : std::next(it);
  return form;
}

}  // namespace qsl
