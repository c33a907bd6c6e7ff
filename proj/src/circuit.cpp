#include "qsl/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "qsl/errors.hpp"
#include "qsl/rng.hpp"

namespace qsl {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXcd kron2(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

double ParamExpr::bind(const std::vector<double>& theta) const {
  if (!param_index) return offset;
  if (*param_index < 0 || std::size_t(*param_index) >= theta.size())
    throw ValidationError("ParamExpr: parameter index out of range");
  return multiplier * theta[*param_index] + offset;
}

std::vector<int> GateNode::targets() const {
  if (is_gadget()) return gadget().generator.support();
  return fixed().targets;
}

PureState InitialState::prepare(int n_qubits) const {
  switch (kind) {
    case Kind::Zeros: return PureState::zeros(n_qubits);
    case Kind::Basis: return PureState::basis(n_qubits, bits);
    case Kind::Plus: return PureState::plus(n_qubits);
  }
  throw ValidationError("unknown initial state");
}

std::string InitialState::describe() const {
  switch (kind) {
    case Kind::Zeros: return "zeros";
    case Kind::Plus: return "plus";
    case Kind::Basis: return "basis:" + std::to_string(bits);
  }
  return "?";
}

void ParamCircuit::validate() const {
  if (n_qubits < 1) throw ValidationError("circuit needs at least one qubit");
  if (m_params < 0) throw ValidationError("negative parameter count");
  for (const auto& g : gates) {
    if (g.is_gadget()) {
      const auto& pg = g.gadget();
      if (pg.generator.n_qubits() != n_qubits)
        throw ValidationError("gadget generator size mismatch");
      if (!pg.generator.is_hermitian() || pg.generator.coefficient() != std::complex<double>(1.0))
        throw ValidationError("gadget generator must be a +1-phase Hermitian Pauli");
      if (pg.angle.is_parameterized()) {
        if (*pg.angle.param_index < 0 || *pg.angle.param_index >= m_params)
          throw ValidationError("gadget parameter index out of range");
        if (pg.angle.multiplier == 0.0)
          throw ValidationError("parameterized gadget needs nonzero multiplier");
      }
    } else {
      const auto& f = g.fixed();
      if (f.targets.empty()) throw ValidationError("fixed gate needs targets");
      for (std::size_t i = 0; i < f.targets.size(); ++i) {
        if (f.targets[i] < 0 || f.targets[i] >= n_qubits)
          throw ValidationError("fixed gate target out of range");
        for (std::size_t j = i + 1; j < f.targets.size(); ++j)
          if (f.targets[i] == f.targets[j])
            throw ValidationError("fixed gate duplicate target");
      }
      const Eigen::Index dim = Eigen::Index(1) << f.targets.size();
      if (f.matrix.rows() != dim || f.matrix.cols() != dim)
        throw ValidationError("fixed gate matrix dimension mismatch");
    }
  }
  if (initial_state.kind == InitialState::Kind::Basis &&
      initial_state.bits >= (std::uint64_t(1) << n_qubits))
    throw ValidationError("initial basis state out of range");
}

int ParamCircuit::gadget_count() const {
  int c = 0;
  for (const auto& g : gates) c += g.is_gadget() ? 1 : 0;
  return c;
}

FixedGate named_gate(const std::string& name, const std::vector<int>& targets) {
  using cd = std::complex<double>;
  const cd i01(0.0, 1.0);
  Eigen::MatrixXcd m;
  std::size_t arity = 1;
  if (name == "h") {
    m.resize(2, 2);
    m << 1, 1, 1, -1;
    m /= std::sqrt(2.0);
  } else if (name == "s") {
    m.resize(2, 2);
    m << 1, 0, 0, i01;
  } else if (name == "sdg") {
    m.resize(2, 2);
    m << 1, 0, 0, -i01;
  } else if (name == "x") {
    m.resize(2, 2);
    m << 0, 1, 1, 0;
  } else if (name == "y") {
    m.resize(2, 2);
    m << 0, -i01, i01, 0;
  } else if (name == "z") {
    m.resize(2, 2);
    m << 1, 0, 0, -1;
  } else if (name == "cx" || name == "cnot") {
    // control = targets[0] (local bit 0), target = targets[1] (local bit 1)
    arity = 2;
    m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1;  // |c=0,t=0>
    m(2, 2) = 1;  // |c=0,t=1>
    m(3, 1) = 1;  // |c=1,t=0> -> |c=1,t=1>
    m(1, 3) = 1;
  } else if (name == "cz") {
    arity = 2;
    m = Eigen::MatrixXcd::Identity(4, 4);
    m(3, 3) = -1;
  } else if (name == "swap") {
    arity = 2;
    m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 2) = 1;
    m(2, 1) = 1;
    m(3, 3) = 1;
  } else {
    throw ValidationError("unknown gate name '" + name + "'");
  }
  if (targets.size() != arity)
    throw ValidationError("gate '" + name + "' expects " + std::to_string(arity) + " target(s)");
  FixedGate g;
  g.name = (name == "cnot") ? "cx" : name;
  g.matrix = m;
  g.targets = targets;
  g.is_clifford = true;
  return g;
}

bool matrix_is_clifford(const Eigen::MatrixXcd& u, double tol) {
  const Eigen::Index dim = u.rows();
  int k = 0;
  while ((Eigen::Index(1) << k) < dim) ++k;
  if ((Eigen::Index(1) << k) != dim || u.cols() != dim) return false;
  // Conjugate each single-qubit X and Z generator and match against the
  // signed Pauli basis on k qubits.
  for (int q = 0; q < k; ++q) {
    for (PauliLetter l : {PauliLetter::X, PauliLetter::Z}) {
      const Eigen::MatrixXcd conj = u * PauliString::single(k, q, l).dense() * u.adjoint();
      bool matched = false;
      for (std::uint64_t x = 0; x < std::uint64_t(dim) && !matched; ++x)
        for (std::uint64_t z = 0; z < std::uint64_t(dim) && !matched; ++z) {
          const Eigen::MatrixXcd pd = PauliString(k, x, z, 0).dense();
          if ((conj - pd).cwiseAbs().maxCoeff() < tol ||
              (conj + pd).cwiseAbs().maxCoeff() < tol)
            matched = true;
        }
      if (!matched) return false;
    }
  }
  return true;
}

PauliString clifford_conjugate_back(const FixedGate& gate, const PauliString& p) {
  // Restrict to the gate's targets, conjugate densely, match to a signed Pauli.
  const int k = int(gate.targets.size());
  const std::uint64_t kdim = std::uint64_t(1) << k;
  std::uint64_t lx = 0, lz = 0;
  for (int j = 0; j < k; ++j) {
    PauliLetter l = p.letter(gate.targets[j]);
    if (l == PauliLetter::X || l == PauliLetter::Y) lx |= 1ULL << j;
    if (l == PauliLetter::Z || l == PauliLetter::Y) lz |= 1ULL << j;
  }
  int lphase = std::popcount(lx & lz);  // Hermitian local factor
  const PauliString local(k, lx, lz, lphase);
  const Eigen::MatrixXcd conj = gate.matrix.adjoint() * local.dense() * gate.matrix;
  for (std::uint64_t x = 0; x < kdim; ++x)
    for (std::uint64_t z = 0; z < kdim; ++z) {
      PauliString cand(k, x, z, std::popcount(x & z));
      const Eigen::MatrixXcd cd = cand.dense();
      double dplus = (conj - cd).cwiseAbs().maxCoeff();
      double dminus = (conj + cd).cwiseAbs().maxCoeff();
      if (dplus < 1e-9 || dminus < 1e-9) {
        // Stitch the local result back into the full string.
        std::uint64_t gx = p.x_mask(), gz = p.z_mask();
        int phase = p.phase_power() - lphase;
        for (int j = 0; j < k; ++j) {
          const std::uint64_t bit = std::uint64_t(1) << gate.targets[j];
          gx &= ~bit;
          gz &= ~bit;
          if ((x >> j) & 1) gx |= bit;
          if ((z >> j) & 1) gz |= bit;
        }
        phase += std::popcount(x & z);
        if (dminus < 1e-9) phase += 2;
        return PauliString(p.n_qubits(), gx, gz, phase);
      }
    }
  throw HypothesisError("gate '" + gate.name + "' is not Clifford on this input");
}

BoundCircuit bind(const ParamCircuit& c, const std::vector<double>& theta) {
  if (int(theta.size()) != c.m_params)
    throw ValidationError("bind: theta length != parameter count");
  BoundCircuit out;
  out.n_qubits = c.n_qubits;
  out.initial_state = c.initial_state;
  out.gates.reserve(c.gates.size());
  for (const auto& g : c.gates) {
    if (g.is_gadget()) {
      out.gates.push_back(BoundGate{BoundGadget{g.gadget().generator, g.gadget().angle.bind(theta)}});
    } else {
      out.gates.push_back(BoundGate{g.fixed()});
    }
  }
  return out;
}

std::vector<std::vector<double>> parameter_multipliers(const ParamCircuit& c) {
  std::vector<std::vector<double>> out(c.m_params);
  for (const auto& g : c.gates) {
    if (!g.is_gadget()) continue;
    const auto& a = g.gadget().angle;
    if (a.is_parameterized()) out[*a.param_index].push_back(std::abs(a.multiplier));
  }
  return out;
}

std::vector<int> Lightcone::params() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < param_in_cone.size(); ++i)
    if (param_in_cone[i]) out.push_back(int(i));
  return out;
}

namespace {

Lightcone lightcone_targets_only(const ParamCircuit& c, const Observable& obs) {
  Lightcone lc;
  lc.exact = false;
  lc.gate_in_cone.assign(c.gates.size(), false);
  lc.param_in_cone.assign(c.m_params, false);
  std::set<int> support;
  for (int q : obs.support()) support.insert(q);
  for (int gi = int(c.gates.size()) - 1; gi >= 0; --gi) {
    const auto ts = c.gates[gi].targets();
    bool hit = false;
    for (int t : ts)
      if (support.count(t)) hit = true;
    if (!hit) continue;
    lc.gate_in_cone[gi] = true;
    for (int t : ts) support.insert(t);
    if (c.gates[gi].is_gadget() && c.gates[gi].gadget().angle.is_parameterized())
      lc.param_in_cone[*c.gates[gi].gadget().angle.param_index] = true;
  }
  return lc;
}

}  // namespace

Lightcone lightcone(const ParamCircuit& c, const Observable& obs, std::size_t cap) {
  if (obs.n_qubits() != c.n_qubits) throw ValidationError("lightcone: size mismatch");
  // Track the set of Pauli letter patterns reachable by back-propagating the
  // observable; a gadget enters the cone only if its generator anticommutes
  // with some reachable operator.
  std::set<std::pair<std::uint64_t, std::uint64_t>> ops;  // (x, z) masks
  if (obs.is_pauli()) {
    ops.insert({obs.pauli_string().x_mask(), obs.pauli_string().z_mask()});
  } else {
    for (const auto& t : obs.terms()) ops.insert({0, t.z_mask});
  }

  Lightcone lc;
  lc.gate_in_cone.assign(c.gates.size(), false);
  lc.param_in_cone.assign(c.m_params, false);

  for (int gi = int(c.gates.size()) - 1; gi >= 0; --gi) {
    if (ops.size() > cap) return lightcone_targets_only(c, obs);
    const auto& g = c.gates[gi];
    if (g.is_gadget()) {
      const auto& gen = g.gadget().generator;
      std::set<std::pair<std::uint64_t, std::uint64_t>> next;
      bool hit = false;
      for (const auto& [x, z] : ops) {
        const bool anti =
            (std::popcount(x & gen.z_mask()) + std::popcount(z & gen.x_mask())) % 2 == 1;
        next.insert({x, z});
        if (anti) {
          hit = true;
          next.insert({x ^ gen.x_mask(), z ^ gen.z_mask()});
        }
      }
      ops.swap(next);
      if (hit) {
        lc.gate_in_cone[gi] = true;
        if (g.gadget().angle.is_parameterized())
          lc.param_in_cone[*g.gadget().angle.param_index] = true;
      }
    } else {
      const auto& f = g.fixed();
      std::uint64_t tmask = 0;
      for (int t : f.targets) tmask |= std::uint64_t(1) << t;
      std::set<std::pair<std::uint64_t, std::uint64_t>> next;
      bool hit = false;
      try {
        for (const auto& [x, z] : ops) {
          if (((x | z) & tmask) == 0) {
            next.insert({x, z});
            continue;
          }
          hit = true;
          PauliString p(c.n_qubits, x, z, std::popcount(x & z));
          PauliString q = clifford_conjugate_back(f, p);
          next.insert({q.x_mask(), q.z_mask()});
        }
      } catch (const HypothesisError&) {
        // Non-Clifford fixed gate: exact propagation unavailable, use the
        // conservative target cone.
        return lightcone_targets_only(c, obs);
      }
      ops.swap(next);
      if (hit) lc.gate_in_cone[gi] = true;
    }
  }
  return lc;
}

double round_to_clifford_angle(double angle) {
  const double step = kPi / 2.0;
  const double lo = std::floor(angle / step) * step;
  const double hi = lo + step;
  const double dlo = angle - lo, dhi = hi - angle;
  if (std::abs(dlo - dhi) < 1e-12) return std::abs(lo) <= std::abs(hi) ? lo : hi;
  return dlo < dhi ? lo : hi;
}

bool is_clifford_angle(double angle, double tol) {
  const double r = std::remainder(angle, kPi / 2.0);
  return std::abs(r) < tol;
}

CliffordProjection nearest_clifford_projection(const ParamCircuit& c,
                                               const std::vector<double>& theta,
                                               int keep, std::uint64_t seed) {
  if (keep < 0 || keep > c.gadget_count())
    throw ValidationError("nearest_clifford_projection: keep count out of range");
  BoundCircuit bc = qsl::bind(c, theta);

  std::vector<int> candidates;  // gate indices with a non-Clifford bound angle
  for (std::size_t gi = 0; gi < bc.gates.size(); ++gi)
    if (bc.gates[gi].is_gadget() && !is_clifford_angle(bc.gates[gi].gadget().angle))
      candidates.push_back(int(gi));

  std::mt19937_64 eng = make_engine(seed, 0x6366ULL);
  std::vector<int> kept;
  if (int(candidates.size()) > keep) {
    // Floyd-style sample without replacement, then sort for determinism.
    std::vector<int> pool = candidates;
    for (int i = 0; i < keep; ++i) {
      std::uniform_int_distribution<std::size_t> dist(i, pool.size() - 1);
      std::swap(pool[i], pool[dist(eng)]);
    }
    kept.assign(pool.begin(), pool.begin() + keep);
    std::sort(kept.begin(), kept.end());
  } else {
    kept = candidates;
  }

  std::set<int> keep_set(kept.begin(), kept.end());
  for (std::size_t gi = 0; gi < bc.gates.size(); ++gi) {
    if (!bc.gates[gi].is_gadget() || keep_set.count(int(gi))) continue;
    auto& gad = std::get<BoundGadget>(bc.gates[gi].op);
    gad.angle = round_to_clifford_angle(gad.angle);
  }

  // Per-parameter rounded values, read back from each parameter's first
  // gadget (exact whenever the parameter's gadgets were rounded consistently).
  std::vector<double> theta_c = theta;
  std::vector<bool> seen(c.m_params, false);
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    if (!c.gates[gi].is_gadget()) continue;
    const auto& expr = c.gates[gi].gadget().angle;
    if (!expr.is_parameterized() || seen[*expr.param_index]) continue;
    seen[*expr.param_index] = true;
    const double bound_angle = bc.gates[gi].gadget().angle;
    theta_c[*expr.param_index] = (bound_angle - expr.offset) / expr.multiplier;
  }

  CliffordProjection out;
  out.circuit = std::move(bc);
  out.theta_c = std::move(theta_c);
  out.kept_gates = std::move(kept);
  return out;
}

namespace {

// Formats an angle, preferring exact multiples of pi with small denominators.
std::string qasm_angle(double angle) {
  for (int den = 1; den <= 16; ++den) {
    const double scaled = angle * den / kPi;
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) < 1e-12 && std::abs(rounded) < 1e6) {
      const long num = long(rounded);
      if (num == 0) return "0";
      std::ostringstream os;
      if (num == -1)
        os << "-pi";
      else if (num == 1)
        os << "pi";
      else
        os << num << "*pi";
      if (den > 1) os << "/" << den;
      return os.str();
    }
  }
  std::ostringstream os;
  os.precision(17);
  os << angle;
  return os.str();
}

void emit_gadget_qasm(std::ostringstream& os, const BoundGadget& g) {
  const auto support = g.generator.support();
  if (support.empty()) return;  // identity up to phase
  if (support.size() == 1) {
    const int q = support[0];
    const char axis = letter_to_char(g.generator.letter(q));
    os << (axis == 'X' ? "rx" : axis == 'Y' ? "ry" : "rz") << "(" << qasm_angle(g.angle)
       << ") q[" << q << "];\n";
    return;
  }
  // Basis changes onto Z, CX ladder, rz, and undo.
  for (int q : support) {
    switch (g.generator.letter(q)) {
      case PauliLetter::X: os << "h q[" << q << "];\n"; break;
      case PauliLetter::Y: os << "sdg q[" << q << "];\nh q[" << q << "];\n"; break;
      default: break;
    }
  }
  for (std::size_t i = 0; i + 1 < support.size(); ++i)
    os << "cx q[" << support[i] << "],q[" << support[i + 1] << "];\n";
  os << "rz(" << qasm_angle(g.angle) << ") q[" << support.back() << "];\n";
  for (std::size_t i = support.size() - 1; i > 0; --i)
    os << "cx q[" << support[i - 1] << "],q[" << support[i] << "];\n";
  for (int q : support) {
    switch (g.generator.letter(q)) {
      case PauliLetter::X: os << "h q[" << q << "];\n"; break;
      case PauliLetter::Y: os << "h q[" << q << "];\ns q[" << q << "];\n"; break;
      default: break;
    }
  }
}

}  // namespace

std::string export_qasm(const BoundCircuit& c) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  os << "qreg q[" << c.n_qubits << "];\n";
  switch (c.initial_state.kind) {
    case InitialState::Kind::Zeros: break;
    case InitialState::Kind::Plus:
      for (int q = 0; q < c.n_qubits; ++q) os << "h q[" << q << "];\n";
      break;
    case InitialState::Kind::Basis:
      for (int q = 0; q < c.n_qubits; ++q)
        if ((c.initial_state.bits >> q) & 1) os << "x q[" << q << "];\n";
      break;
  }
  for (const auto& g : c.gates) {
    if (g.is_gadget()) {
      emit_gadget_qasm(os, g.gadget());
      continue;
    }
    const auto& f = g.fixed();
    if (f.name == "custom")
      throw ValidationError("export_qasm: unsupported gate kind 'custom'");
    os << f.name << " ";
    for (std::size_t i = 0; i < f.targets.size(); ++i) {
      if (i) os << ",";
      os << "q[" << f.targets[i] << "]";
    }
    os << ";\n";
  }
  return os.str();
}

PureState run_statevector(const BoundCircuit& c) {
  if (c.n_qubits > kMaxStatevectorQubits)
    throw ValidationError("statevector size limit exceeded");
  PureState psi = c.initial_state.prepare(c.n_qubits);
  for (const auto& g : c.gates) {
    if (g.is_gadget())
      apply_gadget(psi, g.gadget().generator, g.gadget().angle);
    else
      apply_gate(psi, g.fixed().matrix, g.fixed().targets);
  }
  return psi;
}

void Graph::validate() const {
  if (n < 1) throw ValidationError("graph needs nodes");
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw ValidationError("graph edge out of range");
    if (a == b) throw ValidationError("graph self-loop");
    auto key = std::minmax(a, b);
    if (!seen.insert(key).second) throw ValidationError("graph duplicate edge");
  }
}

bool Graph::is_regular(int degree) const {
  std::vector<int> deg(n, 0);
  for (auto [a, b] : edges) {
    deg[a]++;
    deg[b]++;
  }
  return std::all_of(deg.begin(), deg.end(), [&](int d) { return d == degree; });
}

bool Graph::is_triangle_free() const {
  std::vector<std::set<int>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  for (auto [a, b] : edges)
    for (int c : adj[a])
      if (c != b && adj[b].count(c)) return false;
  return true;
}

Graph random_regular_triangle_free_graph(int nodes, int degree, std::uint64_t seed) {
  if (nodes * degree % 2 != 0) throw ValidationError("nodes * degree must be even");
  if (degree >= nodes) throw ValidationError("degree too large");
  std::mt19937_64 eng = make_engine(seed, 0x47524150ULL);
  for (int attempt = 0; attempt < 200000; ++attempt) {
    // Configuration model: pair up stubs, reject on defects.
    std::vector<int> stubs;
    for (int v = 0; v < nodes; ++v)
      for (int d = 0; d < degree; ++d) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), eng);
    Graph g;
    g.n = nodes;
    bool ok = true;
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
      int a = stubs[i], b = stubs[i + 1];
      if (a == b) ok = false;
      auto key = std::minmax(a, b);
      if (ok && !seen.insert(key).second) ok = false;
      if (ok) g.edges.emplace_back(key.first, key.second);
    }
    if (!ok || !g.is_triangle_free()) continue;
    std::sort(g.edges.begin(), g.edges.end());
    return g;
  }
  throw ValidationError("failed to sample a triangle-free regular graph");
}

ParamCircuit build_simple_2q(int pad_cnot_pairs) {
  ParamCircuit c;
  c.n_qubits = 2;
  c.m_params = 2;
  c.gates.push_back(GateNode{PauliGadget{PauliString::from_string("YI"), ParamExpr::linear(0)}});
  c.gates.push_back(GateNode{PauliGadget{PauliString::from_string("IY"), ParamExpr::linear(1)}});
  for (int i = 0; i < pad_cnot_pairs; ++i) {
    c.gates.push_back(GateNode{named_gate("cx", {0, 1})});
    c.gates.push_back(GateNode{named_gate("cx", {0, 1})});
  }
  return c;
}

ParamCircuit build_ucc_2q() {
  ParamCircuit c;
  c.n_qubits = 2;
  c.m_params = 2;
  c.gates.push_back(GateNode{PauliGadget{PauliString::from_string("XY"), ParamExpr::linear(0)}});
  c.gates.push_back(GateNode{PauliGadget{PauliString::from_string("YX"), ParamExpr::linear(1)}});
  return c;
}

ParamCircuit build_ucc_h2_singles(std::uint64_t seed) {
  ParamCircuit c;
  c.n_qubits = 4;
  c.m_params = 2;
  c.initial_state = {InitialState::Kind::Basis, 0b0011};  // qubits 0,1 occupied
  // Singles excitations 0->2 and 1->3, two gadgets per parameter.
  c.gates.push_back(GateNode{PauliGadget{PauliString::from_string("XZYI"), ParamExpr::linear(0, 1.0)}});
  c.gates.push_back(GateNode{PauliGadget{PauliString::from_string("YZXI"), ParamExpr::linear(0, -1.0)}});
  c.gates.push_back(GateNode{PauliGadget{PauliString::from_string("IXZY"), ParamExpr::linear(1, 1.0)}});
  c.gates.push_back(GateNode{PauliGadget{PauliString::from_string("IYZX"), ParamExpr::linear(1, -1.0)}});
  // Doubles excitation block: fixed angles, independently drawn around pi/4.
  std::mt19937_64 eng = make_engine(seed, 0x55434332ULL);
  std::normal_distribution<double> angle_dist(kPi / 4.0, 0.1);
  const char* doubles[] = {"YXXX", "XYXX", "XXYX", "XXXY", "YYYX", "YYXY", "YXYY", "XYYY"};
  for (const char* s : doubles) {
    const double a = angle_dist(eng);
    c.gates.push_back(GateNode{PauliGadget{PauliString::from_string(s), ParamExpr::fixed(a)}});
  }
  return c;
}

ParamCircuit build_qaoa_maxcut(const Graph& g, int layers) {
  g.validate();
  if (layers < 1) throw ValidationError("qaoa needs at least one layer");
  if (g.n > kMaxStatevectorQubits) throw ValidationError("graph too large");
  ParamCircuit c;
  c.n_qubits = g.n;
  c.m_params = 2 * layers;  // (gamma_1, beta_1, gamma_2, beta_2, ...)
  c.initial_state = {InitialState::Kind::Plus, 0};
  for (int l = 0; l < layers; ++l) {
    const int gamma = 2 * l, beta = 2 * l + 1;
    for (auto [a, b] : g.edges) {
      std::uint64_t z = (std::uint64_t(1) << a) | (std::uint64_t(1) << b);
      c.gates.push_back(GateNode{PauliGadget{PauliString(g.n, 0, z, 0), ParamExpr::linear(gamma)}});
    }
    for (int q = 0; q < g.n; ++q) {
      c.gates.push_back(GateNode{
          PauliGadget{PauliString::single(g.n, q, PauliLetter::X), ParamExpr::linear(beta)}});
    }
  }
  return c;
}

ParamCircuit build_experiment(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "simple_2q") return build_simple_2q(cfg.pad_cnot_pairs);
  if (name == "ucc_2q") return build_ucc_2q();
  if (name == "ucc_h2_singles") return build_ucc_h2_singles(cfg.seed);
  if (name == "qaoa_maxcut") {
    if (!cfg.graph) throw ValidationError("qaoa_maxcut needs a graph");
    return build_qaoa_maxcut(*cfg.graph, cfg.qaoa_layers);
  }
  throw ValidationError("unknown experiment '" + name + "'");
}

Observable default_observable(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "simple_2q") return Observable::pauli(PauliString::from_string("ZZ"));
  if (name == "ucc_2q") return Observable::pauli(PauliString::from_string("ZI"));
  if (name == "ucc_h2_singles") return Observable::pauli(PauliString::from_string("ZIZI"));
  if (name == "qaoa_maxcut") {
    if (!cfg.graph) throw ValidationError("qaoa_maxcut needs a graph");
    std::vector<ZTerm> terms;
    for (auto [a, b] : cfg.graph->edges)
      terms.push_back({1.0, (std::uint64_t(1) << a) | (std::uint64_t(1) << b)});
    return Observable::diag_z(cfg.graph->n, std::move(terms));
  }
  throw ValidationError("unknown experiment '" + name + "'");
}

}  // namespace qsl
