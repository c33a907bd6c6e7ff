#include "qsl/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "qsl/errors.hpp"
#include "qsl/rng.hpp"

namespace qsl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void parallel_for(long count, int threads, const std::function<void(long)>& body) {
  int hw = int(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  int nt = threads > 0 ? threads : std::min(hw, 8);
  if (nt <= 1 || count < 64) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<long> cursor{0};
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const long i = cursor.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

long Grid::points() const {
  long p = 1;
  for (int i = 0; i < m; ++i) p *= d;
  return p;
}

std::vector<int> Grid::unflatten(long flat) const {
  std::vector<int> j(m, 0);
  for (int a = m - 1; a >= 0; --a) {
    j[a] = int(flat % d);
    flat /= d;
  }
  return j;
}

long Grid::flatten(const std::vector<int>& j) const {
  long flat = 0;
  for (int a = 0; a < m; ++a) flat = flat * d + j[a];
  return flat;
}

std::vector<double> Grid::theta(long flat) const {
  const auto j = unflatten(flat);
  std::vector<double> t(m);
  for (int a = 0; a < m; ++a) t[a] = kTwoPi * j[a] / double(d);
  return t;
}

Grid make_grid(int m, int d) {
  if (m < 1) throw ValidationError("grid needs m >= 1");
  if (d < 3 || d % 2 == 0)
    throw ValidationError("grid needs odd d >= 3 (d = 2N + 1 for resolution N)");
  return Grid{m, d};
}

Landscape sample_exact(const ParamCircuit& c, const Observable& obs, const Grid& g) {
  c.validate();
  if (g.m != c.m_params) throw ValidationError("grid parameter count mismatch");
  if (c.n_qubits > kMaxStatevectorQubits)
    throw ValidationError("statevector size limit exceeded");
  Landscape l;
  l.grid = g;
  l.values.resize(g.points());
  l.shots = kExactShots;
  l.observable_desc = obs.describe();
  const long pts = g.points();
  for (long i = 0; i < pts; ++i) {
    const PureState psi = run_statevector(qsl::bind(c, g.theta(i)));
    l.values[i] = obs.expectation(psi);
  }
  return l;
}

DensityMatrix run_density(const BoundCircuit& c, const NoiseSpec& noise,
                          const std::vector<double>& theta) {
  if (c.n_qubits > kMaxDensityQubits)
    throw ValidationError("density matrix size limit exceeded");
  DensityMatrix rho = DensityMatrix::from_pure(c.initial_state.prepare(c.n_qubits));
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const auto& g = c.gates[gi];
    if (g.is_gadget())
      apply_gadget(rho, g.gadget().generator, g.gadget().angle);
    else
      apply_gate(rho, g.fixed().matrix, g.fixed().targets);
    for (const Channel* ch : noise.after_gate(int(gi))) apply_channel(rho, *ch, &theta);
  }
  for (const Channel* ch : noise.terminal()) apply_channel(rho, *ch, &theta);
  return rho;
}

MeasureRecord measure_observable_record(const DensityMatrix& rho, const Observable& obs,
                                        long shots, std::mt19937_64& eng) {
  MeasureRecord rec;
  if (shots == kExactShots) {
    rec.mean = obs.expectation(rho);
    return rec;
  }
  if (shots < 1) throw ValidationError("shot count must be >= 1 or exact");
  if (obs.is_pauli()) {
    // Two-outcome measurement: P(+1) = (1 + <O>)/2.
    const double exp_val = obs.expectation(rho);
    const double p_plus = std::clamp((1.0 + exp_val) / 2.0, 0.0, 1.0);
    std::binomial_distribution<long> dist(shots, p_plus);
    rec.plus_count = dist(eng);
    rec.mean = 2.0 * double(rec.plus_count) / double(shots) - 1.0;
    return rec;
  }
  // Z-diagonal Hamiltonian: sample bitstrings from the diagonal of rho.
  const std::uint64_t dim = rho.dim();
  std::vector<double> probs(dim);
  double total = 0.0;
  for (std::uint64_t b = 0; b < dim; ++b) {
    probs[b] = std::max(rho.matrix(b, b).real(), 0.0);
    total += probs[b];
  }
  if (total <= 0.0) throw ValidationError("density matrix has no probability mass");
  std::discrete_distribution<std::uint64_t> dist(probs.begin(), probs.end());
  rec.values.reserve(shots);
  double acc = 0.0;
  for (long s = 0; s < shots; ++s) {
    const double v = obs.value_on_basis(dist(eng));
    rec.values.push_back(v);
    acc += v;
  }
  rec.mean = acc / double(shots);
  return rec;
}

double measure_observable(const DensityMatrix& rho, const Observable& obs, long shots,
                          std::mt19937_64& eng) {
  return measure_observable_record(rho, obs, shots, eng).mean;
}

Landscape sample_noisy(const ParamCircuit& c, const NoiseSpec& noise, const Observable& obs,
                       const Grid& g, long shots, std::uint64_t seed,
                       const SampleOptions& opts) {
  c.validate();
  noise.validate(c.n_qubits, c.m_params);
  if (g.m != c.m_params) throw ValidationError("grid parameter count mismatch");
  if (c.n_qubits > kMaxDensityQubits)
    throw ValidationError("density matrix size limit exceeded");
  if (shots < 0) throw ValidationError("invalid shot count");

  Landscape l;
  l.grid = g;
  l.shots = shots;
  l.seed = seed;
  l.observable_desc = obs.describe();
  const long pts = g.points();
  l.values.assign(pts, 0.0);
  if (opts.keep_records && shots != kExactShots) {
    ShotRecords rec;
    rec.shots = shots;
    if (obs.is_pauli())
      rec.plus_counts.assign(pts, 0);
    else
      rec.values.assign(pts, {});
    l.records = std::move(rec);
  }

  parallel_for(pts, opts.threads, [&](long i) {
    const auto theta = g.theta(i);
    const DensityMatrix rho = run_density(qsl::bind(c, theta), noise, theta);
    std::mt19937_64 eng = make_engine(seed, std::uint64_t(i));
    const MeasureRecord rec = measure_observable_record(rho, obs, shots, eng);
    l.values[i] = rec.mean;
    if (l.records) {
      if (obs.is_pauli())
        l.records->plus_counts[i] = rec.plus_count;
      else
        l.records->values[i] = rec.values;
    }
  });
  return l;
}

}  // namespace qsl
