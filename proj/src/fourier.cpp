#include "qsl/fourier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qsl/errors.hpp"
#include "qsl/rng.hpp"

namespace qsl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cd = std::complex<double>;

// Twiddle matrix W[k][j] = e^{-s i 2pi k j / d}, s = +1 forward.
Eigen::MatrixXcd twiddle(int d, int sign) {
  Eigen::MatrixXcd w(d, d);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) {
      const double phase = -sign * kTwoPi * double(k) * double(j) / double(d);
      w(k, j) = std::polar(1.0, phase);
    }
  return w;
}

// Applies the d x d matrix along one axis of the row-major tensor.
void apply_axis(std::vector<cd>& x, const Grid& g, int axis, const Eigen::MatrixXcd& w) {
  const long pts = g.points();
  const int d = g.d;
  long stride = 1;
  for (int a = g.m - 1; a > axis; --a) stride *= d;
  const long block = stride * d;
  std::vector<cd> in(d), out(d);
  for (long base = 0; base < pts; base += block) {
    for (long off = 0; off < stride; ++off) {
      for (int j = 0; j < d; ++j) in[j] = x[base + off + j * stride];
      for (int k = 0; k < d; ++k) {
        cd acc = 0.0;
        for (int j = 0; j < d; ++j) acc += w(k, j) * in[j];
        out[k] = acc;
      }
      for (int k = 0; k < d; ++k) x[base + off + k * stride] = out[k];
    }
  }
}

}  // namespace

int Spectrum::freq_to_index(long k) const {
  const int n = grid.resolution();
  if (k < -n || k > n) throw ValidationError("frequency outside grid resolution");
  return k >= 0 ? int(k) : int(k + grid.d);
}

long Spectrum::flat_index(const std::vector<long>& k) const {
  if (int(k.size()) != grid.m) throw ValidationError("frequency vector length mismatch");
  long flat = 0;
  for (int a = 0; a < grid.m; ++a) flat = flat * grid.d + freq_to_index(k[a]);
  return flat;
}

std::vector<long> Spectrum::freq_at(long flat) const {
  const auto j = grid.unflatten(flat);
  std::vector<long> k(grid.m);
  for (int a = 0; a < grid.m; ++a) k[a] = j[a] <= grid.resolution() ? j[a] : j[a] - grid.d;
  return k;
}

std::complex<double> Spectrum::at(const std::vector<long>& k) const {
  return coeffs[flat_index(k)];
}

double Spectrum::power() const {
  double p = 0.0;
  for (const cd& c : coeffs) p += std::norm(c);
  return p;
}

std::vector<cd> dft_tensor(const std::vector<cd>& x, const Grid& g) {
  if (long(x.size()) != g.points()) throw ValidationError("dft: tensor size mismatch");
  std::vector<cd> out = x;
  const Eigen::MatrixXcd w = twiddle(g.d, +1);
  for (int axis = 0; axis < g.m; ++axis) apply_axis(out, g, axis, w);
  const double scale = 1.0 / double(g.points());
  for (cd& c : out) c *= scale;
  return out;
}

std::vector<cd> idft_tensor(const std::vector<cd>& c, const Grid& g) {
  if (long(c.size()) != g.points()) throw ValidationError("idft: tensor size mismatch");
  std::vector<cd> out = c;
  const Eigen::MatrixXcd w = twiddle(g.d, -1);
  for (int axis = 0; axis < g.m; ++axis) apply_axis(out, g, axis, w);
  return out;
}

Spectrum dft(const Landscape& l) {
  Spectrum s;
  s.grid = l.grid;
  s.provenance = l.circuit_hash;
  std::vector<cd> x(l.values.begin(), l.values.end());
  s.coeffs = dft_tensor(x, l.grid);
  return s;
}

Landscape idft(const Spectrum& s, double imag_tol) {
  const std::vector<cd> x = idft_tensor(s.coeffs, s.grid);
  Landscape l;
  l.grid = s.grid;
  l.circuit_hash = s.provenance;
  l.values.resize(x.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(x[i].imag()));
    l.values[i] = x[i].real();
  }
  if (worst > imag_tol)
    throw ValidationError("idft: spectrum is not conjugate-symmetric (imag residue)");
  return l;
}

MeritReport figures_of_merit(const Spectrum& s, const FrequencySupport& support,
                             const Spectrum* reference) {
  if (int(support.per_param.size()) != s.grid.m)
    throw ValidationError("figures_of_merit: support parameter count mismatch");
  const auto int_support = support.integer_per_param();
  for (int i = 0; i < s.grid.m; ++i)
    for (long f : int_support[i])
      if (std::abs(f) > s.grid.resolution())
        throw ValidationError("figures_of_merit: support exceeds grid resolution");
  if (reference && !(reference->grid == s.grid))
    throw ValidationError("figures_of_merit: reference grid mismatch");

  MeritReport r;
  double on_dev = 0.0;
  const long pts = s.grid.points();
  for (long flat = 0; flat < pts; ++flat) {
    const auto k = s.freq_at(flat);
    bool onsup = true;
    for (int a = 0; a < s.grid.m && onsup; ++a)
      if (std::find(int_support[a].begin(), int_support[a].end(), k[a]) ==
          int_support[a].end())
        onsup = false;
    const double p = std::norm(s.coeffs[flat]);
    if (onsup) {
      r.p_s += p;
      if (reference) on_dev += std::norm(s.coeffs[flat] - reference->coeffs[flat]);
    } else {
      r.p_n += p;
    }
  }
  if (reference) {
    r.p_n_on_support = on_dev;
    r.p_n_off_support = r.p_n;
  }
  if (r.p_n > 1e-30)
    r.snr = r.p_s / r.p_n;
  else
    r.no_noise_detected = true;
  return r;
}

double shot_noise_sigma(const Landscape& l, long n_s) {
  if (n_s < 1) throw ValidationError("shot_noise_sigma: need n_s >= 1");
  const double dm = double(l.grid.points());
  double norm2 = 0.0;
  for (double v : l.values) {
    if (std::abs(v) > 1.0 + 1e-9)
      throw ValidationError("shot_noise_sigma: values must lie in [-1, 1]");
    norm2 += v * v;
  }
  norm2 = std::min(norm2, dm);
  return std::sqrt(1.0 - norm2 / dm) / std::sqrt(2.0 * double(n_s) * dm);
}

std::complex<double> PauliCoeffVector::inner(const PauliCoeffVector& rhs) const {
  if (!(grid == rhs.grid) || n_qubits != rhs.n_qubits || paulis.size() != rhs.paulis.size())
    throw ValidationError("Pauli coefficient vectors are not aligned");
  return (coeffs.conjugate().cwiseProduct(rhs.coeffs)).sum();
}

PauliCoeffVector pauli_coefficient_vector(const ParamCircuit& c, const NoiseSpec* noise,
                                          const Grid& g, int max_exhaustive,
                                          int sample_paulis, std::uint64_t seed) {
  c.validate();
  if (g.m != c.m_params) throw ValidationError("grid parameter count mismatch");
  PauliCoeffVector v;
  v.grid = g;
  v.n_qubits = c.n_qubits;

  const std::uint64_t dim = std::uint64_t(1) << c.n_qubits;
  if (c.n_qubits <= max_exhaustive) {
    for (std::uint64_t x = 0; x < dim; ++x)
      for (std::uint64_t z = 0; z < dim; ++z)
        v.paulis.emplace_back(c.n_qubits, x, z, std::popcount(x & z));
  } else {
    // Random-subset estimate, flagged by `exhaustive = false`. The identity is
    // always included (it carries the trace term).
    v.exhaustive = false;
    v.paulis.push_back(PauliString::identity(c.n_qubits));
    std::mt19937_64 eng = make_engine(seed, 0x50434ULL);
    std::uniform_int_distribution<std::uint64_t> dist(0, dim - 1);
    while (int(v.paulis.size()) < sample_paulis + 1) {
      const std::uint64_t x = dist(eng), z = dist(eng);
      if (x == 0 && z == 0) continue;
      v.paulis.emplace_back(c.n_qubits, x, z, std::popcount(x & z));
    }
  }

  const long pts = g.points();
  Eigen::MatrixXd values(pts, Eigen::Index(v.paulis.size()));
  NoiseSpec empty_noise;
  const NoiseSpec& ns = noise ? *noise : empty_noise;
  for (long i = 0; i < pts; ++i) {
    const auto theta = g.theta(i);
    const DensityMatrix rho = run_density(qsl::bind(c, theta), ns, theta);
    for (std::size_t p = 0; p < v.paulis.size(); ++p)
      values(i, Eigen::Index(p)) = expectation_pauli(rho, v.paulis[p]);
  }

  v.coeffs.resize(pts, Eigen::Index(v.paulis.size()));
  for (std::size_t p = 0; p < v.paulis.size(); ++p) {
    std::vector<cd> x(pts);
    for (long i = 0; i < pts; ++i) x[i] = values(i, Eigen::Index(p));
    const auto spec = dft_tensor(x, g);
    for (long i = 0; i < pts; ++i) v.coeffs(i, Eigen::Index(p)) = spec[i];
  }
  return v;
}

double average_fidelity(const PauliCoeffVector& exact, const PauliCoeffVector& noisy) {
  if (!exact.exhaustive || !noisy.exhaustive)
    throw ValidationError("average_fidelity: estimate mode requires matched sampling; "
                          "use exhaustive vectors for exact results");
  const cd val = exact.inner(noisy) / double(std::uint64_t(1) << exact.n_qubits);
  if (std::abs(val.imag()) > 1e-9)
    throw ValidationError("average_fidelity: non-negligible imaginary part");
  return val.real();
}

double average_purity(const PauliCoeffVector& noisy) {
  return noisy.coeffs.squaredNorm() / double(std::uint64_t(1) << noisy.n_qubits);
}

BootstrapResult bootstrap_error(const Landscape& l, const FrequencySupport& support,
                                int resamples, std::uint64_t seed) {
  if (!l.records) throw ValidationError("bootstrap_error: landscape has no shot records");
  if (resamples < 2) throw ValidationError("bootstrap_error: need >= 2 resamples");
  const long pts = l.grid.points();
  const long n_s = l.records->shots;
  const bool pauli_style = l.records->pauli_style();

  std::vector<double> ps(resamples), pn(resamples);
  std::vector<double> snrs;
  Eigen::MatrixXd re(resamples, pts);

  Landscape work = l;
  work.records.reset();
  for (int r = 0; r < resamples; ++r) {
    std::mt19937_64 eng = make_engine(seed, 0xB007 + std::uint64_t(r));
    for (long i = 0; i < pts; ++i) {
      if (pauli_style) {
        const double p_hat = double(l.records->plus_counts[i]) / double(n_s);
        std::binomial_distribution<long> dist(n_s, std::clamp(p_hat, 0.0, 1.0));
        work.values[i] = 2.0 * double(dist(eng)) / double(n_s) - 1.0;
      } else {
        const auto& vals = l.records->values[i];
        std::uniform_int_distribution<std::size_t> dist(0, vals.size() - 1);
        double acc = 0.0;
        for (long s = 0; s < n_s; ++s) acc += vals[dist(eng)];
        work.values[i] = acc / double(n_s);
      }
    }
    const Spectrum spec = dft(work);
    const MeritReport merit = figures_of_merit(spec, support);
    ps[r] = merit.p_s;
    pn[r] = merit.p_n;
    if (merit.snr) snrs.push_back(*merit.snr);
    for (long i = 0; i < pts; ++i) re(r, i) = spec.coeffs[i].real();
  }

  auto stddev = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / double(v.size() - 1));
  };

  BootstrapResult out;
  out.resamples = resamples;
  out.p_s_std = stddev(ps);
  out.p_n_std = stddev(pn);
  if (int(snrs.size()) == resamples) out.snr_std = stddev(snrs);
  out.coeff_re_std.resize(pts);
  for (long i = 0; i < pts; ++i) {
    std::vector<double> col(resamples);
    for (int r = 0; r < resamples; ++r) col[r] = re(r, i);
    out.coeff_re_std[i] = stddev(col);
  }
  return out;
}

}  // namespace qsl
