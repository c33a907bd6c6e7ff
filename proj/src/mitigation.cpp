#include "qsl/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsl/errors.hpp"
#include "qsl/rng.hpp"

namespace qsl {

namespace {

using cd = std::complex<double>;

}  // namespace

MitigationMethod mitigation_method_from_string(const std::string& s) {
  if (s == "none") return MitigationMethod::None;
  if (s == "filter") return MitigationMethod::Filter;
  if (s == "threshold_hard") return MitigationMethod::ThresholdHard;
  if (s == "threshold_soft") return MitigationMethod::ThresholdSoft;
  if (s == "round_reconstruct") return MitigationMethod::RoundReconstruct;
  throw ValidationError("unknown mitigation method '" + s + "'");
}

std::string to_string(MitigationMethod m) {
  switch (m) {
    case MitigationMethod::None: return "none";
    case MitigationMethod::Filter: return "filter";
    case MitigationMethod::ThresholdHard: return "threshold_hard";
    case MitigationMethod::ThresholdSoft: return "threshold_soft";
    case MitigationMethod::RoundReconstruct: return "round_reconstruct";
  }
  return "?";
}

MitigationConfig mitigation_preset(const std::string& name) {
  MitigationConfig cfg;
  if (name == "ucc") {
    cfg.method = MitigationMethod::Filter;
    cfg.b = 3.0;
    cfg.cdr.enabled = true;
    cfg.cdr.d_keep = 2;
    cfg.cdr.size = 32;
    return cfg;
  }
  if (name == "qaoa") {
    cfg.method = MitigationMethod::ThresholdHard;
    cfg.b = 10.0;
    cfg.cdr.enabled = true;
    cfg.cdr.d_keep = 10;
    cfg.cdr.size = 48;
    cfg.cdr.post_select_fraction = 0.5;
    return cfg;
  }
  throw ValidationError("unknown mitigation preset '" + name + "'");
}

Spectrum filter_support(const Spectrum& s, const FrequencySupport& support) {
  if (int(support.per_param.size()) != s.grid.m)
    throw ValidationError("filter_support: parameter count mismatch");
  const auto int_support = support.integer_per_param();
  for (int i = 0; i < s.grid.m; ++i)
    for (long f : int_support[i])
      if (std::abs(f) > s.grid.resolution())
        throw ValidationError("filter_support: support exceeds grid resolution");
  Spectrum out = s;
  const long pts = s.grid.points();
  for (long flat = 0; flat < pts; ++flat) {
    const auto k = s.freq_at(flat);
    for (int a = 0; a < s.grid.m; ++a) {
      if (std::find(int_support[a].begin(), int_support[a].end(), k[a]) ==
          int_support[a].end()) {
        out.coeffs[flat] = 0.0;
        break;
      }
    }
  }
  return out;
}

double threshold_value(const Spectrum& s, double b) {
  if (b <= 0.0) throw ValidationError("threshold multiplier must be positive");
  std::vector<double> mags(s.coeffs.size());
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) mags[i] = std::abs(s.coeffs[i]);
  std::sort(mags.begin(), mags.end());
  // Lower middle value for even counts.
  const double median = mags[(mags.size() - 1) / 2];
  return b * median;
}

Spectrum threshold(const Spectrum& s, double b, bool soft) {
  const double t = threshold_value(s, b);
  Spectrum out = s;
  for (auto& c : out.coeffs) {
    const double mag = std::abs(c);
    if (soft)
      c *= (mag > 0.0) ? std::max(1.0 - t / mag, 0.0) : 0.0;
    else if (mag <= t)
      c = 0.0;
  }
  return out;
}

TrigForm round_reconstruct(const Spectrum& s, const ParamCircuit& c,
                           const PauliString& observable) {
  c.validate();
  if (s.grid.m != c.m_params)
    throw ValidationError("round_reconstruct: grid parameter count mismatch");
  // Hypotheses: every fixed gate Clifford, each parameter on exactly one
  // gadget with multiplier +-1 and zero offset, stabiliser input.
  std::vector<int> gadget_of_param(c.m_params, -1);
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const auto& g = c.gates[gi];
    if (g.is_gadget() && g.gadget().angle.is_parameterized()) {
      const auto& e = g.gadget().angle;
      if (std::abs(std::abs(e.multiplier) - 1.0) > 1e-12 || std::abs(e.offset) > 1e-12)
        throw HypothesisError("round_reconstruct: gadget must have multiplier +-1, offset 0");
      if (gadget_of_param[*e.param_index] != -1)
        throw HypothesisError("round_reconstruct: parameter appears on several gadgets");
      gadget_of_param[*e.param_index] = int(gi);
    } else if (g.is_gadget()) {
      if (!is_clifford_angle(g.gadget().angle.offset))
        throw HypothesisError("round_reconstruct: fixed gadget angle not Clifford");
    } else if (!g.fixed().is_clifford) {
      throw HypothesisError("round_reconstruct: non-Clifford fixed gate");
    }
  }
  for (int i = 0; i < c.m_params; ++i)
    if (gadget_of_param[i] == -1)
      throw HypothesisError("round_reconstruct: parameter without gadget");
  if (!observable.is_hermitian())
    throw ValidationError("round_reconstruct: observable must be Hermitian");

  // Slot order matches exact_trig_form: parameterized gadgets in circuit
  // order.
  std::vector<int> slot_param;
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi)
    if (c.gates[gi].is_gadget() && c.gates[gi].gadget().angle.is_parameterized())
      slot_param.push_back(*c.gates[gi].gadget().angle.param_index);

  const int m = c.m_params;
  TrigForm form;
  form.m_params = m;
  form.slot_param = slot_param;

  // Monomial conversion per axis from the exponential coefficients restricted
  // to {-1, 0, 1}^m: c'_1 = c_0, c'_cos = c_+ + c_-, c'_sin = i (c_+ - c_-).
  std::vector<int> digits(m, 0);  // 0 -> const, 1 -> cos, 2 -> sin
  for (;;) {
    cd acc = 0.0;
    // Sum over the exponential corners contributing to this monomial.
    std::vector<long> k(m, 0);
    std::vector<int> corner(m, 0);
    for (;;) {
      bool skip = false;
      cd weight = 1.0;
      for (int a = 0; a < m; ++a) {
        if (digits[a] == 0) {
          if (corner[a] != 0) skip = true;
          k[a] = 0;
        } else {
          k[a] = corner[a] == 0 ? 1 : -1;
          if (digits[a] == 2) weight *= (k[a] == 1) ? cd(0.0, 1.0) : cd(0.0, -1.0);
        }
      }
      if (!skip) acc += weight * s.at(k);
      int a = m - 1;
      for (; a >= 0; --a) {
        if (digits[a] == 0) continue;
        if (corner[a] == 0) {
          corner[a] = 1;
          break;
        }
        corner[a] = 0;
      }
      if (a < 0) break;
    }
    const double rounded = std::clamp(std::round(acc.real()), -1.0, 1.0);
    if (rounded != 0.0) {
      // Slot key in the same layout as exact_trig_form (slot s covers
      // parameter slot_param[s]; 1:1 here).
      std::vector<int> key(m, 0);
      for (int a = 0; a < m; ++a) {
        int slot = -1;
        for (std::size_t si = 0; si < slot_param.size(); ++si)
          if (slot_param[si] == a) slot = int(si);
        key[slot] = digits[a] == 1 ? 1 : digits[a] == 2 ? -1 : 0;
      }
      form.monomials[key] = rounded;
    }
    int a = m - 1;
    for (; a >= 0; --a) {
      if (digits[a] < 2) {
        digits[a]++;
        break;
      }
      digits[a] = 0;
    }
    if (a < 0) break;
  }
  return form;
}

std::vector<CdrPair> cdr_training_set(const ParamCircuit& c, const NoiseSpec& noise,
                                      const Observable& obs, const std::vector<double>& theta,
                                      int d_keep, int size, std::uint64_t seed, long shots,
                                      double post_select_fraction) {
  if (size < 2) throw ValidationError("cdr_training_set: need size >= 2");
  if (post_select_fraction <= 0.0 || post_select_fraction > 1.0)
    throw ValidationError("cdr_training_set: post-select fraction in (0, 1]");
  std::vector<CdrPair> pairs;
  pairs.reserve(size);
  for (int i = 0; i < size; ++i) {
    const auto proj = nearest_clifford_projection(c, theta, d_keep, derive_seed(seed, i));
    const PureState psi = run_statevector(proj.circuit);
    CdrPair pair;
    pair.f_exact = obs.expectation(psi);
    const DensityMatrix rho = run_density(proj.circuit, noise, proj.theta_c);
    std::mt19937_64 eng = make_engine(seed, 0xCD0000ULL + std::uint64_t(i));
    pair.f_noisy = measure_observable(rho, obs, shots, eng);
    pairs.push_back(pair);
  }
  if (post_select_fraction < 1.0) {
    std::sort(pairs.begin(), pairs.end(), [](const CdrPair& a, const CdrPair& b) {
      return std::abs(a.f_exact) > std::abs(b.f_exact);
    });
    const std::size_t keep =
        std::max<std::size_t>(2, std::size_t(std::ceil(post_select_fraction * pairs.size())));
    pairs.resize(std::min(keep, pairs.size()));
  }
  double lo = pairs[0].f_exact, hi = pairs[0].f_exact;
  for (const auto& p : pairs) {
    lo = std::min(lo, p.f_exact);
    hi = std::max(hi, p.f_exact);
  }
  if (hi - lo < 1e-12)
    throw ValidationError("cdr_training_set: degenerate training set (all f_C equal)");
  return pairs;
}

CdrModel cdr_fit(const std::vector<CdrPair>& pairs) {
  if (pairs.size() < 2) throw ValidationError("cdr_fit: need at least two pairs");
  double lo = pairs[0].f_noisy, hi = pairs[0].f_noisy;
  for (const auto& p : pairs) {
    lo = std::min(lo, p.f_noisy);
    hi = std::max(hi, p.f_noisy);
  }
  if (hi - lo < 1e-12) throw ValidationError("cdr_fit: degenerate noisy values");

  // Weighted least squares for (a, a'); weights 1/max(|r|, eps) give the L1
  // solution in the IRLS limit. Start from the plain least-squares solution,
  // which also resolves ties.
  const double eps = 1e-8;
  auto solve_weighted = [&](const std::vector<double>& w, double& a, double& ap) {
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double x = pairs[i].f_noisy, y = pairs[i].f_exact;
      sw += w[i];
      sx += w[i] * x;
      sy += w[i] * y;
      sxx += w[i] * x * x;
      sxy += w[i] * x * y;
    }
    const double det = sw * sxx - sx * sx;
    if (std::abs(det) < 1e-14) throw ValidationError("cdr_fit: singular system");
    a = (sw * sxy - sx * sy) / det;
    ap = (sxx * sy - sx * sxy) / det;
  };

  std::vector<double> w(pairs.size(), 1.0);
  double a = 1.0, ap = 0.0;
  solve_weighted(w, a, ap);
  bool converged = false;
  for (int iter = 0; iter < 50; ++iter) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double r = pairs[i].f_exact - a * pairs[i].f_noisy - ap;
      w[i] = 1.0 / std::max(std::abs(r), eps);
    }
    double na = a, nap = ap;
    solve_weighted(w, na, nap);
    const double delta = std::abs(na - a) + std::abs(nap - ap);
    a = na;
    ap = nap;
    if (delta < 1e-12) {
      converged = true;
      break;
    }
  }
  CdrModel model;
  model.ls_fallback = !converged;
  if (!converged) {
    std::fill(w.begin(), w.end(), 1.0);
    solve_weighted(w, a, ap);
  }
  model.a = a;
  model.a_prime = ap;
  model.training_size = int(pairs.size());
  double res = 0.0;
  for (const auto& p : pairs) res += std::abs(p.f_exact - a * p.f_noisy - ap);
  model.residual = res / double(pairs.size());
  return model;
}

Similarity similarity(const Landscape& a, const Landscape& b) {
  if (!(a.grid == b.grid)) throw ValidationError("similarity: grid mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0, dist = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
    const double diff = a.values[i] - b.values[i];
    dist += diff * diff;
  }
  Similarity s;
  s.euclidean = std::sqrt(dist);
  if (na > 0.0 && nb > 0.0) s.cosine = dot / (std::sqrt(na) * std::sqrt(nb));
  return s;
}

namespace {

// Grid points whose bound gadget angles are all multiples of pi/2 can join
// the training set for free (their exact value is classically computable and
// the noisy value was already sampled).
std::vector<CdrPair> grid_clifford_pairs(const ParamCircuit& c, const Observable& obs,
                                         const Landscape& noisy) {
  std::vector<CdrPair> out;
  const long pts = noisy.grid.points();
  for (long i = 0; i < pts; ++i) {
    const auto theta = noisy.grid.theta(i);
    const BoundCircuit bc = qsl::bind(c, theta);
    bool clifford = true;
    for (const auto& g : bc.gates)
      if (g.is_gadget() && !is_clifford_angle(g.gadget().angle)) clifford = false;
    if (!clifford) continue;
    CdrPair p;
    p.f_exact = obs.expectation(run_statevector(bc));
    p.f_noisy = noisy.values[i];
    out.push_back(p);
  }
  return out;
}

}  // namespace

MitigationResult mitigate(const Landscape& noisy, const MitigationConfig& cfg,
                          const FrequencySupport& support, const CdrInputs* cdr_inputs,
                          const Landscape* exact_reference) {
  if (exact_reference && !(exact_reference->grid == noisy.grid))
    throw ValidationError("mitigate: reference grid mismatch");

  const Spectrum raw = dft(noisy);
  std::optional<Spectrum> ref_spec;
  if (exact_reference) ref_spec = dft(*exact_reference);

  MitigationReport report;
  report.method = to_string(cfg.method);
  report.b = cfg.b;
  report.merits_before = figures_of_merit(raw, support, ref_spec ? &*ref_spec : nullptr);

  Spectrum shaped = raw;
  switch (cfg.method) {
    case MitigationMethod::None:
      break;
    case MitigationMethod::Filter:
      shaped = filter_support(raw, support);
      break;
    case MitigationMethod::ThresholdHard:
      report.threshold = threshold_value(raw, cfg.b);
      shaped = threshold(raw, cfg.b, /*soft=*/false);
      break;
    case MitigationMethod::ThresholdSoft:
      report.threshold = threshold_value(raw, cfg.b);
      shaped = threshold(raw, cfg.b, /*soft=*/true);
      break;
    case MitigationMethod::RoundReconstruct: {
      if (!cdr_inputs || !cdr_inputs->circuit || !cdr_inputs->observable)
        throw ValidationError("round_reconstruct mitigation needs circuit inputs");
      const TrigForm form =
          round_reconstruct(raw, *cdr_inputs->circuit, cdr_inputs->observable->pauli_string());
      const auto exp_coeffs = form.exponential_coefficients();
      shaped.coeffs.assign(shaped.coeffs.size(), 0.0);
      for (const auto& [k, v] : exp_coeffs) shaped.coeffs[shaped.flat_index(k)] = v;
      break;
    }
  }

  Landscape mitigated = idft(shaped);
  mitigated.shots = noisy.shots;
  mitigated.seed = noisy.seed;
  mitigated.observable_desc = noisy.observable_desc;
  mitigated.circuit_hash = noisy.circuit_hash;

  if (cfg.cdr.enabled) {
    if (!cdr_inputs || !cdr_inputs->circuit || !cdr_inputs->noise || !cdr_inputs->observable)
      throw ValidationError("CDR needs circuit, noise and observable inputs");
    auto pairs = cdr_training_set(*cdr_inputs->circuit, *cdr_inputs->noise,
                                  *cdr_inputs->observable, cdr_inputs->theta, cfg.cdr.d_keep,
                                  cfg.cdr.size, cfg.seed, cdr_inputs->shots,
                                  cfg.cdr.post_select_fraction);
    if (cfg.cdr.reuse_grid_cliffords) {
      const auto extra = grid_clifford_pairs(*cdr_inputs->circuit, *cdr_inputs->observable, noisy);
      pairs.insert(pairs.end(), extra.begin(), extra.end());
    }
    const CdrModel model = cdr_fit(pairs);
    report.cdr = model;
    for (double& v : mitigated.values) v = model.a * v + model.a_prime;
  }

  report.merits_after = figures_of_merit(dft(mitigated), support, ref_spec ? &*ref_spec : nullptr);
  if (exact_reference) {
    report.vs_exact_before = similarity(noisy, *exact_reference);
    report.vs_exact_after = similarity(mitigated, *exact_reference);
  }

  MitigationResult out;
  out.mitigated = std::move(mitigated);
  out.report = std::move(report);
  return out;
}

}  // namespace qsl
