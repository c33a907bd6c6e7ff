#include "qsl/io.hpp"

#include <fstream>
#include <sstream>

#include "qsl/errors.hpp"

namespace qsl {

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string config_hash(const json& j) { return fnv1a_hex(j.dump()); }

json circuit_to_json(const ParamCircuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates) {
    if (g.is_gadget()) {
      const auto& pg = g.gadget();
      json jg{{"kind", "pauli_gadget"}, {"pauli", pg.generator.to_string()}};
      if (pg.angle.is_parameterized()) {
        jg["param"] = *pg.angle.param_index;
        jg["multiplier"] = pg.angle.multiplier;
      }
      jg["offset"] = pg.angle.offset;
      gates.push_back(jg);
    } else {
      const auto& f = g.fixed();
      json jg{{"kind", "fixed"}, {"name", f.name}, {"targets", f.targets}};
      if (f.name == "custom") {
        json rows = json::array();
        for (Eigen::Index r = 0; r < f.matrix.rows(); ++r) {
          json row = json::array();
          for (Eigen::Index cc = 0; cc < f.matrix.cols(); ++cc)
            row.push_back({f.matrix(r, cc).real(), f.matrix(r, cc).imag()});
          rows.push_back(row);
        }
        jg["matrix"] = rows;
      }
      gates.push_back(jg);
    }
  }
  return json{{"n_qubits", c.n_qubits},
              {"m_params", c.m_params},
              {"initial_state", c.initial_state.describe()},
              {"gates", gates}};
}

namespace {

InitialState initial_state_from_string(const std::string& s) {
  if (s == "zeros") return {InitialState::Kind::Zeros, 0};
  if (s == "plus") return {InitialState::Kind::Plus, 0};
  if (s.starts_with("basis:")) {
    const std::string rest = s.substr(6);
    std::uint64_t bits = 0;
    if (!rest.empty() && (rest[0] == '0' || rest[0] == '1') &&
        rest.find_first_not_of("01") == std::string::npos && rest.size() > 1) {
      // bitstring, qubit 0 first
      for (std::size_t q = 0; q < rest.size(); ++q)
        if (rest[q] == '1') bits |= std::uint64_t(1) << q;
    } else {
      bits = std::stoull(rest);
    }
    return {InitialState::Kind::Basis, bits};
  }
  throw ValidationError("unknown initial state '" + s + "'");
}

}  // namespace

ParamCircuit circuit_from_json(const json& j) {
  ParamCircuit c;
  c.n_qubits = j.at("n_qubits").get<int>();
  c.m_params = j.at("m_params").get<int>();
  if (j.contains("initial_state"))
    c.initial_state = initial_state_from_string(j.at("initial_state").get<std::string>());
  for (const auto& jg : j.at("gates")) {
    const std::string kind = jg.at("kind").get<std::string>();
    if (kind == "pauli_gadget") {
      PauliGadget pg;
      pg.generator = PauliString::from_string(jg.at("pauli").get<std::string>());
      if (pg.generator.n_qubits() != c.n_qubits)
        throw ValidationError("gadget pauli length != n_qubits");
      if (jg.contains("param"))
        pg.angle = ParamExpr::linear(jg.at("param").get<int>(),
                                     jg.value("multiplier", 1.0), jg.value("offset", 0.0));
      else
        pg.angle = ParamExpr::fixed(jg.value("offset", 0.0));
      c.gates.push_back(GateNode{pg});
    } else if (kind == "fixed") {
      const std::string name = jg.at("name").get<std::string>();
      const auto targets = jg.at("targets").get<std::vector<int>>();
      if (name == "custom") {
        FixedGate f;
        f.name = "custom";
        f.targets = targets;
        const auto& rows = jg.at("matrix");
        const Eigen::Index dim = Eigen::Index(rows.size());
        f.matrix.resize(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r)
          for (Eigen::Index cc = 0; cc < dim; ++cc)
            f.matrix(r, cc) = std::complex<double>(rows[r][cc][0].get<double>(),
                                                   rows[r][cc][1].get<double>());
        f.is_clifford = matrix_is_clifford(f.matrix);
        c.gates.push_back(GateNode{f});
      } else {
        c.gates.push_back(GateNode{named_gate(name, targets)});
      }
    } else {
      throw ValidationError("unknown gate kind '" + kind + "'");
    }
  }
  c.validate();
  return c;
}

json noise_to_json(const NoiseSpec& ns) {
  json channels = json::array();
  for (const auto& ch : ns.channels) {
    json jc;
    std::visit(
        [&](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, Depolarizing>) {
            jc["kind"] = "depolarizing";
            jc["p"] = m.p;
          } else if constexpr (std::is_same_v<T, PauliNoise>) {
            jc["kind"] = "pauli";
            jc["p"] = m.p;
            jc["pauli"] = m.pauli.to_string();
          } else if constexpr (std::is_same_v<T, AmplitudeDamping>) {
            jc["kind"] = "amplitude_damping";
            jc["gamma"] = m.gamma;
            jc["qubit"] = m.qubit;
          } else if constexpr (std::is_same_v<T, Coherent>) {
            jc["kind"] = "coherent";
            jc["epsilon"] = m.epsilon;
            jc["pauli"] = m.pauli.to_string();
          } else if constexpr (std::is_same_v<T, ParamDependentPauli>) {
            jc["kind"] = "param_dependent_pauli";
            jc["p0"] = m.p0;
            jc["alpha"] = m.alpha;
            jc["param"] = m.param_index;
            jc["pauli"] = m.pauli.to_string();
          }
        },
        ch.model);
    switch (ch.location.kind) {
      case ChannelLocation::Kind::AfterEveryGate: jc["location"] = "after_every_gate"; break;
      case ChannelLocation::Kind::Terminal: jc["location"] = "terminal"; break;
      case ChannelLocation::Kind::AfterGate:
        jc["location"] = json{{"after_gate", ch.location.gate_index}};
        break;
    }
    channels.push_back(jc);
  }
  return json{{"channels", channels}};
}

NoiseSpec noise_from_json(const json& j, int n_qubits, int m_params) {
  NoiseSpec ns;
  if (j.is_null()) return ns;
  for (const auto& jc : j.value("channels", json::array())) {
    Channel ch;
    const std::string kind = jc.at("kind").get<std::string>();
    if (kind == "depolarizing") {
      ch.model = Depolarizing{jc.at("p").get<double>()};
    } else if (kind == "pauli") {
      ch.model = PauliNoise{jc.at("p").get<double>(),
                            PauliString::from_string(jc.at("pauli").get<std::string>())};
    } else if (kind == "amplitude_damping") {
      ch.model = AmplitudeDamping{jc.at("gamma").get<double>(), jc.at("qubit").get<int>()};
    } else if (kind == "coherent") {
      ch.model = Coherent{jc.at("epsilon").get<double>(),
                          PauliString::from_string(jc.at("pauli").get<std::string>())};
    } else if (kind == "param_dependent_pauli") {
      ch.model = ParamDependentPauli{jc.at("p0").get<double>(), jc.value("alpha", 1.0),
                                     jc.value("param", 0),
                                     PauliString::from_string(jc.at("pauli").get<std::string>())};
    } else {
      throw ValidationError("unknown channel kind '" + kind + "'");
    }
    const auto& loc = jc.at("location");
    if (loc.is_string()) {
      const std::string ls = loc.get<std::string>();
      if (ls == "after_every_gate")
        ch.location = {ChannelLocation::Kind::AfterEveryGate, -1};
      else if (ls == "terminal")
        ch.location = {ChannelLocation::Kind::Terminal, -1};
      else
        throw ValidationError("unknown channel location '" + ls + "'");
    } else {
      ch.location = {ChannelLocation::Kind::AfterGate, loc.at("after_gate").get<int>()};
    }
    ns.channels.push_back(std::move(ch));
  }
  ns.validate(n_qubits, m_params);
  return ns;
}

json observable_to_json(const Observable& o) {
  if (o.is_pauli()) return json{{"pauli", o.pauli_string().to_string()}};
  json terms = json::array();
  for (const auto& t : o.terms()) {
    std::vector<int> qubits;
    for (int q = 0; q < o.n_qubits(); ++q)
      if ((t.z_mask >> q) & 1) qubits.push_back(q);
    terms.push_back(json{{"coeff", t.coeff}, {"qubits", qubits}});
  }
  return json{{"diag_z", terms}};
}

Observable observable_from_json(const json& j, int n_qubits) {
  if (j.is_string())
    return Observable::pauli(PauliString::from_string(j.get<std::string>()));
  if (j.contains("pauli"))
    return Observable::pauli(PauliString::from_string(j.at("pauli").get<std::string>()));
  if (j.contains("diag_z")) {
    std::vector<ZTerm> terms;
    for (const auto& jt : j.at("diag_z")) {
      ZTerm t;
      t.coeff = jt.value("coeff", 1.0);
      for (int q : jt.at("qubits").get<std::vector<int>>()) {
        if (q < 0 || q >= n_qubits) throw ValidationError("diag_z qubit out of range");
        t.z_mask |= std::uint64_t(1) << q;
      }
      terms.push_back(t);
    }
    return Observable::diag_z(n_qubits, std::move(terms));
  }
  throw ValidationError("observable JSON needs 'pauli' or 'diag_z'");
}

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [a, b] : g.edges) edges.push_back(json::array({a, b}));
  return json{{"n", g.n}, {"edges", edges}};
}

Graph graph_from_json(const json& j) {
  Graph g;
  g.n = j.at("n").get<int>();
  for (const auto& e : j.at("edges")) g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  g.validate();
  return g;
}

json grid_to_json(const Grid& g) { return json{{"m", g.m}, {"d", g.d}}; }

Grid grid_from_json(const json& j) {
  return make_grid(j.at("m").get<int>(), j.at("d").get<int>());
}

json landscape_to_json(const Landscape& l) {
  json j{{"grid", grid_to_json(l.grid)},
         {"shots", l.shots == kExactShots ? json("exact") : json(l.shots)},
         {"seed", l.seed},
         {"observable", l.observable_desc},
         {"circuit_hash", l.circuit_hash},
         {"values", l.values}};
  if (l.records && l.records->pauli_style())
    j["shot_records"] = json{{"shots", l.records->shots},
                             {"plus_counts", l.records->plus_counts}};
  return j;
}

Landscape landscape_from_json(const json& j) {
  Landscape l;
  l.grid = grid_from_json(j.at("grid"));
  l.shots = j.at("shots").is_string() ? kExactShots : j.at("shots").get<long>();
  l.seed = j.value("seed", std::uint64_t(0));
  l.observable_desc = j.value("observable", std::string());
  l.circuit_hash = j.value("circuit_hash", std::string());
  l.values = j.at("values").get<std::vector<double>>();
  if (long(l.values.size()) != l.grid.points())
    throw ValidationError("landscape value count does not match grid");
  if (j.contains("shot_records")) {
    ShotRecords rec;
    rec.shots = j["shot_records"].at("shots").get<long>();
    rec.plus_counts = j["shot_records"].at("plus_counts").get<std::vector<long>>();
    l.records = std::move(rec);
  }
  return l;
}

std::string landscape_to_csv(const Landscape& l) {
  std::ostringstream os;
  for (int a = 0; a < l.grid.m; ++a) os << "j" << a << ",";
  os << "value\n";
  os.precision(17);
  for (long i = 0; i < l.grid.points(); ++i) {
    for (int v : l.grid.unflatten(i)) os << v << ",";
    os << l.values[i] << "\n";
  }
  return os.str();
}

json spectrum_to_json(const Spectrum& s) {
  json coeffs = json::array();
  for (long flat = 0; flat < s.grid.points(); ++flat) {
    const auto c = s.coeffs[flat];
    if (std::abs(c) <= 1e-12) continue;
    coeffs.push_back(json{{"k", s.freq_at(flat)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return json{{"grid", grid_to_json(s.grid)},
              {"provenance", s.provenance},
              {"coeffs", coeffs}};
}

Spectrum spectrum_from_json(const json& j) {
  Spectrum s;
  s.grid = grid_from_json(j.at("grid"));
  s.provenance = j.value("provenance", std::string());
  s.coeffs.assign(s.grid.points(), 0.0);
  for (const auto& jc : j.at("coeffs")) {
    const auto k = jc.at("k").get<std::vector<long>>();
    s.coeffs[s.flat_index(k)] =
        std::complex<double>(jc.at("re").get<double>(), jc.at("im").get<double>());
  }
  return s;
}

std::string spectrum_to_csv(const Spectrum& s) {
  std::ostringstream os;
  for (int a = 0; a < s.grid.m; ++a) os << "k" << a << ",";
  os << "re,im,abs\n";
  os.precision(17);
  for (long flat = 0; flat < s.grid.points(); ++flat) {
    const auto c = s.coeffs[flat];
    for (long k : s.freq_at(flat)) os << k << ",";
    os << c.real() << "," << c.imag() << "," << std::abs(c) << "\n";
  }
  return os.str();
}

json support_to_json(const FrequencySupport& fs) {
  json arr = json::array();
  for (std::size_t i = 0; i < fs.per_param.size(); ++i)
    arr.push_back(json{{"param_index", i}, {"frequencies", fs.per_param[i]}});
  return arr;
}

FrequencySupport support_from_json(const json& j) {
  FrequencySupport fs;
  fs.per_param.resize(j.size());
  for (const auto& jp : j) {
    const std::size_t idx = jp.at("param_index").get<std::size_t>();
    if (idx >= fs.per_param.size()) throw ValidationError("support param index out of range");
    fs.per_param[idx] = jp.at("frequencies").get<std::vector<double>>();
  }
  return fs;
}

json merit_to_json(const MeritReport& m) {
  json j{{"P_S", m.p_s}, {"P_N", m.p_n}, {"no_noise_detected", m.no_noise_detected}};
  j["SNR"] = m.snr ? json(*m.snr) : json(nullptr);
  j["P_N_on_support"] = m.p_n_on_support ? json(*m.p_n_on_support) : json(nullptr);
  j["P_N_off_support"] = m.p_n_off_support ? json(*m.p_n_off_support) : json(nullptr);
  return j;
}

json trig_form_to_json(const TrigForm& t) {
  json monomials = json::array();
  for (const auto& [k, v] : t.monomials)
    monomials.push_back(json{{"k", k}, {"coeff", v}});
  json exponential = json::array();
  for (const auto& [k, v] : t.exponential_coefficients())
    exponential.push_back(json{{"k", k}, {"re", v.real()}, {"im", v.imag()}});
  return json{{"m_params", t.m_params},
              {"slot_param", t.slot_param},
              {"monomials", monomials},
              {"exponential", exponential}};
}

json cdr_model_to_json(const CdrModel& m) {
  return json{{"A", m.a},
              {"A_prime", m.a_prime},
              {"size", m.training_size},
              {"residual", m.residual},
              {"ls_fallback", m.ls_fallback}};
}

json mitigation_report_to_json(const MitigationReport& r) {
  json j{{"method", r.method}, {"B", r.b}};
  j["T"] = r.threshold ? json(*r.threshold) : json(nullptr);
  j["cdr"] = r.cdr ? cdr_model_to_json(*r.cdr) : json(nullptr);
  j["merits_before"] = merit_to_json(r.merits_before);
  j["merits_after"] = merit_to_json(r.merits_after);
  auto sim_json = [](const std::optional<Similarity>& s) -> json {
    if (!s) return nullptr;
    json js{{"euclidean", s->euclidean}};
    js["cosine"] = s->cosine ? json(*s->cosine) : json(nullptr);
    return js;
  };
  j["vs_exact_before"] = sim_json(r.vs_exact_before);
  j["vs_exact_after"] = sim_json(r.vs_exact_after);
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw ValidationError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace qsl
