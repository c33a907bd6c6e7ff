#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsl/errors.hpp"
#include "qsl/io.hpp"
#include "qsl/mitigation.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

std::vector<py::ssize_t> grid_shape(const qsl::Grid& g) {
  return std::vector<py::ssize_t>(g.m, g.d);
}

py::array_t<double> values_array(const qsl::Landscape& l) {
  py::array_t<double> arr(grid_shape(l.grid));
  std::copy(l.values.begin(), l.values.end(), arr.mutable_data());
  return arr;
}

py::array_t<std::complex<double>> coeffs_array(const qsl::Spectrum& s) {
  py::array_t<std::complex<double>> arr(grid_shape(s.grid));
  std::copy(s.coeffs.begin(), s.coeffs.end(), arr.mutable_data());
  return arr;
}

qsl::Landscape landscape_from_array(const qsl::Grid& g, py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
  if (arr.size() != g.points()) throw qsl::ValidationError("array size does not match grid");
  qsl::Landscape l;
  l.grid = g;
  l.values.assign(arr.data(), arr.data() + arr.size());
  return l;
}

qsl::Spectrum spectrum_from_array(const qsl::Grid& g,
                                  py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast> arr) {
  if (arr.size() != g.points()) throw qsl::ValidationError("array size does not match grid");
  qsl::Spectrum s;
  s.grid = g;
  s.coeffs.assign(arr.data(), arr.data() + arr.size());
  return s;
}

py::dict merit_dict(const qsl::MeritReport& m) {
  py::dict d;
  d["P_S"] = m.p_s;
  d["P_N"] = m.p_n;
  d["SNR"] = m.snr ? py::object(py::float_(*m.snr)) : py::none();
  d["no_noise_detected"] = m.no_noise_detected;
  if (m.p_n_on_support) d["P_N_on_support"] = *m.p_n_on_support;
  if (m.p_n_off_support) d["P_N_off_support"] = *m.p_n_off_support;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Noisy variational-landscape simulation, Fourier diagnostics and "
            "spectral error mitigation";

  py::register_exception<qsl::ValidationError>(m, "QslValidationError", PyExc_ValueError);
  py::register_exception<qsl::HypothesisError>(m, "QslHypothesisError", PyExc_RuntimeError);

  py::class_<qsl::PauliString>(m, "PauliString")
      .def(py::init(&qsl::PauliString::from_string), "letters"_a)
      .def_property_readonly("n_qubits", &qsl::PauliString::n_qubits)
      .def("__str__", &qsl::PauliString::to_string)
      .def("commutes_with", &qsl::PauliString::commutes_with)
      .def("__mul__", &qsl::PauliString::operator*);

  py::class_<qsl::Observable>(m, "Observable")
      .def_static("pauli", [](const std::string& s) {
        return qsl::Observable::pauli(qsl::PauliString::from_string(s));
      })
      .def_static("diag_z",
                  [](int n_qubits, const std::vector<std::pair<double, std::vector<int>>>& terms) {
                    std::vector<qsl::ZTerm> zt;
                    for (const auto& [coeff, qubits] : terms) {
                      qsl::ZTerm t;
                      t.coeff = coeff;
                      for (int q : qubits) t.z_mask |= std::uint64_t(1) << q;
                      zt.push_back(t);
                    }
                    return qsl::Observable::diag_z(n_qubits, std::move(zt));
                  })
      .def("describe", &qsl::Observable::describe);

  py::class_<qsl::Graph>(m, "Graph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
             qsl::Graph g{n, edges};
             g.validate();
             return g;
           }),
           "n"_a, "edges"_a)
      .def_readonly("n", &qsl::Graph::n)
      .def_readonly("edges", &qsl::Graph::edges)
      .def("is_triangle_free", &qsl::Graph::is_triangle_free);

  m.def("random_regular_triangle_free_graph", &qsl::random_regular_triangle_free_graph,
        "nodes"_a, "degree"_a, "seed"_a = 0);

  py::class_<qsl::ParamCircuit>(m, "ParamCircuit")
      .def_readonly("n_qubits", &qsl::ParamCircuit::n_qubits)
      .def_readonly("m_params", &qsl::ParamCircuit::m_params)
      .def("to_json", [](const qsl::ParamCircuit& c) { return qsl::circuit_to_json(c).dump(); })
      .def("export_qasm", [](const qsl::ParamCircuit& c, const std::vector<double>& theta) {
        return qsl::export_qasm(qsl::bind(c, theta));
      });

  m.def("circuit_from_json",
        [](const std::string& text) { return qsl::circuit_from_json(qsl::json::parse(text)); });

  m.def("build_experiment",
        [](const std::string& name, int pad_cnot_pairs, std::uint64_t seed,
           std::optional<qsl::Graph> graph, int layers) {
          qsl::ExperimentConfig cfg;
          cfg.pad_cnot_pairs = pad_cnot_pairs;
          cfg.seed = seed;
          cfg.graph = graph;
          cfg.qaoa_layers = layers;
          return qsl::build_experiment(name, cfg);
        },
        "name"_a, "pad_cnot_pairs"_a = 0, "seed"_a = 0, "graph"_a = py::none(), "layers"_a = 1);

  m.def("default_observable",
        [](const std::string& name, std::optional<qsl::Graph> graph) {
          qsl::ExperimentConfig cfg;
          cfg.graph = graph;
          return qsl::default_observable(name, cfg);
        },
        "name"_a, "graph"_a = py::none());

  m.def("parameter_multipliers", &qsl::parameter_multipliers);

  m.def("frequency_support", [](const qsl::ParamCircuit& c, std::optional<qsl::Observable> obs) {
    const auto fs = qsl::frequency_support(c, obs ? &*obs : nullptr);
    return fs.per_param;
  }, "circuit"_a, "observable"_a = py::none());

  m.def("exact_trig_form", [](const qsl::ParamCircuit& c, const std::string& pauli) {
    const auto form = qsl::exact_trig_form(c, qsl::PauliString::from_string(pauli));
    py::dict d;
    d["slot_param"] = form.slot_param;
    py::list monos;
    for (const auto& [k, v] : form.monomials) {
      py::dict e;
      e["k"] = k;
      e["coeff"] = v;
      monos.append(e);
    }
    d["monomials"] = monos;
    return d;
  });

  py::class_<qsl::Grid>(m, "Grid")
      .def_readonly("m", &qsl::Grid::m)
      .def_readonly("d", &qsl::Grid::d)
      .def_property_readonly("resolution", &qsl::Grid::resolution)
      .def_property_readonly("points", &qsl::Grid::points);

  m.def("make_grid", &qsl::make_grid, "m"_a, "d"_a);

  py::class_<qsl::NoiseSpec>(m, "NoiseSpec")
      .def(py::init([](const std::string& text, int n_qubits, int m_params) {
             return qsl::noise_from_json(qsl::json::parse(text), n_qubits, m_params);
           }),
           "json_text"_a, "n_qubits"_a, "m_params"_a)
      .def_static("none", []() { return qsl::NoiseSpec{}; });

  py::class_<qsl::Landscape>(m, "Landscape")
      .def_property_readonly("grid", [](const qsl::Landscape& l) { return l.grid; })
      .def_property_readonly("values", &values_array)
      .def_readonly("shots", &qsl::Landscape::shots)
      .def_readonly("seed", &qsl::Landscape::seed)
      .def("to_json", [](const qsl::Landscape& l) { return qsl::landscape_to_json(l).dump(); });

  m.def("landscape_from_values", &landscape_from_array, "grid"_a, "values"_a);

  m.def("sample_exact", &qsl::sample_exact, "circuit"_a, "observable"_a, "grid"_a);
  m.def("sample_noisy",
        [](const qsl::ParamCircuit& c, const qsl::NoiseSpec& ns, const qsl::Observable& obs,
           const qsl::Grid& g, long shots, std::uint64_t seed, bool keep_records, int threads) {
          qsl::SampleOptions opts;
          opts.keep_records = keep_records;
          opts.threads = threads;
          return qsl::sample_noisy(c, ns, obs, g, shots, seed, opts);
        },
        "circuit"_a, "noise"_a, "observable"_a, "grid"_a, "shots"_a, "seed"_a,
        "keep_records"_a = false, "threads"_a = 0);

  m.def("dft", [](const qsl::Landscape& l) { return coeffs_array(qsl::dft(l)); });
  m.def("dft_array", [](const qsl::Grid& g, py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
    return coeffs_array(qsl::dft(landscape_from_array(g, arr)));
  });
  m.def("idft_array",
        [](const qsl::Grid& g,
           py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast> arr) {
          return values_array(qsl::idft(spectrum_from_array(g, arr)));
        });

  m.def("figures_of_merit",
        [](const qsl::Landscape& l, const std::vector<std::vector<double>>& support,
           std::optional<qsl::Landscape> reference) {
          qsl::FrequencySupport fs{support};
          const auto spec = qsl::dft(l);
          std::optional<qsl::Spectrum> ref;
          if (reference) ref = qsl::dft(*reference);
          return merit_dict(qsl::figures_of_merit(spec, fs, ref ? &*ref : nullptr));
        },
        "landscape"_a, "support"_a, "reference"_a = py::none());

  m.def("shot_noise_sigma", &qsl::shot_noise_sigma, "landscape"_a, "n_s"_a);

  m.def("similarity", [](const qsl::Landscape& a, const qsl::Landscape& b) {
    const auto s = qsl::similarity(a, b);
    py::dict d;
    d["cosine"] = s.cosine ? py::object(py::float_(*s.cosine)) : py::none();
    d["euclidean"] = s.euclidean;
    return d;
  });

  m.def("mitigate",
        [](const qsl::Landscape& noisy, const std::string& method, double b,
           const std::vector<std::vector<double>>& support, std::optional<qsl::Landscape> reference,
           bool cdr, const qsl::ParamCircuit* circuit, const qsl::NoiseSpec* noise,
           const qsl::Observable* observable, std::vector<double> theta, int d_keep, int size,
           std::uint64_t seed) {
          qsl::MitigationConfig cfg;
          cfg.method = qsl::mitigation_method_from_string(method);
          cfg.b = b;
          cfg.seed = seed;
          cfg.cdr.enabled = cdr;
          cfg.cdr.d_keep = d_keep;
          cfg.cdr.size = size;
          qsl::CdrInputs inputs;
          inputs.circuit = circuit;
          inputs.noise = noise;
          inputs.observable = observable;
          inputs.theta = std::move(theta);
          inputs.shots = noisy.shots;
          qsl::FrequencySupport fs{support};
          const bool needs_inputs = cdr || cfg.method == qsl::MitigationMethod::RoundReconstruct;
          const auto result = qsl::mitigate(noisy, cfg, fs, needs_inputs ? &inputs : nullptr,
                                            reference ? &*reference : nullptr);
          py::dict rep;
          rep["method"] = result.report.method;
          rep["merits_before"] = merit_dict(result.report.merits_before);
          rep["merits_after"] = merit_dict(result.report.merits_after);
          if (result.report.cdr) {
            py::dict c;
            c["A"] = result.report.cdr->a;
            c["A_prime"] = result.report.cdr->a_prime;
            c["residual"] = result.report.cdr->residual;
            rep["cdr"] = c;
          }
          return py::make_tuple(result.mitigated, rep);
        },
        "noisy"_a, "method"_a, "b"_a, "support"_a, "reference"_a = py::none(),
        "cdr"_a = false, "circuit"_a = nullptr, "noise"_a = nullptr, "observable"_a = nullptr,
        "theta"_a = std::vector<double>{}, "d_keep"_a = 2, "size"_a = 32, "seed"_a = 0);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
