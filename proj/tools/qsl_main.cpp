#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qsl/errors.hpp"
#include "qsl/io.hpp"
#include "qsl/mitigation.hpp"

namespace fs = std::filesystem;
using qsl::json;

namespace {

struct LoadedRun {
  json config;
  std::string hash;
  qsl::ParamCircuit circuit;
  qsl::Observable observable = qsl::Observable::pauli(qsl::PauliString::identity(1));
  qsl::NoiseSpec noise;
  std::optional<qsl::Grid> grid;
  long shots = qsl::kExactShots;
  std::uint64_t seed = 0;
  fs::path out_dir;
};

qsl::ParamCircuit circuit_from_config(const json& jc, std::string* builtin_name,
                                      qsl::ExperimentConfig* expcfg) {
  if (jc.contains("path"))
    return qsl::circuit_from_json(qsl::read_json_file(jc.at("path").get<std::string>()));
  const std::string name = jc.at("builtin").get<std::string>();
  qsl::ExperimentConfig cfg;
  cfg.pad_cnot_pairs = jc.value("pad_cnot_pairs", 0);
  cfg.seed = jc.value("seed", std::uint64_t(0));
  cfg.qaoa_layers = jc.value("layers", 1);
  if (jc.contains("graph")) {
    if (jc.at("graph").is_string())
      cfg.graph = qsl::graph_from_json(qsl::read_json_file(jc.at("graph").get<std::string>()));
    else
      cfg.graph = qsl::graph_from_json(jc.at("graph"));
  }
  if (builtin_name) *builtin_name = name;
  if (expcfg) *expcfg = cfg;
  return qsl::build_experiment(name, cfg);
}

LoadedRun load_run(const std::string& config_path, std::optional<std::uint64_t> seed_override,
                   std::optional<std::string> shots_override,
                   std::optional<std::string> out_override) {
  LoadedRun run;
  run.config = qsl::read_json_file(config_path);
  if (seed_override) run.config["seed"] = *seed_override;
  if (shots_override) {
    if (*shots_override == "exact")
      run.config["shots"] = "exact";
    else
      run.config["shots"] = std::stol(*shots_override);
  }
  if (out_override) run.config["out_dir"] = *out_override;
  run.hash = qsl::config_hash(run.config);

  std::string builtin;
  qsl::ExperimentConfig expcfg;
  run.circuit = circuit_from_config(run.config.at("circuit"), &builtin, &expcfg);
  run.circuit.validate();

  if (!run.config.contains("observable") ||
      (run.config.at("observable").is_string() &&
       run.config.at("observable").get<std::string>() == "default")) {
    if (builtin.empty())
      throw qsl::ValidationError("observable 'default' requires a builtin circuit");
    run.observable = qsl::default_observable(builtin, expcfg);
  } else {
    run.observable = qsl::observable_from_json(run.config.at("observable"), run.circuit.n_qubits);
  }

  run.noise = qsl::noise_from_json(run.config.value("noise", json()), run.circuit.n_qubits,
                                   run.circuit.m_params);
  if (run.config.contains("grid")) {
    run.grid = qsl::grid_from_json(run.config.at("grid"));
    if (run.grid->m != run.circuit.m_params)
      throw qsl::ValidationError(
          "grid m must equal the circuit parameter count (grid uses odd d = 2N + 1)");
  }
  if (run.config.contains("shots")) {
    const auto& js = run.config.at("shots");
    run.shots = js.is_string() ? qsl::kExactShots : js.get<long>();
    if (!js.is_string() && run.shots < 1)
      throw qsl::ValidationError("shots must be >= 1 or \"exact\"");
  }
  run.seed = run.config.value("seed", std::uint64_t(0));
  run.out_dir = run.config.value("out_dir", std::string("out"));
  return run;
}

void stamp(json& j, const LoadedRun& run) {
  j["config_hash"] = run.hash;
  j["seed"] = run.seed;
}

int cmd_sample(const LoadedRun& run) {
  if (!run.grid) throw qsl::ValidationError("sample needs a grid");
  qsl::SampleOptions opts;
  opts.keep_records = run.config.value("keep_records", false);
  qsl::Landscape noisy = qsl::sample_noisy(run.circuit, run.noise, run.observable, *run.grid,
                                           run.shots, run.seed, opts);
  noisy.circuit_hash = run.hash;
  json jl = qsl::landscape_to_json(noisy);
  stamp(jl, run);
  qsl::write_json_file(run.out_dir / "landscape.json", jl);
  qsl::write_text_file(run.out_dir / "landscape.csv", qsl::landscape_to_csv(noisy));
  if (run.config.value("emit_exact", false)) {
    qsl::Landscape exact = qsl::sample_exact(run.circuit, run.observable, *run.grid);
    exact.circuit_hash = run.hash;
    json je = qsl::landscape_to_json(exact);
    stamp(je, run);
    qsl::write_json_file(run.out_dir / "exact.json", je);
    qsl::write_text_file(run.out_dir / "exact.csv", qsl::landscape_to_csv(exact));
  }
  std::cout << "wrote " << (run.out_dir / "landscape.json").string() << "\n";
  return 0;
}

qsl::Landscape load_landscape(const std::string& path) {
  return qsl::landscape_from_json(qsl::read_json_file(path));
}

int cmd_diagnose(const LoadedRun& run, const std::string& landscape_path,
                 const std::string& reference_path) {
  const qsl::Landscape noisy = load_landscape(landscape_path);
  std::optional<qsl::Landscape> ref;
  if (!reference_path.empty()) ref = load_landscape(reference_path);

  const qsl::FrequencySupport support = qsl::frequency_support(run.circuit, &run.observable);
  const qsl::Spectrum spec = qsl::dft(noisy);
  std::optional<qsl::Spectrum> ref_spec;
  if (ref) ref_spec = qsl::dft(*ref);
  const qsl::MeritReport merit =
      qsl::figures_of_merit(spec, support, ref_spec ? &*ref_spec : nullptr);

  json jm = qsl::merit_to_json(merit);
  if (run.config.contains("bootstrap")) {
    const int resamples = run.config.at("bootstrap").value("resamples", 100);
    const auto boot = qsl::bootstrap_error(noisy, support, resamples, run.seed);
    jm["bootstrap"] = json{{"resamples", boot.resamples},
                           {"P_S_std", boot.p_s_std},
                           {"P_N_std", boot.p_n_std}};
    if (boot.snr_std) jm["bootstrap"]["SNR_std"] = *boot.snr_std;
  }
  stamp(jm, run);

  json js = qsl::spectrum_to_json(spec);
  stamp(js, run);
  qsl::write_json_file(run.out_dir / "spectrum.json", js);
  qsl::write_text_file(run.out_dir / "spectrum.csv", qsl::spectrum_to_csv(spec));
  qsl::write_json_file(run.out_dir / "merits.json", jm);
  qsl::write_json_file(run.out_dir / "support.json", qsl::support_to_json(support));
  std::cout << "P_S=" << merit.p_s << " P_N=" << merit.p_n;
  if (merit.snr)
    std::cout << " SNR=" << *merit.snr;
  else
    std::cout << " SNR=none (no noise detected)";
  std::cout << "\n";
  return 0;
}

int cmd_mitigate(const LoadedRun& run, const std::string& landscape_path,
                 const std::string& reference_path) {
  const qsl::Landscape noisy = load_landscape(landscape_path);
  std::optional<qsl::Landscape> ref;
  if (!reference_path.empty()) ref = load_landscape(reference_path);

  qsl::MitigationConfig cfg;
  const json jm = run.config.value("mitigation", json::object());
  if (jm.contains("preset")) cfg = qsl::mitigation_preset(jm.at("preset").get<std::string>());
  if (jm.contains("method"))
    cfg.method = qsl::mitigation_method_from_string(jm.at("method").get<std::string>());
  cfg.b = jm.value("B", cfg.b);
  if (jm.contains("cdr")) {
    const json& jc = jm.at("cdr");
    cfg.cdr.enabled = jc.value("enabled", true);
    cfg.cdr.d_keep = jc.value("D", cfg.cdr.d_keep);
    cfg.cdr.size = jc.value("size", cfg.cdr.size);
    cfg.cdr.post_select_fraction = jc.value("post_select_fraction", cfg.cdr.post_select_fraction);
    cfg.cdr.reuse_grid_cliffords = jc.value("reuse_grid_cliffords", cfg.cdr.reuse_grid_cliffords);
  }
  cfg.seed = run.seed;

  qsl::CdrInputs inputs;
  inputs.circuit = &run.circuit;
  inputs.noise = &run.noise;
  inputs.observable = &run.observable;
  inputs.theta.assign(run.circuit.m_params, 0.7);
  if (jm.contains("theta")) inputs.theta = jm.at("theta").get<std::vector<double>>();
  inputs.shots = noisy.shots;

  const qsl::FrequencySupport support = qsl::frequency_support(run.circuit, &run.observable);
  const auto result = qsl::mitigate(noisy, cfg, support, &inputs, ref ? &*ref : nullptr);

  json jl = qsl::landscape_to_json(result.mitigated);
  stamp(jl, run);
  qsl::write_json_file(run.out_dir / "mitigated.json", jl);
  qsl::write_text_file(run.out_dir / "mitigated.csv", qsl::landscape_to_csv(result.mitigated));
  json jr = qsl::mitigation_report_to_json(result.report);
  stamp(jr, run);
  qsl::write_json_file(run.out_dir / "report.json", jr);
  std::cout << "method=" << result.report.method;
  if (result.report.cdr)
    std::cout << " A=" << result.report.cdr->a << " A'=" << result.report.cdr->a_prime;
  std::cout << "\n";
  return 0;
}

int cmd_reconstruct(const LoadedRun& run, const std::string& landscape_path) {
  const qsl::Landscape noisy = load_landscape(landscape_path);
  const qsl::Spectrum spec = qsl::dft(noisy);
  const qsl::PauliString obs = run.observable.pauli_string();
  const qsl::TrigForm recon = qsl::round_reconstruct(spec, run.circuit, obs);
  const qsl::TrigForm exact = qsl::exact_trig_form(run.circuit, obs);
  json j = qsl::trig_form_to_json(recon);
  j["matches_exact"] = (recon == exact);
  stamp(j, run);
  qsl::write_json_file(run.out_dir / "trigform.json", j);
  std::cout << "recovered=" << (recon == exact ? "true" : "false") << "\n";
  return 0;
}

int cmd_export_qasm(const LoadedRun& run, const std::string& theta_csv,
                    const std::string& out_file) {
  std::vector<double> theta;
  if (!theta_csv.empty()) {
    std::stringstream ss(theta_csv);
    std::string item;
    while (std::getline(ss, item, ',')) theta.push_back(std::stod(item));
  }
  if (int(theta.size()) != run.circuit.m_params)
    throw qsl::ValidationError("export-qasm: theta length must equal parameter count");
  const std::string text = qsl::export_qasm(qsl::bind(run.circuit, theta));
  if (out_file.empty())
    std::cout << text;
  else
    qsl::write_text_file(out_file, text);
  return 0;
}

int cmd_gen_graph(int nodes, int degree, std::uint64_t seed, const std::string& out_file) {
  const qsl::Graph g = qsl::random_regular_triangle_free_graph(nodes, degree, seed);
  json j = qsl::graph_to_json(g);
  j["seed"] = seed;
  if (out_file.empty())
    std::cout << j.dump(2) << "\n";
  else
    qsl::write_json_file(out_file, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noisy variational-landscape sampling, spectral diagnostics and mitigation"};
  app.require_subcommand(1);

  std::string config_path, landscape_path, reference_path, theta_csv, out_file;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> shots_override, out_override;
  int nodes = 8, degree = 3;
  std::uint64_t graph_seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run config JSON")->required();
    sub->add_option("--seed", seed_override, "override config seed");
    sub->add_option("--shots", shots_override, "override shots (integer or 'exact')");
    sub->add_option("--out", out_override, "override output directory");
  };

  auto* sample = app.add_subcommand("sample", "sample a landscape on the parameter grid");
  add_common(sample);

  auto* diagnose = app.add_subcommand("diagnose", "spectrum and figures of merit");
  add_common(diagnose);
  diagnose->add_option("--landscape", landscape_path, "landscape JSON")->required();
  diagnose->add_option("--reference", reference_path, "exact landscape JSON");

  auto* mitig = app.add_subcommand("mitigate", "spectral filtering / thresholding + CDR");
  add_common(mitig);
  mitig->add_option("--landscape", landscape_path, "landscape JSON")->required();
  mitig->add_option("--reference", reference_path, "exact landscape JSON");

  auto* recon = app.add_subcommand("reconstruct", "round trigonometric coefficients");
  add_common(recon);
  recon->add_option("--landscape", landscape_path, "landscape JSON")->required();

  auto* qasm = app.add_subcommand("export-qasm", "emit OpenQASM 2.0 for a bound circuit");
  add_common(qasm);
  qasm->add_option("--theta", theta_csv, "comma-separated parameter values")->required();
  qasm->add_option("--qasm-out", out_file, "output file (stdout if omitted)");

  auto* gg = app.add_subcommand("gen-graph", "random regular triangle-free graph");
  gg->add_option("--nodes", nodes, "node count");
  gg->add_option("--degree", degree, "degree");
  gg->add_option("--seed", graph_seed, "sampling seed");
  gg->add_option("--graph-out", out_file, "output file (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gg->parsed()) return cmd_gen_graph(nodes, degree, graph_seed, out_file);
    LoadedRun run = load_run(config_path, seed_override, shots_override, out_override);
    if (sample->parsed()) return cmd_sample(run);
    if (diagnose->parsed()) return cmd_diagnose(run, landscape_path, reference_path);
    if (mitig->parsed()) return cmd_mitigate(run, landscape_path, reference_path);
    if (recon->parsed()) return cmd_reconstruct(run, landscape_path);
    if (qasm->parsed()) return cmd_export_qasm(run, theta_csv, out_file);
  } catch (const qsl::HypothesisError& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 3;
  } catch (const qsl::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const qsl::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
