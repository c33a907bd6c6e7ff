#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qsl/channel.hpp"
#include "qsl/circuit.hpp"
#include "qsl/fourier.hpp"
#include "qsl/mitigation.hpp"
#include "qsl/sampler.hpp"

namespace qsl {

using json = nlohmann::json;

// FNV-1a over the canonical (sorted-key) JSON dump; hex string.
std::string fnv1a_hex(const std::string& data);
std::string config_hash(const json& j);

json circuit_to_json(const ParamCircuit& c);
ParamCircuit circuit_from_json(const json& j);

json noise_to_json(const NoiseSpec& ns);
NoiseSpec noise_from_json(const json& j, int n_qubits, int m_params);

json observable_to_json(const Observable& o);
Observable observable_from_json(const json& j, int n_qubits);

json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

json grid_to_json(const Grid& g);
Grid grid_from_json(const json& j);

json landscape_to_json(const Landscape& l);
Landscape landscape_from_json(const json& j);
std::string landscape_to_csv(const Landscape& l);

// Lists only coefficients with |c| > 1e-12.
json spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const json& j);
std::string spectrum_to_csv(const Spectrum& s);

json support_to_json(const FrequencySupport& fs);
FrequencySupport support_from_json(const json& j);

json merit_to_json(const MeritReport& m);
json trig_form_to_json(const TrigForm& t);
json cdr_model_to_json(const CdrModel& m);
json mitigation_report_to_json(const MitigationReport& r);

// File helpers (throw IoError).
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace qsl
