#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qsl/channel.hpp"
#include "qsl/circuit.hpp"
#include "qsl/observable.hpp"

namespace qsl {

inline constexpr long kExactShots = 0;

// Uniform parameter grid Theta = (2pi/d) Z_d^m with odd d = 2N + 1.
struct Grid {
  int m = 0;
  int d = 0;

  int resolution() const { return (d - 1) / 2; }
  long points() const;
  std::vector<int> unflatten(long flat) const;          // row-major, axis 0 slowest
  long flatten(const std::vector<int>& j) const;
  std::vector<double> theta(long flat) const;           // 2pi j / d
  bool operator==(const Grid& rhs) const { return m == rhs.m && d == rhs.d; }
};

Grid make_grid(int m, int d);

// Per-point measurement records kept for bootstrap resampling.
struct ShotRecords {
  long shots = 0;
  // Pauli observables: number of +1 outcomes per grid point.
  std::vector<long> plus_counts;
  // DiagZ observables: raw sampled values per grid point.
  std::vector<std::vector<double>> values;

  bool pauli_style() const { return values.empty(); }
};

struct Landscape {
  Grid grid;
  std::vector<double> values;  // row-major, length d^m
  long shots = kExactShots;
  std::uint64_t seed = 0;
  std::string observable_desc;
  std::string circuit_hash;
  std::optional<ShotRecords> records;
};

Landscape sample_exact(const ParamCircuit& c, const Observable& obs, const Grid& g);

struct SampleOptions {
  bool keep_records = false;
  int threads = 0;  // 0 = auto
};

Landscape sample_noisy(const ParamCircuit& c, const NoiseSpec& noise, const Observable& obs,
                       const Grid& g, long shots, std::uint64_t seed,
                       const SampleOptions& opts = {});

// Density-matrix evolution of a bound circuit with channels attached at their
// declared locations. `theta` feeds parameter-dependent channels.
DensityMatrix run_density(const BoundCircuit& c, const NoiseSpec& noise,
                          const std::vector<double>& theta);

// Sample mean of the observable over `shots` simulated measurements
// (exact expectation when shots == kExactShots).
double measure_observable(const DensityMatrix& rho, const Observable& obs, long shots,
                          std::mt19937_64& eng);

struct MeasureRecord {
  double mean = 0.0;
  long plus_count = 0;              // Pauli case
  std::vector<double> values;       // DiagZ case
};

MeasureRecord measure_observable_record(const DensityMatrix& rho, const Observable& obs,
                                        long shots, std::mt19937_64& eng);

}  // namespace qsl
