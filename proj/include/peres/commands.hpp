#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "peres/interference.hpp"
#include "peres/report.hpp"
#include "peres/simulator.hpp"

namespace peres {

/// Parses a real number or a multiple of pi: "0.5", "pi", "-pi/2",
/// "2pi/3", "3*pi/4". Throws std::invalid_argument.
double parse_angle(std::string_view text);

/// "ANGLE:a1,a2,..." -> cos(angle) e_0 + sin(angle) axis, in R^dim.
UnitVector parse_polar_phase(std::string_view spec, std::size_t dim);
/// "c1,c2,..." -> unit vector (norm checked, not normalized).
UnitVector parse_vector_phase(std::string_view spec, std::size_t dim);

struct TestOptions {
  std::string input;
  DimsUnderTest dims{2, 4};
  /// Defaults to the number of paths seen in the table.
  std::optional<std::size_t> paths;
  double epsilon = kVerdictEpsilon;
  double k_sigma = 3.0;
  std::size_t resamples = 1000;
  std::uint64_t seed = 0;
};

/// Reconstruction, verdict and (with counts) bootstrap on one table.
ReportDocument run_test(const ProbabilityTable& table, const TestOptions& opts);
/// run_test on the CSV file named in opts.input.
ReportDocument cmd_test(const TestOptions& opts);

struct SimulateOptions {
  std::size_t dim = 2;
  std::size_t paths = 3;
  std::size_t particles = 1;
  /// Per-path phases; empty means random phases.
  std::vector<std::string> polar;
  std::vector<std::string> vectors;
  /// Empty means unit amplitudes.
  std::vector<double> amplitudes;
  /// Events per setting; nullopt is noise-free.
  std::optional<std::int64_t> events;
  bool include_triples = false;
  DimsUnderTest dims{2, 4};
  double epsilon = kVerdictEpsilon;
  std::size_t resamples = 1000;
  std::size_t cap = kMaterializationCap;
  std::uint64_t seed = 0;
};

struct SimulateResult {
  ReportDocument report;
  ProbabilityTable table;
};

SimulateResult cmd_simulate(const SimulateOptions& opts);

struct TableOptions {
  std::size_t dim_min = 2;
  std::size_t dim_max = 5;
  std::size_t paths_min = 3;
  std::size_t paths_max = 6;
  std::size_t samples = 1000;
  double epsilon = 1e-6;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool include_samples = false;
};

struct TableResult {
  ReportDocument report;
  /// Rows F_n, columns d: "1" when no sample fell below 1 - epsilon,
  /// "< 1" otherwise.
  std::vector<std::vector<std::string>> cells;
  std::string rendered;
};

TableResult cmd_table(const TableOptions& opts);

}  // namespace peres
