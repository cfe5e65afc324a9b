#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "peres/interference.hpp"
#include "peres/multiparticle.hpp"
#include "peres/simulator.hpp"

namespace peres {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::string_view kCsvHeader = "setting,probability";
inline constexpr std::string_view kCsvHeaderWithCounts = "setting,probability,count,exposure";

/// Malformed table input. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Probability tables as CSV, one row per measured setting. Probabilities
// are written with 17 significant digits, so a write/read cycle is exact.
ProbabilityTable read_table_csv(std::istream& in);
ProbabilityTable read_table_csv_file(const std::string& path);
void write_table_csv(std::ostream& out, const ProbabilityTable& table);
void write_table_csv_file(const std::string& path, const ProbabilityTable& table);

/// Self-describing result tree written by every command.
struct ReportDocument {
  std::string schema_version{kSchemaVersion};
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  std::optional<std::uint64_t> seed;

  Json to_json() const;
  std::string dump() const;
  /// Throws std::invalid_argument when schema_version is missing or
  /// unsupported.
  static ReportDocument from_json(const Json& j);
  static ReportDocument parse(std::string_view text);

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

Json to_json(const PeresValue& v);
PeresValue peres_value_from_json(const Json& j);
Json to_json(const MonteCarloSummary& s, bool include_samples = false);
Json to_json(const MultiParticleReport& r);
Json to_json(const BootstrapSummary& b);
Json to_json(const Eigen::MatrixXd& m);

}  // namespace peres
