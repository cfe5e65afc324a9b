#include "peres/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace peres {
namespace {

struct Field {
  std::string_view text;
  std::size_t column;
};

std::vector<Field> split_fields(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
    out.push_back({line.substr(start, end - start), start + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const Field& f, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), v);
  if (f.text.empty() || ec != std::errc() || ptr != f.text.data() + f.text.size()) {
    throw ParseError(line, f.column, "expected a number, got '" + std::string(f.text) + "'");
  }
  return v;
}

std::int64_t parse_int(const Field& f, std::size_t line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), v);
  if (f.text.empty() || ec != std::errc() || ptr != f.text.data() + f.text.size()) {
    throw ParseError(line, f.column, "expected an integer, got '" + std::string(f.text) + "'");
  }
  return v;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double json_number(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

ProbabilityTable read_table_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool with_counts = false;
  bool header_seen = false;
  ProbabilityTable table;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen) {
      if (line == kCsvHeader) {
        with_counts = false;
      } else if (line == kCsvHeaderWithCounts) {
        with_counts = true;
      } else {
        throw ParseError(line_no, 1,
                         "header must be '" + std::string(kCsvHeader) + "' or '" +
                             std::string(kCsvHeaderWithCounts) + "'");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;

    const auto fields = split_fields(line);
    const std::size_t expected = with_counts ? 4 : 2;
    if (fields.size() != expected) {
      throw ParseError(line_no, 1,
                       "row " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                           " fields, expected " + std::to_string(expected));
    }

    Setting setting;
    try {
      setting = parse_setting(fields[0].text);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, fields[0].column, e.what());
    }
    if (table.contains(setting)) {
      throw ParseError(line_no, fields[0].column,
                       "duplicate setting " + format_setting(setting));
    }

    Measurement m;
    m.probability = parse_double(fields[1], line_no);
    if (with_counts) {
      m.count = parse_int(fields[2], line_no);
      m.exposure = parse_int(fields[3], line_no);
      if (*m.exposure < 1) throw ParseError(line_no, fields[3].column, "exposure must be >= 1");
      if (*m.count < 0) throw ParseError(line_no, fields[2].column, "count must be >= 0");
      const double implied = static_cast<double>(*m.count) / static_cast<double>(*m.exposure);
      if (std::abs(implied - m.probability) > 1e-12 * std::max(1.0, implied)) {
        throw ParseError(line_no, fields[1].column, "probability does not equal count/exposure");
      }
    }
    try {
      table.set(std::move(setting), m);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, fields[1].column, e.what());
    }
  }
  if (!header_seen) throw ParseError(1, 1, "empty input, header missing");
  return table;
}

ProbabilityTable read_table_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table file '" + path + "'");
  return read_table_csv(in);
}

void write_table_csv(std::ostream& out, const ProbabilityTable& table) {
  const bool counts = table.has_counts();
  out << (counts ? kCsvHeaderWithCounts : kCsvHeader) << '\n';
  for (const auto& [setting, m] : table.entries()) {
    out << format_setting(setting) << ',' << format_double(m.probability);
    if (counts) out << ',' << *m.count << ',' << *m.exposure;
    out << '\n';
  }
}

void write_table_csv_file(const std::string& path, const ProbabilityTable& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write table file '" + path + "'");
  write_table_csv(out, table);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Json ReportDocument::to_json() const {
  Json j;
  j["schema_version"] = schema_version;
  j["command"] = command;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["inputs"] = inputs;
  j["results"] = results;
  return j;
}

std::string ReportDocument::dump() const { return to_json().dump(2) + "\n"; }

ReportDocument ReportDocument::from_json(const Json& j) {
  if (!j.is_object() || !j.contains("schema_version")) {
    throw std::invalid_argument("report: schema_version missing");
  }
  ReportDocument doc;
  doc.schema_version = j.at("schema_version").get<std::string>();
  if (doc.schema_version != kSchemaVersion) {
    throw std::invalid_argument("report: unsupported schema_version " + doc.schema_version);
  }
  doc.command = j.value("command", "");
  if (j.contains("seed") && !j.at("seed").is_null()) doc.seed = j.at("seed").get<std::uint64_t>();
  doc.inputs = j.value("inputs", Json::object());
  doc.results = j.value("results", Json::object());
  return doc;
}

ReportDocument ReportDocument::parse(std::string_view text) {
  return from_json(Json::parse(text));
}

Json to_json(const PeresValue& v) {
  Json j;
  j["f"] = v.f;
  j["det"] = v.det;
  j["mode"] = std::string(to_string(v.mode));
  j["uncertainty"] = v.uncertainty ? Json(*v.uncertainty) : Json(nullptr);
  j["raw_f"] = v.raw_f ? Json(*v.raw_f) : Json(nullptr);
  Json missing = Json::array();
  for (auto [a, b] : v.missing_pairs) missing.push_back(format_setting({a, b}));
  j["missing_pairs"] = missing;
  return j;
}

PeresValue peres_value_from_json(const Json& j) {
  PeresValue v;
  v.f = json_number(j.at("f"));
  v.det = json_number(j.at("det"));
  v.mode = j.at("mode").get<std::string>() == "exact" ? Mode::Exact : Mode::Estimated;
  if (j.contains("uncertainty") && !j["uncertainty"].is_null()) v.uncertainty = j["uncertainty"].get<double>();
  if (j.contains("raw_f") && !j["raw_f"].is_null()) v.raw_f = j["raw_f"].get<double>();
  if (j.contains("missing_pairs")) {
    for (const auto& s : j["missing_pairs"]) {
      const Setting pair = parse_setting(s.get<std::string>());
      if (pair.size() != 2) throw std::invalid_argument("missing_pairs entry is not a pair");
      v.missing_pairs.emplace_back(pair[0], pair[1]);
    }
  }
  return v;
}

Json to_json(const MonteCarloSummary& s, bool include_samples) {
  Json j;
  j["d"] = s.dim;
  j["n"] = s.paths;
  j["samples"] = s.samples;
  j["seed"] = s.seed;
  j["epsilon"] = s.epsilon;
  j["min"] = s.min;
  j["max"] = s.max;
  j["mean"] = s.mean;
  j["q05"] = s.q05;
  j["median"] = s.median;
  j["q95"] = s.q95;
  j["frac_below"] = s.frac_below;
  if (include_samples) j["f_values"] = s.f_values;
  return j;
}

Json to_json(const MultiParticleReport& r) {
  Json j;
  j["n"] = r.paths;
  j["m"] = r.particles;
  j["single_particle_f"] = r.single_f;
  j["f_paper"] = r.f_paper;
  j["log_det_product"] = std::isfinite(r.log_det_product) ? Json(r.log_det_product) : Json(nullptr);
  j["f_oracle"] = r.f_oracle ? Json(*r.f_oracle) : Json(nullptr);
  if (r.comparison) {
    j["agree_on_dichotomy"] = r.comparison->agree_on_dichotomy;
    j["value_gap"] = r.comparison->value_gap;
  }
  if (r.per_particle_comparison) {
    j["agree_on_dichotomy_per_particle"] = r.per_particle_comparison->agree_on_dichotomy;
  }
  if (r.oracle_skipped) {
    j["warning"] = "n^m exceeds the materialization cap; only the closed formula and the "
                   "log-determinant sum are reported";
  }
  return j;
}

Json to_json(const BootstrapSummary& b) {
  Json j;
  j["standard_error"] = b.standard_error;
  j["mean"] = b.mean;
  j["interval95"] = {b.lower95, b.upper95};
  j["resamples"] = b.resamples;
  j["rejected"] = b.rejected;
  return j;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace peres
