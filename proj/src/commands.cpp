#include "peres/commands.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "peres/multiparticle.hpp"

namespace peres {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_angle(text.substr(start, comma == text.npos ? text.npos : comma - start)));
    if (comma == text.npos) break;
    start = comma + 1;
  }
  return out;
}

bool algebra_dim(std::size_t d) { return d == 1 || d == 2 || d == 4 || d == 8; }

std::uint64_t cell_seed(std::uint64_t seed, std::size_t d, std::size_t n) {
  return mix64(seed ^ mix64((static_cast<std::uint64_t>(d) << 32) | n));
}

Json phases_json(const PathConfig& cfg) {
  Json rows = Json::array();
  for (const auto& p : cfg.phases) rows.push_back(std::vector<double>(p.comps().begin(), p.comps().end()));
  return rows;
}

Json third_order_json(const ProbabilityTable& table, std::size_t n) {
  Json out = Json::object();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (table.contains({a, b, c})) {
          out[format_setting({a, b, c})] = sorkin_third_order(table, a, b, c);
        }
      }
    }
  }
  return out;
}

Eigen::MatrixXd interference_terms(const ProbabilityTable& table, std::size_t n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double pi = table.probability({i}), pj = table.probability({j});
      const double v = (pi > 0.0 && pj > 0.0) ? pairwise_interference(pi, pj, table.probability({i, j}))
                                              : std::numeric_limits<double>::quiet_NaN();
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return m;
}

Json dims_json(DimsUnderTest dims) { return Json::array({dims.lower, dims.higher}); }

}  // namespace

double parse_angle(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (!text.empty() && ec == std::errc() && ptr == text.data() + text.size()) return v;

  static const std::regex pi_expr(R"(^([+-]?)((?:\d+\.?\d*|\.\d+)?)\s*\*?\s*pi(?:\s*/\s*(\d+\.?\d*|\.\d+))?$)");
  std::cmatch m;
  if (!std::regex_match(text.data(), text.data() + text.size(), m, pi_expr)) {
    throw std::invalid_argument("cannot parse number '" + std::string(text) + "'");
  }
  double coef = m[2].length() ? std::stod(m[2].str()) : 1.0;
  double denom = m[3].matched ? std::stod(m[3].str()) : 1.0;
  if (denom == 0.0) throw std::invalid_argument("division by zero in '" + std::string(text) + "'");
  const double sign = m[1].str() == "-" ? -1.0 : 1.0;
  return sign * coef * std::numbers::pi / denom;
}

UnitVector parse_polar_phase(std::string_view spec, std::size_t dim) {
  const std::size_t colon = spec.find(':');
  const double angle = parse_angle(spec.substr(0, colon));
  const std::vector<double> axis =
      colon == spec.npos ? std::vector<double>{} : parse_list(spec.substr(colon + 1));
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");

  if (algebra_dim(dim)) {
    // An omitted axis is only meaningful on the real line.
    PolarForm p{1.0, angle, axis};
    if (axis.empty() && dim > 1) p.axis.assign(dim - 1, 0.0);
    return embed(hc_from_polar(p, dim));
  }
  if (axis.size() != dim - 1) {
    throw std::invalid_argument("polar phase '" + std::string(spec) + "' needs " +
                                std::to_string(dim - 1) + " axis components");
  }
  std::vector<double> comps(dim);
  comps[0] = std::cos(angle);
  const double s = std::sin(angle);
  if (std::abs(s) > kDefaultTolerance) {
    double n2 = 0.0;
    for (double a : axis) n2 += a * a;
    if (std::abs(std::sqrt(n2) - 1.0) > kDefaultTolerance) {
      throw std::invalid_argument("polar phase axis is not unit norm");
    }
    for (std::size_t k = 1; k < dim; ++k) comps[k] = s * axis[k - 1];
  }
  return UnitVector(std::move(comps));
}

UnitVector parse_vector_phase(std::string_view spec, std::size_t dim) {
  std::vector<double> comps = parse_list(spec);
  if (comps.size() != dim) {
    throw std::invalid_argument("vector phase '" + std::string(spec) + "' has " +
                                std::to_string(comps.size()) + " components, expected " +
                                std::to_string(dim));
  }
  return UnitVector(std::move(comps));
}

ReportDocument run_test(const ProbabilityTable& table, const TestOptions& opts) {
  const std::size_t n = opts.paths.value_or(table.paths());
  if (n < 2) throw std::invalid_argument("test: table covers fewer than 2 paths");

  ReportDocument doc;
  doc.command = "test";
  doc.seed = opts.seed;
  doc.inputs["input"] = opts.input;
  doc.inputs["n"] = n;
  doc.inputs["dims"] = dims_json(opts.dims);
  doc.inputs["epsilon"] = opts.epsilon;
  doc.inputs["k_sigma"] = opts.k_sigma;
  doc.inputs["has_counts"] = table.has_counts();

  PeresValue value = reconstruct_f(table, n);
  if (table.has_counts() && value.complete()) {
    RngStream rng(opts.seed);
    const BootstrapSummary b = bootstrap_f(table, n, opts.resamples, rng);
    value.uncertainty = b.standard_error;
    doc.inputs["resamples"] = opts.resamples;
    doc.results["bootstrap"] = to_json(b);
  }

  const Verdict v = verdict(value, opts.dims, n, {opts.epsilon, opts.k_sigma});
  doc.results["peres"] = to_json(value);
  doc.results["verdict"] = std::string(to_string(v));
  doc.results["higher_dim_required"] = v == Verdict::HigherDimRequired;
  doc.results["sensitive"] = path_count_sensitive(opts.dims, n);
  doc.results["interference"] = to_json(interference_terms(table, n));
  const Json third = third_order_json(table, n);
  if (!third.empty()) doc.results["third_order"] = third;
  return doc;
}

ReportDocument cmd_test(const TestOptions& opts) {
  return run_test(read_table_csv_file(opts.input), opts);
}

SimulateResult cmd_simulate(const SimulateOptions& opts) {
  if (opts.paths < 2) throw std::invalid_argument("simulate: need at least 2 paths");
  if (opts.particles < 1) throw std::invalid_argument("simulate: need at least 1 particle");
  if (!opts.polar.empty() && !opts.vectors.empty()) {
    throw std::invalid_argument("simulate: give either polar or vector phases, not both");
  }
  const RngStream master(opts.seed);

  PathConfig cfg;
  const bool random = opts.polar.empty() && opts.vectors.empty();
  if (random) {
    RngStream phase_rng = master.substream(0);
    cfg = PathConfig::random(opts.paths, opts.dim, phase_rng);
  } else {
    const auto& specs = opts.polar.empty() ? opts.vectors : opts.polar;
    if (specs.size() != opts.paths) {
      throw std::invalid_argument("simulate: " + std::to_string(specs.size()) +
                                  " phase specs for " + std::to_string(opts.paths) + " paths");
    }
    cfg.amplitudes.assign(opts.paths, 1.0);
    for (const auto& s : specs) {
      cfg.phases.push_back(opts.polar.empty() ? parse_vector_phase(s, opts.dim)
                                              : parse_polar_phase(s, opts.dim));
    }
  }
  if (!opts.amplitudes.empty()) cfg.amplitudes = opts.amplitudes;
  cfg.validate();

  SimulateResult out;
  ReportDocument& doc = out.report;
  doc.command = "simulate";
  doc.seed = opts.seed;
  doc.inputs["d"] = opts.dim;
  doc.inputs["n"] = opts.paths;
  doc.inputs["m"] = opts.particles;
  doc.inputs["random_phases"] = random;
  doc.inputs["phases"] = phases_json(cfg);
  doc.inputs["amplitudes"] = cfg.amplitudes;
  doc.inputs["events_per_setting"] = opts.events ? Json(*opts.events) : Json(nullptr);
  doc.inputs["include_triples"] = opts.include_triples;
  doc.inputs["dims"] = dims_json(opts.dims);
  doc.inputs["epsilon"] = opts.epsilon;

  const InterferenceMatrix exact_gram = gram(cfg.embedding());
  doc.results["vector_route"] = to_json(peres_f(exact_gram));

  out.table = simulate_probabilities(cfg, opts.include_triples);
  if (opts.events) {
    RngStream noise_rng = master.substream(1);
    out.table = add_shot_noise(out.table, *opts.events, noise_rng);
  }

  PeresValue reconstructed = reconstruct_f(out.table, opts.paths);
  if (opts.events && reconstructed.complete()) {
    RngStream boot_rng = master.substream(2);
    const BootstrapSummary b = bootstrap_f(out.table, opts.paths, opts.resamples, boot_rng);
    reconstructed.uncertainty = b.standard_error;
    doc.results["bootstrap"] = to_json(b);
  }
  const Verdict v = verdict(reconstructed, opts.dims, opts.paths, {opts.epsilon});
  doc.results["reconstructed"] = to_json(reconstructed);
  doc.results["verdict"] = std::string(to_string(v));
  doc.results["higher_dim_required"] = v == Verdict::HigherDimRequired;
  doc.results["sensitive"] = path_count_sensitive(opts.dims, opts.paths);
  doc.results["interference"] = to_json(exact_gram.entries());
  if (opts.include_triples) doc.results["third_order"] = third_order_json(out.table, opts.paths);

  if (opts.particles > 1) {
    // Multi-particle routes use the noise-free single-particle Gram;
    // every particle shares the configuration.
    const auto g = MultiParticleGram::replicated(exact_gram, opts.particles, opts.cap);
    doc.results["multi_particle"] = to_json(evaluate_multi(g, opts.epsilon));
  }
  return out;
}

TableResult cmd_table(const TableOptions& opts) {
  if (opts.dim_min > opts.dim_max || opts.paths_min > opts.paths_max || opts.dim_min < 1 ||
      opts.paths_min < 3) {
    throw std::invalid_argument("table: ranges must be non-empty with d >= 1 and n >= 3");
  }
  TableResult out;
  ReportDocument& doc = out.report;
  doc.command = "table";
  doc.seed = opts.seed;
  doc.inputs["dims"] = Json::array({opts.dim_min, opts.dim_max});
  doc.inputs["paths"] = Json::array({opts.paths_min, opts.paths_max});
  doc.inputs["samples"] = opts.samples;
  doc.inputs["epsilon"] = opts.epsilon;

  Json cells = Json::array();
  std::ostringstream text;
  text << "     ";
  for (std::size_t d = opts.dim_min; d <= opts.dim_max; ++d) {
    std::string head = "d = " + std::to_string(d);
    head.resize(std::max<std::size_t>(head.size(), 8), ' ');
    text << "  " << head;
  }
  text << '\n';
  for (std::size_t n = opts.paths_min; n <= opts.paths_max; ++n) {
    std::vector<std::string> row;
    std::string label = "F_" + std::to_string(n);
    label.resize(5, ' ');
    text << label;
    for (std::size_t d = opts.dim_min; d <= opts.dim_max; ++d) {
      const MonteCarloSummary s = monte_carlo_campaign(d, n, opts.samples, opts.epsilon,
                                                       cell_seed(opts.seed, d, n), opts.workers);
      const std::string cell = s.frac_below == 0.0 ? "1" : "< 1";
      row.push_back(cell);
      std::string padded = cell;
      padded.resize(8, ' ');
      text << "  " << padded;
      Json c = to_json(s, opts.include_samples);
      c["cell"] = cell;
      cells.push_back(c);
    }
    text << '\n';
    out.cells.push_back(std::move(row));
  }
  out.rendered = text.str();
  doc.results["cells"] = cells;
  doc.results["rendered"] = out.rendered;
  return out;
}

}  // namespace peres
