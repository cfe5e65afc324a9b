#include "peres/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace peres {
namespace {

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string format_setting(const Setting& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += '+';
    out += std::to_string(s[k]);
  }
  return out;
}

Setting parse_setting(std::string_view text) {
  Setting s;
  std::size_t pos = 0;
  while (true) {
    const std::size_t plus = text.find('+', pos);
    const std::string_view tok = text.substr(pos, plus == std::string_view::npos ? text.npos : plus - pos);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw std::invalid_argument("malformed setting '" + std::string(text) + "'");
    }
    s.push_back(value);
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw std::invalid_argument("setting '" + std::string(text) + "' repeats a path");
  }
  return s;
}

void ProbabilityTable::set(Setting s, Measurement m) {
  if (s.empty()) throw std::invalid_argument("empty setting");
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw std::invalid_argument("setting repeats a path");
  }
  if (!std::isfinite(m.probability) || m.probability < 0.0) {
    throw std::invalid_argument("probability for " + format_setting(s) +
                                " must be finite and non-negative");
  }
  if (m.count.has_value() != m.exposure.has_value()) {
    throw std::invalid_argument("count and exposure must be given together for " +
                                format_setting(s));
  }
  if (m.count && (*m.count < 0 || *m.exposure < 1)) {
    throw std::invalid_argument("invalid count/exposure for " + format_setting(s));
  }
  entries_[std::move(s)] = m;
}

const Measurement& ProbabilityTable::at(const Setting& s) const {
  auto it = entries_.find(s);
  if (it == entries_.end()) throw std::out_of_range("missing setting " + format_setting(s));
  return it->second;
}

bool ProbabilityTable::has_counts() const {
  return !entries_.empty() &&
         std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.second.count.has_value(); });
}

std::size_t ProbabilityTable::paths() const {
  std::size_t n = 0;
  for (const auto& [s, m] : entries_) n = std::max(n, s.back() + 1);
  return n;
}

bool operator==(const ProbabilityTable& a, const ProbabilityTable& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  auto it = b.entries_.begin();
  for (const auto& [s, m] : a.entries_) {
    if (s != it->first || m.probability != it->second.probability || m.count != it->second.count ||
        m.exposure != it->second.exposure) {
      return false;
    }
    ++it;
  }
  return true;
}

PathConfig PathConfig::from_hypercomplex(std::vector<double> amplitudes,
                                         const std::vector<Hypercomplex>& phases) {
  PathConfig cfg;
  cfg.amplitudes = std::move(amplitudes);
  for (const auto& p : phases) cfg.phases.push_back(embed(p));
  cfg.validate();
  return cfg;
}

PathConfig PathConfig::random(std::size_t paths, std::size_t dim, RngStream& rng) {
  PathConfig cfg;
  cfg.amplitudes.assign(paths, 1.0);
  for (std::size_t i = 0; i < paths; ++i) cfg.phases.push_back(random_unit_vector(dim, rng));
  cfg.validate();
  return cfg;
}

void PathConfig::validate() const {
  if (phases.size() < 2) throw std::invalid_argument("path config needs at least 2 paths");
  if (amplitudes.size() != phases.size()) {
    throw std::invalid_argument("path config: " + std::to_string(amplitudes.size()) +
                                " amplitudes for " + std::to_string(phases.size()) + " phases");
  }
  for (double r : amplitudes) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("path config: amplitudes must be positive");
    }
  }
  for (const auto& p : phases) {
    if (p.dim() != dim()) throw std::invalid_argument("path config: mixed phase dimensions");
  }
}

EmbeddingMatrix PathConfig::embedding() const { return build_matrix(phases); }

ProbabilityTable simulate_probabilities(const PathConfig& cfg, bool include_triples) {
  cfg.validate();
  const std::size_t n = cfg.paths();
  const std::size_t d = cfg.dim();
  ProbabilityTable table;

  auto subset_probability = [&](const Setting& s) {
    std::vector<double> sum(d, 0.0);
    for (std::size_t i : s) {
      for (std::size_t k = 0; k < d; ++k) sum[k] += cfg.amplitudes[i] * cfg.phases[i][k];
    }
    double p = 0.0;
    for (double c : sum) p += c * c;
    return p;
  };

  for (std::size_t i = 0; i < n; ++i) {
    table.set({i}, {cfg.amplitudes[i] * cfg.amplitudes[i], {}, {}});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      table.set({i, j}, {subset_probability({i, j}), {}, {}});
      if (!include_triples) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        table.set({i, j, k}, {subset_probability({i, j, k}), {}, {}});
      }
    }
  }
  return table;
}

PeresValue reconstruct_f(const ProbabilityTable& table, std::size_t n) {
  if (n < 2) throw std::invalid_argument("reconstruct_f: need at least 2 paths");
  const bool estimated = table.has_counts();
  Eigen::MatrixXd raw = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<std::pair<std::size_t, std::size_t>> missing;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double pi = table.probability({i});
      const double pj = table.probability({j});
      const double pij = table.probability({i, j});
      if (!(pi > 0.0) || !(pj > 0.0)) {
        if (!estimated) {
          throw std::domain_error("reconstruct_f: single-path probability of zero for pair " +
                                  format_setting({i, j}));
        }
        missing.emplace_back(i, j);
        continue;
      }
      const double v = pairwise_interference(pi, pj, pij);
      raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      raw(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }

  if (!missing.empty()) {
    PeresValue v;
    v.mode = Mode::Estimated;
    v.f = v.det = std::numeric_limits<double>::quiet_NaN();
    v.missing_pairs = std::move(missing);
    return v;
  }
  return peres_f(estimated ? InterferenceMatrix::estimated(std::move(raw))
                           : InterferenceMatrix::exact(std::move(raw)));
}

double sorkin_third_order(const ProbabilityTable& table, std::size_t a, std::size_t b,
                          std::size_t c) {
  auto p = [&](Setting s) {
    std::sort(s.begin(), s.end());
    return table.probability(s);
  };
  return p({a, b, c}) - p({a, b}) - p({b, c}) - p({a, c}) + p({a}) + p({b}) + p({c});
}

ProbabilityTable add_shot_noise(const ProbabilityTable& table, std::int64_t events_per_setting,
                                RngStream& rng) {
  if (events_per_setting < 1) throw std::invalid_argument("add_shot_noise: N must be >= 1");
  const auto n = static_cast<double>(events_per_setting);
  ProbabilityTable noisy;
  for (const auto& [setting, m] : table.entries()) {
    auto engine = rng.next_engine();
    std::int64_t k = 0;
    const double mean = n * m.probability;
    if (mean > 0.0) k = std::poisson_distribution<std::int64_t>(mean)(engine);
    noisy.set(setting, {static_cast<double>(k) / n, k, events_per_setting});
  }
  return noisy;
}

BootstrapSummary bootstrap_f(const ProbabilityTable& table, std::size_t n, std::size_t resamples,
                             RngStream& rng) {
  if (!table.has_counts()) throw std::invalid_argument("bootstrap: table has no counts");
  if (resamples < kMinBootstrapResamples) {
    throw std::invalid_argument("bootstrap: need at least " +
                                std::to_string(kMinBootstrapResamples) + " resamples");
  }
  BootstrapSummary out;
  std::vector<double> fs;
  fs.reserve(resamples);
  for (std::size_t r = 0; r < resamples; ++r) {
    auto engine = rng.next_engine();
    ProbabilityTable sample;
    for (const auto& [setting, m] : table.entries()) {
      std::int64_t k = 0;
      if (*m.count > 0) {
        k = std::poisson_distribution<std::int64_t>(static_cast<double>(*m.count))(engine);
      }
      sample.set(setting, {static_cast<double>(k) / static_cast<double>(*m.exposure), k, m.exposure});
    }
    const PeresValue v = reconstruct_f(sample, n);
    if (!v.complete()) {
      ++out.rejected;
      continue;
    }
    fs.push_back(v.f);
  }
  if (fs.size() < 2) throw std::runtime_error("bootstrap: too few usable resamples");

  out.resamples = fs.size();
  out.mean = std::accumulate(fs.begin(), fs.end(), 0.0) / static_cast<double>(fs.size());
  double ss = 0.0;
  for (double f : fs) ss += (f - out.mean) * (f - out.mean);
  out.standard_error = std::sqrt(ss / static_cast<double>(fs.size() - 1));
  std::sort(fs.begin(), fs.end());
  out.lower95 = quantile(fs, 0.025);
  out.upper95 = quantile(fs, 0.975);
  return out;
}

double bootstrap_uncertainty(const ProbabilityTable& table, std::size_t n, std::size_t resamples,
                             RngStream& rng) {
  return bootstrap_f(table, n, resamples, rng).standard_error;
}

MonteCarloSummary monte_carlo_campaign(std::size_t dim, std::size_t paths, std::size_t samples,
                                       double epsilon, std::uint64_t seed, std::size_t workers) {
  if (dim < 1 || paths < 3 || samples < 1) {
    throw std::invalid_argument("monte_carlo_campaign: need d >= 1, n >= 3, samples >= 1");
  }
  const RngStream master(seed);
  std::vector<double> fs(samples);

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      RngStream stream = master.substream(s);
      std::vector<UnitVector> rows;
      rows.reserve(paths);
      for (std::size_t i = 0; i < paths; ++i) rows.push_back(random_unit_vector(dim, stream));
      fs[s] = peres_f(gram(build_matrix(rows))).f;
    }
  };

  workers = std::clamp<std::size_t>(workers, 1, samples);
  if (workers == 1) {
    run_range(0, samples);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (samples + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(samples, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
  }

  MonteCarloSummary out;
  out.dim = dim;
  out.paths = paths;
  out.samples = samples;
  out.seed = seed;
  out.epsilon = epsilon;
  out.mean = std::accumulate(fs.begin(), fs.end(), 0.0) / static_cast<double>(samples);
  out.frac_below = static_cast<double>(std::count_if(fs.begin(), fs.end(),
                                                     [&](double f) { return f < 1.0 - epsilon; })) /
                   static_cast<double>(samples);
  out.f_values = fs;
  std::sort(fs.begin(), fs.end());
  out.min = fs.front();
  out.max = fs.back();
  out.q05 = quantile(fs, 0.05);
  out.median = quantile(fs, 0.5);
  out.q95 = quantile(fs, 0.95);
  return out;
}

}  // namespace peres
