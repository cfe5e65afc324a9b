#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "peres/embedding.hpp"
#include "peres/hypercomplex.hpp"
#include "peres/interference.hpp"
#include "peres/random.hpp"

namespace peres {

/// Sorted, duplicate-free list of open paths, e.g. {0, 2} for "0+2".
using Setting = std::vector<std::size_t>;

std::string format_setting(const Setting& s);
/// Parses "0+1+2". Throws std::invalid_argument on malformed or
/// duplicate indices; the result is sorted.
Setting parse_setting(std::string_view text);

struct Measurement {
  double probability = 0.0;
  std::optional<std::int64_t> count;
  std::optional<std::int64_t> exposure;
};

/// Probabilities per path subset, optionally with the raw event counts
/// they came from.
class ProbabilityTable {
 public:
  /// Throws std::invalid_argument for a negative or non-finite
  /// probability, an empty setting, or a count without exposure.
  void set(Setting s, Measurement m);

  bool contains(const Setting& s) const { return entries_.contains(s); }
  /// Throws std::out_of_range naming the missing setting.
  const Measurement& at(const Setting& s) const;
  double probability(const Setting& s) const { return at(s).probability; }

  /// True when the table is non-empty and every setting carries counts.
  bool has_counts() const;
  /// One past the largest path index seen.
  std::size_t paths() const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::map<Setting, Measurement>& entries() const noexcept { return entries_; }

  friend bool operator==(const ProbabilityTable& a, const ProbabilityTable& b);

 private:
  std::map<Setting, Measurement> entries_;
};

/// Amplitudes r_i > 0 and unit phase vectors for each path.
struct PathConfig {
  std::vector<double> amplitudes;
  std::vector<UnitVector> phases;

  static PathConfig from_hypercomplex(std::vector<double> amplitudes,
                                      const std::vector<Hypercomplex>& phases);
  /// Unit amplitudes and isotropic random phases in R^d.
  static PathConfig random(std::size_t paths, std::size_t dim, RngStream& rng);

  std::size_t paths() const noexcept { return phases.size(); }
  std::size_t dim() const noexcept { return phases.empty() ? 0 : phases.front().dim(); }

  /// Throws std::invalid_argument on size mismatch, fewer than two paths,
  /// mixed dimensions or a non-positive amplitude.
  void validate() const;
  EmbeddingMatrix embedding() const;
};

/// Born-rule probabilities: P_i = r_i^2 and P_S = |sum_{i in S} r_i psi_i|^2
/// for every pair, plus every triple when requested.
ProbabilityTable simulate_probabilities(const PathConfig& cfg, bool include_triples = false);

/// Forms every pairwise interference for paths 0..n-1 and evaluates F_n.
/// Estimated mode when the table carries counts, exact otherwise.
/// Throws std::out_of_range for a missing setting. A zero single throws
/// std::domain_error in exact mode; with counts the affected pairs are
/// reported in PeresValue::missing_pairs instead.
PeresValue reconstruct_f(const ProbabilityTable& table, std::size_t n);

/// P_abc - P_ab - P_bc - P_ca + P_a + P_b + P_c.
double sorkin_third_order(const ProbabilityTable& table, std::size_t a, std::size_t b,
                          std::size_t c);

/// Replaces each probability by k / N with k ~ Poisson(N P), one draw
/// index per setting in table order. Throws std::invalid_argument if N < 1.
ProbabilityTable add_shot_noise(const ProbabilityTable& table, std::int64_t events_per_setting,
                                RngStream& rng);

struct BootstrapSummary {
  double standard_error = 0.0;
  double mean = 0.0;
  /// Percentile interval (2.5 %, 97.5 %) of the resampled F values.
  double lower95 = 0.0;
  double upper95 = 0.0;
  std::size_t resamples = 0;
  /// Resamples dropped because a single-path count came out zero.
  std::size_t rejected = 0;
};

inline constexpr std::size_t kMinBootstrapResamples = 100;

/// Parametric resampling of every setting's count as Poisson(k).
/// Throws std::invalid_argument without counts or with fewer than
/// kMinBootstrapResamples resamples.
BootstrapSummary bootstrap_f(const ProbabilityTable& table, std::size_t n,
                             std::size_t resamples, RngStream& rng);

/// Standard error of F; see bootstrap_f.
double bootstrap_uncertainty(const ProbabilityTable& table, std::size_t n,
                             std::size_t resamples, RngStream& rng);

struct MonteCarloSummary {
  std::size_t dim = 0;
  std::size_t paths = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double q05 = 0.0;
  double median = 0.0;
  double q95 = 0.0;
  /// Fraction of samples with F < 1 - epsilon.
  double frac_below = 0.0;
  std::vector<double> f_values;
};

/// Draws `samples` sets of n random unit vectors in R^d and summarizes
/// F_n. Sample i uses substream i of the seed, so the result does not
/// depend on `workers`.
MonteCarloSummary monte_carlo_campaign(std::size_t dim, std::size_t paths, std::size_t samples,
                                       double epsilon, std::uint64_t seed,
                                       std::size_t workers = 1);

}  // namespace peres
