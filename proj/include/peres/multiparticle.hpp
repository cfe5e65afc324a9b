#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "peres/interference.hpp"

namespace peres {

/// Largest side length of a matrix the oracle will materialize.
inline constexpr std::size_t kMaterializationCap = 4096;

/// Kronecker product. Throws std::length_error when either side of the
/// result would exceed `cap`.
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                     std::size_t cap = kMaterializationCap);

/// m single-particle interference matrices over the same n paths, plus
/// their m-fold Kronecker product when n^m fits under the cap.
class MultiParticleGram {
 public:
  explicit MultiParticleGram(std::vector<InterferenceMatrix> factors,
                             std::size_t cap = kMaterializationCap);

  /// Every particle in the same single-particle configuration.
  static MultiParticleGram replicated(const InterferenceMatrix& single, std::size_t particles,
                                      std::size_t cap = kMaterializationCap);

  std::size_t paths() const noexcept { return paths_; }
  std::size_t particles() const noexcept { return factors_.size(); }
  const std::vector<InterferenceMatrix>& factors() const noexcept { return factors_; }
  bool materialized() const noexcept { return product_.has_value(); }
  /// Throws std::logic_error when the product was over the cap.
  const Eigen::MatrixXd& product() const;

 private:
  std::size_t paths_;
  std::vector<InterferenceMatrix> factors_;
  std::optional<Eigen::MatrixXd> product_;
};

/// 1 - prod_i (1 - f_i)^n, the closed multi-particle formula evaluated as
/// printed. Throws std::domain_error for f outside [0, 1], n < 3 or an
/// empty list.
double peres_f_multi_paper(std::span<const double> fs, std::size_t n);

/// 1 - det of the materialized product, with the same clamped
/// eigendecomposition as gram_det. Throws std::logic_error if the
/// product was not materialized.
PeresValue peres_f_multi_oracle(const MultiParticleGram& g, double tol = kEigenTolerance);

/// log det of the m-fold product from the factors alone:
/// sum_i n^(m-1) log det(I_i). -inf when a factor is singular.
double multi_log_det(const MultiParticleGram& g, double tol = kEigenTolerance);

struct MultiVerdict {
  bool agree_on_dichotomy = true;
  double value_gap = 0.0;
};

/// Compares the closed formula and the oracle on F = 1 versus F < 1.
MultiVerdict multi_verdict(double f_paper, double f_oracle, double epsilon = kVerdictEpsilon);

/// Both routes for one multi-particle configuration.
struct MultiParticleReport {
  std::size_t paths = 0;
  std::size_t particles = 0;
  std::vector<double> single_f;
  double f_paper = 1.0;
  double log_det_product = 0.0;
  std::optional<double> f_oracle;
  std::optional<MultiVerdict> comparison;
  /// The routes compared through det^(1/e), e being each route's total
  /// exponent on the factor determinants (n for the closed formula,
  /// n^(m-1) for the Kronecker product). Both collapse to prod det(I_i),
  /// so the F = 1 question is asked at the same scale for every m.
  std::optional<MultiVerdict> per_particle_comparison;
  bool oracle_skipped = false;
};

MultiParticleReport evaluate_multi(const MultiParticleGram& g, double epsilon = kVerdictEpsilon,
                                   double tol = kEigenTolerance);

}  // namespace peres
