#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "peres/embedding.hpp"

namespace peres {

inline constexpr double kEigenTolerance = 1e-9;
inline constexpr double kVerdictEpsilon = 1e-9;

/// Exact: built from vectors or noise-free probabilities, so the Gram
/// invariants hold. Estimated: reconstructed from noisy counts.
enum class Mode { Exact, Estimated };

std::string_view to_string(Mode m) noexcept;

/// Symmetric n x n matrix of second-order interferences with unit
/// diagonal.
class InterferenceMatrix {
 public:
  /// Validates symmetry (1e-12), unit diagonal and off-diagonals in
  /// [-1, 1], each up to `tol`. Throws std::invalid_argument.
  static InterferenceMatrix exact(Eigen::MatrixXd entries, double tol = kEigenTolerance);

  /// Keeps the raw entries and clamps the off-diagonals into [-1, 1].
  /// Only symmetry and shape are checked.
  static InterferenceMatrix estimated(Eigen::MatrixXd raw);

  std::size_t paths() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  Mode mode() const noexcept { return mode_; }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  /// Pre-clamp entries; identical to entries() in exact mode.
  const Eigen::MatrixXd& raw_entries() const noexcept { return raw_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  InterferenceMatrix(Eigen::MatrixXd entries, Eigen::MatrixXd raw, Mode mode)
      : entries_(std::move(entries)), raw_(std::move(raw)), mode_(mode) {}
  Eigen::MatrixXd entries_;
  Eigen::MatrixXd raw_;
  Mode mode_;
};

struct PeresValue {
  double f = 1.0;
  double det = 0.0;
  Mode mode = Mode::Exact;
  std::optional<double> uncertainty;
  /// Estimated mode only: F from the unclamped interferences.
  std::optional<double> raw_f;
  /// Pairs whose interference could not be formed (a single-path
  /// probability of zero under noise). When non-empty f and det are NaN.
  std::vector<std::pair<std::size_t, std::size_t>> missing_pairs;

  bool complete() const noexcept { return missing_pairs.empty(); }
};

/// (P_ij - P_i - P_j) / (2 sqrt(P_i P_j)). Throws std::domain_error if
/// either single is not strictly positive or any input is negative.
double pairwise_interference(double p_i, double p_j, double p_ij);

/// Dot products of the rows, filled symmetrically. Works on any real
/// matrix, including the padded square form.
Eigen::MatrixXd gram_entries(const Eigen::MatrixXd& rows);

InterferenceMatrix gram(const EmbeddingMatrix& m);

/// Determinant through the symmetric eigendecomposition.
///
/// Exact mode: eigenvalues in [-tol, 0) are clamped to zero and anything
/// below -tol throws std::domain_error, since a Gram matrix is PSD. The
/// result is kept inside [0, 1], the Hadamard bound for a unit diagonal.
/// Estimated mode: the plain eigenvalue product of the clamped matrix.
double gram_det(const InterferenceMatrix& im, double tol = kEigenTolerance);

/// Plain eigenvalue product of an arbitrary symmetric matrix.
double symmetric_det(const Eigen::MatrixXd& m);

/// F_n = 1 - det(I_n).
PeresValue peres_f(const InterferenceMatrix& im, double tol = kEigenTolerance);

/// Closed three-path form iab^2 + ibc^2 + ica^2 - 2 iab ibc ica.
/// Throws std::domain_error for inputs outside [-1, 1].
double peres_f_closed3(double iab, double ibc, double ica);

/// Cyclic sum of consecutive phase differences reduced to (-pi, pi].
double phase_closure_defect(std::span<const double> phases);

/// Number-system dimensions being discriminated, lower < higher.
struct DimsUnderTest {
  std::size_t lower = 2;
  std::size_t higher = 4;
};

enum class Verdict { LowerDimAdmissible, HigherDimRequired, Inconclusive };

std::string_view to_string(Verdict v) noexcept;

struct VerdictOptions {
  double epsilon = kVerdictEpsilon;
  /// Estimated mode with an uncertainty: 1 - F must exceed k standard
  /// errors before a higher dimension is called for.
  double k_sigma = 3.0;
};

/// An n-path test only separates the two dimensions when
/// lower + 1 <= n <= higher; outside that window the result is
/// Inconclusive. Incomplete values are Inconclusive as well.
Verdict verdict(const PeresValue& v, DimsUnderTest dims, std::size_t n,
                const VerdictOptions& opts = {});

/// True when an n-path test can tell `dims.lower` from `dims.higher`.
bool path_count_sensitive(DimsUnderTest dims, std::size_t n);

/// sqrt(det I): volume of the parallelotope spanned by the path vectors.
double parallelotope_volume(const InterferenceMatrix& im, double tol = kEigenTolerance);

}  // namespace peres
