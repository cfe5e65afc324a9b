#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "peres/hypercomplex.hpp"
#include "peres/random.hpp"

namespace peres {

/// Real unit vector standing in for one path's phase. Any dimension is
/// allowed, not only the division-algebra ones.
class UnitVector {
 public:
  /// Throws std::invalid_argument if comps is empty or its norm differs
  /// from 1 by more than `tol`.
  explicit UnitVector(std::vector<double> comps, double tol = kDefaultTolerance);

  std::size_t dim() const noexcept { return comps_.size(); }
  std::span<const double> comps() const noexcept { return comps_; }
  double operator[](std::size_t k) const { return comps_.at(k); }

  friend bool operator==(const UnitVector&, const UnitVector&) = default;

 private:
  std::vector<double> comps_;
};

double dot(const UnitVector& a, const UnitVector& b);

/// The n x d matrix whose rows are the path vectors.
class EmbeddingMatrix {
 public:
  std::size_t paths() const noexcept { return static_cast<std::size_t>(rows_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(rows_.cols()); }
  const Eigen::MatrixXd& matrix() const noexcept { return rows_; }
  UnitVector row(std::size_t i) const;

 private:
  friend EmbeddingMatrix build_matrix(std::span<const UnitVector> vectors);
  explicit EmbeddingMatrix(Eigen::MatrixXd rows) : rows_(std::move(rows)) {}
  Eigen::MatrixXd rows_;
};

/// Coefficients of a unit-norm hypercomplex number as a real vector.
UnitVector embed(const Hypercomplex& psi, double tol = kDefaultTolerance);

/// Rows in input order. Needs at least two vectors of a common dimension.
EmbeddingMatrix build_matrix(std::span<const UnitVector> vectors);

/// Appends n - d zero columns. Throws std::domain_error when n < d: no
/// zero column can be added and the determinant shortcut is unavailable.
Eigen::MatrixXd pad_to_square(const EmbeddingMatrix& m);

/// Isotropic draw on the (d-1)-sphere, one draw index consumed.
UnitVector random_unit_vector(std::size_t d, RngStream& rng);

}  // namespace peres
