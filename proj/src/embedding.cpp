#include "peres/embedding.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace peres {

UnitVector::UnitVector(std::vector<double> comps, double tol) : comps_(std::move(comps)) {
  if (comps_.empty()) throw std::invalid_argument("unit vector must have at least one component");
  double n2 = 0.0;
  for (double c : comps_) n2 += c * c;
  if (!(std::abs(std::sqrt(n2) - 1.0) <= tol)) {
    throw std::invalid_argument("vector is not unit norm (|v| = " + std::to_string(std::sqrt(n2)) +
                                ")");
  }
}

double dot(const UnitVector& a, const UnitVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) s += a[k] * b[k];
  return s;
}

UnitVector EmbeddingMatrix::row(std::size_t i) const {
  std::vector<double> c(dim());
  for (std::size_t k = 0; k < dim(); ++k) c[k] = rows_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  return UnitVector(std::move(c));
}

UnitVector embed(const Hypercomplex& psi, double tol) {
  auto c = psi.coeffs();
  if (!(std::abs(hc_norm(psi) - 1.0) <= tol)) {
    throw std::invalid_argument("embed: wavefunction phase must be unit norm");
  }
  return UnitVector(std::vector<double>(c.begin(), c.end()), tol);
}

EmbeddingMatrix build_matrix(std::span<const UnitVector> vectors) {
  if (vectors.size() < 2) {
    throw std::invalid_argument("build_matrix: need at least 2 path vectors, got " +
                                std::to_string(vectors.size()));
  }
  const std::size_t d = vectors.front().dim();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dim() != d) {
      throw std::invalid_argument("build_matrix: row " + std::to_string(i) + " has dimension " +
                                  std::to_string(vectors[i].dim()) + ", expected " +
                                  std::to_string(d));
    }
    for (std::size_t k = 0; k < d; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = vectors[i][k];
    }
  }
  return EmbeddingMatrix(std::move(m));
}

Eigen::MatrixXd pad_to_square(const EmbeddingMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.paths());
  const auto d = static_cast<Eigen::Index>(m.dim());
  if (n < d) {
    throw std::domain_error("pad_to_square: " + std::to_string(n) + " paths < dimension " +
                            std::to_string(d) + ", no zero column can be added");
  }
  Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(n, n);
  sq.leftCols(d) = m.matrix();
  return sq;
}

UnitVector random_unit_vector(std::size_t d, RngStream& rng) {
  if (d == 0) throw std::invalid_argument("random_unit_vector: dimension must be >= 1");
  auto engine = rng.next_engine();
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(d);
  for (;;) {
    double n2 = 0.0;
    for (auto& c : v) {
      c = gauss(engine);
      n2 += c * c;
    }
    if (n2 > 0.0 && std::isfinite(n2)) {
      if (d == 1) return UnitVector({std::copysign(1.0, v[0])});
      const double inv = 1.0 / std::sqrt(n2);
      for (auto& c : v) c *= inv;
      return UnitVector(std::move(v));
    }
  }
}

}  // namespace peres
