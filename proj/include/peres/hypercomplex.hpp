#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace peres {

inline constexpr double kDefaultTolerance = 1e-10;

/// Element of a Cayley-Dickson algebra: reals (1), complex (2),
/// quaternions (4) or octonions (8). Coefficient order follows the
/// doubling construction, so for quaternions it is (1, i, j, k).
class Hypercomplex {
 public:
  static constexpr std::size_t kMaxDim = 8;

  /// Zero of the given dimension. Throws std::invalid_argument unless
  /// dim is 1, 2, 4 or 8.
  explicit Hypercomplex(std::size_t dim);
  Hypercomplex(std::size_t dim, std::span<const double> coeffs);
  Hypercomplex(std::size_t dim, std::initializer_list<double> coeffs);

  /// Basis element e_k (e_0 = 1, e_1 = i, ...).
  static Hypercomplex unit(std::size_t dim, std::size_t k);
  static Hypercomplex real(std::size_t dim, double value);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> coeffs() const noexcept { return {coeffs_.data(), dim_}; }
  double operator[](std::size_t k) const { return coeffs_.at(k); }
  double scalar() const noexcept { return coeffs_[0]; }
  std::span<const double> vector_part() const noexcept {
    return {coeffs_.data() + 1, dim_ - 1};
  }

  Hypercomplex operator-() const;
  Hypercomplex& operator+=(const Hypercomplex& other);
  Hypercomplex& operator-=(const Hypercomplex& other);
  Hypercomplex& operator*=(double s) noexcept;

  friend Hypercomplex operator+(Hypercomplex a, const Hypercomplex& b) { return a += b; }
  friend Hypercomplex operator-(Hypercomplex a, const Hypercomplex& b) { return a -= b; }
  friend Hypercomplex operator*(Hypercomplex a, double s) noexcept { return a *= s; }
  friend Hypercomplex operator*(double s, Hypercomplex a) noexcept { return a *= s; }

  friend bool operator==(const Hypercomplex&, const Hypercomplex&) = default;

 private:
  std::size_t dim_;
  std::array<double, kMaxDim> coeffs_{};
};

/// Polar form |q| (cos angle + axis sin angle). The axis has dim - 1
/// components; when the vector part vanishes the axis is the first basis
/// direction and any other unit axis describes the same number.
struct PolarForm {
  double magnitude = 0.0;
  double angle = 0.0;
  std::vector<double> axis;
};

/// Cayley-Dickson product. Associative up to dim 4, norm-multiplicative
/// up to dim 8. Throws std::invalid_argument on dimension mismatch.
Hypercomplex hc_mul(const Hypercomplex& x, const Hypercomplex& y);
Hypercomplex operator*(const Hypercomplex& x, const Hypercomplex& y);

Hypercomplex hc_conj(const Hypercomplex& x);
double hc_norm(const Hypercomplex& x);
double hc_norm_squared(const Hypercomplex& x);

/// Throws std::invalid_argument when the axis has the wrong length, or is
/// not unit norm within `tol` while sin(angle) is non-negligible.
Hypercomplex hc_from_polar(const PolarForm& p, std::size_t dim,
                           double tol = kDefaultTolerance);

/// Angle is atan2(|v|, scalar), so always in [0, pi].
PolarForm hc_to_polar(const Hypercomplex& x);

/// Scalar part of x * conj(y). For unit quaternions this is
/// cos(a) cos(b) + (n_a . n_b) sin(a) sin(b).
double hc_scalar_kernel(const Hypercomplex& x, const Hypercomplex& y);

/// True iff |xy - yx| <= tol.
bool hc_commutes(const Hypercomplex& x, const Hypercomplex& y,
                 double tol = kDefaultTolerance);

}  // namespace peres
