#include "peres/hypercomplex.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace peres {
namespace {

bool valid_dim(std::size_t dim) { return dim == 1 || dim == 2 || dim == 4 || dim == 8; }

void require_same_dim(const Hypercomplex& x, const Hypercomplex& y, const char* what) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(x.dim()) + " vs " + std::to_string(y.dim()) + ")");
  }
}

using Buffer = std::array<double, Hypercomplex::kMaxDim>;

void conj_into(std::span<const double> a, std::span<double> out) {
  out[0] = a[0];
  for (std::size_t k = 1; k < a.size(); ++k) out[k] = -a[k];
}

// (p, q)(r, s) = (p r - s* q, s p + q r*)
void cd_mul(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const std::size_t n = a.size();
  if (n == 1) {
    out[0] = a[0] * b[0];
    return;
  }
  const std::size_t h = n / 2;
  auto p = a.first(h), q = a.last(h);
  auto r = b.first(h), s = b.last(h);

  Buffer s_conj{}, r_conj{}, t1{}, t2{};
  conj_into(s, std::span(s_conj).first(h));
  conj_into(r, std::span(r_conj).first(h));

  cd_mul(p, r, std::span(t1).first(h));
  cd_mul(std::span<const double>(s_conj).first(h), q, std::span(t2).first(h));
  for (std::size_t k = 0; k < h; ++k) out[k] = t1[k] - t2[k];

  cd_mul(s, p, std::span(t1).first(h));
  cd_mul(q, std::span<const double>(r_conj).first(h), std::span(t2).first(h));
  for (std::size_t k = 0; k < h; ++k) out[h + k] = t1[k] + t2[k];
}

}  // namespace

Hypercomplex::Hypercomplex(std::size_t dim) : dim_(dim) {
  if (!valid_dim(dim)) {
    throw std::invalid_argument("hypercomplex dimension must be 1, 2, 4 or 8, got " +
                                std::to_string(dim));
  }
}

Hypercomplex::Hypercomplex(std::size_t dim, std::span<const double> coeffs) : Hypercomplex(dim) {
  if (coeffs.size() != dim) {
    throw std::invalid_argument("hypercomplex: expected " + std::to_string(dim) +
                                " coefficients, got " + std::to_string(coeffs.size()));
  }
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

Hypercomplex::Hypercomplex(std::size_t dim, std::initializer_list<double> coeffs)
    : Hypercomplex(dim, std::span<const double>(coeffs.begin(), coeffs.size())) {}

Hypercomplex Hypercomplex::unit(std::size_t dim, std::size_t k) {
  Hypercomplex x(dim);
  if (k >= dim) throw std::out_of_range("hypercomplex unit index out of range");
  x.coeffs_[k] = 1.0;
  return x;
}

Hypercomplex Hypercomplex::real(std::size_t dim, double value) {
  Hypercomplex x(dim);
  x.coeffs_[0] = value;
  return x;
}

Hypercomplex Hypercomplex::operator-() const {
  Hypercomplex r = *this;
  for (std::size_t k = 0; k < dim_; ++k) r.coeffs_[k] = -coeffs_[k];
  return r;
}

Hypercomplex& Hypercomplex::operator+=(const Hypercomplex& other) {
  require_same_dim(*this, other, "add");
  for (std::size_t k = 0; k < dim_; ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Hypercomplex& Hypercomplex::operator-=(const Hypercomplex& other) {
  require_same_dim(*this, other, "subtract");
  for (std::size_t k = 0; k < dim_; ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

Hypercomplex& Hypercomplex::operator*=(double s) noexcept {
  for (std::size_t k = 0; k < dim_; ++k) coeffs_[k] *= s;
  return *this;
}

Hypercomplex hc_mul(const Hypercomplex& x, const Hypercomplex& y) {
  require_same_dim(x, y, "hc_mul");
  Buffer out{};
  cd_mul(x.coeffs(), y.coeffs(), std::span(out).first(x.dim()));
  return Hypercomplex(x.dim(), std::span<const double>(out).first(x.dim()));
}

Hypercomplex operator*(const Hypercomplex& x, const Hypercomplex& y) { return hc_mul(x, y); }

Hypercomplex hc_conj(const Hypercomplex& x) {
  Buffer out{};
  conj_into(x.coeffs(), std::span(out).first(x.dim()));
  return Hypercomplex(x.dim(), std::span<const double>(out).first(x.dim()));
}

double hc_norm_squared(const Hypercomplex& x) {
  double s = 0.0;
  for (double c : x.coeffs()) s += c * c;
  return s;
}

double hc_norm(const Hypercomplex& x) {
  return std::sqrt(hc_norm_squared(x));
}

Hypercomplex hc_from_polar(const PolarForm& p, std::size_t dim, double tol) {
  Hypercomplex probe(dim);  // validates dim
  if (p.axis.size() != dim - 1) {
    throw std::invalid_argument("hc_from_polar: axis must have " + std::to_string(dim - 1) +
                                " components, got " + std::to_string(p.axis.size()));
  }
  if (p.magnitude < 0.0) throw std::invalid_argument("hc_from_polar: negative magnitude");

  const double c = std::cos(p.angle);
  const double s = std::sin(p.angle);
  if (std::abs(s) > tol) {
    if (dim == 1) {
      throw std::invalid_argument("hc_from_polar: a real number has no axis for angle " +
                                  std::to_string(p.angle));
    }
    double axis_norm2 = 0.0;
    for (double a : p.axis) axis_norm2 += a * a;
    if (std::abs(std::sqrt(axis_norm2) - 1.0) > tol) {
      throw std::invalid_argument("hc_from_polar: axis is not unit norm");
    }
  }

  std::array<double, Hypercomplex::kMaxDim> coeffs{};
  coeffs[0] = p.magnitude * c;
  // At sin(angle) == 0 the axis drops out, so any axis (even zero) is fine.
  if (std::abs(s) > tol) {
    for (std::size_t k = 1; k < dim; ++k) coeffs[k] = p.magnitude * s * p.axis[k - 1];
  }
  return Hypercomplex(dim, std::span<const double>(coeffs).first(dim));
}

PolarForm hc_to_polar(const Hypercomplex& x) {
  PolarForm p;
  p.magnitude = hc_norm(x);
  auto v = x.vector_part();
  double vnorm2 = 0.0;
  for (double c : v) vnorm2 += c * c;
  const double vnorm = std::sqrt(vnorm2);
  p.angle = std::atan2(vnorm, x.scalar());
  p.axis.assign(v.size(), 0.0);
  if (vnorm > 0.0) {
    for (std::size_t k = 0; k < v.size(); ++k) p.axis[k] = v[k] / vnorm;
  } else if (!p.axis.empty()) {
    p.axis[0] = 1.0;
  }
  return p;
}

double hc_scalar_kernel(const Hypercomplex& x, const Hypercomplex& y) {
  require_same_dim(x, y, "hc_scalar_kernel");
  return hc_mul(x, hc_conj(y)).scalar();
}

bool hc_commutes(const Hypercomplex& x, const Hypercomplex& y, double tol) {
  require_same_dim(x, y, "hc_commutes");
  return hc_norm(hc_mul(x, y) - hc_mul(y, x)) <= tol;
}

}  // namespace peres
