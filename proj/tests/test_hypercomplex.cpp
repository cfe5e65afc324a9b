#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "peres/hypercomplex.hpp"
#include "peres/random.hpp"

using namespace peres;

namespace {

Hypercomplex q(double a, double b, double c, double d) { return Hypercomplex(4, {a, b, c, d}); }

Hypercomplex random_hc(std::size_t dim, std::mt19937_64& eng) {
  std::normal_distribution<double> g;
  std::array<double, 8> c{};
  for (std::size_t k = 0; k < dim; ++k) c[k] = g(eng);
  return Hypercomplex(dim, std::span<const double>(c).first(dim));
}

Hypercomplex random_unit(std::size_t dim, std::mt19937_64& eng) {
  Hypercomplex x = random_hc(dim, eng);
  return x * (1.0 / hc_norm(x));
}

double dist(const Hypercomplex& a, const Hypercomplex& b) { return hc_norm(a - b); }

}  // namespace

TEST_CASE("construction rejects unsupported dimensions") {
  CHECK_THROWS_AS(Hypercomplex(3), std::invalid_argument);
  CHECK_THROWS_AS(Hypercomplex(16), std::invalid_argument);
  CHECK_THROWS_AS(Hypercomplex(4, {1.0, 2.0}), std::invalid_argument);
  CHECK_NOTHROW(Hypercomplex(8));
}

TEST_CASE("quaternion unit table holds exactly") {
  const auto one = Hypercomplex::real(4, 1.0);
  const auto i = Hypercomplex::unit(4, 1), j = Hypercomplex::unit(4, 2), k = Hypercomplex::unit(4, 3);
  CHECK(i * i == -one);
  CHECK(j * j == -one);
  CHECK(k * k == -one);
  CHECK((i * j) * k == -one);
  CHECK(i * j == k);
  CHECK(j * i == -k);
  CHECK(j * k == i);
  CHECK(k * i == j);
}

TEST_CASE("hc_mul examples") {
  const auto x = q(0.3, -1.2, 2.0, 0.5);
  CHECK(Hypercomplex::real(4, 1.0) * x == x);
  // (1+i)(1+j) = 1 + j + i + ij = 1 + i + j + k
  CHECK(q(1, 1, 0, 0) * q(1, 0, 1, 0) == q(1, 1, 1, 1));
  CHECK_THROWS_AS(hc_mul(Hypercomplex(2), Hypercomplex(4)), std::invalid_argument);
}

TEST_CASE("Cayley-Dickson product agrees with the Hamilton oracle") {
  std::mt19937_64 eng(11);
  for (int t = 0; t < 500; ++t) {
    const auto x = random_hc(4, eng), y = random_hc(4, eng);
    const oracle::Quat h = oracle::hamilton({x[0], x[1], x[2], x[3]}, {y[0], y[1], y[2], y[3]});
    const auto p = x * y;
    for (int k = 0; k < 4; ++k) CHECK(std::abs(p[k] - h[k]) <= 1e-12);
  }
}

TEST_CASE("complex subalgebra matches std::complex") {
  std::mt19937_64 eng(3);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_hc(2, eng), y = random_hc(2, eng);
    const std::complex<double> z = std::complex<double>(x[0], x[1]) * std::complex<double>(y[0], y[1]);
    const auto p = x * y;
    CHECK(std::abs(p[0] - z.real()) <= 1e-12);
    CHECK(std::abs(p[1] - z.imag()) <= 1e-12);
  }
}

TEST_CASE("conjugation") {
  CHECK(hc_conj(q(1, 1, 1, 1)) == q(1, -1, -1, -1));
  CHECK(hc_conj(Hypercomplex::real(1, 5.0)) == Hypercomplex::real(1, 5.0));
  const auto x = q(1, 1, 1, 1);
  CHECK(x * hc_conj(x) == Hypercomplex::real(4, 4.0));

  std::mt19937_64 eng(5);
  for (std::size_t dim : {1, 2, 4, 8}) {
    const auto y = random_hc(dim, eng);
    const auto p = y * hc_conj(y);
    CHECK(p.scalar() == doctest::Approx(hc_norm_squared(y)).epsilon(1e-12));
    for (double v : p.vector_part()) CHECK(std::abs(v) <= 1e-12);
  }
}

TEST_CASE("norm") {
  CHECK(hc_norm(q(1, 1, 1, 1)) == 2.0);
  CHECK(hc_norm(Hypercomplex(4)) == 0.0);
  CHECK(hc_norm(Hypercomplex::unit(4, 1)) == 1.0);
}

TEST_CASE("norm is multiplicative up to octonions") {
  std::mt19937_64 eng(7);
  for (std::size_t dim : {1, 2, 4, 8}) {
    for (int t = 0; t < 1000; ++t) {
      const auto x = random_hc(dim, eng), y = random_hc(dim, eng);
      CHECK(std::abs(hc_norm(x * y) - hc_norm(x) * hc_norm(y)) <= 1e-10);
    }
  }
}

TEST_CASE("associativity up to quaternions, not for octonions") {
  std::mt19937_64 eng(9);
  for (std::size_t dim : {1, 2, 4}) {
    for (int t = 0; t < 1000; ++t) {
      const auto x = random_hc(dim, eng), y = random_hc(dim, eng), z = random_hc(dim, eng);
      CHECK(dist((x * y) * z, x * (y * z)) <= 1e-10);
    }
  }
  const auto e1 = Hypercomplex::unit(8, 1), e2 = Hypercomplex::unit(8, 2), e4 = Hypercomplex::unit(8, 4);
  const double associator = dist((e1 * e2) * e4, e1 * (e2 * e4));
  CHECK(associator == doctest::Approx(2.0));
}

TEST_CASE("polar form") {
  const double pi = std::numbers::pi;
  const auto i = hc_from_polar({1.0, pi / 2, {1, 0, 0}}, 4);
  CHECK(dist(i, Hypercomplex::unit(4, 1)) <= 1e-15);
  CHECK(hc_from_polar({1.0, 0.0, {0.3, 0.1, 0.0}}, 4) == Hypercomplex::real(4, 1.0));
  const auto x = hc_from_polar({2.0, pi / 3, {0, 1, 0}}, 4);
  CHECK(dist(x, q(1, 0, std::sqrt(3.0), 0)) <= 1e-14);
  CHECK(hc_norm(x) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(hc_from_polar({1.0, 0.5, {1, 1, 0}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(hc_from_polar({1.0, 0.5, {1, 0}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(hc_from_polar({1.0, 0.5, {}}, 1), std::invalid_argument);

  auto pk = hc_to_polar(Hypercomplex::unit(4, 3));
  CHECK(pk.magnitude == 1.0);
  CHECK(pk.angle == doctest::Approx(pi / 2));
  CHECK(pk.axis == std::vector<double>{0, 0, 1});

  auto pm = hc_to_polar(Hypercomplex::real(4, -1.0));
  CHECK(pm.magnitude == 1.0);
  CHECK(pm.angle == doctest::Approx(pi));
  CHECK(pm.axis == std::vector<double>{1, 0, 0});
  CHECK(dist(hc_from_polar(pm, 4), Hypercomplex::real(4, -1.0)) <= 1e-15);

  auto p3 = hc_to_polar(q(1, 0, std::sqrt(3.0), 0));
  CHECK(p3.magnitude == doctest::Approx(2.0));
  CHECK(p3.angle == doctest::Approx(pi / 3));
  CHECK(p3.axis[1] == doctest::Approx(1.0));

  CHECK(hc_to_polar(Hypercomplex::real(1, -2.0)).axis.empty());
}

TEST_CASE("polar round trip on random unit numbers") {
  std::mt19937_64 eng(13);
  for (std::size_t dim : {1, 2, 4, 8}) {
    for (int t = 0; t < 1000; ++t) {
      const auto x = dim == 1 ? random_hc(1, eng) : random_unit(dim, eng);
      const auto p = hc_to_polar(x);
      CHECK(p.angle >= 0.0);
      CHECK(p.angle <= std::numbers::pi);
      CHECK(dist(hc_from_polar(p, dim), x) <= 1e-10);
    }
  }
}

TEST_CASE("scalar kernel") {
  const double a = 0.4, b = 2.1;
  const auto x = Hypercomplex(2, {std::cos(a), std::sin(a)});
  const auto y = Hypercomplex(2, {std::cos(b), std::sin(b)});
  CHECK(hc_scalar_kernel(x, y) == doctest::Approx(std::cos(b - a)).epsilon(1e-14));
  CHECK(hc_scalar_kernel(x, x) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hc_scalar_kernel(Hypercomplex::unit(4, 1), Hypercomplex::unit(4, 2)) == 0.0);
  CHECK_THROWS_AS(hc_scalar_kernel(Hypercomplex(2), Hypercomplex(4)), std::invalid_argument);

  std::mt19937_64 eng(17);
  for (std::size_t dim : {1, 2, 4, 8}) {
    for (int t = 0; t < 500; ++t) {
      const auto u = random_unit(dim, eng), v = random_unit(dim, eng);
      double dotp = 0.0;
      for (std::size_t k = 0; k < dim; ++k) dotp += u[k] * v[k];
      CHECK(std::abs(hc_scalar_kernel(u, v) - dotp) <= 1e-12);
      CHECK(std::abs(hc_scalar_kernel(u, v) - hc_scalar_kernel(v, u)) <= 1e-12);
    }
  }
}

TEST_CASE("quaternion kernel equals the polar interference formula") {
  std::mt19937_64 eng(19);
  for (int t = 0; t < 500; ++t) {
    const auto u = random_unit(4, eng), v = random_unit(4, eng);
    const auto pu = hc_to_polar(u), pv = hc_to_polar(v);
    double ndot = 0.0;
    for (int k = 0; k < 3; ++k) ndot += pu.axis[k] * pv.axis[k];
    const double expected = std::cos(pu.angle) * std::cos(pv.angle) +
                            ndot * std::sin(pu.angle) * std::sin(pv.angle);
    CHECK(std::abs(hc_scalar_kernel(u, v) - expected) <= 1e-12);
  }
}

TEST_CASE("commutation") {
  const auto i = Hypercomplex::unit(4, 1), j = Hypercomplex::unit(4, 2);
  CHECK_FALSE(hc_commutes(i, j));
  const auto x = q(0.2, 1.0, -3.0, 0.4);
  CHECK(hc_commutes(x, x));
  CHECK(q(1, 2, 0, 0) * q(3, -1, 0, 0) == q(3, -1, 0, 0) * q(1, 2, 0, 0));
  CHECK(hc_commutes(q(1, 2, 0, 0), q(3, -1, 0, 0)));

  // Parallel vector parts commute; generic ones do not.
  std::mt19937_64 eng(23);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    const double ax = g(eng), ay = g(eng), az = g(eng);
    const double s1 = g(eng), s2 = g(eng);
    const auto a = q(g(eng), s1 * ax, s1 * ay, s1 * az);
    const auto b = q(g(eng), s2 * ax, s2 * ay, s2 * az);
    CHECK(hc_commutes(a, b, 1e-10));
    CHECK_FALSE(hc_commutes(random_hc(4, eng), random_hc(4, eng), 1e-10));
  }
}
