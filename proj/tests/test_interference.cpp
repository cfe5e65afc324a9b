#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "peres/interference.hpp"

using namespace peres;

namespace {

constexpr double kPi = std::numbers::pi;

EmbeddingMatrix random_rows(std::size_t n, std::size_t d, RngStream& rng) {
  std::vector<UnitVector> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(random_unit_vector(d, rng));
  return build_matrix(rows);
}

// cos(pi/4) + sin(pi/4) e_axis for axes x, y, z.
EmbeddingMatrix quaternion_witness() {
  std::vector<UnitVector> rows;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    std::vector<double> ax(3, 0.0);
    ax[axis] = 1.0;
    rows.push_back(embed(hc_from_polar({1.0, kPi / 4, ax}, 4)));
  }
  return build_matrix(rows);
}

EmbeddingMatrix complex_phases(std::span<const double> phis) {
  std::vector<UnitVector> rows;
  for (double p : phis) rows.push_back(UnitVector({std::cos(p), std::sin(p)}));
  return build_matrix(rows);
}

}  // namespace

TEST_CASE("pairwise interference") {
  CHECK(pairwise_interference(1, 1, 4) == 1.0);
  CHECK(pairwise_interference(1, 1, 2) == 0.0);
  CHECK(pairwise_interference(1, 4, 9) == 1.0);  // amplitudes 1 and 2 in phase
  CHECK(pairwise_interference(1, 1, 0) == -1.0);
  CHECK_THROWS_AS(pairwise_interference(0, 1, 1), std::domain_error);
  CHECK_THROWS_AS(pairwise_interference(1, 0, 1), std::domain_error);
  CHECK_THROWS_AS(pairwise_interference(1, 1, -0.1), std::domain_error);
}

TEST_CASE("gram examples") {
  std::vector<UnitVector> ortho{UnitVector({1, 0, 0}), UnitVector({0, 1, 0}), UnitVector({0, 0, 1})};
  CHECK(gram(build_matrix(ortho)).entries() == Eigen::MatrixXd::Identity(3, 3));

  std::vector<UnitVector> same(4, UnitVector({0.6, 0.8}));
  CHECK(gram(build_matrix(same)).entries().isOnes(1e-15));

  const std::array<double, 3> phis{0.0, 2 * kPi / 3, 4 * kPi / 3};
  const auto g = gram(complex_phases(phis));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(g(i, j) == doctest::Approx(i == j ? 1.0 : -0.5).epsilon(1e-15));
}

TEST_CASE("interference matrix invariants are enforced") {
  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(3, 3);
  asym(0, 1) = 0.2;
  CHECK_THROWS_AS(InterferenceMatrix::exact(asym), std::invalid_argument);
  Eigen::MatrixXd diag = Eigen::MatrixXd::Identity(3, 3);
  diag(1, 1) = 0.9;
  CHECK_THROWS_AS(InterferenceMatrix::exact(diag), std::invalid_argument);
  Eigen::MatrixXd range = Eigen::MatrixXd::Identity(2, 2);
  range(0, 1) = range(1, 0) = 1.5;
  CHECK_THROWS_AS(InterferenceMatrix::exact(range), std::invalid_argument);

  const auto est = InterferenceMatrix::estimated(range);
  CHECK(est.mode() == Mode::Estimated);
  CHECK(est(0, 1) == 1.0);
  CHECK(est.raw_entries()(0, 1) == 1.5);
}

TEST_CASE("gram_det") {
  CHECK(gram_det(InterferenceMatrix::exact(Eigen::MatrixXd::Identity(3, 3))) == 1.0);

  std::vector<UnitVector> dup{UnitVector({0.6, 0.8, 0.0}), UnitVector({0.6, 0.8, 0.0}), UnitVector({0, 0, 1})};
  CHECK(gram_det(gram(build_matrix(dup))) <= 1e-15);

  Eigen::MatrixXd half = Eigen::MatrixXd::Constant(3, 3, -0.5);
  half.diagonal().setOnes();
  CHECK(gram_det(InterferenceMatrix::exact(half)) <= 1e-15);

  // Valid correlation-shaped matrix that is not PSD.
  Eigen::MatrixXd bad = Eigen::MatrixXd::Constant(3, 3, -0.9);
  bad.diagonal().setOnes();
  CHECK_THROWS_AS(gram_det(InterferenceMatrix::exact(bad)), std::domain_error);
  CHECK(gram_det(InterferenceMatrix::estimated(bad)) < 0.0);
}

TEST_CASE("gram_det agrees with an LU determinant") {
  RngStream rng(55);
  for (std::size_t d = 2; d <= 6; ++d) {
    for (std::size_t n = 2; n <= 6; ++n) {
      for (int t = 0; t < 50; ++t) {
        const auto g = gram(random_rows(n, d, rng));
        const double lu = static_cast<double>(oracle::lu_det(g.entries()));
        CHECK(std::abs(gram_det(g) - std::max(lu, 0.0)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("peres_f examples") {
  const auto id = peres_f(InterferenceMatrix::exact(Eigen::MatrixXd::Identity(3, 3)));
  CHECK(id.f == 0.0);
  CHECK(id.det == 1.0);
  CHECK(id.mode == Mode::Exact);

  RngStream rng(8);
  for (int t = 0; t < 100; ++t) CHECK(std::abs(peres_f(gram(random_rows(3, 2, rng))).f - 1.0) <= 1e-9);

  const auto w = peres_f(gram(quaternion_witness()));
  CHECK(std::abs(w.f - 0.5) <= 1e-12);
  CHECK(std::abs(w.det - 0.5) <= 1e-12);
  CHECK(std::abs(parallelotope_volume(gram(quaternion_witness())) - std::sqrt(0.5)) <= 1e-12);
}

TEST_CASE("closed three-path form") {
  CHECK(peres_f_closed3(-0.5, -0.5, -0.5) == 1.0);
  CHECK(peres_f_closed3(0, 0, 0) == 0.0);
  CHECK(peres_f_closed3(1, 1, 1) == 1.0);
  CHECK_THROWS_AS(peres_f_closed3(1.2, 0, 0), std::domain_error);
  CHECK_THROWS_AS(peres_f_closed3(0, -1.01, 0), std::domain_error);
}

TEST_CASE("closed form and determinant route agree") {
  RngStream rng(1);
  for (std::size_t d = 2; d <= 8; ++d) {
    for (int t = 0; t < 2000; ++t) {
      const auto g = gram(random_rows(3, d, rng));
      const double closed = peres_f_closed3(g(0, 1), g(1, 2), g(2, 0));
      CHECK(std::abs(closed - peres_f(g).f) <= 1e-10);
    }
  }
}

TEST_CASE("dimension law: F_n = 1 iff n > d") {
  RngStream rng(2);
  for (std::size_t d = 1; d <= 6; ++d) {
    for (std::size_t n = 3; n <= 7; ++n) {
      int below = 0;
      constexpr int kTrials = 1000;
      for (int t = 0; t < kTrials; ++t) {
        const double f = peres_f(gram(random_rows(n, d, rng))).f;
        if (n > d) CHECK(std::abs(f - 1.0) <= 1e-9);
        if (f < 1.0 - 1e-6) ++below;
      }
      // Square M: det(I) = det(M)^2 and |det M| has positive density at 0,
      // so roughly 0.15 % (d = 3) to 1.2 % (d = 6) of draws land within
      // 1e-6 of F = 1. Measured independently with 2e5 numpy samples.
      if (n < d) CHECK(below >= 999);
      if (n == d) CHECK(below >= 980);
    }
  }
}

TEST_CASE("bounds, symmetry and permutation invariance") {
  RngStream rng(3);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 3 + static_cast<std::size_t>(t % 4);
    const std::size_t d = 2 + static_cast<std::size_t>(t % 5);
    const auto m = random_rows(n, d, rng);
    const auto g = gram(m);
    const auto v = peres_f(g);
    CHECK(v.det >= 0.0);
    CHECK(v.det <= 1.0);
    CHECK(v.f >= 0.0);
    CHECK(v.f <= 1.0);
    CHECK(std::abs(v.f - (1.0 - v.det)) <= 1e-14);
    CHECK((g.entries() - g.entries().transpose()).cwiseAbs().maxCoeff() <= 1e-12);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::rotate(perm.begin(), perm.begin() + 1, perm.end());
    std::swap(perm.front(), perm.back());
    std::vector<UnitVector> permuted;
    for (std::size_t i : perm) permuted.push_back(m.row(i));
    CHECK(std::abs(peres_f(gram(build_matrix(permuted))).f - v.f) <= 1e-12);
  }
}

TEST_CASE("commuting quaternion phases close the phase relation") {
  RngStream rng(4);
  std::mt19937_64 eng(4);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  for (int t = 0; t < 500; ++t) {
    const auto axis_vec = random_unit_vector(3, rng);
    const std::vector<double> axis(axis_vec.comps().begin(), axis_vec.comps().end());
    std::vector<Hypercomplex> qs;
    for (int i = 0; i < 3; ++i) qs.push_back(hc_from_polar({1.0, angle(eng), axis}, 4));
    REQUIRE(hc_commutes(qs[0], qs[1]));
    REQUIRE(hc_commutes(qs[1], qs[2]));
    std::vector<UnitVector> rows;
    for (const auto& x : qs) rows.push_back(embed(x));
    CHECK(std::abs(peres_f(gram(build_matrix(rows))).f - 1.0) <= 1e-9);
  }
}

TEST_CASE("phase closure defect") {
  const std::array<double, 3> a{0.0, 2 * kPi / 3, 4 * kPi / 3};
  CHECK(std::abs(phase_closure_defect(a)) <= 1e-15);
  std::array<double, 3> b{0.1, 0.7, 5.0};
  CHECK(std::abs(phase_closure_defect(b)) <= 1e-15);
  std::sort(b.begin(), b.end());
  do {
    CHECK(std::abs(phase_closure_defect(b)) <= 1e-15);
  } while (std::next_permutation(b.begin(), b.end()));
  CHECK_THROWS_AS(phase_closure_defect(std::array<double, 2>{0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("complex phases give F = 1 for every path count") {
  std::mt19937_64 eng(6);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
  for (std::size_t n = 3; n <= 8; ++n) {
    std::vector<double> phis(n);
    for (auto& p : phis) p = phase(eng);
    CHECK(std::abs(peres_f(gram(complex_phases(phis))).f - 1.0) <= 1e-9);
    CHECK(std::abs(phase_closure_defect(phis)) <= 1e-12);
  }
}

TEST_CASE("verdict") {
  const DimsUnderTest cqm_vs_qqm{2, 4};
  PeresValue one{1.0, 0.0, Mode::Exact, {}, {}, {}};
  PeresValue half{0.5, 0.5, Mode::Exact, {}, {}, {}};
  CHECK(verdict(one, cqm_vs_qqm, 3) == Verdict::LowerDimAdmissible);
  CHECK(verdict(half, cqm_vs_qqm, 3) == Verdict::HigherDimRequired);
  CHECK(verdict(half, cqm_vs_qqm, 4) == Verdict::HigherDimRequired);
  CHECK(verdict(half, cqm_vs_qqm, 6) == Verdict::Inconclusive);
  CHECK(verdict(half, cqm_vs_qqm, 2) == Verdict::Inconclusive);

  PeresValue boundary{1.0 - 1e-9, 1e-9, Mode::Exact, {}, {}, {}};
  CHECK(verdict(boundary, cqm_vs_qqm, 3, {1e-9}) == Verdict::LowerDimAdmissible);

  PeresValue noisy{0.99, 0.01, Mode::Estimated, 0.005, 0.99, {}};
  CHECK(verdict(noisy, cqm_vs_qqm, 3) == Verdict::LowerDimAdmissible);
  noisy.uncertainty = 0.002;
  CHECK(verdict(noisy, cqm_vs_qqm, 3) == Verdict::HigherDimRequired);

  PeresValue incomplete = half;
  incomplete.missing_pairs = {{0, 1}};
  CHECK(verdict(incomplete, cqm_vs_qqm, 3) == Verdict::Inconclusive);

  CHECK_THROWS_AS(verdict(one, {4, 2}, 3), std::invalid_argument);
}

TEST_CASE("parallelotope volume") {
  CHECK(parallelotope_volume(InterferenceMatrix::exact(Eigen::MatrixXd::Identity(3, 3))) == 1.0);
  std::vector<UnitVector> coplanar{UnitVector({1, 0, 0}), UnitVector({0, 1, 0}), UnitVector({0.6, 0.8, 0})};
  CHECK(parallelotope_volume(gram(build_matrix(coplanar))) <= 1e-7);
}
