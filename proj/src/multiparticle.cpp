#include "peres/multiparticle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace peres {
namespace {

// n^e, saturating at SIZE_MAX.
std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base) {
      return std::numeric_limits<std::size_t>::max();
    }
    r *= base;
  }
  return r;
}

double log_eigen_det(const Eigen::MatrixXd& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  double s = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda < -tol) throw std::domain_error("log determinant of a non-PSD matrix");
    s += std::log(std::max(lambda, 0.0));
  }
  return s;
}

}  // namespace

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, std::size_t cap) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > cap || cols > cap) {
    throw std::length_error("kron: product of size " + std::to_string(rows) + "x" +
                            std::to_string(cols) + " exceeds cap " + std::to_string(cap));
  }
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

MultiParticleGram::MultiParticleGram(std::vector<InterferenceMatrix> factors, std::size_t cap)
    : paths_(0), factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("multi-particle Gram needs at least one factor");
  paths_ = factors_.front().paths();
  for (const auto& f : factors_) {
    if (f.paths() != paths_) {
      throw std::invalid_argument("multi-particle factors must share the path count");
    }
  }
  if (checked_pow(paths_, factors_.size()) <= cap) {
    Eigen::MatrixXd p = factors_.front().entries();
    for (std::size_t i = 1; i < factors_.size(); ++i) p = kron(p, factors_[i].entries(), cap);
    product_ = std::move(p);
  }
}

MultiParticleGram MultiParticleGram::replicated(const InterferenceMatrix& single,
                                                std::size_t particles, std::size_t cap) {
  if (particles == 0) throw std::invalid_argument("particle count must be >= 1");
  return MultiParticleGram(std::vector<InterferenceMatrix>(particles, single), cap);
}

const Eigen::MatrixXd& MultiParticleGram::product() const {
  if (!product_) throw std::logic_error("multi-particle product over the materialization cap");
  return *product_;
}

double peres_f_multi_paper(std::span<const double> fs, std::size_t n) {
  if (fs.empty()) throw std::domain_error("peres_f_multi_paper: need at least one particle");
  if (n < 3) throw std::domain_error("peres_f_multi_paper: need at least 3 paths");
  double prod = 1.0;
  for (double f : fs) {
    if (!(f >= 0.0 && f <= 1.0)) throw std::domain_error("peres_f_multi_paper: F outside [0, 1]");
    prod *= std::pow(1.0 - f, static_cast<double>(n));
  }
  return 1.0 - prod;
}

PeresValue peres_f_multi_oracle(const MultiParticleGram& g, double tol) {
  return peres_f(InterferenceMatrix::exact(g.product(), tol), tol);
}

double multi_log_det(const MultiParticleGram& g, double tol) {
  const double exponent =
      std::pow(static_cast<double>(g.paths()), static_cast<double>(g.particles() - 1));
  double s = 0.0;
  for (const auto& f : g.factors()) s += exponent * std::log(gram_det(f, tol));
  return s;
}

MultiVerdict multi_verdict(double f_paper, double f_oracle, double epsilon) {
  MultiVerdict v;
  v.agree_on_dichotomy = (f_paper >= 1.0 - epsilon) == (f_oracle >= 1.0 - epsilon);
  v.value_gap = std::abs(f_paper - f_oracle);
  return v;
}

MultiParticleReport evaluate_multi(const MultiParticleGram& g, double epsilon, double tol) {
  MultiParticleReport r;
  r.paths = g.paths();
  r.particles = g.particles();
  for (const auto& f : g.factors()) r.single_f.push_back(peres_f(f, tol).f);
  r.f_paper = peres_f_multi_paper(r.single_f, r.paths);
  r.log_det_product = multi_log_det(g, tol);

  if (!g.materialized()) {
    r.oracle_skipped = true;
    return r;
  }
  const double f_oracle = peres_f_multi_oracle(g, tol).f;
  r.f_oracle = f_oracle;
  r.comparison = multi_verdict(r.f_paper, f_oracle, epsilon);

  // Per-particle scale: the closed formula's determinant is
  // (prod det_i)^n, the oracle's is (prod det_i)^(n^(m-1)).
  double paper_scaled = 1.0;
  for (double f : r.single_f) paper_scaled *= 1.0 - f;
  const double oracle_exponent =
      std::pow(static_cast<double>(r.paths), static_cast<double>(r.particles - 1));
  const double oracle_scaled =
      std::exp(log_eigen_det(g.product(), tol) / oracle_exponent);
  r.per_particle_comparison = multi_verdict(1.0 - paper_scaled, 1.0 - oracle_scaled, epsilon);
  return r;
}

}  // namespace peres
