#include "peres/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace peres {
namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr double kRangeSlack = 1e-12;

void require_square_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw std::invalid_argument("interference matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (!(std::abs(m(i, j) - m(j, i)) <= kSymmetryTolerance)) {
        throw std::invalid_argument("interference matrix is not symmetric at (" +
                                    std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

}  // namespace

std::string_view to_string(Mode m) noexcept {
  return m == Mode::Exact ? "exact" : "estimated";
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::LowerDimAdmissible:
      return "LowerDimAdmissible";
    case Verdict::HigherDimRequired:
      return "HigherDimRequired";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

InterferenceMatrix InterferenceMatrix::exact(Eigen::MatrixXd entries, double tol) {
  require_square_symmetric(entries);
  const Eigen::Index n = entries.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(std::abs(entries(i, i) - 1.0) <= tol)) {
      throw std::invalid_argument("interference matrix diagonal entry " + std::to_string(i) +
                                  " is " + std::to_string(entries(i, i)) + ", expected 1");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && !(std::abs(entries(i, j)) <= 1.0 + tol)) {
        throw std::invalid_argument("interference term out of [-1, 1] at (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
      }
    }
  }
  Eigen::MatrixXd raw = entries;
  return InterferenceMatrix(std::move(entries), std::move(raw), Mode::Exact);
}

InterferenceMatrix InterferenceMatrix::estimated(Eigen::MatrixXd raw) {
  require_square_symmetric(raw);
  Eigen::MatrixXd clamped = raw;
  for (Eigen::Index i = 0; i < clamped.rows(); ++i) {
    for (Eigen::Index j = 0; j < clamped.cols(); ++j) {
      if (i != j) clamped(i, j) = std::clamp(clamped(i, j), -1.0, 1.0);
    }
  }
  return InterferenceMatrix(std::move(clamped), std::move(raw), Mode::Estimated);
}

double pairwise_interference(double p_i, double p_j, double p_ij) {
  if (!(p_i > 0.0) || !(p_j > 0.0)) {
    throw std::domain_error("pairwise_interference: single-path probabilities must be positive");
  }
  if (!(p_ij >= 0.0)) throw std::domain_error("pairwise_interference: negative probability");
  return (p_ij - p_i - p_j) / (2.0 * std::sqrt(p_i * p_j));
}

Eigen::MatrixXd gram_entries(const Eigen::MatrixXd& rows) {
  const Eigen::Index n = rows.rows();
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < rows.cols(); ++k) s += rows(i, k) * rows(j, k);
      g(i, j) = s;
      g(j, i) = s;
    }
  }
  return g;
}

InterferenceMatrix gram(const EmbeddingMatrix& m) {
  return InterferenceMatrix::exact(gram_entries(m.matrix()));
}

double symmetric_det(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  double det = 1.0;
  for (double lambda : solver.eigenvalues()) det *= lambda;
  return det;
}

double gram_det(const InterferenceMatrix& im, double tol) {
  if (im.mode() == Mode::Estimated) return symmetric_det(im.entries());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(im.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  double det = 1.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda < -tol) {
      throw std::domain_error("gram_det: eigenvalue " + std::to_string(lambda) +
                              " below -tol; matrix is not a Gram matrix");
    }
    det *= std::max(lambda, 0.0);
  }
  return std::clamp(det, 0.0, 1.0);
}

PeresValue peres_f(const InterferenceMatrix& im, double tol) {
  PeresValue v;
  v.mode = im.mode();
  v.det = gram_det(im, tol);
  v.f = 1.0 - v.det;
  if (im.mode() == Mode::Estimated) v.raw_f = 1.0 - symmetric_det(im.raw_entries());
  return v;
}

double peres_f_closed3(double iab, double ibc, double ica) {
  for (double x : {iab, ibc, ica}) {
    if (!(std::abs(x) <= 1.0 + kRangeSlack)) {
      throw std::domain_error("peres_f_closed3: interference term outside [-1, 1]");
    }
  }
  return iab * iab + ibc * ibc + ica * ica - 2.0 * iab * ibc * ica;
}

double phase_closure_defect(std::span<const double> phases) {
  if (phases.size() < 3) throw std::invalid_argument("phase_closure_defect: need at least 3 phases");
  double sum = 0.0;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    sum += phases[(i + 1) % phases.size()] - phases[i];
  }
  double r = std::remainder(sum, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

bool path_count_sensitive(DimsUnderTest dims, std::size_t n) {
  return n >= dims.lower + 1 && n <= dims.higher;
}

Verdict verdict(const PeresValue& v, DimsUnderTest dims, std::size_t n,
                const VerdictOptions& opts) {
  if (dims.lower >= dims.higher) {
    throw std::invalid_argument("verdict: lower dimension must be below higher dimension");
  }
  if (!path_count_sensitive(dims, n) || !v.complete() || std::isnan(v.f)) {
    return Verdict::Inconclusive;
  }
  if (v.f >= 1.0 - opts.epsilon) return Verdict::LowerDimAdmissible;
  if (v.mode == Mode::Estimated && v.uncertainty) {
    return (1.0 - v.f) > opts.k_sigma * *v.uncertainty ? Verdict::HigherDimRequired
                                                        : Verdict::LowerDimAdmissible;
  }
  return Verdict::HigherDimRequired;
}

double parallelotope_volume(const InterferenceMatrix& im, double tol) {
  return std::sqrt(std::max(gram_det(im, tol), 0.0));
}

}  // namespace peres
