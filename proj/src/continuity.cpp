#include "symplecta/continuity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace symplecta {

Matrix adjoint_of(const Matrix& v, const SymplecticForm& form) {
  if (v.rows() != form.dim() || v.cols() != form.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "map and form dimensions differ");
  }
  return form.solve(v.transpose() * form.matrix());
}

double adjoint_residual(const Matrix& v, const Matrix& w, const SymplecticForm& form) {
  const Matrix& j = form.matrix();
  const double scale = (v.norm() + w.norm()) * j.norm();
  const double res = (v.transpose() * j - j * w).norm();
  return scale > 0.0 ? res / scale : res;
}

AdjointPair AdjointPair::make(Matrix v, Matrix w, const SymplecticForm& form, double rel_tol) {
  if (v.rows() != form.dim() || v.cols() != form.dim() || w.rows() != form.dim() || w.cols() != form.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "pair and form dimensions differ");
  }
  const double res = adjoint_residual(v, w, form);
  if (!(res <= rel_tol)) {
    throw Error(ErrorCode::InvalidPair, "adjointness residual " + std::to_string(res));
  }
  return AdjointPair(std::move(v), std::move(w), std::make_shared<const SymplecticForm>(form));
}

AdjointPair AdjointPair::of(Matrix v, const SymplecticForm& form) {
  Matrix w = adjoint_of(v, form);
  return make(std::move(v), std::move(w), form);
}

double gram_operator_norm(const Matrix& v, const Matrix& gram) {
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "metric is not positive definite");
  }
  const Matrix l = llt.matrixL();
  const Matrix x = l.transpose() * v;
  // (Lᵀ V) L⁻ᵀ = (L⁻¹ (Lᵀ V)ᵀ)ᵀ
  const Matrix m = l.triangularView<Eigen::Lower>().solve(x.transpose()).transpose();
  return spectral_norm(m);
}

double mu_s_norm(const Matrix& v, const DominatingProduct& g, const Polarizator& r, double s) {
  if (s < 0.0 || s > 2.0) throw Error(ErrorCode::InvalidArgument, "s must lie in [0, 2]");
  return gram_operator_norm(v, scaled_product(g, r, s));
}

double mu_s_norm(const Matrix& v, const DominatingProduct& g, double s, const Tolerances& tol) {
  if (s < 0.0 || s > 2.0) throw Error(ErrorCode::InvalidArgument, "s must lie in [0, 2]");
  if (s == 0.0) return gram_operator_norm(v, g.gram());
  return mu_s_norm(v, g, Polarizator::compute(g, tol), s);
}

std::vector<double> default_s_grid() { return {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0}; }

double relative_violation(double measured, double bound) {
  if (measured == bound) return 0.0;
  return (measured - bound) / std::max(bound, std::numeric_limits<double>::min());
}

ContinuityReport verify_relative_continuity(const AdjointPair& pair, const DominatingProduct& g,
                                            const Polarizator& r, const std::vector<double>& s_grid) {
  if (pair.v().rows() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "pair and product dimensions differ");
  ContinuityReport rep;
  rep.s_grid = s_grid;
  rep.v = gram_operator_norm(pair.v(), g.gram());
  rep.w = gram_operator_norm(pair.w(), g.gram());
  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (double s : s_grid) {
    if (s < 0.0 || s > 2.0) throw Error(ErrorCode::InvalidArgument, "s must lie in [0, 2]");
    const Matrix gs = scaled_product(g, r, s);
    const double nv = s == 0.0 ? rep.v : gram_operator_norm(pair.v(), gs);
    const double nw = s == 0.0 ? rep.w : gram_operator_norm(pair.w(), gs);
    const double bv = std::pow(rep.w, s / 2) * std::pow(rep.v, 1 - s / 2);
    const double bw = std::pow(rep.v, s / 2) * std::pow(rep.w, 1 - s / 2);
    rep.norm_v.push_back(nv);
    rep.norm_w.push_back(nw);
    rep.bound_v.push_back(bv);
    rep.bound_w.push_back(bw);
    rep.max_violation = std::max({rep.max_violation, relative_violation(nv, bv), relative_violation(nw, bw)});
  }
  return rep;
}

ContinuityReport verify_relative_continuity(const AdjointPair& pair, const DominatingProduct& g,
                                            const std::vector<double>& s_grid, const Tolerances& tol) {
  return verify_relative_continuity(pair, g, Polarizator::compute(g, tol), s_grid);
}

namespace {

struct SymmetricSpectrum {
  Matrix vectors;
  Vector values;
};

SymmetricSpectrum injective_spectrum(const Matrix& a, double rel_floor, const char* name) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, std::string(name) + " must be square");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrized(a));
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "eigendecomposition failed");
  const double top = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (!(eig.eigenvalues().minCoeff() > rel_floor * top)) {
    throw Error(ErrorCode::SingularOperator, std::string(name) + " is not injective and non-negative");
  }
  return {eig.eigenvectors(), eig.eigenvalues()};
}

Matrix power_of(const SymmetricSpectrum& sp, double p) {
  Vector d = sp.values.array().pow(p);
  return sp.vectors * d.asDiagonal() * sp.vectors.transpose();
}

}  // namespace

InterpolationReport check_interpolation(const Matrix& x, const Matrix& y, const Matrix& q,
                                        const std::vector<double>& tau_grid, const Tolerances& tol) {
  if (q.rows() != x.rows() || q.cols() != y.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "Q must map the space of Y into the space of X");
  }
  const auto sx = injective_spectrum(x, tol.degeneracy, "X");
  const auto sy = injective_spectrum(y, tol.degeneracy, "Y");
  InterpolationReport rep;
  rep.tau_grid = tau_grid;
  rep.t_norm = spectral_norm(x * q * y);
  rep.q_norm = spectral_norm(q);
  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (double tau : tau_grid) {
    if (tau < 0.0 || tau > 1.0) throw Error(ErrorCode::InvalidArgument, "tau must lie in [0, 1]");
    double measured;
    if (tau == 0.0) {
      measured = rep.q_norm;
    } else if (tau == 1.0) {
      measured = rep.t_norm;
    } else {
      measured = spectral_norm(power_of(sx, tau) * q * power_of(sy, tau));
    }
    const double bound = std::pow(rep.t_norm, tau) * std::pow(rep.q_norm, 1.0 - tau);
    rep.measured.push_back(measured);
    rep.bound.push_back(bound);
    rep.max_violation = std::max(rep.max_violation, relative_violation(measured, bound));
  }
  return rep;
}

std::vector<TruncationRung> truncation_ladder(const std::vector<Index>& dims, const std::vector<double>& tau_grid,
                                              const Tolerances& tol) {
  std::vector<TruncationRung> rungs;
  for (Index d : dims) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "ladder dimensions must be positive");
    Vector diag = Vector::LinSpaced(d, 1.0, static_cast<double>(d));
    Matrix xy = diag.asDiagonal();
    Matrix q(d, d);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        const double k = static_cast<double>(i - j);
        q(i, j) = 1.0 / ((i + 1.0) * (j + 1.0) * (1.0 + k * k));
      }
    }
    rungs.push_back({d, check_interpolation(xy, xy, q, tau_grid, tol)});
  }
  return rungs;
}

}  // namespace symplecta
