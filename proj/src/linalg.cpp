#include "symplecta/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symplecta/error.hpp"

namespace symplecta {

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double relative_frobenius(const Matrix& a, const Matrix& b) {
  const double diff = (a - b).norm();
  const double ref = b.norm();
  return ref > 0.0 ? diff / ref : diff;
}

Matrix symmetric_power(const Matrix& s, double p, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrized(s));
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "symmetric eigendecomposition did not converge");
  }
  Vector lam = eig.eigenvalues();
  if (p == 0.0) return Matrix::Identity(s.rows(), s.cols());
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam(i) <= floor) {
      throw Error(ErrorCode::SingularOperator,
                  "eigenvalue " + std::to_string(lam(i)) + " at or below threshold");
    }
    lam(i) = std::pow(lam(i), p);
  }
  const Matrix& v = eig.eigenvectors();
  return v * lam.asDiagonal() * v.transpose();
}

Matrix orthonormal_range(const Matrix& b, double rel_tol) {
  if (b.cols() == 0) return Matrix(b.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(b, Eigen::ComputeThinU);
  const Vector& sv = svd.singularValues();
  const double cut = rel_tol * (sv.size() ? sv(0) : 0.0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut && sv(r) > 0.0) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix orthonormal_null_space(const Matrix& c, double rel_tol) {
  const Index n = c.cols();
  if (c.rows() == 0) return Matrix::Identity(n, n);
  // rank-revealing QR of cᵀ: the trailing columns of Q span ker c
  Eigen::ColPivHouseholderQR<Matrix> qr(c.transpose());
  qr.setThreshold(rel_tol);
  const Index r = qr.rank();
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - r);
}

Matrix metric_orthonormalize(const Matrix& b, const Matrix& g) {
  if (b.cols() == 0) return b;
  Eigen::LLT<Matrix> llt(symmetrized(b.transpose() * g * b));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "columns are not independent in the metric");
  }
  // b L^{-T}
  Matrix lt = llt.matrixL().transpose();
  return lt.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(b);
}

Index numerical_rank(const Matrix& b, double rel_tol) {
  if (b.cols() == 0 || b.rows() == 0) return 0;
  const Vector sv = Eigen::BDCSVD<Matrix>(b).singularValues();
  const double cut = rel_tol * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut && sv(r) > 0.0) ++r;
  return r;
}

Index intersection_dim(const Matrix& f, const Matrix& h, double rel_tol) {
  Matrix joined(f.rows(), f.cols() + h.cols());
  joined << f, h;
  return numerical_rank(f, rel_tol) + numerical_rank(h, rel_tol) - numerical_rank(joined, rel_tol);
}

Vector principal_angles(const Matrix& f, const Matrix& h, const Matrix& g, double rel_tol) {
  Matrix qf = metric_orthonormalize(orthonormal_range(f, rel_tol), g);
  Matrix qh = metric_orthonormalize(orthonormal_range(h, rel_tol), g);
  if (qf.cols() == 0 || qh.cols() == 0) return Vector();
  Eigen::BDCSVD<Matrix> svd(qf.transpose() * g * qh);
  Vector cosines = svd.singularValues();
  Vector angles(cosines.size());
  for (Index i = 0; i < cosines.size(); ++i) {
    angles(i) = std::acos(std::clamp(cosines(i), -1.0, 1.0));
  }
  std::sort(angles.data(), angles.data() + angles.size());
  return angles;
}

double subspace_gap(const Matrix& f, const Matrix& h, const Matrix& g, double rel_tol) {
  Matrix qf = metric_orthonormalize(orthonormal_range(f, rel_tol), g);
  Matrix qh = metric_orthonormalize(orthonormal_range(h, rel_tol), g);
  if (qf.cols() != qh.cols()) return 1.0;
  if (qf.cols() == 0) return 0.0;
  // residual of qh after g-orthogonal projection onto span qf, and vice versa
  Matrix rh = qh - qf * (qf.transpose() * g * qh);
  Matrix rf = qf - qh * (qh.transpose() * g * qf);
  Eigen::LLT<Matrix> llt(symmetrized(g));
  Matrix lt = llt.matrixL().transpose();
  return std::max(spectral_norm(lt * rh), spectral_norm(lt * rf));
}

}  // namespace symplecta
