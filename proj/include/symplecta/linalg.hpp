#pragma once

#include <Eigen/Dense>
#include <complex>

namespace symplecta {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Largest singular value.
double spectral_norm(const Matrix& a);

/// ‖a − b‖_F / ‖b‖_F (absolute when b vanishes).
double relative_frobenius(const Matrix& a, const Matrix& b);

inline Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

/// p-th power of a symmetric non-negative matrix through its eigendecomposition.
/// Eigenvalues at or below `floor` raise SingularOperator unless p == 0.
Matrix symmetric_power(const Matrix& s, double p, double floor = 0.0);

/// Euclidean-orthonormal basis of the column space; columns with singular
/// value below rel_tol * (largest) are dropped.
Matrix orthonormal_range(const Matrix& b, double rel_tol = 1e-10);

/// Euclidean-orthonormal basis of {x : c x = 0}.
Matrix orthonormal_null_space(const Matrix& c, double rel_tol = 1e-10);

/// Re-orthonormalizes the columns of b (assumed independent) in the metric g.
Matrix metric_orthonormalize(const Matrix& b, const Matrix& g);

/// Numerical rank with the given relative threshold.
Index numerical_rank(const Matrix& b, double rel_tol = 1e-10);

/// dim(span f ∩ span h) = dim f + dim h − dim(f + h).
Index intersection_dim(const Matrix& f, const Matrix& h, double rel_tol = 1e-10);

/// Principal angles (ascending, radians) between span f and span h measured in the metric g.
Vector principal_angles(const Matrix& f, const Matrix& h, const Matrix& g, double rel_tol = 1e-10);

/// Gap between two subspaces in the metric g: the largest distance of a unit
/// vector of either space from the other (sine of the largest principal angle
/// when the dimensions agree, 1 when they differ).
double subspace_gap(const Matrix& f, const Matrix& h, const Matrix& g, double rel_tol = 1e-10);

}  // namespace symplecta
