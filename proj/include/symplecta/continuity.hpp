#pragma once

#include <memory>
#include <vector>

#include "symplecta/symplectic.hpp"

namespace symplecta {

/// W = J⁻¹ Vᵀ J, the unique map with σ(Vx, y) = σ(x, Wy).
Matrix adjoint_of(const Matrix& v, const SymplecticForm& form);

/// ‖Vᵀ J − J W‖_F relative to (‖V‖_F + ‖W‖_F) ‖J‖_F.
double adjoint_residual(const Matrix& v, const Matrix& w, const SymplecticForm& form);

/// A pair of symplectically adjoint maps.
class AdjointPair {
 public:
  /// Throws InvalidPair when the adjointness residual exceeds rel_tol.
  static AdjointPair make(Matrix v, Matrix w, const SymplecticForm& form, double rel_tol = 1e-12);
  /// Pairs V with adjoint_of(V).
  static AdjointPair of(Matrix v, const SymplecticForm& form);

  const Matrix& v() const { return v_; }
  const Matrix& w() const { return w_; }
  const SymplecticForm& form() const { return *form_; }

 private:
  AdjointPair(Matrix v, Matrix w, std::shared_ptr<const SymplecticForm> form)
      : v_(std::move(v)), w_(std::move(w)), form_(std::move(form)) {}

  Matrix v_, w_;
  std::shared_ptr<const SymplecticForm> form_;
};

/// Operator norm of V on (R^d, xᵀ gram y): σ_max(Lᵀ V L⁻ᵀ) with gram = L Lᵀ.
double gram_operator_norm(const Matrix& v, const Matrix& gram);

/// ‖V‖ as a map (R^{2n}, μ_s) → (R^{2n}, μ_s).
double mu_s_norm(const Matrix& v, const DominatingProduct& g, double s, const Tolerances& tol = {});
double mu_s_norm(const Matrix& v, const DominatingProduct& g, const Polarizator& r, double s);

/// Default s grid {0, ¼, …, 2}.
std::vector<double> default_s_grid();

struct ContinuityReport {
  std::vector<double> s_grid;
  double v = 0.0;  ///< ‖V‖_μ
  double w = 0.0;  ///< ‖W‖_μ
  std::vector<double> norm_v, norm_w;    ///< ‖V‖_{μ_s}, ‖W‖_{μ_s}
  std::vector<double> bound_v, bound_w;  ///< w^{s/2} v^{1−s/2}, v^{s/2} w^{1−s/2}
  double max_violation = 0.0;            ///< max relative excess over the bounds (≤ 0 when slack)

  bool passed(double tol) const { return max_violation <= tol; }
};

/// Measures ‖V‖_{μ_s}, ‖W‖_{μ_s} against the interpolation bounds built from the
/// μ-norms of V and W. Throws InvalidArgument for s outside [0, 2].
ContinuityReport verify_relative_continuity(const AdjointPair& pair, const DominatingProduct& g,
                                            const std::vector<double>& s_grid, const Tolerances& tol = {});
ContinuityReport verify_relative_continuity(const AdjointPair& pair, const DominatingProduct& g,
                                            const Polarizator& r, const std::vector<double>& s_grid);

/// Relative excess of `measured` over `bound`.
double relative_violation(double measured, double bound);

struct InterpolationReport {
  std::vector<double> tau_grid;
  double t_norm = 0.0;  ///< ‖X Q Y‖
  double q_norm = 0.0;  ///< ‖Q‖
  std::vector<double> measured;  ///< ‖X^τ Q Y^τ‖
  std::vector<double> bound;     ///< ‖XQY‖^τ ‖Q‖^{1−τ}
  double max_violation = 0.0;
};

/// Checks ‖X^τ Q Y^τ‖ ≤ ‖XQY‖^τ ‖Q‖^{1−τ} for non-negative symmetric injective X, Y.
/// Throws SingularOperator when X or Y has an eigenvalue at or below
/// tol.degeneracy times its largest one, DimensionMismatch on shape errors.
InterpolationReport check_interpolation(const Matrix& x, const Matrix& y, const Matrix& q,
                                        const std::vector<double>& tau_grid, const Tolerances& tol = {});

struct TruncationRung {
  Index dim = 0;
  InterpolationReport report;
};

/// Finite sections of an unbounded pair: X = Y = diag(1, 2, …, d) and
/// Q_ij = 1 / ((i+1)(j+1)(1 + (i−j)²)), so that XQY is a bounded Toeplitz
/// operator for every d. The bounds should stabilize as d grows.
std::vector<TruncationRung> truncation_ladder(const std::vector<Index>& dims, const std::vector<double>& tau_grid,
                                              const Tolerances& tol = {});

}  // namespace symplecta
