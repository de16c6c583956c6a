#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "symplecta/error.hpp"
#include "symplecta/linalg.hpp"

namespace symplecta {

/// Numerical thresholds shared by every check in the library.
struct Tolerances {
  double degeneracy = 1e-10;      ///< smallest/largest singular value of a symplectic form
  double domination = 1e-9;       ///< allowed excess of the polarizator norm over 1
  double classification = 1e-8;   ///< purity and primarity decisions
  double metric = 1e-10;          ///< relative residuals of metric identities
  double verification = 1e-9;     ///< relative slack on interpolation bounds
};

/// Nondegenerate antisymmetric bilinear form σ(x, y) = xᵀ J y on R^{2n}.
class SymplecticForm {
 public:
  /// Checks J + Jᵀ = 0 exactly and nondegeneracy against tol.degeneracy.
  static SymplecticForm validate(const Matrix& j, const Tolerances& tol = {});

  /// J = [[0, diag w], [−diag w, 0]]; singular values are |w|, so no SVD is needed.
  static SymplecticForm block(const Vector& weights, const Tolerances& tol = {});

  /// J = [[0, I], [−I, 0]] on R^{2n}.
  static SymplecticForm canonical(Index n);

  Index dim() const { return j_.rows(); }
  const Matrix& matrix() const { return j_; }

  double operator()(const Vector& x, const Vector& y) const { return x.dot(j_ * y); }

  /// J⁻¹ b.
  Matrix solve(const Matrix& b) const;

 private:
  SymplecticForm() = default;

  Matrix j_;
  std::optional<Vector> block_weights_;
  std::shared_ptr<const Eigen::PartialPivLU<Matrix>> lu_;
};

/// Symmetric positive-definite Gram matrix μ(x, y) = xᵀ G y with
/// |σ(x,y)|² ≤ 4 μ(x,x) μ(y,y).
class DominatingProduct {
 public:
  /// Validates symmetry, positive definiteness and domination of `form`.
  static DominatingProduct make(const Matrix& g, const SymplecticForm& form, const Tolerances& tol = {});

  const Matrix& gram() const { return g_; }
  const SymplecticForm& form() const { return *form_; }
  std::shared_ptr<const SymplecticForm> shared_form() const { return form_; }
  Index dim() const { return g_.rows(); }

  double operator()(const Vector& x, const Vector& y) const { return x.dot(g_ * y); }

 private:
  DominatingProduct(Matrix g, std::shared_ptr<const SymplecticForm> form)
      : g_(std::move(g)), form_(std::move(form)) {}

  Matrix g_;
  std::shared_ptr<const SymplecticForm> form_;
};

struct DominationCheck {
  bool dominates = false;
  double norm = 0.0;    ///< ‖R_μ‖_μ
  double margin = 0.0;  ///< 1 − ‖R_μ‖_μ
};

/// Decides domination through ‖R_μ‖_μ ≤ 1 + tol.domination.
/// Throws NotPositiveDefinite or DimensionMismatch.
DominationCheck check_domination(const Matrix& g, const SymplecticForm& form, const Tolerances& tol = {});

/// The polarizator R = ½ G⁻¹ J together with its μ-polar decomposition R = U |R|.
///
/// Everything is computed in the μ-orthonormal frame x̂ = Lᵀ x (G = L Lᵀ),
/// where R̂ = ½ L⁻¹ J L⁻ᵀ is skew-symmetric. Its real Schur form is a direct
/// sum of rotation blocks β [[0, ±1], [∓1, 0]], which gives |R̂| and Û
/// directly; the original-coordinate factors are L⁻ᵀ (·) Lᵀ.
class Polarizator {
 public:
  static Polarizator compute(const DominatingProduct& g, const Tolerances& tol = {});

  const Matrix& matrix() const { return r_; }
  const Matrix& isometry() const { return u_; }
  const Matrix& modulus() const { return abs_; }
  const Matrix& cholesky() const { return l_; }
  /// Eigenvalues of |R| (each rotation block contributes twice), descending.
  const Vector& spectrum() const { return spectrum_; }

  double norm() const { return spectrum_.size() ? spectrum_(0) : 0.0; }
  double smallest() const { return spectrum_.size() ? spectrum_(spectrum_.size() - 1) : 0.0; }

  /// R̂, Û and |R̂|^s in the μ-orthonormal frame.
  const Matrix& frame_matrix() const { return r_hat_; }
  Matrix frame_isometry() const;
  Matrix frame_modulus_power(double s) const;

  /// |R|^s in original coordinates. Throws NegativeExponent for s < 0 and
  /// SingularResult for s > 0 when an eigenvalue is at or below tol.classification.
  Matrix modulus_power(double s) const;

  const Tolerances& tolerances() const { return tol_; }

 private:
  void require_power(double s) const;

  Tolerances tol_;
  Matrix r_, u_, abs_, l_, r_hat_;
  Matrix schur_q_;
  Vector block_beta_;   // β per Schur column
  Matrix block_sign_;   // Û in the Schur basis
  Vector spectrum_;
};

/// Gram matrix of μ_s(x, y) = μ(x, |R_μ|^s y); s = 0 returns G unchanged.
Matrix scaled_product(const DominatingProduct& g, double s, const Tolerances& tol = {});
Matrix scaled_product(const DominatingProduct& g, const Polarizator& r, double s);

/// |R_μ|^s through the generalized symmetric eigenproblem (G·(−R²)) v = λ G v.
/// Independent of the Cholesky/Schur route used by Polarizator.
Matrix modulus_power_generalized(const DominatingProduct& g, double s, const Tolerances& tol = {});

/// The purification G̃ = G_1. Throws NonPrimaryInput when |R_μ| is not injective.
DominatingProduct purify(const DominatingProduct& g, const Tolerances& tol = {});
DominatingProduct purify(const DominatingProduct& g, const Polarizator& r);

enum class StateTag { Pure, PrimaryNotPure, NonPrimary };

std::string_view to_string(StateTag tag) noexcept;

struct StateClass {
  StateTag tag = StateTag::NonPrimary;
  double smallest_modulus = 0.0;   ///< smallest eigenvalue of |R_μ|
  double involution_defect = 0.0;  ///< ‖R² + I‖_μ
};

StateClass classify(const DominatingProduct& g, const Tolerances& tol = {});
StateClass classify(const Polarizator& r);

/// μ(φ,φ) − sup_ψ |σ(φ,ψ)|² / (4 μ(ψ,ψ)); the supremum is ¼ aᵀ G⁻¹ a with a = Jᵀ φ.
double saturation_defect_at(const DominatingProduct& g, const Vector& phi);

/// Largest defect over the standard basis followed by seeded random unit vectors.
double saturation_defect(const DominatingProduct& g, int sample_count, std::uint64_t seed = 0);

/// Deterministic test instance on (R^{2n}, canonical J): G = ½ SᵀS + mix·P with
/// S = K₁ diag(D, D⁻¹) K₂ (K orthogonal symplectic, D ∈ [1/squeeze, squeeze])
/// and P a random positive semidefinite matrix of unit scale.
DominatingProduct random_instance(std::uint64_t seed, Index n, double squeeze, double mix);

/// Random symplectic matrix for the canonical form (same construction as in random_instance).
Matrix random_symplectic(std::uint64_t seed, Index n, double squeeze);

}  // namespace symplecta
