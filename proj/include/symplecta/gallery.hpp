#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "symplecta/symplectic.hpp"

namespace symplecta {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Dirichlet grid x_j = −L + j·h (j = 1..N, h = 2L/(N+1)) carrying complex
/// functions φ = φ₀ + iφ₁ as real vectors (φ₀, φ₁) ∈ R^{2N}.
///
/// σ(φ,ψ) = 2 Im⟨φ,ψ⟩ = 2h(φ₀ᵀψ₁ − φ₁ᵀψ₀), i.e. J = 2h [[0, I], [−I, 0]].
/// `g_mu` is the scenario's non-pure product; `g_other` is hI, which is
/// μ̃ (the purification of μ) for the phase multiplier and μ′ for the mode swap.
struct GalleryScenario {
  enum class Kind { PhaseMultiplier, ModeSwap };

  Kind kind = Kind::PhaseMultiplier;
  Index n = 0;
  double l = 0.0;
  double h = 0.0;
  Vector grid;
  SparseMatrix a;  ///< −d²/dx² + 1 with Dirichlet ends
  SparseMatrix g_mu;
  SparseMatrix g_other;
  SparseMatrix t;
  Vector a_eigenvalues;   ///< ascending; filled for the mode swap only
  Matrix a_eigenvectors;  ///< orthonormal columns; filled for the mode swap only

  double form_weight() const { return 2.0 * h; }
  double sigma(const Vector& x, const Vector& y) const;
  double mu(const Vector& x, const Vector& y) const { return x.dot(g_mu * y); }
  double other(const Vector& x, const Vector& y) const { return x.dot(g_other * y); }

  /// Dense validated form (2N × 2N).
  SymplecticForm form() const;
  /// ‖TᵀJT − J‖_F / ‖J‖_F.
  double symplectic_residual() const;
};

/// (Tφ)(x) = e^{−ix²}φ(x) with μ = Re⟨Aφ,ψ⟩, μ̃ = Re⟨φ,ψ⟩.
/// Throws InvalidArgument for L < 8 and GridTooCoarse when N < 64 or the phase
/// is under-resolved anywhere on the domain (2·L·h > π/4).
GalleryScenario build_phase_multiplier(Index n, double l);

struct GrowthPoint {
  double n = 0.0;          ///< translate actually used (a grid multiple)
  double ratio = 0.0;      ///< μ(Tφₙ,Tφₙ) / μ(φₙ,φₙ)
  double mu = 0.0;         ///< μ(φₙ,φₙ)
  double other = 0.0;      ///< μ̃(φₙ,φₙ)
  double other_image = 0.0;  ///< μ̃(Tφₙ,Tφₙ)
};

/// Ratios along translates φₙ(x) = φ(x − n) of the bump (1 − (x/w)²)⁴.
/// Translates are snapped to multiples of h. Throws BumpLeavesDomain when a
/// translate comes closer than 3w to an end of the interval.
std::vector<GrowthPoint> phase_multiplier_growth(const GalleryScenario& scenario, double bump_width,
                                          const std::vector<double>& n_range);

/// Least-squares slope of log ratio against log n (points with n > 0).
double loglog_slope(const std::vector<GrowthPoint>& points);

/// T(φ₀ + iφ₁) = A^{−1/2}φ₁ − iA^{1/2}φ₀ with μ = ⟨φ₀,Aψ₀⟩ + ⟨φ₁,ψ₁⟩ and μ′ = Re⟨φ,ψ⟩.
/// Throws GridTooCoarse when N < 64 and InvalidArgument for L ≤ 0 or N > 2048.
GalleryScenario build_mode_swap(Index n, double l);

struct WitnessPoint {
  Index k = 0;
  double lambda = 0.0;  ///< k-th eigenvalue of A
  double ratio = 0.0;   ///< μ′(Tφ,Tφ)/μ′(φ,φ) for the real mode φ = e_k
};

/// One witness per eigenmode of A, ascending in λ_k.
std::vector<WitnessPoint> mode_swap_witness(const GalleryScenario& scenario);

}  // namespace symplecta
