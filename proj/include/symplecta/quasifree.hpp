#pragma once

#include <complex>

#include "symplecta/lattice.hpp"
#include "symplecta/symplectic.hpp"

namespace symplecta {

/// Gaussian state ω(W(φ)) = exp(−μ(φ,φ)/2) of the Weyl algebra over (R^{2n}, σ).
class QuasifreeState {
 public:
  explicit QuasifreeState(DominatingProduct g) : g_(std::move(g)) {}

  const DominatingProduct& product() const { return g_; }
  const SymplecticForm& form() const { return g_.form(); }
  Index dim() const { return g_.dim(); }

 private:
  DominatingProduct g_;
};

double weyl_value(const QuasifreeState& state, const Vector& phi);

/// ω(W(tφ) W(τψ)) = exp(−i tτ σ(φ,ψ)/2) · exp(−μ(tφ+τψ, tφ+τψ)/2).
std::complex<double> weyl_product_value(const QuasifreeState& state, const Vector& phi, const Vector& psi, double t,
                                        double tau);

/// ∂t ∂τ ω(W(tφ) W(τψ)) at the origin: Richardson combination (4D(h) − D(2h))/3
/// of central mixed differences D. Its real part is −μ(φ,ψ), its imaginary part
/// −σ(φ,ψ)/2. Throws StepOutOfRange unless step ∈ [1e−5, 1e−2].
std::complex<double> mixed_derivative(const QuasifreeState& state, const Vector& phi, const Vector& psi, double step);

/// μ(φ,ψ) = −Re ∂t ∂τ ω(W(tφ) W(τψ))|₀.
double recover_mu(const QuasifreeState& state, const Vector& phi, const Vector& psi, double step);

/// Complex structure Jc = −R_μ on a pure state with inner product
/// ⟨x,y⟩ = μ(x,y) + (i/2)σ(x,y), conjugate-linear in x, so that
/// ⟨x, Jc y⟩ = i⟨x,y⟩ and ⟨Jc x, y⟩ = −i⟨x,y⟩.
class OneParticleStructure {
 public:
  /// Throws NotPure unless classify(state) is pure.
  static OneParticleStructure make(const QuasifreeState& state, const Tolerances& tol = {});

  const Matrix& complex_structure() const { return jc_; }
  /// k: R^{2n} → C^n, complex-linear for Jc, with ⟨k x, k y⟩_{C^n} = ⟨x, y⟩.
  const CMatrix& k_map() const { return k_; }
  const DominatingProduct& product() const { return g_; }

  /// ⟨k x, k y⟩ evaluated through the k-map.
  std::complex<double> inner(const Vector& x, const Vector& y) const;
  /// μ(x,y) + (i/2)σ(x,y) evaluated directly.
  std::complex<double> lambda(const Vector& x, const Vector& y) const;

 private:
  OneParticleStructure(DominatingProduct g, Matrix jc, CMatrix k)
      : g_(std::move(g)), jc_(std::move(jc)), k_(std::move(k)) {}

  DominatingProduct g_;
  Matrix jc_;
  CMatrix k_;
};

/// Basis, orthonormal in μ, of {χ : σ(b, χ) = 0 for every column b of `basis`}.
Matrix symplectic_complement(const DominatingProduct& g, const Matrix& basis);
Matrix symplectic_complement(const OneParticleStructure& structure, const Matrix& basis);

struct LocalProbeReport {
  Region region;
  Index subspace_dim = 0;
  Index complement_dim = 0;
  Index intersection_rank = 0;      ///< dim(F ∩ F^v)
  double min_principal_angle = 0.0;  ///< between F and the complementary-region data, in μ
  double duality_gap = 0.0;          ///< gap between F^v and the complementary-region data, in μ
};

/// Probes many regions of one lattice state; purity is checked once.
class LocalProber {
 public:
  /// Throws NotPure, DimensionMismatch.
  LocalProber(const LatticeModel& model, const QuasifreeState& state, const Tolerances& tol = {});

  /// F = Cauchy data supported in `region`. Throws EmptyRegion, FullRegion.
  /// With `angles` false, min_principal_angle is left as NaN.
  LocalProbeReport probe(const Region& region, bool angles = true) const;

 private:
  Index n_;
  DominatingProduct g_;
};

LocalProbeReport local_probe(const LatticeModel& model, const QuasifreeState& state, const Region& region,
                             const Tolerances& tol = {});

}  // namespace symplecta
