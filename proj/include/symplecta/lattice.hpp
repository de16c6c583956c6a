#pragma once

#include <memory>
#include <vector>

#include "symplecta/continuity.hpp"
#include "symplecta/symplectic.hpp"

namespace symplecta {

/// Sorted, duplicate-free list of lattice sites.
using Region = std::vector<Index>;

/// Sorts and deduplicates `sites`. Throws EmptyRegion when empty and
/// InvalidArgument when a site lies outside [0, n).
Region normalize_region(Region sites, Index n);

/// Potential r (per site) in force from `t_start` until the next piece begins.
struct PotentialPiece {
  double t_start = 0.0;
  Vector r;
};

/// Field value and normal derivative per site.
struct CauchyData {
  Vector u0;
  Vector u1;
};

/// Periodic 1-D Klein-Gordon lattice with quadrature mass matrix M = h·I.
///
/// Each potential piece carries A = −Δ + r and its eigendecomposition. The
/// first piece is the reference operator used for Sobolev scales and energy.
class LatticeModel {
 public:
  struct Spectral {
    Matrix a;
    Matrix vectors;
    Vector values;  ///< ascending
  };

  Index n() const { return n_; }
  double h() const { return h_; }
  const std::vector<PotentialPiece>& pieces() const { return pieces_; }
  bool time_independent() const { return pieces_.size() == 1; }

  Matrix mass() const { return h_ * Matrix::Identity(n_, n_); }
  const Matrix& laplacian() const { return laplacian_; }

  /// Reference operator A and its spectrum.
  const Matrix& a() const { return spectra_->front().a; }
  const Vector& eigenvalues() const { return spectra_->front().values; }
  const Matrix& eigenvectors() const { return spectra_->front().vectors; }
  const Spectral& piece_spectrum(std::size_t i) const { return spectra_->at(i); }

  /// A^p for the reference operator.
  Matrix a_power(double p) const;

 private:
  friend LatticeModel build_lattice(Index, double, std::vector<PotentialPiece>);

  Index n_ = 0;
  double h_ = 0.0;
  std::vector<PotentialPiece> pieces_;
  Matrix laplacian_;
  std::shared_ptr<const std::vector<Spectral>> spectra_;
};

/// Pieces must have strictly increasing start times and length-n potentials
/// with every entry > 0 (NonPositivePotential otherwise). Requires 8 ≤ n ≤ 2048.
LatticeModel build_lattice(Index n, double h, std::vector<PotentialPiece> pieces);
LatticeModel build_lattice(Index n, double h, double r = 1.0);

struct SobolevGram {
  double m = 0.0;
  Matrix gram;  ///< M·A^m
};

SobolevGram sobolev_gram(const LatticeModel& model, double m);

/// δ(u⊕u₁, v⊕v₁) = ⟨u₀, M v₁⟩ − ⟨u₁, M v₀⟩, J_D = [[0, M], [−M, 0]].
SymplecticForm cauchy_form(const LatticeModel& model);

/// G_E = blockdiag(M·A, M). Throws DominationFails when G_E does not dominate δ.
DominatingProduct energy_gram(const LatticeModel& model, const Tolerances& tol = {});

/// G° = ½ blockdiag(M·A^{1/2}, M·A^{−1/2}).
DominatingProduct ultrastatic_vacuum_gram(const LatticeModel& model, const Tolerances& tol = {});

/// Exact closed form of the energy product's μ_s family:
/// 2^{−s} blockdiag(M·A^{1−s/2}, M·A^{−s/2}).
Matrix energy_scaled_gram(const LatticeModel& model, double s);

/// Propagator from t0 to t1 on R^{2N}, composed from exact per-piece
/// spectral propagators. Throws PotentialUndefined when t0 precedes the first
/// piece and InvalidArgument when t1 < t0.
Matrix evolution_matrix(const LatticeModel& model, double t0, double t1);
CauchyData evolve(const LatticeModel& model, double t0, double t1, const CauchyData& data);

struct EnergyConstants {
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Extremal values of μ^E(Tx)/μ^E(x) over data x supported in `region`.
EnergyConstants energy_estimate_constants(const LatticeModel& model, double t0, double t1, const Region& region);

/// A priori sandwich for energy_estimate_constants on piecewise potentials.
/// Between consecutive energies along [reference, active pieces…, reference],
/// μ_later ≤ κ μ_earlier with κ = max(1, max_j r_later/r_earlier), so
/// c2 ≤ ∏ κ(later/earlier) and c1 ≥ 1 / ∏ κ(earlier/later).
EnergyConstants energy_sandwich(const LatticeModel& model, double t0, double t1);

/// Raised-cosine plateau: 1 on the region, decaying to 0 over
/// max(1, round(0.1·n)) sites on each side (periodic distance).
Vector default_cutoff(const LatticeModel& model, const Region& region);

/// Largest singular value of A^{m/2} diag(χ) A^{−m/2}.
double multiplier_bound(const LatticeModel& model, const Vector& chi, double m);

/// Basis (2N × 2|region|) of Cauchy data supported in `region`.
Matrix region_data_basis(Index n, const Region& region);

struct LocalContinuityEntry {
  double tau = 0.0;
  double s = 0.0;
  double identity_residual = 0.0;  ///< ‖scaled_product − closed form‖_F relative
  double norm_v = 0.0;             ///< ‖χTχ‖ in H_τ ⊕ H_{τ−1}
  double norm_w = 0.0;             ///< ‖χT⁻¹χ‖ in H_τ ⊕ H_{τ−1}
  double bound_v = 0.0;            ///< w^{s/2} v^{1−s/2}
  double bound_w = 0.0;            ///< v^{s/2} w^{1−s/2}
  double norm_t = 0.0;             ///< ‖T‖ in H_τ ⊕ H_{τ−1}
  double norm_t_inverse = 0.0;     ///< ‖T⁻¹‖ in H_τ ⊕ H_{τ−1}
  double bound_t = 0.0;            ///< bound for T from the μ^E norms of T, T⁻¹
  double local_norm = 0.0;         ///< ‖T restricted to region data‖ in H_τ ⊕ H_{τ−1}
  bool hadamard = false;           ///< τ = ½
};

struct LocalContinuityReport {
  Region region;
  Vector chi;
  double v = 0.0;    ///< μ^E norm of χTχ
  double w = 0.0;    ///< μ^E norm of χT⁻¹χ
  double v_t = 0.0;  ///< μ^E norm of T
  double w_t = 0.0;  ///< μ^E norm of T⁻¹
  bool constant_potential = false;
  std::vector<LocalContinuityEntry> entries;
  double max_identity_residual = 0.0;
  double max_violation = 0.0;  ///< max relative excess of the χ and T pairs over their bounds
  double max_excess = 0.0;     ///< same, as an absolute difference norm − bound
  double max_norm = 0.0;       ///< max of norm_t, norm_t_inverse and local_norm
};

/// Cutoff evolutions in the H_τ ⊕ H_{τ−1} topologies, τ = 1 − s/2. `chi`
/// defaults to default_cutoff(model, region) when empty.
LocalContinuityReport local_continuity_report(const LatticeModel& model, double t0, double t1,
                                              const std::vector<double>& tau_grid, const Region& region,
                                              const Vector& chi = {}, const Tolerances& tol = {});

struct LeakageReport {
  double radius = 0.0;       ///< initial support radius (length units)
  double time = 0.0;
  double cone_radius = 0.0;  ///< radius + (1 + ε)·time
  double fraction = 0.0;     ///< μ^E share of the evolved data outside the cone
};

/// Evolves a smooth bump u₀ of the given radius centred at `center` under the
/// reference operator and measures the energy left outside the light cone.
LeakageReport light_cone_leakage(const LatticeModel& model, Index center, double radius, double time,
                                 double epsilon = 0.1);

}  // namespace symplecta
