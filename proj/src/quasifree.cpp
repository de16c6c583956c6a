#include "symplecta/quasifree.hpp"

#include <algorithm>
#include <cmath>

namespace symplecta {

using namespace std::complex_literals;

double weyl_value(const QuasifreeState& state, const Vector& phi) {
  return std::exp(-0.5 * state.product()(phi, phi));
}

std::complex<double> weyl_product_value(const QuasifreeState& state, const Vector& phi, const Vector& psi, double t,
                                        double tau) {
  const Vector sum = t * phi + tau * psi;
  const double phase = -0.5 * t * tau * state.form()(phi, psi);
  return std::exp(1i * phase) * std::exp(-0.5 * state.product()(sum, sum));
}

namespace {

std::complex<double> central_mixed(const QuasifreeState& state, const Vector& phi, const Vector& psi, double h) {
  const auto f = [&](double t, double tau) { return weyl_product_value(state, phi, psi, t, tau); };
  return (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
}

}  // namespace

std::complex<double> mixed_derivative(const QuasifreeState& state, const Vector& phi, const Vector& psi, double step) {
  if (!(step >= 1e-5 && step <= 1e-2)) throw Error(ErrorCode::StepOutOfRange, "step must lie in [1e-5, 1e-2]");
  if (phi.size() != state.dim() || psi.size() != state.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vectors do not match the state dimension");
  }
  return (4.0 * central_mixed(state, phi, psi, step) - central_mixed(state, phi, psi, 2.0 * step)) / 3.0;
}

double recover_mu(const QuasifreeState& state, const Vector& phi, const Vector& psi, double step) {
  return -mixed_derivative(state, phi, psi, step).real();
}

OneParticleStructure OneParticleStructure::make(const QuasifreeState& state, const Tolerances& tol) {
  const auto& g = state.product();
  const Polarizator p = Polarizator::compute(g, tol);
  if (classify(p).tag != StateTag::Pure) throw Error(ErrorCode::NotPure, "one-particle structures need a pure state");
  const Matrix jc = -p.matrix();
  const Matrix jc_hat = -p.frame_matrix();
  const Matrix& l = p.cholesky();

  Eigen::RealSchur<Matrix> schur(jc_hat);
  if (schur.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "real Schur decomposition failed");
  const Matrix& q = schur.matrixU();
  const Index n = g.dim() / 2;
  CMatrix k(n, g.dim());
  // Ĵc is orthogonal and skew, so its Schur form is a sum of 2×2 rotation
  // blocks; one column f per block gives the orthonormal frame {f, Ĵc f}.
  for (Index j = 0; j < n; ++j) {
    const Vector f = q.col(2 * j);
    const Vector jf = jc_hat * f;
    k.row(j) = (f.cast<std::complex<double>>() + 1i * jf.cast<std::complex<double>>()).transpose() * l.transpose();
  }
  return OneParticleStructure(g, jc, std::move(k));
}

std::complex<double> OneParticleStructure::inner(const Vector& x, const Vector& y) const {
  const CVector kx = k_ * x.cast<std::complex<double>>();
  const CVector ky = k_ * y.cast<std::complex<double>>();
  return kx.dot(ky);
}

std::complex<double> OneParticleStructure::lambda(const Vector& x, const Vector& y) const {
  return {g_(x, y), 0.5 * g_.form()(x, y)};
}

Matrix symplectic_complement(const DominatingProduct& g, const Matrix& basis) {
  if (basis.rows() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "basis vectors have the wrong length");
  // σ(b, χ) = bᵀ J χ
  const Matrix constraints = basis.transpose() * g.form().matrix();
  return metric_orthonormalize(orthonormal_null_space(constraints), g.gram());
}

Matrix symplectic_complement(const OneParticleStructure& structure, const Matrix& basis) {
  return symplectic_complement(structure.product(), basis);
}

LocalProber::LocalProber(const LatticeModel& model, const QuasifreeState& state, const Tolerances& tol)
    : n_(model.n()), g_(state.product()) {
  if (state.dim() != 2 * n_) throw Error(ErrorCode::DimensionMismatch, "state does not live on the lattice data");
  if (classify(g_, tol).tag != StateTag::Pure) throw Error(ErrorCode::NotPure, "probe needs a pure state");
}

LocalProbeReport LocalProber::probe(const Region& region, bool angles) const {
  LocalProbeReport rep;
  rep.region = normalize_region(region, n_);
  if (static_cast<Index>(rep.region.size()) == n_) throw Error(ErrorCode::FullRegion, "region covers every site");

  Region outside;
  for (Index i = 0, k = 0; i < n_; ++i) {
    if (k < static_cast<Index>(rep.region.size()) && rep.region[static_cast<std::size_t>(k)] == i) {
      ++k;
    } else {
      outside.push_back(i);
    }
  }
  const Matrix& gram = g_.gram();
  const Matrix& jmat = g_.form().matrix();
  // F and the outside data are coordinate subspaces, so their Gram blocks are submatrices.
  const auto coords = [this](const Region& sites) {
    std::vector<Index> idx(sites.begin(), sites.end());
    for (Index s : sites) idx.push_back(n_ + s);
    return idx;
  };
  const std::vector<Index> fi = coords(rep.region);
  const std::vector<Index> ci = coords(outside);
  const Matrix fv = metric_orthonormalize(orthonormal_null_space(jmat(fi, Eigen::all)), gram);
  rep.subspace_dim = static_cast<Index>(fi.size());
  rep.complement_dim = fv.cols();
  // F ∩ F^v is the radical of σ restricted to F
  rep.intersection_rank = rep.subspace_dim - numerical_rank(jmat(fi, fi));

  Eigen::LLT<Matrix> cllt(symmetrized(gram(ci, ci)));
  if (cllt.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "metric is not positive on the outside data");
  if (angles) {
    Eigen::LLT<Matrix> fllt(symmetrized(gram(fi, fi)));
    if (fllt.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "metric is not positive on F");
    // cosines are the singular values of L_F^{-1} G_FC L_C^{-T}
    const Matrix left = fllt.matrixL().solve(gram(fi, ci));
    const Matrix cross = cllt.matrixL().solve(left.transpose()).transpose();
    const Vector cosines = Eigen::BDCSVD<Matrix>(cross).singularValues();
    rep.min_principal_angle = std::acos(std::clamp(cosines(0), -1.0, 1.0));
  } else {
    rep.min_principal_angle = std::nan("");
  }
  if (fv.cols() != static_cast<Index>(ci.size())) {
    rep.duality_gap = 1.0;
  } else {
    // μ-orthogonal projection of F^v onto the outside data: coefficients solve G_CC a = G_C· fv
    const Matrix coeff = cllt.solve(gram(ci, Eigen::all) * fv);
    Matrix residual = fv;
    for (std::size_t k = 0; k < ci.size(); ++k) residual.row(ci[k]) -= coeff.row(static_cast<Index>(k));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrized(residual.transpose() * gram * residual),
                                              Eigen::EigenvaluesOnly);
    rep.duality_gap = std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
  }
  return rep;
}

LocalProbeReport local_probe(const LatticeModel& model, const QuasifreeState& state, const Region& region,
                             const Tolerances& tol) {
  return LocalProber(model, state, tol).probe(region);
}

}  // namespace symplecta
