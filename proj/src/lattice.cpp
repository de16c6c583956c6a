#include "symplecta/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace symplecta {

Region normalize_region(Region sites, Index n) {
  if (sites.empty()) throw Error(ErrorCode::EmptyRegion, "region has no sites");
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  if (sites.front() < 0 || sites.back() >= n) {
    throw Error(ErrorCode::InvalidArgument, "region site outside the lattice");
  }
  return sites;
}

namespace {

Matrix periodic_laplacian(Index n, double h) {
  Matrix d = Matrix::Zero(n, n);
  const double inv = 1.0 / (h * h);
  for (Index i = 0; i < n; ++i) {
    d(i, i) = -2.0 * inv;
    d(i, (i + 1) % n) += inv;
    d(i, (i + n - 1) % n) += inv;
  }
  return d;
}

Matrix spectral_function(const LatticeModel::Spectral& sp, const Vector& f) {
  return sp.vectors * f.asDiagonal() * sp.vectors.transpose();
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

Matrix piece_propagator(const LatticeModel::Spectral& sp, double duration) {
  const Index n = sp.values.size();
  const Vector omega = sp.values.cwiseSqrt();
  const Vector c = (omega * duration).array().cos();
  const Vector s = (omega * duration).array().sin();
  Matrix t(2 * n, 2 * n);
  t.topLeftCorner(n, n) = spectral_function(sp, c);
  t.topRightCorner(n, n) = spectral_function(sp, s.cwiseQuotient(omega));
  t.bottomLeftCorner(n, n) = -spectral_function(sp, s.cwiseProduct(omega));
  t.bottomRightCorner(n, n) = t.topLeftCorner(n, n);
  return t;
}

double periodic_distance(Index i, Index j, Index n) {
  const Index d = std::abs(i - j) % n;
  return static_cast<double>(std::min(d, n - d));
}

// sup over x in span(b) of ‖T x‖_g / ‖x‖_g.
double restricted_norm(const Matrix& t, const Matrix& b, const Matrix& g) {
  const Matrix tb = t * b;
  const Matrix num = symmetrized(tb.transpose() * g * tb);
  const Matrix den = symmetrized(b.transpose() * g * b);
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> eig(num, den);
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "generalized eigenproblem failed");
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

}  // namespace

Matrix LatticeModel::a_power(double p) const {
  const auto& sp = spectra_->front();
  return spectral_function(sp, sp.values.array().pow(p).matrix());
}

LatticeModel build_lattice(Index n, double h, std::vector<PotentialPiece> pieces) {
  if (n < 8 || n > 2048) throw Error(ErrorCode::InvalidArgument, "lattice size must lie in [8, 2048]");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "spacing must be positive");
  if (pieces.empty()) throw Error(ErrorCode::InvalidArgument, "at least one potential piece is required");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (p.r.size() != n) throw Error(ErrorCode::DimensionMismatch, "potential length differs from lattice size");
    if (!p.r.allFinite() || !std::isfinite(p.t_start)) {
      throw Error(ErrorCode::InvalidArgument, "potential entries must be finite");
    }
    if (!(p.r.minCoeff() > 0.0)) {
      throw Error(ErrorCode::NonPositivePotential, "potential piece " + std::to_string(i) + " has r <= 0");
    }
    if (i > 0 && !(p.t_start > pieces[i - 1].t_start)) {
      throw Error(ErrorCode::InvalidArgument, "potential pieces must start at increasing times");
    }
  }
  LatticeModel m;
  m.n_ = n;
  m.h_ = h;
  m.laplacian_ = periodic_laplacian(n, h);
  auto spectra = std::make_shared<std::vector<LatticeModel::Spectral>>();
  for (const auto& p : pieces) {
    LatticeModel::Spectral sp;
    sp.a = -m.laplacian_;
    sp.a.diagonal() += p.r;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sp.a);
    if (eig.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "eigendecomposition of A failed");
    sp.values = eig.eigenvalues();
    sp.vectors = eig.eigenvectors();
    spectra->push_back(std::move(sp));
  }
  m.pieces_ = std::move(pieces);
  m.spectra_ = std::move(spectra);
  return m;
}

LatticeModel build_lattice(Index n, double h, double r) {
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "lattice size must lie in [8, 2048]");
  return build_lattice(n, h, {PotentialPiece{0.0, Vector::Constant(n, r)}});
}

SobolevGram sobolev_gram(const LatticeModel& model, double m) {
  return {m, model.h() * model.a_power(m)};
}

SymplecticForm cauchy_form(const LatticeModel& model) {
  return SymplecticForm::block(Vector::Constant(model.n(), model.h()));
}

DominatingProduct energy_gram(const LatticeModel& model, const Tolerances& tol) {
  const Matrix g = block_diag(model.h() * model.a(), model.mass());
  return DominatingProduct::make(g, cauchy_form(model), tol);
}

DominatingProduct ultrastatic_vacuum_gram(const LatticeModel& model, const Tolerances& tol) {
  const Matrix g = 0.5 * model.h() * block_diag(model.a_power(0.5), model.a_power(-0.5));
  return DominatingProduct::make(g, cauchy_form(model), tol);
}

Matrix energy_scaled_gram(const LatticeModel& model, double s) {
  return std::pow(2.0, -s) * model.h() * block_diag(model.a_power(1.0 - s / 2), model.a_power(-s / 2));
}

Matrix evolution_matrix(const LatticeModel& model, double t0, double t1) {
  if (!(t1 >= t0)) throw Error(ErrorCode::InvalidArgument, "t1 must not precede t0");
  const auto& pieces = model.pieces();
  if (t0 < pieces.front().t_start) {
    throw Error(ErrorCode::PotentialUndefined, "potential is undefined before its first piece");
  }
  Matrix t = Matrix::Identity(2 * model.n(), 2 * model.n());
  double now = t0;
  for (std::size_t i = 0; i < pieces.size() && now < t1; ++i) {
    const double end = i + 1 < pieces.size() ? std::min(t1, pieces[i + 1].t_start) : t1;
    if (end <= now) continue;
    t = piece_propagator(model.piece_spectrum(i), end - now) * t;
    now = end;
  }
  return t;
}

CauchyData evolve(const LatticeModel& model, double t0, double t1, const CauchyData& data) {
  if (data.u0.size() != model.n() || data.u1.size() != model.n()) {
    throw Error(ErrorCode::DimensionMismatch, "Cauchy data length differs from lattice size");
  }
  Vector x(2 * model.n());
  x << data.u0, data.u1;
  const Vector y = evolution_matrix(model, t0, t1) * x;
  return {y.head(model.n()), y.tail(model.n())};
}

Matrix region_data_basis(Index n, const Region& region) {
  Matrix b = Matrix::Zero(2 * n, 2 * static_cast<Index>(region.size()));
  for (std::size_t k = 0; k < region.size(); ++k) {
    const Index col = static_cast<Index>(k);
    b(region[k], col) = 1.0;
    b(n + region[k], static_cast<Index>(region.size()) + col) = 1.0;
  }
  return b;
}

EnergyConstants energy_estimate_constants(const LatticeModel& model, double t0, double t1, const Region& region) {
  const Region sites = normalize_region(region, model.n());
  const Matrix g = block_diag(model.h() * model.a(), model.mass());
  const Matrix b = region_data_basis(model.n(), sites);
  const Matrix tb = evolution_matrix(model, t0, t1) * b;
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> eig(symmetrized(tb.transpose() * g * tb),
                                                       symmetrized(b.transpose() * g * b));
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "generalized eigenproblem failed");
  return {eig.eigenvalues().minCoeff(), eig.eigenvalues().maxCoeff()};
}

EnergyConstants energy_sandwich(const LatticeModel& model, double t0, double t1) {
  const auto& pieces = model.pieces();
  if (t0 < pieces.front().t_start) throw Error(ErrorCode::PotentialUndefined, "t0 precedes the first potential piece");
  if (t1 < t0) throw Error(ErrorCode::InvalidArgument, "t1 must not precede t0");
  std::vector<const Vector*> chain{&pieces.front().r};
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double end = i + 1 < pieces.size() ? pieces[i + 1].t_start : std::numeric_limits<double>::infinity();
    const bool active = t1 > t0 ? pieces[i].t_start < t1 && end > t0 : pieces[i].t_start <= t0 && t0 < end;
    if (active) chain.push_back(&pieces[i].r);
  }
  chain.push_back(&pieces.front().r);
  const auto kappa = [](const Vector& num, const Vector& den) {
    return std::max(1.0, num.cwiseQuotient(den).maxCoeff());
  };
  double up = 1.0, down = 1.0;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    up *= kappa(*chain[i], *chain[i - 1]);
    down *= kappa(*chain[i - 1], *chain[i]);
  }
  return {1.0 / down, up};
}

Vector default_cutoff(const LatticeModel& model, const Region& region) {
  const Index n = model.n();
  const Region sites = normalize_region(region, n);
  const Index taper = std::max<Index>(1, std::llround(0.1 * static_cast<double>(n)));
  Vector chi = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    double d = static_cast<double>(n);
    for (Index s : sites) d = std::min(d, periodic_distance(i, s, n));
    if (d == 0.0) {
      chi(i) = 1.0;
    } else if (d <= static_cast<double>(taper)) {
      chi(i) = 0.5 * (1.0 + std::cos(std::numbers::pi * d / static_cast<double>(taper + 1)));
    }
  }
  return chi;
}

double multiplier_bound(const LatticeModel& model, const Vector& chi, double m) {
  if (chi.size() != model.n()) throw Error(ErrorCode::DimensionMismatch, "cutoff length differs from lattice size");
  return spectral_norm(model.a_power(m / 2) * chi.asDiagonal() * model.a_power(-m / 2));
}

LocalContinuityReport local_continuity_report(const LatticeModel& model, double t0, double t1,
                                              const std::vector<double>& tau_grid, const Region& region,
                                              const Vector& chi, const Tolerances& tol) {
  LocalContinuityReport rep;
  rep.region = normalize_region(region, model.n());
  rep.chi = chi.size() == 0 ? default_cutoff(model, rep.region) : chi;
  if (rep.chi.size() != model.n()) throw Error(ErrorCode::DimensionMismatch, "cutoff length differs from lattice size");
  rep.constant_potential = model.time_independent();

  const DominatingProduct g = energy_gram(model, tol);
  const Polarizator pol = Polarizator::compute(g, tol);
  const Matrix t = evolution_matrix(model, t0, t1);
  const Matrix t_inv = adjoint_of(t, g.form());
  Vector x(2 * model.n());
  x << rep.chi, rep.chi;
  const Matrix v = x.asDiagonal() * t * x.asDiagonal();
  const Matrix w = x.asDiagonal() * t_inv * x.asDiagonal();
  rep.v = gram_operator_norm(v, g.gram());
  rep.w = gram_operator_norm(w, g.gram());
  rep.v_t = gram_operator_norm(t, g.gram());
  rep.w_t = gram_operator_norm(t_inv, g.gram());
  const Matrix basis = region_data_basis(model.n(), rep.region);

  rep.max_violation = -std::numeric_limits<double>::infinity();
  rep.max_excess = -std::numeric_limits<double>::infinity();
  for (double tau : tau_grid) {
    if (tau < 0.0 || tau > 1.0) throw Error(ErrorCode::InvalidArgument, "tau must lie in [0, 1]");
    LocalContinuityEntry e;
    e.tau = tau;
    e.s = 2.0 * (1.0 - tau);
    e.hadamard = tau == 0.5;
    const Matrix closed = energy_scaled_gram(model, e.s);
    e.identity_residual = relative_frobenius(scaled_product(g, pol, e.s), closed);
    e.norm_v = gram_operator_norm(v, closed);
    e.norm_w = gram_operator_norm(w, closed);
    e.bound_v = std::pow(rep.w, e.s / 2) * std::pow(rep.v, 1 - e.s / 2);
    e.bound_w = std::pow(rep.v, e.s / 2) * std::pow(rep.w, 1 - e.s / 2);
    e.norm_t = gram_operator_norm(t, closed);
    e.norm_t_inverse = gram_operator_norm(t_inv, closed);
    e.bound_t = std::pow(rep.w_t, e.s / 2) * std::pow(rep.v_t, 1 - e.s / 2);
    const double bound_t_inverse = std::pow(rep.v_t, e.s / 2) * std::pow(rep.w_t, 1 - e.s / 2);
    e.local_norm = restricted_norm(t, basis, closed);
    rep.max_identity_residual = std::max(rep.max_identity_residual, e.identity_residual);
    rep.max_violation = std::max({rep.max_violation, relative_violation(e.norm_v, e.bound_v),
                                  relative_violation(e.norm_w, e.bound_w), relative_violation(e.norm_t, e.bound_t),
                                  relative_violation(e.norm_t_inverse, bound_t_inverse)});
    rep.max_excess = std::max({rep.max_excess, e.norm_v - e.bound_v, e.norm_w - e.bound_w, e.norm_t - e.bound_t,
                               e.norm_t_inverse - bound_t_inverse});
    rep.max_norm = std::max({rep.max_norm, e.norm_t, e.norm_t_inverse, e.local_norm});
    rep.entries.push_back(e);
  }
  return rep;
}

LeakageReport light_cone_leakage(const LatticeModel& model, Index center, double radius, double time,
                                 double epsilon) {
  const Index n = model.n();
  if (center < 0 || center >= n) throw Error(ErrorCode::InvalidArgument, "center outside the lattice");
  if (!(radius > 0.0) || time < 0.0 || epsilon < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "radius must be positive, time and epsilon non-negative");
  }
  LeakageReport rep{radius, time, radius + (1.0 + epsilon) * time, 0.0};
  Vector x = Vector::Zero(2 * n);
  for (Index i = 0; i < n; ++i) {
    const double d = periodic_distance(i, center, n) * model.h();
    if (d < radius) x(i) = std::pow(1.0 - (d / radius) * (d / radius), 4);
  }
  const Matrix g = block_diag(model.h() * model.a(), model.mass());
  const Vector y = piece_propagator(model.piece_spectrum(0), time) * x;
  Vector outside = Vector::Zero(2 * n);
  for (Index i = 0; i < n; ++i) {
    if (periodic_distance(i, center, n) * model.h() > rep.cone_radius) {
      outside(i) = y(i);
      outside(n + i) = y(n + i);
    }
  }
  const double total = y.dot(g * y);
  rep.fraction = total > 0.0 ? outside.dot(g * outside) / total : 0.0;
  return rep;
}

}  // namespace symplecta
