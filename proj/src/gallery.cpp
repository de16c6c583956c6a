#include "symplecta/gallery.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "symplecta/parallel.hpp"

namespace symplecta {

namespace {

using Triplet = Eigen::Triplet<double>;

SparseMatrix dirichlet_operator(Index n, double h) {
  std::vector<Triplet> entries;
  const double inv = 1.0 / (h * h);
  for (Index i = 0; i < n; ++i) {
    entries.emplace_back(i, i, 2.0 * inv + 1.0);
    if (i > 0) entries.emplace_back(i, i - 1, -inv);
    if (i + 1 < n) entries.emplace_back(i, i + 1, -inv);
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());
  return a;
}

// blockdiag(top, bottom) scaled by `scale`.
SparseMatrix sparse_block_diag(const SparseMatrix& top, const SparseMatrix& bottom, double scale) {
  std::vector<Triplet> entries;
  const Index n = top.rows();
  for (int pass = 0; pass < 2; ++pass) {
    const SparseMatrix& m = pass == 0 ? top : bottom;
    for (Index k = 0; k < m.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
        entries.emplace_back(it.row() + pass * n, it.col() + pass * n, scale * it.value());
      }
    }
  }
  SparseMatrix out(2 * n, 2 * n);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

SparseMatrix scaled_identity(Index n, double scale) {
  SparseMatrix m(n, n);
  m.setIdentity();
  return scale * m;
}

GalleryScenario base_scenario(Index n, double l) {
  GalleryScenario s;
  s.n = n;
  s.l = l;
  s.h = 2.0 * l / static_cast<double>(n + 1);
  s.grid = Vector::LinSpaced(n, -l + s.h, -l + static_cast<double>(n) * s.h);
  s.a = dirichlet_operator(n, s.h);
  s.g_other = scaled_identity(2 * n, s.h);
  return s;
}

Vector canonical_apply(const Vector& y) {
  // [[0, I], [−I, 0]] y
  const Index n = y.size() / 2;
  Vector out(y.size());
  out.head(n) = y.tail(n);
  out.tail(n) = -y.head(n);
  return out;
}

}  // namespace

double GalleryScenario::sigma(const Vector& x, const Vector& y) const {
  return form_weight() * x.dot(canonical_apply(y));
}

SymplecticForm GalleryScenario::form() const { return SymplecticForm::block(Vector::Constant(n, form_weight())); }

double GalleryScenario::symplectic_residual() const {
  SparseMatrix j(2 * n, 2 * n);
  std::vector<Triplet> entries;
  for (Index i = 0; i < n; ++i) {
    entries.emplace_back(i, n + i, 1.0);
    entries.emplace_back(n + i, i, -1.0);
  }
  j.setFromTriplets(entries.begin(), entries.end());
  const SparseMatrix diff = SparseMatrix(t.transpose() * j * t) - j;
  return diff.norm() / j.norm();
}

GalleryScenario build_phase_multiplier(Index n, double l) {
  if (!(l >= 8.0) || !std::isfinite(l)) throw Error(ErrorCode::InvalidArgument, "half-width L must be at least 8");
  if (n < 64) throw Error(ErrorCode::GridTooCoarse, "at least 64 grid points are required");
  GalleryScenario s = base_scenario(n, l);
  if (2.0 * l * s.h > std::numbers::pi / 4.0) {
    throw Error(ErrorCode::GridTooCoarse, "phase e^{-ix^2} is under-resolved: 2 L h = " + std::to_string(2.0 * l * s.h));
  }
  s.kind = GalleryScenario::Kind::PhaseMultiplier;
  s.g_mu = sparse_block_diag(s.a, s.a, s.h);

  std::vector<Triplet> entries;
  for (Index i = 0; i < n; ++i) {
    const double phase = s.grid(i) * s.grid(i);
    const double c = std::cos(phase), sn = std::sin(phase);
    entries.emplace_back(i, i, c);
    entries.emplace_back(i, n + i, sn);
    entries.emplace_back(n + i, i, -sn);
    entries.emplace_back(n + i, n + i, c);
  }
  s.t.resize(2 * n, 2 * n);
  s.t.setFromTriplets(entries.begin(), entries.end());
  return s;
}

std::vector<GrowthPoint> phase_multiplier_growth(const GalleryScenario& scenario, double bump_width,
                                          const std::vector<double>& n_range) {
  if (scenario.kind != GalleryScenario::Kind::PhaseMultiplier) {
    throw Error(ErrorCode::InvalidArgument, "growth curves need the phase-multiplier scenario");
  }
  if (!(bump_width > 0.0)) throw Error(ErrorCode::InvalidArgument, "bump width must be positive");
  const double w = bump_width;
  for (double shift : n_range) {
    const double snapped = std::round(shift / scenario.h) * scenario.h;
    if (std::abs(snapped) + w + 3.0 * w > scenario.l + 1e-12) {
      throw Error(ErrorCode::BumpLeavesDomain, "translate " + std::to_string(shift) + " leaves the margin");
    }
  }
  std::vector<GrowthPoint> points(n_range.size());
  parallel_for(n_range.size(), [&](std::size_t idx) {
    const double shift = std::round(n_range[idx] / scenario.h) * scenario.h;
    Vector x = Vector::Zero(2 * scenario.n);
    for (Index j = 0; j < scenario.n; ++j) {
      const double u = (scenario.grid(j) - shift) / w;
      if (std::abs(u) < 1.0) x(j) = std::pow(1.0 - u * u, 4);
    }
    const Vector tx = scenario.t * x;
    GrowthPoint& p = points[idx];
    p.n = shift;
    p.mu = scenario.mu(x, x);
    p.ratio = scenario.mu(tx, tx) / p.mu;
    p.other = scenario.other(x, x);
    p.other_image = scenario.other(tx, tx);
  });
  return points;
}

double loglog_slope(const std::vector<GrowthPoint>& points) {
  std::vector<double> lx, ly;
  for (const auto& p : points) {
    if (p.n > 0.0 && p.ratio > 0.0) {
      lx.push_back(std::log(p.n));
      ly.push_back(std::log(p.ratio));
    }
  }
  if (lx.size() < 2) throw Error(ErrorCode::InvalidArgument, "slope fit needs two positive translates");
  const Index m = static_cast<Index>(lx.size());
  Matrix design(m, 2);
  Vector rhs(m);
  for (Index i = 0; i < m; ++i) {
    design(i, 0) = lx[static_cast<std::size_t>(i)];
    design(i, 1) = 1.0;
    rhs(i) = ly[static_cast<std::size_t>(i)];
  }
  return design.colPivHouseholderQr().solve(rhs)(0);
}

GalleryScenario build_mode_swap(Index n, double l) {
  if (!(l > 0.0) || !std::isfinite(l)) throw Error(ErrorCode::InvalidArgument, "half-width L must be positive");
  if (n < 64) throw Error(ErrorCode::GridTooCoarse, "at least 64 grid points are required");
  if (n > 2048) throw Error(ErrorCode::InvalidArgument, "at most 2048 grid points are supported");
  GalleryScenario s = base_scenario(n, l);
  s.kind = GalleryScenario::Kind::ModeSwap;
  s.g_mu = sparse_block_diag(s.a, scaled_identity(n, 1.0), s.h);

  Eigen::SelfAdjointEigenSolver<Matrix> eig{Matrix(s.a)};
  if (eig.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "eigendecomposition of A failed");
  s.a_eigenvalues = eig.eigenvalues();
  s.a_eigenvectors = eig.eigenvectors();
  const Matrix& v = s.a_eigenvectors;
  const Matrix root = v * s.a_eigenvalues.cwiseSqrt().asDiagonal() * v.transpose();
  const Matrix inv_root = v * s.a_eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose();
  Matrix t = Matrix::Zero(2 * n, 2 * n);
  t.topRightCorner(n, n) = inv_root;
  t.bottomLeftCorner(n, n) = -root;
  s.t = t.sparseView();
  return s;
}

std::vector<WitnessPoint> mode_swap_witness(const GalleryScenario& scenario) {
  if (scenario.kind != GalleryScenario::Kind::ModeSwap) {
    throw Error(ErrorCode::InvalidArgument, "witnesses need the mode-swap scenario");
  }
  const Index n = scenario.n;
  std::vector<WitnessPoint> points(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    Vector x = Vector::Zero(2 * n);
    x.head(n) = scenario.a_eigenvectors.col(k);
    const Vector tx = scenario.t * x;
    points[static_cast<std::size_t>(k)] = {k, scenario.a_eigenvalues(k), scenario.other(tx, tx) / scenario.other(x, x)};
  }
  return points;
}

}  // namespace symplecta
