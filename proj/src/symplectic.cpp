#include "symplecta/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace symplecta {

namespace {

Eigen::LLT<Matrix> cholesky_or_throw(const Matrix& g) {
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite, "Gram matrix is not positive definite");
  }
  return llt;
}

void require_same_dim(const Matrix& g, const SymplecticForm& form) {
  if (g.rows() != g.cols() || g.rows() != form.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "Gram matrix is " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()) +
                    ", form has dimension " + std::to_string(form.dim()));
  }
}

// ½ L⁻¹ J L⁻ᵀ, antisymmetrized.
Matrix frame_polarizator(const Matrix& l, const Matrix& j) {
  const auto lower = l.triangularView<Eigen::Lower>();
  Matrix x = lower.solve(j);              // L⁻¹ J
  Matrix y = lower.solve(x.transpose());  // L⁻¹ Jᵀ L⁻ᵀ = −L⁻¹ J L⁻ᵀ
  Matrix r = -0.5 * y;
  return 0.5 * (r - r.transpose());
}

// L⁻ᵀ X Lᵀ
Matrix from_frame(const Matrix& l, const Matrix& x) {
  Matrix y = x * l.transpose();
  return l.transpose().triangularView<Eigen::Upper>().solve(y);
}

}  // namespace

// ---------------------------------------------------------------------------
// SymplecticForm

SymplecticForm SymplecticForm::validate(const Matrix& j, const Tolerances& tol) {
  if (j.rows() != j.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "symplectic matrix must be square");
  }
  if (j.rows() < 2 || j.rows() % 2 != 0) {
    throw Error(ErrorCode::OddDimension, "dimension " + std::to_string(j.rows()) + " is not even and positive");
  }
  for (Index c = 0; c < j.cols(); ++c) {
    for (Index r = 0; r <= c; ++r) {
      if (j(r, c) + j(c, r) != 0.0) {
        throw Error(ErrorCode::NotAntisymmetric,
                    "J(" + std::to_string(r) + "," + std::to_string(c) + ") + J(" + std::to_string(c) + "," +
                        std::to_string(r) + ") != 0");
      }
    }
  }
  Eigen::BDCSVD<Matrix> svd(j);
  const Vector& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(sv.size() - 1) <= tol.degeneracy * sv(0)) {
    throw Error(ErrorCode::Degenerate, "smallest singular value " + std::to_string(sv(sv.size() - 1)) +
                                           " below threshold (largest " + std::to_string(sv(0)) + ")");
  }
  SymplecticForm f;
  f.j_ = j;
  f.lu_ = std::make_shared<const Eigen::PartialPivLU<Matrix>>(j);
  return f;
}

SymplecticForm SymplecticForm::block(const Vector& weights, const Tolerances& tol) {
  const Index n = weights.size();
  if (n < 1) throw Error(ErrorCode::OddDimension, "empty block form");
  const double largest = weights.cwiseAbs().maxCoeff();
  const double smallest = weights.cwiseAbs().minCoeff();
  if (!(largest > 0.0) || smallest <= tol.degeneracy * largest) {
    throw Error(ErrorCode::Degenerate, "block weights are degenerate");
  }
  SymplecticForm f;
  f.j_ = Matrix::Zero(2 * n, 2 * n);
  f.j_.topRightCorner(n, n).diagonal() = weights;
  f.j_.bottomLeftCorner(n, n).diagonal() = -weights;
  f.block_weights_ = weights;
  return f;
}

SymplecticForm SymplecticForm::canonical(Index n) { return block(Vector::Ones(n)); }

Matrix SymplecticForm::solve(const Matrix& b) const {
  if (b.rows() != dim()) throw Error(ErrorCode::DimensionMismatch, "right-hand side has wrong row count");
  if (block_weights_) {
    // [[0, W], [−W, 0]]⁻¹ = [[0, −W⁻¹], [W⁻¹, 0]]
    const Index n = block_weights_->size();
    Matrix x(b.rows(), b.cols());
    const Vector inv = block_weights_->cwiseInverse();
    x.topRows(n) = -(inv.asDiagonal() * b.bottomRows(n));
    x.bottomRows(n) = inv.asDiagonal() * b.topRows(n);
    return x;
  }
  return lu_->solve(b);
}

// ---------------------------------------------------------------------------
// DominatingProduct

DominationCheck check_domination(const Matrix& g, const SymplecticForm& form, const Tolerances& tol) {
  require_same_dim(g, form);
  auto llt = cholesky_or_throw(g);
  Matrix l = llt.matrixL();
  const double norm = spectral_norm(frame_polarizator(l, form.matrix()));
  return {norm <= 1.0 + tol.domination, norm, 1.0 - norm};
}

DominatingProduct DominatingProduct::make(const Matrix& g, const SymplecticForm& form, const Tolerances& tol) {
  require_same_dim(g, form);
  const double scale = g.cwiseAbs().maxCoeff();
  if (!((g - g.transpose()).cwiseAbs().maxCoeff() <= tol.metric * scale)) {
    throw Error(ErrorCode::InvalidArgument, "Gram matrix is not symmetric");
  }
  Matrix sym = symmetrized(g);
  const auto check = check_domination(sym, form, tol);
  if (!check.dominates) {
    throw Error(ErrorCode::DominationFails,
                "polarizator norm " + std::to_string(check.norm) + " exceeds 1 (margin " +
                    std::to_string(check.margin) + ")");
  }
  return DominatingProduct(std::move(sym), std::make_shared<const SymplecticForm>(form));
}

// ---------------------------------------------------------------------------
// Polarizator

Polarizator Polarizator::compute(const DominatingProduct& g, const Tolerances& tol) {
  Polarizator p;
  p.tol_ = tol;
  const Index dim = g.dim();
  auto llt = cholesky_or_throw(g.gram());
  p.l_ = llt.matrixL();
  p.r_ = 0.5 * llt.solve(g.form().matrix());
  p.r_hat_ = frame_polarizator(p.l_, g.form().matrix());

  Eigen::RealSchur<Matrix> schur(p.r_hat_);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "real Schur decomposition did not converge");
  }
  const Matrix& t = schur.matrixT();
  p.schur_q_ = schur.matrixU();
  p.block_beta_ = Vector::Zero(dim);
  p.block_sign_ = Matrix::Zero(dim, dim);
  for (Index i = 0; i < dim;) {
    if (i + 1 < dim && t(i + 1, i) != 0.0) {
      const double b = t(i, i + 1);
      const double c = t(i + 1, i);
      const double beta = std::sqrt(std::abs(b * c));
      p.block_beta_(i) = p.block_beta_(i + 1) = beta;
      p.block_sign_(i, i + 1) = b > 0.0 ? 1.0 : -1.0;
      p.block_sign_(i + 1, i) = c > 0.0 ? 1.0 : -1.0;
      i += 2;
    } else {
      // real eigenvalue of a skew matrix: zero up to rounding; U vanishes on the kernel
      p.block_beta_(i) = std::abs(t(i, i));
      i += 1;
    }
  }

  p.abs_ = from_frame(p.l_, symmetrized(p.schur_q_ * p.block_beta_.asDiagonal() * p.schur_q_.transpose()));
  p.u_ = from_frame(p.l_, p.frame_isometry());

  p.spectrum_ = p.block_beta_;
  std::sort(p.spectrum_.data(), p.spectrum_.data() + dim, std::greater<>());
  return p;
}

Matrix Polarizator::frame_isometry() const { return schur_q_ * block_sign_ * schur_q_.transpose(); }

void Polarizator::require_power(double s) const {
  if (s < 0.0) throw Error(ErrorCode::NegativeExponent, "exponent " + std::to_string(s) + " < 0");
  if (s > 0.0 && smallest() <= tol_.classification) {
    throw Error(ErrorCode::SingularResult, "|R| has eigenvalue " + std::to_string(smallest()) +
                                               " at or below the primarity threshold");
  }
}

Matrix Polarizator::frame_modulus_power(double s) const {
  require_power(s);
  if (s == 0.0) return Matrix::Identity(r_.rows(), r_.cols());
  Vector d = block_beta_.array().pow(s);
  Matrix m = schur_q_ * d.asDiagonal() * schur_q_.transpose();
  return symmetrized(m);
}

Matrix Polarizator::modulus_power(double s) const { return from_frame(l_, frame_modulus_power(s)); }

// ---------------------------------------------------------------------------
// μ_s family and purification

Matrix scaled_product(const DominatingProduct& g, const Polarizator& r, double s) {
  if (s < 0.0) throw Error(ErrorCode::NegativeExponent, "exponent " + std::to_string(s) + " < 0");
  if (s == 0.0) return g.gram();
  // G |R|^s = L Lᵀ L⁻ᵀ |R̂|^s Lᵀ = L |R̂|^s Lᵀ
  const Matrix& l = r.cholesky();
  return symmetrized(l * r.frame_modulus_power(s) * l.transpose());
}

Matrix scaled_product(const DominatingProduct& g, double s, const Tolerances& tol) {
  if (s < 0.0) throw Error(ErrorCode::NegativeExponent, "exponent " + std::to_string(s) + " < 0");
  if (s == 0.0) return g.gram();
  return scaled_product(g, Polarizator::compute(g, tol), s);
}

Matrix modulus_power_generalized(const DominatingProduct& g, double s, const Tolerances& tol) {
  if (s < 0.0) throw Error(ErrorCode::NegativeExponent, "exponent " + std::to_string(s) + " < 0");
  const Matrix& gram = g.gram();
  auto llt = cholesky_or_throw(gram);
  Matrix r = 0.5 * llt.solve(g.form().matrix());
  Matrix a = symmetrized(-(gram * r * r));  // G (−R²) = G R* R is symmetric
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> eig(a, gram);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "generalized eigenproblem did not converge");
  }
  Vector lam = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  if (s > 0.0 && lam.minCoeff() <= tol.classification) {
    throw Error(ErrorCode::SingularResult, "|R| is not injective");
  }
  Vector d = s == 0.0 ? Vector::Ones(lam.size()) : Vector(lam.array().pow(s));
  const Matrix& v = eig.eigenvectors();  // Vᵀ G V = I, so |R|^s = V Λ^s Vᵀ G
  return v * d.asDiagonal() * v.transpose() * gram;
}

DominatingProduct purify(const DominatingProduct& g, const Polarizator& r) {
  if (r.smallest() <= r.tolerances().classification) {
    throw Error(ErrorCode::NonPrimaryInput,
                "smallest |R| eigenvalue " + std::to_string(r.smallest()) + " at or below threshold");
  }
  return DominatingProduct::make(scaled_product(g, r, 1.0), g.form(), r.tolerances());
}

DominatingProduct purify(const DominatingProduct& g, const Tolerances& tol) {
  return purify(g, Polarizator::compute(g, tol));
}

// ---------------------------------------------------------------------------
// Classification

std::string_view to_string(StateTag tag) noexcept {
  switch (tag) {
    case StateTag::Pure: return "pure";
    case StateTag::PrimaryNotPure: return "primary-not-pure";
    case StateTag::NonPrimary: return "non-primary";
  }
  return "unknown";
}

StateClass classify(const Polarizator& r) {
  StateClass c;
  c.smallest_modulus = r.smallest();
  // R is normal with R² = −|R|², so ‖R² + I‖_μ = max |1 − β²|
  double defect = 0.0;
  for (Index i = 0; i < r.spectrum().size(); ++i) {
    defect = std::max(defect, std::abs(1.0 - r.spectrum()(i) * r.spectrum()(i)));
  }
  c.involution_defect = defect;
  const double tol = r.tolerances().classification;
  if (defect <= tol) {
    c.tag = StateTag::Pure;
  } else if (c.smallest_modulus > tol) {
    c.tag = StateTag::PrimaryNotPure;
  } else {
    c.tag = StateTag::NonPrimary;
  }
  return c;
}

StateClass classify(const DominatingProduct& g, const Tolerances& tol) {
  return classify(Polarizator::compute(g, tol));
}

// ---------------------------------------------------------------------------
// Saturation

double saturation_defect_at(const DominatingProduct& g, const Vector& phi) {
  if (phi.size() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "vector has wrong dimension");
  const Vector a = g.form().matrix().transpose() * phi;
  const double sup = 0.25 * a.dot(g.gram().llt().solve(a));
  return g(phi, phi) - sup;
}

double saturation_defect(const DominatingProduct& g, int sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw Error(ErrorCode::InvalidArgument, "sample_count must be >= 1");
  const Index dim = g.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < sample_count; ++k) {
    Vector phi;
    if (k < dim) {
      phi = Vector::Unit(dim, k);
    } else {
      phi = Vector::NullaryExpr(dim, [&](Index) { return normal(rng); });
      phi.normalize();
    }
    worst = std::max(worst, saturation_defect_at(g, phi));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Random instances

namespace {

// Real form [[X, −Y], [Y, X]] of a random unitary X + iY.
Matrix random_orthosymplectic(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> normal;
  CMatrix z(n, n);
  for (Index c = 0; c < n; ++c)
    for (Index r = 0; r < n; ++r) z(r, c) = {normal(rng), normal(rng)};
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  Matrix k(2 * n, 2 * n);
  k << q.real(), -q.imag(), q.imag(), q.real();
  return k;
}

Matrix random_symplectic(std::mt19937_64& rng, Index n, double squeeze) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Vector d(2 * n);
  for (Index i = 0; i < n; ++i) {
    d(i) = std::pow(squeeze, uniform(rng));
    d(n + i) = 1.0 / d(i);
  }
  Matrix k1 = random_orthosymplectic(rng, n);
  Matrix k2 = random_orthosymplectic(rng, n);
  return k1 * d.asDiagonal() * k2;
}

}  // namespace

Matrix random_symplectic(std::uint64_t seed, Index n, double squeeze) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (!(squeeze >= 1.0)) throw Error(ErrorCode::InvalidArgument, "squeeze must be >= 1");
  std::mt19937_64 rng(seed);
  return random_symplectic(rng, n, squeeze);
}

DominatingProduct random_instance(std::uint64_t seed, Index n, double squeeze, double mix) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (!(squeeze >= 1.0)) throw Error(ErrorCode::InvalidArgument, "squeeze must be >= 1");
  if (!(mix >= 0.0)) throw Error(ErrorCode::InvalidArgument, "mix must be >= 0");
  std::mt19937_64 rng(seed);
  Matrix s = random_symplectic(rng, n, squeeze);
  Matrix g = 0.5 * s.transpose() * s;
  if (mix > 0.0) {
    std::normal_distribution<double> normal;
    Matrix b = Matrix::NullaryExpr(2 * n, 2 * n, [&](Index, Index) { return normal(rng); });
    g += (mix / static_cast<double>(2 * n)) * b * b.transpose();
  }
  return DominatingProduct::make(symmetrized(g), SymplecticForm::canonical(n));
}

}  // namespace symplecta
