#include <doctest.h>

#include <cmath>

#include "symplecta/symplectic.hpp"
#include "test_support.hpp"

using namespace symplecta;
using symplecta::testing::canonical2;
using symplecta::testing::diag2;

TEST_CASE("validate_symplectic accepts the canonical form and rejects bad input") {
  Matrix j(2, 2);
  j << 0, 1, -1, 0;
  auto form = SymplecticForm::validate(j);
  CHECK(form.dim() == 2);

  Matrix sym(2, 2);
  sym << 0, 1, 1, 0;
  CHECK_THROWS_WITH_AS(SymplecticForm::validate(sym), doctest::Contains("NotAntisymmetric"), Error);
  CHECK_THROWS_WITH_AS(SymplecticForm::validate(Matrix::Zero(2, 2)), doctest::Contains("Degenerate"), Error);
  CHECK_THROWS_WITH_AS(SymplecticForm::validate(Matrix::Zero(3, 3)), doctest::Contains("OddDimension"), Error);

  // tiny-but-nonzero antisymmetry violations are rejected too
  Matrix almost = j;
  almost(1, 0) = -1.0 + 1e-15;
  CHECK_THROWS_AS(SymplecticForm::validate(almost), Error);
}

TEST_CASE("block form solve inverts J") {
  Vector w(3);
  w << 0.5, 2.0, 3.0;
  auto form = SymplecticForm::block(w);
  Matrix b = Matrix::Random(6, 4);
  CHECK((form.matrix() * form.solve(b) - b).norm() < 1e-14);
  auto dense = SymplecticForm::validate(form.matrix());
  CHECK((dense.solve(b) - form.solve(b)).norm() < 1e-14);
}

TEST_CASE("check_domination on 2x2 closed forms") {
  const auto form = canonical2();
  auto half = check_domination(0.5 * Matrix::Identity(2, 2), form);
  CHECK(half.dominates);
  CHECK(half.norm == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(half.margin == doctest::Approx(0.0).epsilon(1e-14));

  // R = ½ G⁻¹ J = [[0, 1/4], [−1, 0]]; |R| = ½ I
  auto squeezed = check_domination(diag2(2.0, 0.5), form);
  CHECK(squeezed.dominates);
  CHECK(squeezed.norm == doctest::Approx(0.5).epsilon(1e-14));

  // basis vectors: |σ(e1,e2)|² = 1 > 4·¼·¼
  auto weak = check_domination(0.25 * Matrix::Identity(2, 2), form);
  CHECK_FALSE(weak.dominates);
  CHECK(weak.norm == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(weak.margin == doctest::Approx(-1.0).epsilon(1e-14));

  CHECK_THROWS_WITH_AS(check_domination(-Matrix::Identity(2, 2), form), doctest::Contains("NotPositiveDefinite"),
                       Error);
  CHECK_THROWS_WITH_AS(check_domination(Matrix::Identity(4, 4), form), doctest::Contains("DimensionMismatch"),
                       Error);
}

TEST_CASE("domination agrees with a brute-force pair search") {
  // independent oracle: sup over sampled (x, y) of σ(x,y)² / (4 μ(x,x) μ(y,y)) never exceeds ‖R‖²
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto g = random_instance(seed, 2, 2.0, 0.5);
    auto check = check_domination(g.gram(), g.form());
    double worst = 0.0;
    std::mt19937_64 rng(seed + 100);
    std::normal_distribution<double> normal;
    for (int k = 0; k < 20000; ++k) {
      Vector x = Vector::NullaryExpr(4, [&](Index) { return normal(rng); });
      Vector y = Vector::NullaryExpr(4, [&](Index) { return normal(rng); });
      const double sig = g.form()(x, y);
      worst = std::max(worst, sig * sig / (4.0 * g(x, x) * g(y, y)));
    }
    CHECK(worst <= check.norm * check.norm + 1e-12);
    CHECK(worst > 0.8 * check.norm * check.norm);
  }
}

TEST_CASE("polarizator 2x2 closed forms") {
  const auto form = canonical2();
  {
    auto g = DominatingProduct::make(0.5 * Matrix::Identity(2, 2), form);
    auto r = Polarizator::compute(g);
    CHECK((r.matrix() - form.matrix()).norm() < 1e-14);
    CHECK((r.modulus() - Matrix::Identity(2, 2)).norm() < 1e-14);
    CHECK((r.isometry() - form.matrix()).norm() < 1e-14);
  }
  {
    auto g = DominatingProduct::make(diag2(2.0, 0.5), form);
    auto r = Polarizator::compute(g);
    Matrix expected(2, 2);
    expected << 0, 0.25, -1, 0;
    CHECK((r.matrix() - expected).norm() < 1e-14);
    CHECK((r.modulus() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-14);
    CHECK(r.spectrum()(0) == doctest::Approx(0.5));
    CHECK(r.spectrum()(1) == doctest::Approx(0.5));
  }
}

TEST_CASE("polarizator invariants on random instances") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Index n = 1 + static_cast<Index>(seed % 20);
    auto g = random_instance(seed, n, 1.0 + 0.1 * static_cast<double>(seed % 7), 0.7);
    auto r = Polarizator::compute(g);
    const Matrix& gm = g.gram();
    const double scale = gm.norm() * r.matrix().norm();
    // σ(x,y) = 2 μ(x, R y)
    CHECK((2.0 * gm * r.matrix() - g.form().matrix()).norm() <= 1e-10 * g.form().matrix().norm());
    // μ-antisymmetry
    CHECK((gm * r.matrix() + r.matrix().transpose() * gm).norm() <= 1e-10 * scale);
    // R = U |R|
    CHECK((r.isometry() * r.modulus() - r.matrix()).norm() <= 1e-10 * r.matrix().norm());
    // |R| is μ-symmetric and non-negative, spectrum within [0, 1 + tol]
    CHECK((gm * r.modulus() - (gm * r.modulus()).transpose()).norm() <= 1e-10 * gm.norm());
    CHECK(r.spectrum().minCoeff() >= 0.0);
    CHECK(r.norm() <= 1.0 + 1e-12);
    // U commutes with continuous functions of |R|
    for (double s : {0.5, 1.0, 2.0, 3.7}) {
      Matrix f = r.modulus_power(s);
      CHECK((f * r.isometry() - r.isometry() * f).norm() <= 1e-10 * f.norm() * r.isometry().norm());
    }
    // (U* + U)|R| = 0 with U* the μ-adjoint
    Matrix u_star = gm.llt().solve(r.isometry().transpose() * gm);
    CHECK(((u_star + r.isometry()) * r.modulus()).norm() <= 1e-10 * r.modulus().norm() * r.isometry().norm());
  }
}

TEST_CASE("scaled_product 2x2 closed forms and conventions") {
  const auto form = canonical2();
  auto g = DominatingProduct::make(diag2(2.0, 0.5), form);
  CHECK(scaled_product(g, 0.0) == g.gram());
  CHECK((scaled_product(g, 1.0) - diag2(1.0, 0.25)).norm() < 1e-14);
  // |R| = ½ I ⇒ G_s = 2^{-s} G
  CHECK((scaled_product(g, 0.3) - std::pow(0.5, 0.3) * g.gram()).norm() < 1e-14);
  CHECK_THROWS_WITH_AS(scaled_product(g, -0.1), doctest::Contains("NegativeExponent"), Error);

  auto pure = DominatingProduct::make(0.5 * Matrix::Identity(2, 2), form);
  for (double s : {0.0, 0.25, 1.0, 1.75, 3.0}) {
    CHECK((scaled_product(pure, s) - pure.gram()).norm() < 1e-14);
  }
}

TEST_CASE("scaled_product reports non-primary input instead of regularizing") {
  // |R| = ½·10⁻⁹ I, below the classification tolerance
  const auto form = canonical2();
  auto g = DominatingProduct::make(diag2(1e9, 1e9), form);
  auto r = Polarizator::compute(g);
  CHECK(r.smallest() < 1e-8);
  CHECK(classify(r).tag == StateTag::NonPrimary);
  CHECK_NOTHROW(scaled_product(g, r, 0.0));
  CHECK_THROWS_WITH_AS(scaled_product(g, r, 0.5), doctest::Contains("SingularResult"), Error);
  CHECK_THROWS_WITH_AS(purify(g), doctest::Contains("NonPrimaryInput"), Error);
}

TEST_CASE("metric-frame consistency: Schur route vs generalized eigenproblem") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index n = 1 + static_cast<Index>(seed % 15);
    auto g = random_instance(seed, n, 1.5, 1.0);
    auto r = Polarizator::compute(g);
    for (double s : {0.25, 0.5, 1.0, 1.5, 2.0}) {
      CHECK(relative_frobenius(r.modulus_power(s), modulus_power_generalized(g, s)) <= 1e-10);
    }
  }
}

TEST_CASE("purify closed forms, idempotence and purity") {
  const auto form = canonical2();
  auto pure = DominatingProduct::make(0.5 * Matrix::Identity(2, 2), form);
  CHECK((purify(pure).gram() - pure.gram()).norm() < 1e-14);

  auto g = DominatingProduct::make(diag2(2.0, 0.5), form);
  auto tilde = purify(g);
  CHECK((tilde.gram() - diag2(1.0, 0.25)).norm() < 1e-14);
  auto rt = Polarizator::compute(tilde);
  CHECK((rt.matrix() * rt.matrix() + Matrix::Identity(2, 2)).norm() < 1e-13);

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto gs = random_instance(seed, 1 + static_cast<Index>(seed % 12), 2.0, 0.8);
    auto once = purify(gs);
    auto twice = purify(once);
    CHECK(relative_frobenius(twice.gram(), once.gram()) <= 1e-9);
    CHECK(classify(once).tag == StateTag::Pure);
  }
}

TEST_CASE("classify closed forms") {
  const auto form = canonical2();
  CHECK(classify(DominatingProduct::make(0.5 * Matrix::Identity(2, 2), form)).tag == StateTag::Pure);
  auto c = classify(DominatingProduct::make(diag2(2.0, 0.5), form));
  CHECK(c.tag == StateTag::PrimaryNotPure);
  CHECK(c.smallest_modulus == doctest::Approx(0.5));
  CHECK(c.involution_defect == doctest::Approx(0.75));  // R² = −¼ I

  // direct sums of scaled pure blocks: |R| = (1/c₁) I₂ ⊕ (1/c₂) I₂
  auto form4 = SymplecticForm::canonical(2);
  auto block = [&](double c1, double c2) {
    Matrix g = Matrix::Zero(4, 4);
    // canonical ordering (q1, q2, p1, p2): block 1 on (q1, p1), block 2 on (q2, p2)
    g(0, 0) = 0.5 * c1 * 3.0;
    g(2, 2) = 0.5 * c1 / 3.0;  // squeezed pure block scaled by c1
    g(1, 1) = 0.5 * c2 * 0.2;
    g(3, 3) = 0.5 * c2 / 0.2;
    return DominatingProduct::make(g, form4);
  };
  CHECK(classify(block(1.0, 1.0)).tag == StateTag::Pure);
  auto mixed = classify(block(1.0, 2.0));
  CHECK(mixed.tag == StateTag::PrimaryNotPure);
  CHECK(mixed.smallest_modulus == doctest::Approx(0.5));
  CHECK(classify(block(4.0, 2.0)).tag == StateTag::PrimaryNotPure);
}

TEST_CASE("saturation defect") {
  const auto form = canonical2();
  auto pure = DominatingProduct::make(0.5 * Matrix::Identity(2, 2), form);
  CHECK(std::abs(saturation_defect(pure, 50)) < 1e-14);

  auto g = DominatingProduct::make(diag2(2.0, 0.5), form);
  CHECK(saturation_defect_at(g, Vector::Unit(2, 0)) == doctest::Approx(1.5));
  CHECK(saturation_defect(g, 2) == doctest::Approx(1.5));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto gs = random_instance(seed, 3, 2.0, 1.0);
    CHECK(saturation_defect(gs, 30, seed) >= -1e-12);
    CHECK(saturation_defect(purify(gs), 30, seed) <= 1e-9 * gs.gram().norm());
    CHECK(std::abs(saturation_defect(random_instance(seed, 3, 2.0, 0.0), 30, seed)) <= 1e-10);
  }
  CHECK_THROWS_AS(saturation_defect(g, 0), Error);
}

TEST_CASE("random_instance contract") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Index n = 1 + static_cast<Index>(seed % 10);
    CHECK(classify(random_instance(seed, n, 3.0, 0.0)).tag == StateTag::Pure);
    CHECK(classify(random_instance(seed, n, 3.0, 1.0)).tag == StateTag::PrimaryNotPure);
  }
  auto a = random_instance(42, 7, 2.5, 0.3);
  auto b = random_instance(42, 7, 2.5, 0.3);
  CHECK((a.gram().array() == b.gram().array()).all());

  Matrix s = random_symplectic(3, 5, 4.0);
  auto j = SymplecticForm::canonical(5).matrix();
  CHECK((s.transpose() * j * s - j).norm() < 1e-12 * s.squaredNorm());
}

TEST_CASE("mu_s family: domination for s in [0,1] and invariance of the purification") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index n = 1 + static_cast<Index>(seed % 20);
    auto g = random_instance(seed, n, 2.0, 1.0);
    auto r = Polarizator::compute(g);
    const Matrix g1 = scaled_product(g, r, 1.0);
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const Matrix gs = scaled_product(g, r, s);
      CHECK(check_domination(gs, g.form()).dominates);
      if (s > 0.0 && s < 1.0) {
        auto ps = DominatingProduct::make(gs, g.form());
        CHECK(relative_frobenius(purify(ps).gram(), g1) <= 1e-9);
      }
    }
    // a primary product that is not pure loses domination beyond s = 1
    CHECK_FALSE(check_domination(scaled_product(g, r, 1.5), g.form()).dominates);
  }
}

TEST_CASE("mu_s rigidity on |R| = c I instances") {
  for (double c : {0.3, 0.6, 0.9, 1.0}) {
    auto pure = random_instance(7, 4, 2.0, 0.0);
    auto g = DominatingProduct::make(pure.gram() / c, pure.form());
    auto r = Polarizator::compute(g);
    CHECK(r.smallest() == doctest::Approx(c).epsilon(1e-10));
    CHECK(r.norm() == doctest::Approx(c).epsilon(1e-10));
    const Matrix g1 = scaled_product(g, r, 1.0);
    const bool unit = c == 1.0;
    for (double s : {0.25, 0.5, 0.75}) {
      auto gs = DominatingProduct::make(scaled_product(g, r, s), g.form());
      CHECK((classify(gs).tag == StateTag::Pure) == unit);
      CHECK((relative_frobenius(scaled_product(g, r, 0.5 * s), g1) <= 1e-9) == unit);
    }
    for (double s : {1.25, 2.0}) {
      CHECK(check_domination(scaled_product(g, r, s), g.form()).dominates == unit);
    }
  }
}
