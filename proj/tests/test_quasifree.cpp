#include <doctest.h>

#include <cmath>

#include "symplecta/quasifree.hpp"
#include "test_support.hpp"

using namespace symplecta;
using namespace std::complex_literals;
using symplecta::testing::canonical2;
using symplecta::testing::gaussian_matrix;
using symplecta::testing::gaussian_vector;

namespace {

QuasifreeState half_identity() {
  return QuasifreeState(DominatingProduct::make(0.5 * Matrix::Identity(2, 2), canonical2()));
}

Vector e(Index n, Index i) {
  Vector v = Vector::Zero(n);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("Weyl values") {
  const auto w = half_identity();
  CHECK(weyl_value(w, Vector::Zero(2)) == 1.0);
  CHECK(weyl_value(w, e(2, 0)) == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));
  const Vector phi = (Vector(2) << 0.3, -0.8).finished();
  double previous = 1.0;
  for (double t : {0.5, 1.0, 2.0, 4.0}) {
    const double v = weyl_value(w, t * phi);
    CHECK(v < previous);
    previous = v;
  }
}

TEST_CASE("Weyl product values") {
  const auto state = QuasifreeState(random_instance(3, 2, 2.0, 0.4));
  std::mt19937_64 rng(8);
  const Vector phi = gaussian_vector(rng, 4), psi = gaussian_vector(rng, 4);
  CHECK(std::abs(weyl_product_value(state, phi, psi, 0.0, 0.7) - weyl_value(state, 0.7 * psi)) < 1e-15);
  const auto same = weyl_product_value(state, phi, phi, 0.4, -0.9);
  CHECK(std::abs(same.imag()) < 1e-15);
  for (int i = 0; i < 10; ++i) {
    CHECK(std::abs(weyl_product_value(state, phi, psi, 0.3 * i, -0.2 * i)) <= 1.0);
  }
  // CCR: W(φ)W(ψ) = e^{−iσ(φ,ψ)} W(ψ)W(φ) in expectation
  const auto ab = weyl_product_value(state, phi, psi, 1.0, 1.0);
  const auto ba = weyl_product_value(state, psi, phi, 1.0, 1.0);
  CHECK(std::abs(ab - std::exp(-1i * state.form()(phi, psi)) * ba) < 1e-14);
}

TEST_CASE("recover_mu round trip") {
  const auto w = half_identity();
  CHECK(recover_mu(w, e(2, 0), e(2, 0), 1e-3) == doctest::Approx(0.5).epsilon(1e-6));
  const auto d = mixed_derivative(w, e(2, 0), e(2, 1), 1e-3);
  CHECK(std::abs(d.real()) < 1e-6);          // μ(e₁, e₂) = 0
  CHECK(d.imag() == doctest::Approx(-0.5).epsilon(1e-6));  // −σ(e₁,e₂)/2

  // μ-orthogonal, σ-orthogonal pair on R⁴
  const auto g4 = QuasifreeState(DominatingProduct::make(0.5 * Matrix::Identity(4, 4), SymplecticForm::canonical(2)));
  CHECK(std::abs(recover_mu(g4, e(4, 0), e(4, 1), 1e-3)) < 1e-9);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto state = QuasifreeState(random_instance(seed, 3, 2.0, 0.6));
    std::mt19937_64 rng(seed);
    const Vector phi = gaussian_vector(rng, 6), psi = gaussian_vector(rng, 6);
    const auto dd = mixed_derivative(state, phi, psi, 1e-3);
    CHECK(std::abs(-dd.real() - state.product()(phi, psi)) < 1e-6);
    CHECK(std::abs(dd.imag() + 0.5 * state.form()(phi, psi)) < 1e-6);
  }
  CHECK_THROWS_WITH_AS(recover_mu(w, e(2, 0), e(2, 0), 1e-6), doctest::Contains("StepOutOfRange"), Error);
  CHECK_THROWS_WITH_AS(recover_mu(w, e(2, 0), e(2, 0), 0.1), doctest::Contains("StepOutOfRange"), Error);
}

TEST_CASE("one-particle structure on ½I") {
  const auto op = OneParticleStructure::make(half_identity());
  Matrix minus_j(2, 2);
  minus_j << 0, -1, 1, 0;
  CHECK((op.complex_structure() - minus_j).norm() < 1e-14);
  CHECK(std::abs(op.inner(e(2, 0), e(2, 0)) - 0.5) < 1e-14);
  CHECK(std::abs(op.inner(e(2, 0), e(2, 1)) - 0.5i) < 1e-14);
}

TEST_CASE("one-particle structure: inner-product identity, sesquilinearity, positivity") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Index n = 1 + static_cast<Index>(seed % 4);
    const auto state = QuasifreeState(random_instance(seed, n, 3.0, 0.0));
    const auto op = OneParticleStructure::make(state);
    const Matrix& jc = op.complex_structure();
    const Index d = 2 * n;
    CHECK((jc * jc + Matrix::Identity(d, d)).norm() < 1e-10);
    const Matrix& g = state.product().gram();
    const Matrix& j = state.form().matrix();
    CHECK((jc.transpose() * g * jc - g).norm() < 1e-10 * g.norm());
    CHECK((jc.transpose() * j * jc - j).norm() < 1e-10 * j.norm());
    for (Index a = 0; a < d; ++a) {
      for (Index b = 0; b < d; ++b) {
        CHECK(std::abs(op.inner(e(d, a), e(d, b)) - op.lambda(e(d, a), e(d, b))) < 1e-10);
      }
    }
    std::mt19937_64 rng(seed);
    const Vector x = gaussian_vector(rng, d), y = gaussian_vector(rng, d);
    CHECK(std::abs(op.inner(x, jc * y) - 1i * op.inner(x, y)) < 1e-10);
    CHECK(std::abs(op.inner(jc * x, y) + 1i * op.inner(x, y)) < 1e-10);
    CHECK(op.inner(x, x).real() == doctest::Approx(state.product()(x, x)).epsilon(1e-10));
    CHECK(op.inner(x, x).real() > 0.0);
  }
  CHECK_THROWS_WITH_AS(OneParticleStructure::make(QuasifreeState(random_instance(1, 2, 2.0, 1.0))),
                       doctest::Contains("NotPure"), Error);
}

TEST_CASE("symplectic complements") {
  const auto g = DominatingProduct::make(0.5 * Matrix::Identity(2, 2), canonical2());
  const Matrix line = symplectic_complement(g, e(2, 0));
  REQUIRE(line.cols() == 1);
  CHECK(std::abs(line(1, 0)) < 1e-14);
  CHECK(g(line.col(0), line.col(0)) == doctest::Approx(1.0));
  CHECK(symplectic_complement(g, Matrix::Identity(2, 2)).cols() == 0);
  CHECK(symplectic_complement(g, Matrix(2, 0)).cols() == 2);

  std::mt19937_64 rng(12);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto gg = random_instance(seed, 4, 2.0, 0.3);
    const Index k = 1 + static_cast<Index>(seed % 7);
    const Matrix f = gaussian_matrix(rng, 8, k);
    const Matrix fv = symplectic_complement(gg, f);
    CHECK(fv.cols() + k == 8);
    CHECK((f.transpose() * gg.form().matrix() * fv).norm() < 1e-10 * f.norm());
    const Matrix fvv = symplectic_complement(gg, fv);
    CHECK(fvv.cols() == k);
    CHECK(intersection_dim(f, fvv) == k);
  }
}

TEST_CASE("local probes on the ultrastatic vacuum") {
  const auto m = build_lattice(16, 0.4);
  const auto vac = QuasifreeState(ultrastatic_vacuum_gram(m));
  Region half;
  for (Index i = 0; i < 8; ++i) half.push_back(i);
  const auto rep = local_probe(m, vac, half);
  CHECK(rep.intersection_rank == 0);
  CHECK(rep.subspace_dim == 16);
  CHECK(rep.complement_dim == 16);
  CHECK(rep.duality_gap < 1e-8);
  CHECK(rep.min_principal_angle > 0.0);
  CHECK(rep.min_principal_angle < std::acos(0.0));

  Region all;
  for (Index i = 0; i < 16; ++i) all.push_back(i);
  CHECK_THROWS_WITH_AS(local_probe(m, vac, all), doctest::Contains("FullRegion"), Error);
  CHECK_THROWS_WITH_AS(local_probe(m, vac, {}), doctest::Contains("EmptyRegion"), Error);
  CHECK_THROWS_WITH_AS(local_probe(m, QuasifreeState(energy_gram(m)), half), doctest::Contains("NotPure"), Error);
}
