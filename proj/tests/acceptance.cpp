// Acceptance suite: one PASS/FAIL line per criterion, each with its pinned
// tolerance and wall-clock budget. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "symplecta/continuity.hpp"
#include "symplecta/gallery.hpp"
#include "symplecta/lattice.hpp"
#include "symplecta/quasifree.hpp"

using namespace symplecta;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Matrix gaussian(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal;
  return Matrix::NullaryExpr(rows, cols, [&](Index, Index) { return normal(rng); });
}

Index draw(std::mt19937_64& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

double draw(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome relative_continuity_suite() {
  std::mt19937_64 rng(101);
  int violations = 0;
  double worst = -INFINITY;
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = draw(rng, Index{1}, Index{20});
    const auto g = random_instance(rng(), n, draw(rng, 1.5, 4.0), draw(rng, 0.0, 1.0));
    const Matrix v = gaussian(rng, 2 * n, 2 * n) / std::sqrt(2.0 * n);
    const auto rep = verify_relative_continuity(AdjointPair::of(v, g.form()), g, default_s_grid());
    for (std::size_t k = 0; k < rep.s_grid.size(); ++k) {
      for (double excess : {rep.norm_v[k] - rep.bound_v[k], rep.norm_w[k] - rep.bound_w[k]}) {
        worst = std::max(worst, excess);
        if (excess > 1e-9) ++violations;
      }
    }
  }
  return {violations == 0, "violations=" + std::to_string(violations) + " max excess=" + sci(worst) + " (tol 1e-9)"};
}

Outcome scaled_product_suite() {
  std::mt19937_64 rng(202);
  int dom_fail = 0;
  double purify_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = draw(rng, Index{1}, Index{20});
    const auto g = random_instance(rng(), n, draw(rng, 1.5, 4.0), draw(rng, 0.05, 1.0));
    const Polarizator pol = Polarizator::compute(g);
    if (classify(pol).tag == StateTag::NonPrimary) ++dom_fail;
    const Matrix g1 = scaled_product(g, pol, 1.0);
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const Matrix gs = scaled_product(g, pol, s);
      if (!check_domination(gs, g.form()).dominates) {
        ++dom_fail;
        continue;
      }
      purify_err = std::max(purify_err, relative_frobenius(purify(DominatingProduct::make(gs, g.form())).gram(), g1));
    }
  }
  // |R| = κ·I through G = (1/κ)·½SᵀS
  int rigidity_fail = 0;
  for (double kappa : {0.3, 0.6, 0.9, 1.0}) {
    for (Index n = 1; n <= 4; ++n) {
      const auto form = SymplecticForm::canonical(n);
      const Matrix s = random_symplectic(rng(), n, 2.5);
      const auto g = DominatingProduct::make((0.5 / kappa) * s.transpose() * s, form);
      const Polarizator pol = Polarizator::compute(g);
      const bool unit = kappa == 1.0;
      for (double below : {0.25, 0.5, 0.75}) {
        const bool pure = classify(DominatingProduct::make(scaled_product(g, pol, below), form)).tag == StateTag::Pure;
        if (pure != unit) ++rigidity_fail;
      }
      for (double above : {1.25, 1.5, 2.0}) {
        if (check_domination(scaled_product(g, pol, above), form).dominates != unit) ++rigidity_fail;
      }
    }
  }
  return {dom_fail == 0 && purify_err <= 1e-9 && rigidity_fail == 0,
          "domination failures=" + std::to_string(dom_fail) + " purification error=" + sci(purify_err) +
              " (tol 1e-9) rigidity mismatches=" + std::to_string(rigidity_fail)};
}

Outcome vacuum_suite() {
  double worst = 0.0;
  for (Index n : {64, 128, 256}) {
    const auto model = build_lattice(n, 8.0 / n);
    worst = std::max(worst, relative_frobenius(purify(energy_gram(model)).gram(), ultrastatic_vacuum_gram(model).gram()));
  }
  return {worst <= 1e-9, "max relative Frobenius=" + sci(worst) + " (tol 1e-9)"};
}

Outcome cutoff_evolution_suite() {
  const std::vector<double> taus{0.0, 0.25, 0.5, 0.75, 1.0};
  double excess = -INFINITY, identity = 0.0, flat_norm = 0.0, flat_excess = -INFINITY;
  for (Index n : {64, 128}) {
    const double h = 8.0 / n;
    Region region;
    for (Index i = n / 4; i < n / 2; ++i) region.push_back(i);
    Vector bump(n);
    for (Index i = 0; i < n; ++i) bump(i) = 1.0 + 15.0 * std::pow(std::sin(std::numbers::pi * i / n), 2);
    const std::vector<LatticeModel> models{
        build_lattice(n, h, {{0.0, Vector::Constant(n, 1.0)}, {0.5, Vector::Constant(n, 4.0)},
                             {1.0, Vector::Constant(n, 16.0)}}),
        build_lattice(n, h, {{0.0, Vector::Constant(n, 1.0)}, {0.4, bump}, {1.1, Vector::Constant(n, 2.0)}})};
    for (const auto& m : models) {
      const auto rep = local_continuity_report(m, 0.0, 1.5, taus, region);
      excess = std::max(excess, rep.max_excess);
      identity = std::max(identity, rep.max_identity_residual);
    }
    const auto flat = local_continuity_report(build_lattice(n, h), 0.0, 1.5, taus, region);
    flat_norm = std::max(flat_norm, flat.max_norm);
    flat_excess = std::max(flat_excess, flat.max_excess);
    identity = std::max(identity, flat.max_identity_residual);
  }
  return {excess <= 1e-8 && flat_excess <= 1e-8 && flat_norm <= 1.0 + 1e-9 && identity <= 1e-9,
          "max excess=" + sci(excess) + " constant-potential excess=" + sci(flat_excess) + " (tol 1e-8)" +
              " constant-potential max norm=" + sci(flat_norm) + " (<= 1 + 1e-9) scaled identity=" + sci(identity)};
}

Outcome phase_multiplier_suite() {
  const auto sc = build_phase_multiplier(2047, 16.0);
  std::vector<double> translates;
  for (int n = 4; n <= 12; ++n) translates.push_back(n);
  const auto curve = phase_multiplier_growth(sc, 1.0, translates);
  double invariance = 0.0;
  for (const auto& p : curve) invariance = std::max(invariance, std::abs(p.other_image - p.other) / p.other);
  const double slope = loglog_slope(curve);
  return {std::abs(slope - 2.0) <= 0.2 && invariance <= 1e-12,
          "slope=" + sci(slope) + " (2 +/- 0.2) purified-norm drift=" + sci(invariance) + " (tol 1e-12)"};
}

Outcome mode_swap_suite() {
  double iso = 0.0, ratio_err = 0.0;
  std::vector<double> peaks;
  for (Index n : {128, 256}) {
    const auto sc = build_mode_swap(n, 4.0);
    const Matrix g(sc.g_mu), t(sc.t);
    iso = std::max(iso, relative_frobenius(t.transpose() * g * t, g));
    double peak = 0.0;
    for (const auto& w : mode_swap_witness(sc)) {
      ratio_err = std::max(ratio_err, std::abs(w.ratio - w.lambda) / w.lambda);
      peak = std::max(peak, w.ratio);
    }
    peaks.push_back(peak);
  }
  const double growth = peaks[1] / peaks[0];
  return {iso <= 1e-10 && ratio_err <= 1e-8 && growth >= 3.0,
          "isometry defect=" + sci(iso) + " (tol 1e-10) ratio vs lambda_k=" + sci(ratio_err) +
              " (tol 1e-8) growth on doubling=" + sci(growth) + " (>= 3)"};
}

Outcome interpolation_suite() {
  std::mt19937_64 rng(707);
  const std::vector<double> taus{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  int violations = 0;
  double worst = -INFINITY;
  for (int trial = 0; trial < 500; ++trial) {
    const Index m = draw(rng, Index{1}, Index{60}), k = draw(rng, Index{1}, Index{60});
    const Matrix bx = gaussian(rng, m, m), by = gaussian(rng, k, k);
    const Matrix x = bx * bx.transpose() / double(m) + 0.05 * Matrix::Identity(m, m);
    const Matrix y = by * by.transpose() / double(k) + 0.05 * Matrix::Identity(k, k);
    const auto rep = check_interpolation(x, y, gaussian(rng, m, k), taus);
    for (std::size_t j = 0; j < taus.size(); ++j) {
      const double excess = rep.measured[j] - rep.bound[j];
      worst = std::max(worst, excess);
      if (excess > 1e-9) ++violations;
    }
  }
  return {violations == 0, "violations=" + std::to_string(violations) + " max excess=" + sci(worst) + " (tol 1e-9)"};
}

Outcome quasifree_suite() {
  std::mt19937_64 rng(808);
  double recover = 0.0, condition = 0.0;
  int involution_fail = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = draw(rng, Index{1}, Index{6});
    const Index d = 2 * n;
    const QuasifreeState mixed(random_instance(rng(), n, draw(rng, 1.2, 2.5), draw(rng, 0.0, 0.6)));
    const Index a = draw(rng, Index{0}, d - 1), b = draw(rng, Index{0}, d - 1);
    recover = std::max(recover, std::abs(recover_mu(mixed, Vector::Unit(d, a), Vector::Unit(d, b), 1e-3) -
                                         mixed.product().gram()(a, b)));

    const QuasifreeState pure(random_instance(rng(), n, draw(rng, 1.2, 2.5), 0.0));
    const auto ops = OneParticleStructure::make(pure);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        condition = std::max(condition, std::abs(ops.inner(Vector::Unit(d, i), Vector::Unit(d, j)) -
                                                 ops.lambda(Vector::Unit(d, i), Vector::Unit(d, j))));
      }
    }
    const Index k = draw(rng, Index{1}, d);
    const Matrix f = gaussian(rng, d, k);
    const Matrix fvv = symplectic_complement(ops, symplectic_complement(ops, f));
    if (fvv.cols() != k || intersection_dim(fvv, f) != k) ++involution_fail;
  }
  return {recover <= 1e-6 && condition <= 1e-10 && involution_fail == 0,
          "recover_mu error=" + sci(recover) + " (tol 1e-6) inner-product identity error=" + sci(condition) +
              " (tol 1e-10) involution mismatches=" + std::to_string(involution_fail)};
}

Outcome local_probe_suite() {
  Index worst_rank = 0;
  double gap = 0.0;
  std::size_t arcs = 0;
  for (Index n : {16, 32, 64}) {
    const auto model = build_lattice(n, 8.0 / n);
    const QuasifreeState vacuum(ultrastatic_vacuum_gram(model));
    const LocalProber prober(model, vacuum);
    for (Index start = 0; start < n; ++start) {
      for (Index len = 1; len < n; ++len) {
        Region r;
        for (Index k = 0; k < len; ++k) r.push_back((start + k) % n);
        const auto rep = prober.probe(r, false);
        worst_rank = std::max(worst_rank, rep.intersection_rank);
        gap = std::max(gap, rep.duality_gap);
        ++arcs;
      }
    }
  }
  return {worst_rank == 0, "arcs=" + std::to_string(arcs) + " max intersection rank=" + std::to_string(worst_rank) +
                               " (soft) max duality gap=" + sci(gap)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    double budget;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"relative continuity bound on 500 adjoint pairs", 60, relative_continuity_suite},
      {"scaled products: domination, purification, rigidity", 30, scaled_product_suite},
      {"purified energy product equals the ultrastatic vacuum", 60, vacuum_suite},
      {"cutoff evolutions in H_tau + H_(tau-1)", 120, cutoff_evolution_suite},
      {"phase multiplier: quadratic growth, purified isometry", 30, phase_multiplier_suite},
      {"mode swap: isometry and unbounded mu'-ratio", 30, mode_swap_suite},
      {"interpolation inequality on 500 triples", 60, interpolation_suite},
      {"quasifree round trip", 30, quasifree_suite},
      {"local probes on every proper arc", 30, local_probe_suite},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = out.pass && secs < c.budget;
    if (!pass) ++failed;
    std::printf("%s  %s: %s; %.1f s (budget %.0f s)\n", pass ? "PASS" : "FAIL", c.label, out.detail.c_str(), secs,
                c.budget);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
