#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hill/errors.hpp"
#include "hill/floquet.hpp"
#include "hill/ode.hpp"
#include "hill/witness.hpp"
#include "oracles.hpp"

using namespace hill;
using oracle::pi;

namespace {

// Classical RK4 with a fixed fine step; independent of the library integrator.
double rk4_discriminant(const Expression& a, double period, double mu, int steps = 20000) {
  const double h = period / steps;
  double sum = 0.0;
  for (int col = 0; col < 2; ++col) {
    double u = col == 0 ? 1.0 : 0.0;
    double v = col == 0 ? 0.0 : 1.0;
    for (int i = 0; i < steps; ++i) {
      const double x = i * h;
      const auto f = [&](double xx, double uu) { return -(mu + a.eval(xx)) * uu; };
      const double k1u = v, k1v = f(x, u);
      const double k2u = v + 0.5 * h * k1v, k2v = f(x + 0.5 * h, u + 0.5 * h * k1u);
      const double k3u = v + 0.5 * h * k2v, k3v = f(x + 0.5 * h, u + 0.5 * h * k2u);
      const double k4u = v + h * k3v, k4v = f(x + h, u + h * k3u);
      u += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
      v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
    sum += col == 0 ? u : v;
  }
  return sum;
}

PeriodicCoefficient random_steps(std::mt19937_64& rng, double period, int pieces, double lo, double hi) {
  std::uniform_real_distribution<double> cut(0.05 * period, 0.95 * period);
  std::uniform_real_distribution<double> val(lo, hi);
  std::vector<double> cuts;
  for (int i = 0; i + 1 < pieces; ++i) cuts.push_back(cut(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> values;
  for (int i = 0; i < pieces; ++i) values.push_back(val(rng));
  return oracle::steps(period, cuts, values);
}

}  // namespace

TEST_CASE("monodromy closed forms") {
  const TransferMatrix m = monodromy(PeriodicCoefficient::constant(0.0, 2 * pi), 1.0);
  CHECK(m.m11 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(m.m12) < 1e-10);
  CHECK(std::abs(m.m21) < 1e-10);
  CHECK(m.m22 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(discriminant(PeriodicCoefficient::constant(1.0, 2 * pi), 0.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(discriminant(PeriodicCoefficient::constant(0.0, 1.0), -1.0) == doctest::Approx(2 * std::cosh(1.0)).epsilon(1e-12));
  CHECK(discriminant(PeriodicCoefficient::constant(0.0, 1.0), -25.0) == doctest::Approx(2 * std::cosh(5.0)).epsilon(1e-12));
  CHECK(discriminant(PeriodicCoefficient::constant(0.0, 2 * pi), 0.25) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(discriminant(PeriodicCoefficient::constant(0.0, 2 * pi), 0.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(discriminant(PeriodicCoefficient::constant(3.0, 2 * pi), -3.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("analytic pieces agree with a fixed-step reference integrator") {
  const Expression e = Expression::parse("0.5 + 0.3*cos(x) + 0.1*sin(2*x)");
  const PeriodicCoefficient a(2 * pi, {Piece{0.0, 2 * pi, e}});
  for (double mu : {-1.0, 0.0, 0.7, 3.3}) {
    CHECK(discriminant(a, mu) == doctest::Approx(rk4_discriminant(e, 2 * pi, mu)).epsilon(1e-9));
  }
}

TEST_CASE("Wronskian and composition") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> mus(-5, 20);
  for (int t = 0; t < 20; ++t) {
    const PeriodicCoefficient steps = random_steps(rng, 2 * pi, 3, -2, 6);
    const PeriodicCoefficient smooth(2 * pi, {Piece{0.0, 1.0, Expression::constant(mus(rng) / 4)},
                                              Piece{1.0, 2 * pi, Expression::parse("1 + 0.5*sin(x)^2")}});
    for (int k = 0; k < 5; ++k) {
      const double mu = mus(rng);
      for (const PeriodicCoefficient* a : {&steps, &smooth}) {
        const TransferMatrix m = monodromy(*a, mu);
        CHECK(std::abs(m.det() - 1.0) <= 1e-8 * std::max(1.0, std::abs(m.m11 * m.m22)));
        const Propagator p(*a, mu);
        const TransferMatrix prod = p.transfer(2.0, 2 * pi) * p.transfer(0.5, 2.0) * p.transfer(0.0, 0.5);
        const double scale = std::max({1.0, std::abs(m.m11), std::abs(m.m22), std::abs(m.m12), std::abs(m.m21)});
        CHECK(std::abs(prod.m11 - m.m11) <= 1e-9 * scale);
        CHECK(std::abs(prod.m12 - m.m12) <= 1e-9 * scale);
        CHECK(std::abs(prod.m21 - m.m21) <= 1e-9 * scale);
        CHECK(std::abs(prod.m22 - m.m22) <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("step potentials agree with the independent matrix product") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> mus(-3, 30);
  for (int t = 0; t < 30; ++t) {
    std::uniform_real_distribution<double> cut(0.1, 6.0);
    std::vector<double> cuts{cut(rng), cut(rng)};
    std::sort(cuts.begin(), cuts.end());
    const std::vector<double> values{mus(rng) / 3, mus(rng) / 3, mus(rng) / 3};
    const PeriodicCoefficient a = oracle::steps(2 * pi, cuts, values);
    const double mu = mus(rng);
    const double ref = oracle::step_discriminant(oracle::as_steps(2 * pi, cuts, values), mu);
    CHECK(discriminant(a, mu) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("zero coefficient spectrum") {
  const auto zero = PeriodicCoefficient::constant(0.0, 2 * pi);
  const SpectrumSlice s = spectrum(zero, 7, 6);
  const std::vector<double> per{0, 1, 1, 4, 4, 9, 9};
  const std::vector<double> anti{0.25, 0.25, 2.25, 2.25, 6.25, 6.25};
  REQUIRE(s.periodic.size() == 7);
  REQUIRE(s.antiperiodic.size() == 6);
  for (int k = 0; k < 7; ++k) {
    CHECK(s.periodic[k].index == k);
    CHECK(std::abs(s.periodic[k].value - per[k]) < 1e-8);
    CHECK(s.periodic[k].multiplicity == (k == 0 ? 1 : 2));
  }
  for (int k = 0; k < 6; ++k) {
    CHECK(s.antiperiodic[k].index == k + 1);
    CHECK(std::abs(s.antiperiodic[k].value - anti[k]) < 1e-8);
    CHECK(s.antiperiodic[k].multiplicity == 2);
  }
  CHECK(check_interlacing(s).ok);
}

TEST_CASE("constant shift covariance") {
  const SpectrumSlice zero = spectrum(PeriodicCoefficient::constant(0.0, 2 * pi), 7, 6);
  const SpectrumSlice c = spectrum(PeriodicCoefficient::constant(2.5, 2 * pi), 7, 6);
  for (int k = 0; k < 7; ++k) CHECK(std::abs(c.periodic[k].value - (zero.periodic[k].value - 2.5)) < 1e-8);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(c.antiperiodic[k].value - (zero.antiperiodic[k].value - 2.5)) < 1e-8);
}

TEST_CASE("eigenvalues of random step potentials solve the reference discriminant") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 10; ++t) {
    std::uniform_real_distribution<double> cut(0.2, 6.0);
    std::uniform_real_distribution<double> val(0.0, 5.0);
    std::vector<double> cuts{cut(rng), cut(rng)};
    std::sort(cuts.begin(), cuts.end());
    const std::vector<double> values{val(rng), val(rng), val(rng)};
    const PeriodicCoefficient a = oracle::steps(2 * pi, cuts, values);
    const auto st = oracle::as_steps(2 * pi, cuts, values);
    const auto disc = [&](double mu) { return oracle::step_discriminant(st, mu); };
    const SpectrumSlice s = spectrum(a, 7, 6);
    for (const Eigenvalue& e : s.periodic) CHECK(std::abs(disc(e.value) - 2.0) < 1e-7);
    for (const Eigenvalue& e : s.antiperiodic) CHECK(std::abs(disc(e.value) + 2.0) < 1e-7);
    // Simple roots found by a dense independent scan must appear in the lists.
    const double hi = s.periodic.back().value - 0.01;
    for (double r : oracle::scan_roots(disc, 2.0, s.periodic.front().value - 1.0, hi, 4000)) {
      double best = 1e9;
      for (const Eigenvalue& e : s.periodic) best = std::min(best, std::abs(e.value - r));
      CHECK(best < 1e-8);
    }
    CHECK(check_interlacing(s).ok);
  }
}

TEST_CASE("shift invariance of the spectrum") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> rs(-10, 10);
  const PeriodicCoefficient a = random_steps(rng, 2 * pi, 3, 0, 5);
  const SpectrumSlice s = spectrum(a, 5, 4);
  for (int t = 0; t < 3; ++t) {
    const SpectrumSlice r = spectrum(shift(a, rs(rng)), 5, 4);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(r.periodic[k].value - s.periodic[k].value) < 1e-7);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(r.antiperiodic[k].value - s.antiperiodic[k].value) < 1e-7);
  }
}

TEST_CASE("witness and two-step spectra") {
  const PeriodicCoefficient a = make_a_eps(1, 2 * pi, 0.01);
  const SpectrumSlice s = periodic_eigenvalues(a, 6);
  double best = 1e9;
  for (const Eigenvalue& e : s.periodic) best = std::min(best, std::abs(e.value));
  CHECK(best <= 1e-6);
  const TwoStepPotential w = make_two_step(pi / 3, pi / 4);
  const SpectrumSlice t = antiperiodic_eigenvalues(w.a, 4);
  best = 1e9;
  for (const Eigenvalue& e : t.antiperiodic) best = std::min(best, std::abs(e.value));
  CHECK(best <= 1e-6);
}

TEST_CASE("classification") {
  const auto zero = PeriodicCoefficient::constant(0.0, 2 * pi);
  StabilityVerdict v = classify(zero, 0.5);
  CHECK(v.kind == Stability::Stable);
  CHECK(v.discriminant == doctest::Approx(2 * std::cos(2 * pi * std::sqrt(0.5))));
  REQUIRE(v.lower.has_value());
  REQUIRE(v.upper.has_value());
  CHECK(*v.lower == doctest::Approx(0.25));
  CHECK(*v.upper == doctest::Approx(1.0));
  CHECK(classify(zero, -1.0).kind == Stability::Unstable);
  CHECK(classify(zero, 0.25).kind == Stability::BoundaryStable);
  CHECK(classify(zero, 0.0).kind == Stability::BoundaryUnstable);
  // An open gap: edges are unstable boundaries.
  const PeriodicCoefficient a = oracle::steps(2 * pi, {2.0}, {3.0, 0.0});
  SpectrumSolver solver(a);
  const auto [lo, hi] = solver.gap(1);
  REQUIRE(hi - lo > 1e-3);
  CHECK(classify(a, lo).kind == Stability::BoundaryUnstable);
  CHECK(classify(a, 0.5 * (lo + hi)).kind == Stability::Unstable);
  CHECK(classify(a, hi + 1e-3).kind == Stability::Stable);
}

TEST_CASE("interlacing violations are located") {
  SpectrumSlice s = spectrum(PeriodicCoefficient::constant(0.0, 2 * pi), 5, 4);
  std::swap(s.antiperiodic[0].value, s.periodic[1].value);
  const InterlacingReport r = check_interlacing(s);
  CHECK_FALSE(r.ok);
  REQUIRE(r.violation.has_value());
  CHECK(*r.violation <= 2);
}

TEST_CASE("eigenfunctions") {
  const SampledSolution s = eigenfunction(PeriodicCoefficient::constant(4.0, 2 * pi), 0.0, Boundary::Periodic);
  REQUIRE(s.x.size() == 4097);
  for (std::size_t j = 0; j < s.x.size(); j += 64) CHECK(std::abs(s.u[j] - 0.5 * std::sin(2 * s.x[j])) < 1e-9);
  const SampledSolution h = eigenfunction(PeriodicCoefficient::constant(0.25, 2 * pi), 0.0, Boundary::Antiperiodic);
  for (std::size_t j = 0; j < h.x.size(); j += 64) CHECK(std::abs(h.u[j] - 2 * std::sin(h.x[j] / 2)) < 1e-9);
  CHECK_THROWS_AS(eigenfunction(PeriodicCoefficient::constant(0.3, 2 * pi), 0.0, Boundary::Periodic), NotAnEigenvalue);

  // Residual of the equation on the samples of a non-constant eigenfunction.
  const PeriodicCoefficient a = make_a_eps(1, 2 * pi, 0.05);
  const SampledSolution e = eigenfunction(a, 0.0, Boundary::Periodic, true);
  CHECK(e.u.front() == 0.0);
  CHECK(e.du.front() == 1.0);
  const PeriodicCoefficient sh = shift(a, e.shift);
  const double step = e.x[1] - e.x[0];
  double worst = 0.0;
  for (std::size_t j = 2; j + 2 < e.x.size(); ++j) {
    // Fourth-order stencil, kept inside one piece.
    const std::size_t piece = sh.piece_at(sh.reduce(e.x[j]));
    bool inside = true;
    for (std::size_t k = j - 2; k <= j + 2; ++k) inside = inside && sh.piece_at(sh.reduce(e.x[k])) == piece;
    if (!inside || sh.is_removable(sh.reduce(e.x[j]))) continue;
    const double dd = (-e.du[j + 2] + 8 * e.du[j + 1] - 8 * e.du[j - 1] + e.du[j - 2]) / (12 * step);
    worst = std::max(worst, std::abs(dd + sh.eval(e.x[j]) * e.u[j]));
  }
  CHECK(worst < 1e-4);
}
