#include <doctest.h>

#include <cmath>
#include <random>

#include "hill/errors.hpp"
#include "hill/floquet.hpp"
#include "hill/lyapunov.hpp"
#include "hill/witness.hpp"
#include "oracles.hpp"

using namespace hill;
using oracle::pi;

TEST_CASE("layer solution shape") {
  for (int n : {1, 2, 3}) {
    const double T = 2 * pi;
    const double eps = 0.5 * max_witness_eps(n, T);
    const PeriodicCoefficient u = make_u_eps(n, T, eps);
    const auto& ps = u.pieces();
    CHECK(std::abs(ps.front().expr.derivative().eval(0.0)) < 1e-12);
    // Value, slope and curvature are continuous at every seam.
    for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
      const double x = ps[i].to;
      Expression l = ps[i].expr, r = ps[i + 1].expr;
      for (int d = 0; d <= 2; ++d) {
        CHECK(std::abs(l.eval(x) - r.eval(x)) < 1e-9);
        l = l.derivative();
        r = r.derivative();
      }
    }
    // Period wrap.
    CHECK(std::abs(ps.back().expr.eval(T) - ps.front().expr.eval(0.0)) < 1e-12);
  }
  CHECK_THROWS_AS(make_u_eps(1, 2 * pi, 0.0), DomainError);
  CHECK_THROWS_AS(make_a_eps(1, 2 * pi, max_witness_eps(1, 2 * pi)), DomainError);
  CHECK_THROWS_AS(make_a_eps(0, 2 * pi, 0.1), DomainError);
}

TEST_CASE("layer coefficient") {
  const int n = 2;
  const double T = 2 * pi;
  const double eps = 0.05;
  const WitnessFamilyEps w = make_witness(n, T, eps);
  const double lam = lambda_const(n, T);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> xs(0.0, T);
  for (int t = 0; t < 2000; ++t) {
    const double x = xs(rng);
    const std::size_t i = w.a.piece_at(x);
    const Piece& p = w.a.pieces()[i];
    if (p.to - p.from > 2 * eps) {
      if (!w.a.is_removable(x)) CHECK(w.a.eval(x) == doctest::Approx(lam));
    } else {
      CHECK(w.a.eval(x) > lam);
    }
    // a u + u'' = 0 away from the quarter points.
    const std::size_t j = w.u.piece_at(x);
    const Expression& ue = w.u.pieces()[j].expr;
    const double uv = ue.eval(x);
    if (std::abs(uv) > 1e-3) CHECK(std::abs(ue.derivative().derivative().eval(x) + w.a.eval(x) * uv) < 1e-8);
  }
  CHECK(std::abs(discriminant(w.a, 0.0) - 2.0) < 1e-7);
  CHECK(dominates(w.a, lam).strict_on_positive_measure);
}

TEST_CASE("tightness sweep") {
  const std::vector<double> eps{0.2, 0.1, 0.03, 0.01, 0.003, 0.001};
  for (int n : {1, 2}) {
    const auto rows = tightness_sweep(n, 2 * pi, eps);
    REQUIRE(rows.size() == eps.size());
    const double beta = beta1(n, 2 * pi);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].second > beta);
      if (i > 0) CHECK(rows[i].second < rows[i - 1].second);
    }
    CHECK(rows.back().second == doctest::Approx(beta).epsilon(5e-3));
  }
  CHECK_THROWS_AS(tightness_sweep(1, 2 * pi, {0.1, 0.2}), DomainError);
}

TEST_CASE("two-step determinants") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> al(0.05, pi - 0.05), xx(0.05, pi - 0.05);
  for (int t = 0; t < 200; ++t) {
    const double alpha = al(rng), x0 = xx(rng);
    const double d = anti_determinant(alpha, x0);
    CHECK(std::abs(d - anti_determinant_system(alpha, x0)) <= 1e-10 * std::max(1.0, std::abs(d)));
    const double p = periodic_determinant(alpha, x0);
    CHECK(std::abs(p - periodic_determinant_system(alpha, x0)) <= 1e-10 * std::max(1.0, std::abs(p)));
    CHECK(p > 0.0);
  }
  const double alpha = 1.0;
  const auto [lo, hi] = anti_resonant_x0(alpha);
  CHECK(lo == doctest::Approx(pi * (1 - std::cos(1.0)) / 2));
  CHECK(std::abs(anti_determinant(alpha, lo)) < 1e-12);
  CHECK(std::abs(anti_determinant(alpha, hi)) < 1e-12);
  CHECK(anti_determinant(alpha, 0.5 * (lo + hi)) > 0.0);
  CHECK(anti_determinant(alpha, 0.5 * lo) < 0.0);
  // At the resonant split the antiperiodic problem has 0 as an eigenvalue.
  CHECK(std::abs(discriminant(make_two_step(alpha, lo).a, 0.0) + 2.0) < 1e-9);
  CHECK(discriminant(make_two_step(alpha, 0.5 * (lo + hi)).a, 0.0) > -2.0);
  CHECK_THROWS_AS(make_two_step(1.0, pi), DomainError);
  CHECK_THROWS_AS(anti_resonant_x0(2.0), DomainError);
}
