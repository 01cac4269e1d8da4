#include "hill/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "hill/errors.hpp"
#include "hill/lyapunov.hpp"

namespace hill {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroTol = 1e-10;

double refine(const Propagator& prop, double x0, double x1, std::array<double, 2> y0, int component, double f0,
              double f1) {
  const auto f = [&](double t) { return prop.propagate(x0, t, y0)[component]; };
  const auto tol = [](double lo, double hi) { return hi - lo < kZeroTol; };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, x0, x1, f0, f1, tol, iters);
  return 0.5 * (r.first + r.second);
}

StructureReport check_structure(const ZeroStructure& z, double bound, bool want_even, int min_m, double period) {
  StructureReport r;
  r.spacing_bound = bound;
  if (!z.spacings.empty()) {
    r.max_spacing = *std::max_element(z.spacings.begin(), z.spacings.end());
    r.min_spacing = *std::min_element(z.spacings.begin(), z.spacings.end());
  }
  r.spacings_bounded = !z.spacings.empty() && r.max_spacing <= bound + 1e-9;
  r.one_strict = !z.spacings.empty() && r.min_spacing < bound - 1e-9;
  r.parity = (z.m % 2 == 0) == want_even;
  r.count = z.m >= min_m;
  r.alternation = z.alternates;
  double sum = 0.0;
  for (double s : z.spacings) sum += s;
  r.sum_is_period = std::abs(sum - period) <= 1e-9;
  return r;
}

}  // namespace

ZeroStructure extract_zero_structure(const PeriodicCoefficient& a, Boundary bc, int intervals, const OdeOptions& opts) {
  const double T = a.period();
  const double d = discriminant(a, 0.0, opts);
  const double target = bc == Boundary::Periodic ? 2.0 : -2.0;
  if (std::abs(d - target) > 1e-6) {
    throw NotAnEigenvalue("0 is not a " + to_string(bc) + " eigenvalue (discriminant " + std::to_string(d) + ")");
  }
  const SampledSolution sol = eigenfunction(a, 0.0, bc, true, intervals, opts);
  const PeriodicCoefficient shifted = shift(a, sol.shift);
  const Propagator prop(shifted, 0.0, opts);
  const std::size_t N = sol.x.size() - 1;

  double umax = 0.0;
  double dumax = 0.0;
  for (std::size_t j = 0; j <= N; ++j) {
    umax = std::max(umax, std::abs(sol.u[j]));
    dumax = std::max(dumax, std::abs(sol.du[j]));
  }
  if (std::abs(sol.u[N]) > 1e-6 * umax) throw NotAnEigenvalue("normalised solution does not vanish at T");

  ZeroStructure z;
  z.shift = sol.shift;
  z.u_zeros.push_back(0.0);
  for (std::size_t j = 0; j < N; ++j) {
    const std::array<double, 2> y{sol.u[j], sol.du[j]};
    if (j > 0 && sol.u[j] == 0.0) {
      z.u_zeros.push_back(sol.x[j]);
    } else if (sol.u[j] * sol.u[j + 1] < 0.0) {
      const double r = refine(prop, sol.x[j], sol.x[j + 1], y, 0, sol.u[j], sol.u[j + 1]);
      if (r > 1e-8 && r < T - 1e-8) z.u_zeros.push_back(r);
    }
    if (sol.du[j] == 0.0) {
      z.du_zeros.push_back(sol.x[j]);
    } else if (sol.du[j] * sol.du[j + 1] < 0.0) {
      z.du_zeros.push_back(refine(prop, sol.x[j], sol.x[j + 1], y, 1, sol.du[j], sol.du[j + 1]));
    }
  }
  z.u_zeros.push_back(T);

  for (double x : z.u_zeros) {
    if (std::abs(prop.propagate(0.0, x, {0.0, 1.0})[1]) < 1e-8 * dumax) {
      throw DegenerateSolution("u and u' vanish together near x = " + std::to_string(x));
    }
  }

  z.m = static_cast<int>(z.u_zeros.size()) - 1;
  std::vector<std::pair<double, int>> merged;
  for (double x : z.u_zeros) merged.emplace_back(x, 0);
  for (double x : z.du_zeros) merged.emplace_back(x, 1);
  std::sort(merged.begin(), merged.end());
  z.alternates = merged.size() == 2 * z.u_zeros.size() - 1;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (merged[i].second != static_cast<int>(i % 2)) z.alternates = false;
    if (i > 0) z.spacings.push_back(merged[i].first - merged[i - 1].first);
  }
  return z;
}

StructureReport check_periodic_structure(const ZeroStructure& z, int n, double period) {
  if (n < 1) throw DomainError("index n must be at least 1");
  return check_structure(z, period / (4.0 * n), true, 2 * (n + 1), period);
}

StructureReport check_antiperiodic_structure(const ZeroStructure& z, int n, double period) {
  if (n < 1) throw DomainError("index n must be at least 1");
  return check_structure(z, period / (2.0 * (2 * n - 1)), false, 2 * n + 1, period);
}

SubintervalReport subinterval_inequality(const PeriodicCoefficient& a, const ZeroStructure& z, int n, Boundary side,
                                         const QuadratureOptions& quad) {
  const double T = a.period();
  SubintervalReport r;
  r.lambda = side == Boundary::Periodic ? lambda_const(n, T) : lambda_anti_const(n, T);
  const double w = std::sqrt(r.lambda);
  const PeriodicCoefficient shifted = shift(a, z.shift);
  std::vector<double> pts;
  std::merge(z.u_zeros.begin(), z.u_zeros.end(), z.du_zeros.begin(), z.du_zeros.end(), std::back_inserter(pts));
  r.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double dist = l1_distance(shifted, r.lambda, pts[i], pts[i + 1], quad);
    const double c = w / std::tan(w * (pts[i + 1] - pts[i]));
    r.distances.push_back(dist);
    r.margins.push_back(dist - c);
    r.cot_sum += c;
    r.total_distance += dist;
    r.min_margin = std::min(r.min_margin, dist - c);
  }
  return r;
}

double equal_spacing_bound(int n, int m, Boundary side) {
  if (n < 1 || m < 1) throw DomainError("n and m must be positive");
  const double angle = side == Boundary::Periodic ? n * kPi / m : (2 * n - 1) * kPi / (2.0 * m);
  return 2.0 * m / std::tan(angle);
}

double mixed_principal_eigenvalue(double s, double e) {
  if (!(s < e)) throw DomainError("mixed eigenvalue needs s < e");
  return kPi * kPi / (4.0 * (e - s) * (e - s));
}

}  // namespace hill
