#include "hill/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "hill/errors.hpp"

namespace hill {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kKernelTolerance = 1e-4;

template <class F>
double solve_bracketed(F&& f, double lo, double hi, double flo, double fhi, double tol) {
  std::uintmax_t iterations = 200;
  const auto done = [tol](double l, double r) { return std::abs(r - l) <= tol; };
  try {
    const auto [l, r] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, done, iterations);
    return 0.5 * (l + r);
  } catch (const std::exception& e) {
    throw RootSearchFailure(std::string("root refinement failed: ") + e.what());
  }
}

double max_deviation(const TransferMatrix& m, double s) {
  return std::max({std::abs(m.m11 - s), std::abs(m.m12), std::abs(m.m21), std::abs(m.m22 - s)});
}

}  // namespace

double discriminant(const PeriodicCoefficient& a, double mu, const OdeOptions& opts) {
  return monodromy(a, mu, opts).trace();
}

SpectrumSolver::SpectrumSolver(const PeriodicCoefficient& a, FloquetOptions opts)
    : a_(a), opts_(opts), inf_(ess_inf(a)), sup_(ess_sup(a)) {}

double SpectrumSolver::discriminant(double mu) const { return hill::discriminant(a_, mu, opts_.ode); }

double SpectrumSolver::dirichlet(int k) {
  if (k < 1) throw DomainError("Dirichlet eigenvalues are indexed from 1");
  if (const auto it = dirichlet_.find(k); it != dirichlet_.end()) return it->second;
  const double T = a_.period();
  const double free = std::pow(k * kPi / T, 2);
  // Sturm comparison with the constant coefficients inf a and sup a.
  double lo = free - sup_ - 1.0;
  double hi = free - inf_ + 1.0;
  const auto g = [&](double mu) { return Propagator(a_, mu, opts_.ode).prufer_angle(0.0, T, 0.0) - k * kPi; };
  double glo = g(lo);
  double ghi = g(hi);
  for (int i = 0; glo >= 0.0 && i < 60; ++i) glo = g(lo -= (hi - lo));
  for (int i = 0; ghi <= 0.0 && i < 60; ++i) ghi = g(hi += (hi - lo));
  if (glo >= 0.0 || ghi <= 0.0) throw RootSearchFailure("could not bracket Dirichlet eigenvalue " + std::to_string(k));
  const double root = solve_bracketed(g, lo, hi, glo, ghi, opts_.tol_root);
  dirichlet_[k] = root;
  return root;
}

double SpectrumSolver::lambda0() {
  if (lambda0_) return *lambda0_;
  // Below λ0 the discriminant exceeds 2; on (λ0, λ^D_1] it does not.
  const double top = dirichlet(1);
  double upper = top;
  double step = 1.0;
  double lower = top - step;
  double dl = discriminant(lower);
  for (int i = 0; dl <= 2.0; ++i) {
    if (i > 200) throw RootSearchFailure("could not bracket the lowest periodic eigenvalue");
    upper = lower;
    step *= 2.0;
    lower = top - step;
    dl = discriminant(lower);
  }
  lambda0_ = edge_root(upper, lower, 1.0);
  return *lambda0_;
}

double SpectrumSolver::edge_root(double outside, double inside, double sign) {
  // sign·Δ ≥ 2 holds on the gap side of the edge and fails on the band side.
  // The gap-side end may sit exactly on the edge (closed gaps, symmetric
  // coefficients), so its own sign is not trusted: bisect on the predicate
  // until a strict bracket appears, then refine.
  const auto h = [&](double mu) { return sign * discriminant(mu) - 2.0; };
  double out = outside;
  double h_out = h(outside);
  while (std::abs(inside - out) > opts_.tol_root) {
    const double mid = 0.5 * (out + inside);
    const double hm = h(mid);
    if (hm == 0.0) return mid;
    if (hm > 0.0) {
      return out < mid ? solve_bracketed(h, out, mid, h_out, hm, opts_.tol_root)
                       : solve_bracketed(h, mid, out, hm, h_out, opts_.tol_root);
    }
    out = mid;
    h_out = hm;
  }
  return inside;
}

std::pair<double, double> SpectrumSolver::gap(int k) {
  if (k < 1) throw DomainError("gaps are indexed from 1");
  if (const auto it = gaps_.find(k); it != gaps_.end()) return it->second;
  const double sign = k % 2 == 1 ? -1.0 : 1.0;
  const double d = dirichlet(k);
  std::pair<double, double> edges;
  if (max_deviation(monodromy(a_, d, opts_.ode), sign) <= opts_.tol_coexistence) {
    edges = {d, d};
  } else {
    const double prev = k == 1 ? lambda0() : dirichlet(k - 1);
    const double next = dirichlet(k + 1);
    edges = {edge_root(prev, d, sign), edge_root(next, d, sign)};
  }
  gaps_[k] = edges;
  return edges;
}

std::vector<Eigenvalue> SpectrumSolver::periodic(int count) {
  if (count < 1) throw DomainError("count must be at least 1");
  std::vector<Eigenvalue> out;
  out.push_back({0, lambda0(), 1});
  for (int i = 1; i < count; ++i) {
    const auto [l, r] = gap(2 * ((i + 1) / 2));
    const int mult = r - l <= opts_.tol_boundary ? 2 : 1;
    out.push_back({i, i % 2 == 1 ? l : r, mult});
  }
  return out;
}

std::vector<Eigenvalue> SpectrumSolver::antiperiodic(int count) {
  if (count < 1) throw DomainError("count must be at least 1");
  std::vector<Eigenvalue> out;
  for (int i = 1; i <= count; ++i) {
    const auto [l, r] = gap(2 * ((i + 1) / 2) - 1);
    const int mult = r - l <= opts_.tol_boundary ? 2 : 1;
    out.push_back({i, i % 2 == 1 ? l : r, mult});
  }
  return out;
}

StabilityVerdict SpectrumSolver::classify(double mu) {
  StabilityVerdict v;
  v.discriminant = discriminant(mu);
  const double theta = Propagator(a_, mu, opts_.ode).prufer_angle(0.0, a_.period(), 0.0);
  const int below = std::max(0, static_cast<int>(std::ceil(theta / kPi)) - 1);

  struct Edge {
    double value;
    int gap;  // 0 for λ0
  };
  std::vector<Edge> edges{{lambda0(), 0}};
  for (int k = 1; k <= below + 1; ++k) {
    const auto [l, r] = gap(k);
    edges.push_back({l, k});
    edges.push_back({r, k});
  }
  int strictly_below = 0;
  for (const Edge& e : edges) {
    if (e.value < mu) ++strictly_below;
    if (e.value <= mu && (!v.lower || e.value > *v.lower)) v.lower = e.value;
    if (e.value > mu && (!v.upper || e.value < *v.upper)) v.upper = e.value;
  }
  v.zone_index = strictly_below / 2;

  const double excess = std::abs(v.discriminant) - 2.0;
  if (excess < -opts_.tol_boundary) {
    v.kind = Stability::Stable;
  } else if (excess > opts_.tol_boundary) {
    v.kind = Stability::Unstable;
  } else {
    const auto nearest = std::min_element(edges.begin(), edges.end(), [mu](const Edge& l, const Edge& r) {
      return std::abs(l.value - mu) < std::abs(r.value - mu);
    });
    if (nearest->gap == 0) {
      v.kind = Stability::BoundaryUnstable;
    } else {
      const auto [l, r] = gap(nearest->gap);
      v.kind = r - l <= opts_.tol_boundary ? Stability::BoundaryStable : Stability::BoundaryUnstable;
    }
  }
  return v;
}

SpectrumSlice periodic_eigenvalues(const PeriodicCoefficient& a, int count, const FloquetOptions& opts) {
  SpectrumSolver solver(a, opts);
  return {solver.periodic(count), {}};
}

SpectrumSlice antiperiodic_eigenvalues(const PeriodicCoefficient& a, int count, const FloquetOptions& opts) {
  SpectrumSolver solver(a, opts);
  return {{}, solver.antiperiodic(count)};
}

SpectrumSlice spectrum(const PeriodicCoefficient& a, int periodic_count, int antiperiodic_count,
                       const FloquetOptions& opts) {
  SpectrumSolver solver(a, opts);
  return {solver.periodic(periodic_count), solver.antiperiodic(antiperiodic_count)};
}

StabilityVerdict classify(const PeriodicCoefficient& a, double mu, const FloquetOptions& opts) {
  return SpectrumSolver(a, opts).classify(mu);
}

InterlacingReport check_interlacing(const SpectrumSlice& s, double slack) {
  if (s.periodic.empty() || s.antiperiodic.empty()) throw DomainError("interlacing needs both spectra");
  // Merged order: λ0, λ̃1, λ̃2, λ1, λ2, λ̃3, λ̃4, λ3, λ4, ...
  std::vector<std::pair<std::string, double>> merged{{"periodic[0]", s.periodic[0].value}};
  std::size_t p = 1;
  std::size_t q = 0;
  for (int block = 0;; ++block) {
    auto& list = block % 2 == 0 ? s.antiperiodic : s.periodic;
    auto& pos = block % 2 == 0 ? q : p;
    const char* name = block % 2 == 0 ? "antiperiodic" : "periodic";
    if (pos + 2 > list.size()) break;
    for (int i = 0; i < 2; ++i, ++pos) {
      merged.emplace_back(std::string(name) + "[" + std::to_string(list[pos].index) + "]", list[pos].value);
    }
  }
  InterlacingReport report;
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    const double diff = merged[i + 1].second - merged[i].second;
    const bool strict = i % 2 == 0;
    if (strict ? diff > slack : diff >= -slack) continue;
    report.ok = false;
    report.violation = i;
    report.detail = merged[i].first + " = " + std::to_string(merged[i].second) + (strict ? " < " : " <= ") +
                    merged[i + 1].first + " = " + std::to_string(merged[i + 1].second) + " fails";
    break;
  }
  return report;
}

namespace {

SampledSolution sample(const PeriodicCoefficient& a, double mu, std::array<double, 2> y, int intervals,
                       const OdeOptions& opts) {
  const Propagator prop(a, mu, opts);
  const double T = a.period();
  SampledSolution out;
  out.x.reserve(intervals + 1);
  for (int j = 0; j <= intervals; ++j) {
    const double x = T * j / intervals;
    if (j > 0) y = prop.propagate(out.x.back(), x, y);
    out.x.push_back(x);
    out.u.push_back(y[0]);
    out.du.push_back(y[1]);
  }
  return out;
}

std::array<double, 2> kernel_vector(const TransferMatrix& m, double s) {
  const double b11 = m.m11 - s;
  const double b12 = m.m12;
  const double b21 = m.m21;
  const double b22 = m.m22 - s;
  if (max_deviation(m, s) < 1e-7) return {0.0, 1.0};
  const double n1 = std::hypot(b11, b12);
  const double n2 = std::hypot(b21, b22);
  std::array<double, 2> v = n1 >= n2 ? std::array<double, 2>{-b12 / n1, b11 / n1} : std::array<double, 2>{-b22 / n2, b21 / n2};
  const double res = std::hypot(b11 * v[0] + b12 * v[1], b21 * v[0] + b22 * v[1]);
  if (res > kKernelTolerance) {
    throw NotAnEigenvalue("monodromy has no eigenvalue " + std::to_string(s) + " (residual " + std::to_string(res) + ")");
  }
  return v;
}

}  // namespace

SampledSolution eigenfunction(const PeriodicCoefficient& a, double mu, Boundary bc, bool normalize, int intervals,
                              const OdeOptions& opts) {
  if (intervals < 16) throw DomainError("eigenfunction needs at least 16 sample intervals");
  const double s = bc == Boundary::Periodic ? 1.0 : -1.0;
  const auto v = kernel_vector(monodromy(a, mu, opts), s);
  SampledSolution raw = sample(a, mu, v, intervals, opts);
  if (!normalize || v[0] == 0.0) return raw;

  // Locate the first zero of u and restart the coefficient there.
  const Propagator prop(a, mu, opts);
  double r = -1.0;
  for (int j = 0; j < intervals; ++j) {
    if (raw.u[j] == 0.0) {
      r = raw.x[j];
      break;
    }
    if (raw.u[j] * raw.u[j + 1] < 0.0) {
      const std::array<double, 2> y{raw.u[j], raw.du[j]};
      const double x0 = raw.x[j];
      const auto f = [&](double t) { return prop.propagate(x0, t, y)[0]; };
      r = solve_bracketed(f, x0, raw.x[j + 1], raw.u[j], raw.u[j + 1], 1e-14 * std::max(1.0, a.period()));
      break;
    }
  }
  if (r < 0.0) throw DegenerateSolution("eigenfunction has no zero to normalise on");
  const PeriodicCoefficient shifted = shift(a, r);
  const TransferMatrix m = monodromy(shifted, mu, opts);
  const double res = std::hypot(m.m12, m.m22 - s);
  if (res > kKernelTolerance) {
    throw NotAnEigenvalue("normalised solution is not a Floquet solution (residual " + std::to_string(res) + ")");
  }
  SampledSolution out = sample(shifted, mu, {0.0, 1.0}, intervals, opts);
  out.shift = r;
  return out;
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "stable";
    case Stability::Unstable:
      return "unstable";
    case Stability::BoundaryStable:
      return "boundary-stable";
    case Stability::BoundaryUnstable:
      return "boundary-unstable";
  }
  return "unknown";
}

std::string to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "antiperiodic"; }

}  // namespace hill
