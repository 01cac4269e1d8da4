#include "hill/nonlinear.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/numeric/odeint.hpp>

#include "hill/errors.hpp"

namespace hill {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGrid = 256;
constexpr double kSandwichSlack = 1e-10;

using State = std::array<double, 2>;

void integrate(const NonlinearProblem& p, State& y, double lo, double hi, double tol) {
  if (hi <= lo) return;
  const double hmax = p.period() / 64.0;
  auto stepper = odeint::make_controlled(tol, tol, hmax, odeint::runge_kutta_dopri5<State>());
  const auto sys = [&p](const State& s, State& ds, double x) {
    ds[0] = s[1];
    ds[1] = -p.f(x, s[0]);
  };
  try {
    odeint::integrate_adaptive(stepper, sys, y, lo, hi, std::min(hmax, hi - lo));
  } catch (const odeint::odeint_error& e) {
    throw IntegrationFailure(std::string("adaptive step size collapsed: ") + e.what());
  }
  if (!std::isfinite(y[0]) || !std::isfinite(y[1])) throw IntegrationFailure("solution overflowed during integration");
}

template <class Visit>
void for_grid(const NonlinearProblem& p, const UBox& box, Visit&& visit) {
  const double T = p.period();
  for (int i = 0; i < kGrid; ++i) {
    // Cell midpoints in x keep the samples off piece boundaries of the envelopes.
    const double x = T * (i + 0.5) / kGrid;
    for (int j = 0; j < kGrid; ++j) {
      const double u = box.first + (box.second - box.first) * j / (kGrid - 1);
      visit(x, u);
    }
  }
}

void check_box(const UBox& box) {
  if (!(box.first <= box.second) || !std::isfinite(box.first) || !std::isfinite(box.second)) {
    throw DomainError("u_box must be a finite interval [lo, hi]");
  }
}

Conclusion uniqueness_claim() {
  Conclusion c;
  c.kind = ClaimKind::UniquePeriodicSolution;
  c.text = "u'' + f(x, u) = 0 has exactly one T-periodic solution";
  return c;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void add_sandwich(Certificate& c, const SandwichReport& s) {
  c.hypotheses.push_back({"fu_min", s.fu_min});
  c.hypotheses.push_back({"fu_max", s.fu_max});
  c.margins.push_back({"alpha_below_fu", s.lower_margin + kSandwichSlack});
  c.margins.push_back({"fu_below_beta", s.upper_margin + kSandwichSlack});
  if (!s.holds) c.diagnostics.push_back("envelopes do not sandwich fu on the sample grid");
}

}  // namespace

NonlinearProblem::NonlinearProblem(Expression f, double period, std::optional<Expression> fu)
    : f_(std::move(f)), period_(period), fu_(std::move(fu)) {
  if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("period must be positive and finite");
  if (!fu_) {
    try {
      fu_ = f_.derivative(Variable::U);
    } catch (const DomainError&) {
      // left empty: central differences
    }
  }
  for (int i = 0; i < 64; ++i) {
    const double x = period * i / 64.0;
    for (double u : {-10.0, -1.0, 0.0, 0.5, 1.0, 10.0}) {
      const double a = f_.eval(x, u);
      const double b = f_.eval(x + period, u);
      if (!std::isfinite(a) || !std::isfinite(b)) throw NonFinite("f is not finite at a sample point");
      if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(a))) throw DomainError("f is not T-periodic in x");
    }
  }
}

void NonlinearProblem::set_envelopes(PeriodicCoefficient alpha, PeriodicCoefficient beta) {
  if (std::abs(alpha.period() - period_) > 1e-12 || std::abs(beta.period() - period_) > 1e-12) {
    throw DomainError("envelopes must share the period of f");
  }
  alpha_ = std::move(alpha);
  beta_ = std::move(beta);
}

double NonlinearProblem::fu(double x, double u) const {
  if (fu_) return fu_->eval(x, u);
  const double h = 1e-6 * std::max(1.0, std::abs(u));
  return (f_.eval(x, u + h) - f_.eval(x, u - h)) / (2.0 * h);
}

const PeriodicCoefficient& NonlinearProblem::alpha() const {
  if (!alpha_) throw MissingEnvelopes("problem has no envelopes");
  return *alpha_;
}

const PeriodicCoefficient& NonlinearProblem::beta() const {
  if (!beta_) throw MissingEnvelopes("problem has no envelopes");
  return *beta_;
}

SandwichReport check_sandwich(const NonlinearProblem& p, const UBox& u_box) {
  check_box(u_box);
  const PeriodicCoefficient& alpha = p.alpha();
  const PeriodicCoefficient& beta = p.beta();
  SandwichReport r;
  r.lower_margin = r.upper_margin = r.fu_min = std::numeric_limits<double>::infinity();
  r.fu_max = -r.fu_min;
  double lo = 0.0;
  double hi = 0.0;
  double last_x = -1.0;
  for_grid(p, u_box, [&](double x, double u) {
    if (x != last_x) {
      lo = alpha.eval(x);
      hi = beta.eval(x);
      last_x = x;
    }
    const double d = p.fu(x, u);
    r.fu_min = std::min(r.fu_min, d);
    r.fu_max = std::max(r.fu_max, d);
    r.lower_margin = std::min(r.lower_margin, d - lo);
    r.upper_margin = std::min(r.upper_margin, hi - d);
  });
  r.holds = r.lower_margin >= -kSandwichSlack && r.upper_margin >= -kSandwichSlack;
  return r;
}

std::pair<double, double> fu_range(const NonlinearProblem& p, const UBox& u_box) {
  check_box(u_box);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for_grid(p, u_box, [&](double x, double u) {
    const double d = p.fu(x, u);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  });
  return {lo, hi};
}

Certificate check_l1_hypotheses(const NonlinearProblem& p, int n, const UBox& u_box, const CertifyOptions& opts) {
  if (!p.has_envelopes()) throw MissingEnvelopes("the L1 criterion needs alpha and beta envelopes");
  const double T = p.period();
  const double lambda = lambda_const(n, T);
  const double gamma = gamma1(n, T);
  Certificate c;
  c.theorem = TheoremId::NONLINEAR_L1;
  c.index = n;
  const DominanceReport dom = dominates(p.alpha(), lambda);
  const double norm = l1_norm(p.beta(), opts.quadrature);
  const SandwichReport s = check_sandwich(p, u_box);
  c.hypotheses = {{"lambda", lambda}, {"gamma", gamma}, {"beta_l1_norm", norm}, {"alpha_min_gap", dom.min_gap}};
  c.margins = {{"alpha_dominance_ae", dom.min_gap + 1e-12},
               {"alpha_dominance_strict", dom.strict_fraction - 1.0 / 16384.0},
               {"beta_l1_bound", gamma + opts.bound_slack - norm}};
  add_sandwich(c, s);
  if (!dom.strict_on_positive_measure) c.diagnostics.push_back("alpha does not strictly dominate lambda_{2n-1}");
  if (norm > gamma + opts.bound_slack) c.diagnostics.push_back("L1 norm of beta exceeds gamma by " + fmt(norm - gamma));
  c.holds = dom.strict_on_positive_measure && s.holds && norm <= gamma + opts.bound_slack;
  c.conclusion = uniqueness_claim();
  return c;
}

Certificate check_linf_hypotheses(const NonlinearProblem& p, const UBox& u_box, const CertifyOptions& opts) {
  if (!p.has_envelopes()) throw MissingEnvelopes("the L-infinity criterion needs alpha and beta envelopes");
  if (std::abs(p.period() - kPi) > 1e-12) throw DomainError("the L-infinity criterion is stated for period pi");
  Certificate c;
  c.theorem = TheoremId::NONLINEAR_LINF;
  const DominanceReport dom = dominates(p.alpha(), 0.0);
  const X0Scan scan = scan_periodic(p.beta(), opts.x0_grid);
  const SandwichReport s = check_sandwich(p, u_box);
  c.hypotheses = {{"alpha_min_gap", dom.min_gap},
                  {"x0", scan.best_x0},
                  {"max_weighted_norm", scan.best_need},
                  {"admissible_x0", static_cast<double>(scan.admissible)}};
  c.margins = {{"alpha_dominance_ae", dom.min_gap + 1e-12},
               {"alpha_dominance_strict", dom.strict_fraction - 1.0 / 16384.0},
               {"x0_clause", scan.best_margin}};
  add_sandwich(c, s);
  c.diagnostics.insert(c.diagnostics.end(), scan.diagnostics.begin(), scan.diagnostics.end());
  if (!dom.strict_on_positive_measure) c.diagnostics.push_back("alpha does not strictly dominate 0");
  c.holds = dom.strict_on_positive_measure && s.holds && scan.admissible > 0;
  c.conclusion = uniqueness_claim();
  return c;
}

Certificate check_classical_band(const NonlinearProblem& p, const UBox& u_box) {
  const double T = p.period();
  const auto [lo, hi] = fu_range(p, u_box);
  const double unit = 4.0 * kPi * kPi / (T * T);  // (2n)^2 pi^2/T^2 = n^2 * unit
  Certificate c;
  c.theorem = TheoremId::CLASSICAL_BAND;
  c.hypotheses = {{"fu_min", lo}, {"fu_max", hi}};
  c.conclusion = uniqueness_claim();
  if (!(lo > 0.0)) {
    c.margins = {{"above_lower_edge", lo}};
    c.diagnostics.push_back("fu is not bounded below by a positive constant");
    return c;
  }
  const int n = static_cast<int>(std::floor(std::sqrt(lo / unit)));
  const double left = unit * n * n;
  const double right = unit * (n + 1) * (n + 1);
  c.index = n;
  c.hypotheses.push_back({"band_lower", left});
  c.hypotheses.push_back({"band_upper", right});
  c.margins = {{"above_lower_edge", lo - left}, {"below_upper_edge", right - hi}};
  c.holds = lo > left && hi < right;
  if (!c.holds) c.diagnostics.push_back("fu range [" + fmt(lo) + ", " + fmt(hi) + "] crosses " + fmt(right));
  return c;
}

std::pair<double, double> shoot(const NonlinearProblem& p, double u0, double du0, double ode_tol) {
  State y{u0, du0};
  integrate(p, y, 0.0, p.period(), ode_tol);
  return {y[0], y[1]};
}

ShootingResult solve_periodic(const NonlinearProblem& p, const ShootingOptions& opts) {
  if (opts.starts < 1) throw DomainError("at least one start is needed");
  const double T = p.period();
  ShootingResult out;
  out.starts = opts.starts;
  if (opts.box) {
    out.box = *opts.box;
  } else {
    double sup = 0.0;
    for (int i = 0; i < 4096; ++i) sup = std::max(sup, std::abs(p.f(T * i / 4096.0, 0.0)));
    out.box = 10.0 * (1.0 + sup);
  }

  const auto defect = [&](double c0, double c1) -> State {
    try {
      const auto [uT, duT] = shoot(p, c0, c1, opts.ode_tol);
      return {uT - c0, duT - c1};
    } catch (const IntegrationFailure&) {
      const double inf = std::numeric_limits<double>::infinity();
      return {inf, inf};
    }
  };
  const auto norm = [](const State& s) { return std::hypot(s[0], s[1]); };

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> dist(-out.box, out.box);
  struct Root {
    double c0, c1, residual;
  };
  std::vector<Root> roots;
  for (int s = 0; s < opts.starts; ++s) {
    double c0 = dist(rng);
    double c1 = dist(rng);
    State F = defect(c0, c1);
    bool ok = norm(F) < opts.residual_tol;
    for (int step = 0; step < opts.max_steps && !ok && std::isfinite(norm(F)); ++step) {
      const double h0 = opts.fd_step * std::max(1.0, std::abs(c0));
      const double h1 = opts.fd_step * std::max(1.0, std::abs(c1));
      const State a = defect(c0 + h0, c1);
      const State b = defect(c0 - h0, c1);
      const State c = defect(c0, c1 + h1);
      const State d = defect(c0, c1 - h1);
      const double j11 = (a[0] - b[0]) / (2 * h0);
      const double j21 = (a[1] - b[1]) / (2 * h0);
      const double j12 = (c[0] - d[0]) / (2 * h1);
      const double j22 = (c[1] - d[1]) / (2 * h1);
      const double det = j11 * j22 - j12 * j21;
      const double scale = j11 * j11 + j12 * j12 + j21 * j21 + j22 * j22;
      if (!std::isfinite(det) || std::abs(det) <= 1e-12 * scale || scale == 0.0) break;
      const double d0 = -(j22 * F[0] - j12 * F[1]) / det;
      const double d1 = -(-j21 * F[0] + j11 * F[1]) / det;
      // Backtracking on the defect norm.
      bool accepted = false;
      for (double t = 1.0; t > 1e-10; t *= 0.5) {
        const State Fn = defect(c0 + t * d0, c1 + t * d1);
        if (norm(Fn) < (1.0 - 1e-4 * t) * norm(F)) {
          c0 += t * d0;
          c1 += t * d1;
          F = Fn;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
      ok = norm(F) < opts.residual_tol;
    }
    if (ok) roots.push_back({c0, c1, norm(F)});
  }
  out.converged = static_cast<int>(roots.size());
  if (roots.empty()) throw NoConvergence("no Newton start converged to a periodic solution");

  std::vector<Root> clusters;
  for (const Root& r : roots) {
    bool merged = false;
    for (Root& c : clusters) {
      if (std::max(std::abs(r.c0 - c.c0), std::abs(r.c1 - c.c1)) <= opts.dedup_tol) {
        if (r.residual < c.residual) c = r;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.push_back(r);
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const Root& l, const Root& r) { return l.c0 != r.c0 ? l.c0 < r.c0 : l.c1 < r.c1; });
  out.unique = clusters.size() == 1;

  for (const Root& r : clusters) {
    PeriodicSolution sol;
    sol.u0 = r.c0;
    sol.du0 = r.c1;
    sol.residual = r.residual;
    const int N = std::max(1, opts.samples);
    State y{r.c0, r.c1};
    sol.trajectory.x.reserve(N + 1);
    for (int i = 0; i <= N; ++i) {
      const double x = T * i / N;
      if (i > 0) integrate(p, y, T * (i - 1) / N, x, opts.ode_tol);
      sol.trajectory.x.push_back(x);
      sol.trajectory.u.push_back(y[0]);
      sol.trajectory.du.push_back(y[1]);
    }
    out.solutions.push_back(std::move(sol));
  }
  return out;
}

}  // namespace hill
