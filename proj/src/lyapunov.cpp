#include "hill/lyapunov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "hill/errors.hpp"

namespace hill {

namespace {

constexpr double kPi = std::numbers::pi;

void check_period(double period) {
  if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("period must be positive and finite");
}

void check_index(int n) {
  if (n < 1) throw DomainError("index n must be at least 1");
}

double cot(double x) { return std::cos(x) / std::sin(x); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void require_pi_period(const PeriodicCoefficient& a) {
  if (std::abs(a.period() - kPi) > 1e-12) throw DomainError("the L-infinity criteria are stated for period pi");
}

Conclusion sign_claim(Boundary bc, int neg, int pos) {
  Conclusion c;
  c.kind = ClaimKind::EigenvalueSigns;
  c.negative = EigenRef{bc, neg};
  c.positive = EigenRef{bc, pos};
  const std::string sym = bc == Boundary::Periodic ? "lambda" : "lambda~";
  c.text = sym + "_" + std::to_string(neg) + "(a) < 0 < " + sym + "_" + std::to_string(pos) + "(a)";
  return c;
}

Certificate certify_l1(const PeriodicCoefficient& a, int n, Boundary bc, const CertifyOptions& opts) {
  check_index(n);
  const double T = a.period();
  const bool periodic = bc == Boundary::Periodic;
  const double lambda = periodic ? lambda_const(n, T) : lambda_anti_const(n, T);
  const double gamma = periodic ? gamma1(n, T) : gamma1_anti(n, T);

  Certificate c;
  c.theorem = periodic ? TheoremId::L1_PERIODIC_N : TheoremId::L1_ANTIPERIODIC_N;
  c.index = n;
  const DominanceReport dom = dominates(a, lambda);
  const double norm = l1_norm(a, opts.quadrature);
  c.hypotheses = {{"lambda", lambda},
                  {"gamma", gamma},
                  {"l1_norm", norm},
                  {"dominance_min_gap", dom.min_gap},
                  {"dominance_strict_fraction", dom.strict_fraction}};
  c.margins = {{"dominance_ae", dom.min_gap + 1e-12},
               {"dominance_strict", dom.strict_fraction - 1.0 / 16384.0},
               {"l1_bound", gamma + opts.bound_slack - norm}};
  c.holds = dom.strict_on_positive_measure && norm <= gamma + opts.bound_slack;
  if (!dom.holds_ae) c.diagnostics.push_back("a drops below lambda by " + fmt(-dom.min_gap));
  if (dom.holds_ae && !dom.strict_on_positive_measure) c.diagnostics.push_back("a equals lambda almost everywhere");
  if (norm > gamma + opts.bound_slack) c.diagnostics.push_back("L1 norm exceeds gamma by " + fmt(norm - gamma));
  c.conclusion = sign_claim(bc, 2 * n, 2 * n + 1);
  return c;
}

template <class Margin>
X0Scan scan(const PeriodicCoefficient& a, int grid, Margin&& margin_of) {
  require_pi_period(a);
  if (grid < 1) throw DomainError("x0 grid must contain at least one point");
  X0Scan s;
  s.grid = grid;
  s.best_margin = -std::numeric_limits<double>::infinity();
  for (int j = 1; j <= grid; ++j) {
    const double x0 = kPi * j / (grid + 1);
    const double left = x0 * x0 * linf_norm(a, 0.0, x0);
    const double right = (kPi - x0) * (kPi - x0) * linf_norm(a, x0, kPi);
    const double need = std::max(left, right);
    const double m = margin_of(x0, need, s.diagnostics);
    if (m > 0.0) ++s.admissible;
    if (m > s.best_margin) {
      s.best_margin = m;
      s.best_x0 = x0;
      s.best_need = need;
    }
  }
  return s;
}

}  // namespace

double lambda_const(int n, double period) {
  check_index(n);
  check_period(period);
  return 4.0 * n * n * kPi * kPi / (period * period);
}

double lambda_anti_const(int n, double period) {
  check_index(n);
  check_period(period);
  return (2.0 * n - 1.0) * (2.0 * n - 1.0) * kPi * kPi / (period * period);
}

double beta1(int n, double period) {
  check_period(period);
  if (n < 0) throw DomainError("index n must be non-negative");
  if (n == 0) return 16.0 / period;
  return beta1_real(n, period);
}

double beta1_real(double n, double period) {
  check_period(period);
  if (!(n > 0.0)) throw DomainError("real index must be positive");
  return 8.0 * kPi * n * (n + 1.0) / period * cot(n * kPi / (2.0 * (n + 1.0)));
}

double gamma1(int n, double period) { return period * lambda_const(n, period) + beta1(n, period); }

double beta1_anti(int n, double period) {
  check_period(period);
  if (n < 0) throw DomainError("index n must be non-negative");
  if (n == 0) return 4.0 / period;
  const double odd = 2.0 * n - 1.0;
  return 2.0 * kPi * odd * (2.0 * n + 1.0) / period * cot(odd * kPi / (2.0 * (2.0 * n + 1.0)));
}

double gamma1_anti(int n, double period) { return period * lambda_anti_const(n, period) + beta1_anti(n, period); }

double zhang(int n, double period) {
  check_index(n);
  check_period(period);
  return 16.0 * (n + 1.0) * (n + 1.0) / period;
}

double kp_rhs(double k, int p, double period) {
  check_period(period);
  if (p < 1) throw DomainError("p must be at least 1");
  if (!(k > 0.0)) throw DomainError("k must be positive");
  const double r = std::sqrt(k);
  return k * period + 2.0 * (p + 1) * r * cot(r * period / (2.0 * (p + 1)));
}

std::vector<ConstantsRow> constants_table(int n_max, double period) {
  check_period(period);
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  std::vector<ConstantsRow> rows;
  rows.push_back({0, period, 0.0, beta1(0, period), beta1(0, period), std::nullopt, std::nullopt, std::nullopt});
  for (int n = 1; n <= n_max; ++n) {
    rows.push_back({n, period, lambda_const(n, period), beta1(n, period), gamma1(n, period), beta1_anti(n, period),
                    gamma1_anti(n, period), zhang(n, period)});
  }
  return rows;
}

double j_min(double M, double a, double b) {
  if (!(a < b)) throw DomainError("j_min needs a < b");
  const double L = b - a;
  if (!(M > 0.0) || M > kPi * kPi / (4.0 * L * L) * (1.0 + 1e-15)) {
    throw DomainError("j_min needs 0 < M <= pi^2/(4(b-a)^2)");
  }
  const double r = std::sqrt(M);
  return r * cot(r * L);
}

double j_functional(const std::vector<double>& x, const std::vector<double>& u, const std::vector<double>& du, double M) {
  const std::size_t n = x.size();
  if (n < 3 || u.size() != n || du.size() != n) throw DomainError("samples must have equal length >= 3");
  if (n % 2 == 0) throw DomainError("Simpson quadrature needs an even number of intervals");
  const double h = (x.back() - x.front()) / static_cast<double>(n - 1);
  if (!(h > 0.0)) throw DomainError("sample grid must be increasing");
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(x[i] - x[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h))) throw DomainError("sample grid must be uniform");
  }
  if (std::abs(u.front()) > 1e-9) throw DomainError("test function must vanish at the left end");
  const double ub2 = u.back() * u.back();
  if (!(std::abs(u.back()) > 1e-9)) throw DegenerateDenominator("test function vanishes at the right end");
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * (du[i] * du[i] - M * u[i] * u[i]);
  }
  return sum * h / 3.0 / ub2;
}

std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::L1_PERIODIC_N:
      return "L1_PERIODIC_N";
    case TheoremId::L1_ANTIPERIODIC_N:
      return "L1_ANTIPERIODIC_N";
    case TheoremId::L1_ZONE_KP:
      return "L1_ZONE_KP";
    case TheoremId::LINF_FIRST_ZONE:
      return "LINF_FIRST_ZONE";
    case TheoremId::LINF_PERIODIC:
      return "LINF_PERIODIC";
    case TheoremId::CLASSICAL_16T:
      return "CLASSICAL_16T";
    case TheoremId::NONLINEAR_L1:
      return "NONLINEAR_L1";
    case TheoremId::NONLINEAR_LINF:
      return "NONLINEAR_LINF";
    case TheoremId::CLASSICAL_BAND:
      return "CLASSICAL_BAND";
  }
  return "UNKNOWN";
}

std::optional<TheoremId> theorem_from_string(const std::string& name) {
  for (TheoremId id : {TheoremId::L1_PERIODIC_N, TheoremId::L1_ANTIPERIODIC_N, TheoremId::L1_ZONE_KP,
                       TheoremId::LINF_FIRST_ZONE, TheoremId::LINF_PERIODIC, TheoremId::CLASSICAL_16T,
                       TheoremId::NONLINEAR_L1, TheoremId::NONLINEAR_LINF, TheoremId::CLASSICAL_BAND}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

Certificate certify_l1_periodic(const PeriodicCoefficient& a, int n, const CertifyOptions& opts) {
  return certify_l1(a, n, Boundary::Periodic, opts);
}

Certificate certify_l1_antiperiodic(const PeriodicCoefficient& a, int n, const CertifyOptions& opts) {
  return certify_l1(a, n, Boundary::Antiperiodic, opts);
}

Certificate certify_zone_kp(const PeriodicCoefficient& a, const CertifyOptions& opts) {
  const double T = a.period();
  const double inf = ess_inf(a);
  const double norm = l1_norm(a, opts.quadrature);
  Certificate c;
  c.theorem = TheoremId::L1_ZONE_KP;
  c.hypotheses = {{"ess_inf", inf}, {"l1_norm", norm}};
  c.conclusion.kind = ClaimKind::StableAtZero;
  c.conclusion.text = "mu = 0 lies in a stability zone";

  const double unit = kPi * kPi / (T * T);
  double best_margin = -std::numeric_limits<double>::infinity();
  for (int p = 1; p * p * unit <= inf; ++p) {
    // The right-hand side increases with k, so the largest admissible k is best.
    const double k = std::min(inf, (p + 1) * (p + 1) * unit);
    const double rhs = kp_rhs(k, p, T);
    const double margin = rhs + opts.bound_slack - norm;
    c.diagnostics.push_back("p = " + std::to_string(p) + ": k = " + fmt(k) + ", bound = " + fmt(rhs) +
                            (margin >= 0.0 ? ", satisfied" : ", exceeded by " + fmt(-margin)));
    const bool ok = margin >= 0.0;
    // Keep the first successful p; otherwise report the nearest miss.
    if ((ok && !c.holds) || (!c.holds && margin > best_margin)) {
      best_margin = margin;
      c.index = p;
      c.margins = {{"k_below_ess_inf", inf - k}, {"l1_bound", margin}};
      c.hypotheses.resize(2);
      c.hypotheses.push_back({"k", k});
      c.hypotheses.push_back({"bound", rhs});
    }
    if (ok) c.holds = true;
  }
  if (c.diagnostics.empty()) {
    c.diagnostics.push_back("no admissible p: ess inf a = " + fmt(inf) + " is below pi^2/T^2 = " + fmt(unit));
    c.margins = {{"k_window", inf - unit}};
  }
  return c;
}

X0Scan scan_first_zone(const PeriodicCoefficient& a, int grid) {
  std::array<int, 2> fails{0, 0};
  X0Scan s = scan(a, grid, [&](double x0, double need, std::vector<std::string>&) {
    const double alpha = std::sqrt(need);
    const double ca = std::cos(std::min(alpha, kPi / 2));
    const double m_alpha = kPi / 2 - alpha;
    const double m_window = std::min(x0 - kPi * (1.0 - ca) / 2.0, kPi * (1.0 + ca) / 2.0 - x0);
    if (m_alpha <= 0.0) {
      ++fails[0];
    } else if (m_window <= 0.0) {
      ++fails[1];
    }
    return std::min(m_alpha, m_window);
  });
  s.diagnostics.push_back(std::to_string(fails[0]) + " of " + std::to_string(grid) +
                          " grid points need alpha >= pi/2");
  s.diagnostics.push_back(std::to_string(fails[1]) + " of " + std::to_string(grid) +
                          " grid points fall outside the window (pi(1-cos alpha)/2, pi(1+cos alpha)/2)");
  return s;
}

X0Scan scan_periodic(const PeriodicCoefficient& a, int grid) {
  X0Scan s = scan(a, grid, [](double, double need, std::vector<std::string>&) { return kPi * kPi - need; });
  s.diagnostics.push_back(std::to_string(grid - s.admissible) + " of " + std::to_string(grid) +
                          " grid points have max{x0^2 |a|(0,x0), (pi-x0)^2 |a|(x0,pi)} >= pi^2");
  return s;
}

Certificate certify_linf_first_zone(const PeriodicCoefficient& a, const CertifyOptions& opts) {
  require_pi_period(a);
  Certificate c;
  c.theorem = TheoremId::LINF_FIRST_ZONE;
  const DominanceReport dom = dominates(a, 0.0);
  const X0Scan s = scan_first_zone(a, opts.x0_grid);
  c.hypotheses = {{"dominance_min_gap", dom.min_gap},
                  {"x0", s.best_x0},
                  {"alpha", std::sqrt(s.best_need)},
                  {"admissible_x0", static_cast<double>(s.admissible)}};
  c.margins = {{"dominance_ae", dom.min_gap + 1e-12},
               {"dominance_strict", dom.strict_fraction - 1.0 / 16384.0},
               {"x0_clause", s.best_margin}};
  c.holds = dom.strict_on_positive_measure && s.admissible > 0;
  c.diagnostics = s.diagnostics;
  if (!dom.strict_on_positive_measure) c.diagnostics.push_back("0 < a fails (strictly, almost everywhere)");
  Conclusion k;
  k.kind = ClaimKind::EigenvalueSigns;
  k.negative = EigenRef{Boundary::Periodic, 0};
  k.positive = EigenRef{Boundary::Antiperiodic, 1};
  k.text = "lambda_0(a) < 0 < lambda~_1(a): stable at mu = 0";
  c.conclusion = k;
  return c;
}

Certificate certify_linf_periodic(const PeriodicCoefficient& a, const CertifyOptions& opts) {
  require_pi_period(a);
  Certificate c;
  c.theorem = TheoremId::LINF_PERIODIC;
  const DominanceReport dom = dominates(a, 0.0);
  const X0Scan s = scan_periodic(a, opts.x0_grid);
  c.hypotheses = {{"dominance_min_gap", dom.min_gap},
                  {"x0", s.best_x0},
                  {"max_weighted_norm", s.best_need},
                  {"admissible_x0", static_cast<double>(s.admissible)}};
  c.margins = {{"dominance_ae", dom.min_gap + 1e-12},
               {"dominance_strict", dom.strict_fraction - 1.0 / 16384.0},
               {"x0_clause", s.best_margin}};
  c.holds = dom.strict_on_positive_measure && s.admissible > 0;
  c.diagnostics = s.diagnostics;
  if (!dom.strict_on_positive_measure) c.diagnostics.push_back("0 < a fails (strictly, almost everywhere)");
  c.conclusion = sign_claim(Boundary::Periodic, 0, 1);
  return c;
}

Certificate classical_16T(const PeriodicCoefficient& a, const CertifyOptions& opts) {
  const double T = a.period();
  const double sup_abs = linf_norm(a, 0.0, T);
  const double mean_int = integral(a, 0.0, T, opts.quadrature);
  const double pos_int = integral(positive_part(a), 0.0, T, opts.quadrature);
  Certificate c;
  c.theorem = TheoremId::CLASSICAL_16T;
  c.hypotheses = {{"sup_abs", sup_abs}, {"integral", mean_int}, {"positive_integral", pos_int}, {"bound", 16.0 / T}};
  c.margins = {{"nonzero", sup_abs},
               {"integral_nonnegative", mean_int + opts.bound_slack},
               {"positive_integral_bound", 16.0 / T + opts.bound_slack - pos_int}};
  c.holds = sup_abs > 0.0 && mean_int >= -opts.bound_slack && pos_int <= 16.0 / T + opts.bound_slack;
  if (!(sup_abs > 0.0)) c.diagnostics.push_back("a vanishes identically");
  if (mean_int < -opts.bound_slack) c.diagnostics.push_back("integral of a is negative");
  if (pos_int > 16.0 / T + opts.bound_slack) c.diagnostics.push_back("integral of a+ exceeds 16/T");
  c.conclusion.kind = ClaimKind::NotPeriodicEigenvalue;
  c.conclusion.text = "the periodic problem at mu = 0 has only the trivial solution";
  return c;
}

int default_index_periodic(const PeriodicCoefficient& a) {
  const double inf = ess_inf(a);
  if (!(inf > 0.0)) return 1;
  return std::max(1, static_cast<int>(std::floor(a.period() * std::sqrt(inf) / (2.0 * kPi))));
}

int default_index_antiperiodic(const PeriodicCoefficient& a) {
  const double inf = ess_inf(a);
  if (!(inf > 0.0)) return 1;
  return std::max(1, static_cast<int>(std::floor((a.period() * std::sqrt(inf) / kPi + 1.0) / 2.0)));
}

Verification verify(const PeriodicCoefficient& a, const Certificate& c, double margin, const FloquetOptions& opts) {
  Verification v;
  SpectrumSolver solver(a, opts);
  const auto value = [&](const EigenRef& r) {
    if (r.bc == Boundary::Periodic) return solver.periodic(r.index + 1).back().value;
    return solver.antiperiodic(r.index).back().value;
  };
  const auto name = [](const EigenRef& r) {
    return std::string(r.bc == Boundary::Periodic ? "periodic_" : "antiperiodic_") + std::to_string(r.index);
  };
  switch (c.conclusion.kind) {
    case ClaimKind::EigenvalueSigns: {
      const double neg = value(*c.conclusion.negative);
      const double pos = value(*c.conclusion.positive);
      v.evidence = {{name(*c.conclusion.negative), neg}, {name(*c.conclusion.positive), pos}};
      const bool ok = neg < -margin && pos > margin;
      v.consistent = !c.holds || ok;
      v.detail = ok ? "eigenvalue signs agree with the claim" : "eigenvalue signs differ from the claim";
      break;
    }
    case ClaimKind::StableAtZero: {
      const StabilityVerdict s = solver.classify(0.0);
      v.evidence = {{"discriminant_at_0", s.discriminant}};
      if (s.lower) v.evidence.push_back({"bracket_lower", *s.lower});
      if (s.upper) v.evidence.push_back({"bracket_upper", *s.upper});
      if (s.zone_index) v.evidence.push_back({"zone_index", static_cast<double>(*s.zone_index)});
      const bool ok = s.kind == Stability::Stable || s.kind == Stability::BoundaryStable;
      v.consistent = !c.holds || ok;
      v.detail = "mu = 0 is " + to_string(s.kind);
      break;
    }
    case ClaimKind::NotPeriodicEigenvalue: {
      const double d = solver.discriminant(0.0);
      v.evidence = {{"discriminant_at_0", d}};
      const bool ok = std::abs(d - 2.0) > opts.tol_boundary;
      v.consistent = !c.holds || ok;
      v.detail = ok ? "0 is not a periodic eigenvalue" : "0 is a periodic eigenvalue";
      break;
    }
    case ClaimKind::UniquePeriodicSolution:
      v.detail = "uniqueness claims are checked by shooting, not by the linear spectrum";
      break;
  }
  return v;
}

}  // namespace hill
