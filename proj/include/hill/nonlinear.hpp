#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hill/coefficient.hpp"
#include "hill/expression.hpp"
#include "hill/floquet.hpp"
#include "hill/lyapunov.hpp"

namespace hill {

/// u'' + f(x, u) = 0 with u(0) = u(T), u'(0) = u'(T).
class NonlinearProblem {
 public:
  /// Without `fu` the partial derivative is taken symbolically when the
  /// grammar allows it and by central differences otherwise. Throws
  /// DomainError unless f(x + T, u) = f(x, u) within 1e-10 on samples.
  NonlinearProblem(Expression f, double period, std::optional<Expression> fu = std::nullopt);

  void set_envelopes(PeriodicCoefficient alpha, PeriodicCoefficient beta);

  [[nodiscard]] double period() const { return period_; }
  [[nodiscard]] const Expression& f() const { return f_; }
  [[nodiscard]] double f(double x, double u) const { return f_.eval(x, u); }
  [[nodiscard]] double fu(double x, double u) const;
  [[nodiscard]] bool has_envelopes() const { return alpha_.has_value(); }
  [[nodiscard]] const PeriodicCoefficient& alpha() const;
  [[nodiscard]] const PeriodicCoefficient& beta() const;

 private:
  Expression f_;
  double period_;
  std::optional<Expression> fu_;
  std::optional<PeriodicCoefficient> alpha_;
  std::optional<PeriodicCoefficient> beta_;
};

using UBox = std::pair<double, double>;

/// alpha <= fu <= beta on a 256 x 256 grid of [0, T) x u_box.
struct SandwichReport {
  bool holds = false;
  double lower_margin = 0.0;  // min of fu - alpha
  double upper_margin = 0.0;  // min of beta - fu
  double fu_min = 0.0;
  double fu_max = 0.0;
};

SandwichReport check_sandwich(const NonlinearProblem& p, const UBox& u_box);

/// Range of fu sampled on the same grid.
std::pair<double, double> fu_range(const NonlinearProblem& p, const UBox& u_box);

/// Envelope form of the periodic L1 certificate: lambda_{2n-1} strictly below
/// alpha, the sandwich, and ||beta||_1 <= gamma1(n, T). Throws MissingEnvelopes.
Certificate check_l1_hypotheses(const NonlinearProblem& p, int n, const UBox& u_box, const CertifyOptions& opts = {});
/// Envelope form of the L-infinity periodic certificate (T = pi).
Certificate check_linf_hypotheses(const NonlinearProblem& p, const UBox& u_box, const CertifyOptions& opts = {});
/// fu confined strictly inside ((2n)^2 pi^2/T^2, (2n+2)^2 pi^2/T^2) for some n >= 0.
Certificate check_classical_band(const NonlinearProblem& p, const UBox& u_box);

struct ShootingOptions {
  int starts = 16;
  std::uint64_t seed = 20090605;
  /// Half-width of the start box; defaults to 10 (1 + sup|f(., 0)|).
  std::optional<double> box;
  int max_steps = 50;
  double residual_tol = 1e-8;
  double dedup_tol = 1e-6;
  double fd_step = 1e-6;
  int samples = 4096;
  double ode_tol = 1e-12;
};

struct PeriodicSolution {
  double u0 = 0.0;
  double du0 = 0.0;
  double residual = 0.0;
  SampledSolution trajectory;
};

struct ShootingResult {
  std::vector<PeriodicSolution> solutions;  // one per cluster, ordered by (u0, du0)
  bool unique = false;
  int converged = 0;
  int starts = 0;
  double box = 0.0;
};

/// State (u(T), u'(T)) of the initial value problem from (u0, du0) at x = 0.
std::pair<double, double> shoot(const NonlinearProblem& p, double u0, double du0, double ode_tol = 1e-12);

/// Multistart Newton on the periodicity defect. Throws NoConvergence if no
/// start converges.
ShootingResult solve_periodic(const NonlinearProblem& p, const ShootingOptions& opts = {});

}  // namespace hill
