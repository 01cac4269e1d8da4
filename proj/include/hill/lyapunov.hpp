#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hill/coefficient.hpp"
#include "hill/floquet.hpp"

namespace hill {

// ---- optimal constants -------------------------------------------------------

/// λ_{2n−1} = λ_{2n} of the zero coefficient: 4n²π²/T².
double lambda_const(int n, double period);
/// λ̃_{2n−1} = λ̃_{2n} of the zero coefficient: (2n−1)²π²/T².
double lambda_anti_const(int n, double period);

/// Optimal periodic L¹ constant; 16/T for n = 0.
double beta1(int n, double period);
/// The n ≥ 1 closed form evaluated at real n; only meaningful as n → 0⁺.
double beta1_real(double n, double period);
double gamma1(int n, double period);
/// Optimal antiperiodic L¹ constant; 4/T for n = 0.
double beta1_anti(int n, double period);
double gamma1_anti(int n, double period);
/// Earlier L¹ bound 16(n+1)²/T, kept for comparison.
double zhang(int n, double period);

/// Right-hand side kT + 2(p+1)√k·cot(√k·T/(2(p+1))) of the zone criterion.
double kp_rhs(double k, int p, double period);

struct ConstantsRow {
  int n = 0;
  double period = 0.0;
  double lambda_2n_minus_1 = 0.0;
  double beta1 = 0.0;
  double gamma1 = 0.0;
  std::optional<double> beta1_anti;
  std::optional<double> gamma1_anti;
  std::optional<double> zhang;
};

/// Rows n = 0..n_max. The n = 0 row carries λ = 0, β = γ = 16/T and no
/// antiperiodic or comparison entries.
std::vector<ConstantsRow> constants_table(int n_max, double period);

// ---- variational lemma ------------------------------------------------------

/// min over u(a) = 0 of (∫u'² − M∫u²)/u(b)² on [a, b]: √M·cot(√M(b − a)).
/// Requires a < b and 0 < M ≤ π²/(4(b − a)²).
double j_min(double M, double a, double b);

/// (∫u'² − M∫u²)/u(b)² for u sampled on a uniform grid with an even number of
/// intervals (composite Simpson).
double j_functional(const std::vector<double>& x, const std::vector<double>& u, const std::vector<double>& du, double M);

// ---- certificates -----------------------------------------------------------

enum class TheoremId {
  L1_PERIODIC_N,
  L1_ANTIPERIODIC_N,
  L1_ZONE_KP,
  LINF_FIRST_ZONE,
  LINF_PERIODIC,
  CLASSICAL_16T,
  NONLINEAR_L1,
  NONLINEAR_LINF,
  CLASSICAL_BAND,
};

std::string to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(const std::string& name);

struct NamedValue {
  std::string name;
  double value = 0.0;
};

enum class ClaimKind { EigenvalueSigns, StableAtZero, NotPeriodicEigenvalue, UniquePeriodicSolution };

struct EigenRef {
  Boundary bc = Boundary::Periodic;
  int index = 0;
};

/// What a certificate asserts when it holds. For EigenvalueSigns the claim is
/// negative < 0 < positive.
struct Conclusion {
  ClaimKind kind = ClaimKind::EigenvalueSigns;
  std::optional<EigenRef> negative;
  std::optional<EigenRef> positive;
  std::string text;
};

struct Certificate {
  TheoremId theorem = TheoremId::L1_PERIODIC_N;
  /// n for the L¹ theorems, the successful p for the zone criterion, else 0.
  int index = 0;
  bool holds = false;
  std::vector<NamedValue> hypotheses;
  /// Each margin is ≥ 0 exactly when its hypothesis clause is met.
  std::vector<NamedValue> margins;
  Conclusion conclusion;
  std::vector<std::string> diagnostics;
};

struct CertifyOptions {
  QuadratureOptions quadrature;
  /// Tolerance on the non-strict L¹ bounds.
  double bound_slack = 1e-12;
  int x0_grid = 1024;
};

Certificate certify_l1_periodic(const PeriodicCoefficient& a, int n, const CertifyOptions& opts = {});
Certificate certify_l1_antiperiodic(const PeriodicCoefficient& a, int n, const CertifyOptions& opts = {});
Certificate certify_zone_kp(const PeriodicCoefficient& a, const CertifyOptions& opts = {});
/// Both L∞ criteria require T = π and throw DomainError otherwise.
Certificate certify_linf_first_zone(const PeriodicCoefficient& a, const CertifyOptions& opts = {});
Certificate certify_linf_periodic(const PeriodicCoefficient& a, const CertifyOptions& opts = {});
Certificate classical_16T(const PeriodicCoefficient& a, const CertifyOptions& opts = {});

/// Result of the x0 scan shared by the L∞ criteria.
struct X0Scan {
  double best_x0 = 0.0;
  double best_need = 0.0;  // max{x0²‖a‖∞(0,x0), (π−x0)²‖a‖∞(x0,π)} at best_x0
  double best_margin = 0.0;
  int admissible = 0;
  int grid = 0;
  std::vector<std::string> diagnostics;
};

/// First-zone scan: margin = min(π/2 − α, x0 − π(1−cos α)/2, π(1+cos α)/2 − x0)
/// with α = √need.
X0Scan scan_first_zone(const PeriodicCoefficient& a, int grid);
/// Periodic scan: margin = π² − need, admissible when strictly positive.
X0Scan scan_periodic(const PeriodicCoefficient& a, int grid);

/// The only n for which the periodic (resp. antiperiodic) dominance clause can
/// hold, given ess inf a; at least 1.
int default_index_periodic(const PeriodicCoefficient& a);
int default_index_antiperiodic(const PeriodicCoefficient& a);

struct Verification {
  bool consistent = true;
  std::vector<NamedValue> evidence;
  std::string detail;
};

/// Compares a certificate's conclusion with the Floquet ground truth. Claims of
/// certificates that do not hold are reported but never counted as contradicted.
/// For sign claims, `margin` is the distance from 0 each eigenvalue must keep.
Verification verify(const PeriodicCoefficient& a, const Certificate& c, double margin = 0.0,
                    const FloquetOptions& opts = {});

}  // namespace hill
