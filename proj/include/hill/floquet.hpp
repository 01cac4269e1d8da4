#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hill/coefficient.hpp"
#include "hill/ode.hpp"

namespace hill {

enum class Boundary { Periodic, Antiperiodic };

struct Eigenvalue {
  int index = 0;
  double value = 0.0;
  int multiplicity = 1;
};

struct SpectrumSlice {
  std::vector<Eigenvalue> periodic;      // indices 0, 1, 2, ...
  std::vector<Eigenvalue> antiperiodic;  // indices 1, 2, 3, ...
};

enum class Stability { Stable, Unstable, BoundaryStable, BoundaryUnstable };

struct StabilityVerdict {
  Stability kind = Stability::Unstable;
  double discriminant = 0.0;
  std::optional<int> zone_index;
  /// Eigenvalues bracketing mu: largest one <= mu and smallest one > mu.
  std::optional<double> lower;
  std::optional<double> upper;
};

struct InterlacingReport {
  bool ok = true;
  /// Position p in the merged sequence λ0, λ̃1, λ̃2, λ1, λ2, λ̃3, ... such that
  /// the relation between entries p and p+1 fails.
  std::optional<std::size_t> violation;
  std::string detail;
};

struct SampledSolution {
  std::vector<double> x;
  std::vector<double> u;
  std::vector<double> du;
  /// The coefficient was shifted by this amount before sampling (0 if the
  /// solution was not normalised).
  double shift = 0.0;
};

struct FloquetOptions {
  double tol_root = 1e-10;
  double tol_boundary = 1e-7;
  /// A gap is closed when the monodromy equals ±I within this tolerance.
  double tol_coexistence = 1e-7;
  OdeOptions ode;
};

double discriminant(const PeriodicCoefficient& a, double mu, const OdeOptions& opts = {});

/// Band-edge solver. Each gap of the spectrum contains exactly one Dirichlet
/// eigenvalue (u(0) = u(T) = 0), which is found by Prüfer-angle counting and
/// then brackets the periodic or antiperiodic edges on either side.
/// Results are cached, so one solver should serve a whole sweep in mu.
class SpectrumSolver {
 public:
  explicit SpectrumSolver(const PeriodicCoefficient& a, FloquetOptions opts = {});

  [[nodiscard]] const PeriodicCoefficient& coefficient() const { return a_; }
  [[nodiscard]] double discriminant(double mu) const;

  /// k-th Dirichlet eigenvalue, k >= 1.
  double dirichlet(int k);
  double lambda0();
  /// Edges of the k-th gap (k >= 1): antiperiodic (λ̃_k, λ̃_{k+1}) for odd k,
  /// periodic (λ_{k-1}, λ_k) for even k.
  std::pair<double, double> gap(int k);

  std::vector<Eigenvalue> periodic(int count);
  std::vector<Eigenvalue> antiperiodic(int count);
  StabilityVerdict classify(double mu);

 private:
  double edge_root(double outside, double inside, double sign);

  PeriodicCoefficient a_;
  FloquetOptions opts_;
  double inf_ = 0.0;
  double sup_ = 0.0;
  std::map<int, double> dirichlet_;
  std::map<int, std::pair<double, double>> gaps_;
  std::optional<double> lambda0_;
};

SpectrumSlice periodic_eigenvalues(const PeriodicCoefficient& a, int count, const FloquetOptions& opts = {});
SpectrumSlice antiperiodic_eigenvalues(const PeriodicCoefficient& a, int count, const FloquetOptions& opts = {});
SpectrumSlice spectrum(const PeriodicCoefficient& a, int periodic_count, int antiperiodic_count,
                       const FloquetOptions& opts = {});

StabilityVerdict classify(const PeriodicCoefficient& a, double mu, const FloquetOptions& opts = {});

InterlacingReport check_interlacing(const SpectrumSlice& s, double slack = 1e-9);

/// Nontrivial Floquet solution with multiplier +1 (periodic) or -1
/// (antiperiodic) sampled at `intervals + 1` equally spaced points of [0, T].
/// With `normalize`, the coefficient is first shifted to a zero of the solution
/// so that u(0) = 0 and u'(0) = 1.
SampledSolution eigenfunction(const PeriodicCoefficient& a, double mu, Boundary bc, bool normalize = false,
                              int intervals = 4096, const OdeOptions& opts = {});

std::string to_string(Stability s);
std::string to_string(Boundary b);

}  // namespace hill
