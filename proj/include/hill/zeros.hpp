#pragma once

#include <vector>

#include "hill/coefficient.hpp"
#include "hill/floquet.hpp"

namespace hill {

/// Zeros of a normalised Floquet solution at mu = 0: 0 = x0 < x2 < ... < x2m = T
/// for u, and x1 < x3 < ... < x(2m-1) for u'. Coordinates refer to the
/// coefficient shifted by `shift`.
struct ZeroStructure {
  std::vector<double> u_zeros;
  std::vector<double> du_zeros;
  int m = 0;
  /// Gaps of the merged ordered list of u and u' zeros.
  std::vector<double> spacings;
  bool alternates = false;
  double shift = 0.0;
};

ZeroStructure extract_zero_structure(const PeriodicCoefficient& a, Boundary bc, int intervals = 4096,
                                     const OdeOptions& opts = {});

struct StructureReport {
  double spacing_bound = 0.0;
  double max_spacing = 0.0;
  double min_spacing = 0.0;
  bool spacings_bounded = false;
  bool one_strict = false;
  bool parity = false;
  bool count = false;
  bool alternation = false;
  bool sum_is_period = false;
  [[nodiscard]] bool ok() const {
    return spacings_bounded && one_strict && parity && count && alternation && sum_is_period;
  }
};

/// Spacings <= T/(4n), one of them strictly, m even and m >= 2(n+1).
StructureReport check_periodic_structure(const ZeroStructure& z, int n, double period);
/// Spacings <= T/(2(2n-1)), one of them strictly, m odd and m >= 2n+1.
StructureReport check_antiperiodic_structure(const ZeroStructure& z, int n, double period);

struct SubintervalReport {
  double lambda = 0.0;
  /// distance_i - sqrt(lambda) cot(sqrt(lambda) (x_{i+1} - x_i)) per gap.
  std::vector<double> margins;
  std::vector<double> distances;
  double cot_sum = 0.0;
  double total_distance = 0.0;
  double min_margin = 0.0;
};

/// Per-gap L1 distance from the constant of the periodic (lambda_{2n-1}) or
/// antiperiodic (lambda~_{2n-1}) problem against its lower bound.
SubintervalReport subinterval_inequality(const PeriodicCoefficient& a, const ZeroStructure& z, int n, Boundary side,
                                         const QuadratureOptions& quad = {});

/// Lower bound 2m cot(n pi/m) (periodic) or 2m cot((2n-1) pi/(2m))
/// (antiperiodic) for sum_i cot(sqrt(lambda) dx_i) over 2m gaps summing to T.
double equal_spacing_bound(int n, int m, Boundary side);

/// Principal eigenvalue of -u'' on (s, e) with u(s) = 0, u'(e) = 0.
double mixed_principal_eigenvalue(double s, double e);

}  // namespace hill
