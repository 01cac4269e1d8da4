#pragma once

#include <cstddef>
#include <vector>

#include "hill/expression.hpp"

namespace hill {

/// One clause of a piecewise coefficient. The expression is written in the
/// absolute coordinate x, valid on [from, to).
struct Piece {
  double from = 0.0;
  double to = 0.0;
  Expression expr;
};

struct DominanceReport {
  bool holds_ae = false;
  bool strict_on_positive_measure = false;
  double min_gap = 0.0;
  double strict_fraction = 0.0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  std::size_t budget = 1'000'000;
};

/// T-periodic piecewise-analytic coefficient.
class PeriodicCoefficient {
 public:
  /// Offset used to evaluate at a removable point (right-hand limit).
  static constexpr double kRemovableOffset = 1e-9;

  PeriodicCoefficient(double period, std::vector<Piece> pieces, std::vector<double> removable = {});
  static PeriodicCoefficient constant(double value, double period);

  [[nodiscard]] double period() const { return period_; }
  [[nodiscard]] const std::vector<Piece>& pieces() const { return pieces_; }
  [[nodiscard]] const std::vector<double>& removable_points() const { return removable_; }

  /// Value of the periodic extension. Throws NonFinite off the removable set.
  [[nodiscard]] double eval(double x) const;

  /// Reduces x into [0, T).
  [[nodiscard]] double reduce(double x) const;
  /// Index of the piece containing a reduced coordinate.
  [[nodiscard]] std::size_t piece_at(double reduced_x) const;
  [[nodiscard]] bool is_removable(double reduced_x) const;
  [[nodiscard]] bool is_piecewise_constant() const;

 private:
  double period_;
  std::vector<Piece> pieces_;
  std::vector<double> removable_;
};

/// Intersection of a window with one piece, in the piece's own coordinates
/// [lo, hi] ⊆ [from, to]; `offset` is the multiple of T that maps it back.
struct Segment {
  const Piece* piece;
  double lo;
  double hi;
  double offset;
};

/// Ordered decomposition of [s, e] into piece segments.
std::vector<Segment> segments(const PeriodicCoefficient& a, double s, double e);

/// ∫_s^e a(x) dx over any window (it may span several periods).
double integral(const PeriodicCoefficient& a, double s, double e, const QuadratureOptions& opts = {});

/// ∫_s^e |a(x) - c| dx.
double l1_distance(const PeriodicCoefficient& a, double c, double s, double e, const QuadratureOptions& opts = {});

/// ∫_0^T |a|.
double l1_norm(const PeriodicCoefficient& a, const QuadratureOptions& opts = {});

/// Essential supremum of |a| on [s, e].
double linf_norm(const PeriodicCoefficient& a, double s, double e);

/// Essential infimum and supremum of a over one period.
double ess_inf(const PeriodicCoefficient& a);
double ess_sup(const PeriodicCoefficient& a);

/// Checks c ≺ a: a ≥ c almost everywhere and a > c on a set of positive measure.
DominanceReport dominates(const PeriodicCoefficient& a, double c);

/// x ↦ a(r + x).
PeriodicCoefficient shift(const PeriodicCoefficient& a, double r);

/// x ↦ max(a(x), 0).
PeriodicCoefficient positive_part(const PeriodicCoefficient& a);

/// x ↦ s·a(x) + c.
PeriodicCoefficient affine(const PeriodicCoefficient& a, double s, double c);

}  // namespace hill
