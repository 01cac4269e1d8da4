#pragma once

#include <array>

#include "hill/coefficient.hpp"

namespace hill {

/// Maps (u(s), u'(s)) to (u(e), u'(e)).
struct TransferMatrix {
  double m11 = 1.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 1.0;

  [[nodiscard]] double det() const { return m11 * m22 - m12 * m21; }
  [[nodiscard]] double trace() const { return m11 + m22; }
  [[nodiscard]] std::array<double, 2> apply(const std::array<double, 2>& y) const {
    return {m11 * y[0] + m12 * y[1], m21 * y[0] + m22 * y[1]};
  }
};

/// Composition: (later * earlier) propagates through `earlier` first.
TransferMatrix operator*(const TransferMatrix& later, const TransferMatrix& earlier);

/// Exact transfer matrix of u'' + q u = 0 over a length h.
TransferMatrix constant_block(double q, double h);

struct OdeOptions {
  double tol = 1e-12;
  /// Each non-constant piece is integrated with steps no longer than
  /// (piece length) / max_step_divisor.
  double max_step_divisor = 16.0;
};

/// Solution operator of u'' + (mu + a(x)) u = 0. Constant pieces use exact
/// blocks, the rest an adaptive Dormand–Prince 5(4) pair.
class Propagator {
 public:
  Propagator(const PeriodicCoefficient& a, double mu, OdeOptions opts = {});

  [[nodiscard]] TransferMatrix transfer(double s, double e) const;
  [[nodiscard]] std::array<double, 2> propagate(double s, double e, std::array<double, 2> y) const;

  /// Prüfer angle θ with u = r sin θ, u' = r cos θ, continued from θ(s) = theta0.
  /// It increases through every multiple of π, so it counts zeros of u.
  [[nodiscard]] double prufer_angle(double s, double e, double theta0) const;

 private:
  const PeriodicCoefficient& a_;
  double mu_;
  OdeOptions opts_;
};

TransferMatrix monodromy(const PeriodicCoefficient& a, double mu, OdeOptions opts = {});

}  // namespace hill
