#include "hill/ode.hpp"

#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "hill/errors.hpp"

namespace hill {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kPi = std::numbers::pi;

// Longest substep for non-oscillatory constant blocks, measured in units of
// 1/sqrt(|q|); keeps cosh/sinh far from overflow between renormalisations.
constexpr double kHyperbolicSpan = 20.0;

double nearest_branch(double angle, double reference) {
  return angle + 2.0 * kPi * std::round((reference - angle) / (2.0 * kPi));
}

template <std::size_t N, class System>
void integrate(System&& sys, std::array<double, N>& y, double lo, double hi, const OdeOptions& opts, double piece_len) {
  const double hmax = piece_len / opts.max_step_divisor;
  auto stepper = odeint::make_controlled(opts.tol, opts.tol, hmax, odeint::runge_kutta_dopri5<std::array<double, N>>());
  try {
    odeint::integrate_adaptive(stepper, sys, y, lo, hi, std::min(hmax, hi - lo));
  } catch (const odeint::odeint_error& e) {
    throw IntegrationFailure(std::string("adaptive step size collapsed: ") + e.what());
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw IntegrationFailure("solution overflowed during integration");
  }
}

struct LocalQ {
  const PeriodicCoefficient& a;
  const Piece& piece;
  double offset;
  double mu;
  double operator()(double x) const {
    double v = piece.expr.eval(x);
    if (!std::isfinite(v)) {
      // Removable point hit exactly by a stage: use the right-hand limit.
      if (!a.is_removable(a.reduce(x + offset))) throw NonFinite("coefficient is not finite at x = " + std::to_string(x + offset));
      v = piece.expr.eval(x + PeriodicCoefficient::kRemovableOffset * std::max(1.0, a.period()));
    }
    return mu + v;
  }
};

// Prüfer angle through a constant block of u'' + q u = 0.
double prufer_constant(double q, double h, double theta) {
  if (q > 0.0) {
    const double w = std::sqrt(q);
    const double j = std::round(theta / kPi);
    const double t = theta - j * kPi;  // in [-π/2, π/2]
    const double psi = j * kPi + std::atan2(w * std::sin(t), std::cos(t)) + w * h;
    const double j2 = std::round(psi / kPi);
    const double t2 = psi - j2 * kPi;
    return j2 * kPi + std::atan2(std::sin(t2), w * std::cos(t2));
  }
  // Without oscillation the angle moves by less than π across any block, so the
  // branch nearest to the old angle is the right one.
  const double span = q < 0.0 ? kHyperbolicSpan / std::sqrt(-q) : h;
  double done = 0.0;
  while (done < h) {
    const double step = std::min(span, h - done);
    const auto y = constant_block(q, step).apply({std::sin(theta), std::cos(theta)});
    theta = nearest_branch(std::atan2(y[0], y[1]), theta);
    done += step;
  }
  return theta;
}

}  // namespace

TransferMatrix operator*(const TransferMatrix& l, const TransferMatrix& r) {
  return {l.m11 * r.m11 + l.m12 * r.m21, l.m11 * r.m12 + l.m12 * r.m22, l.m21 * r.m11 + l.m22 * r.m21,
          l.m21 * r.m12 + l.m22 * r.m22};
}

TransferMatrix constant_block(double q, double h) {
  if (q > 0.0) {
    const double w = std::sqrt(q);
    const double c = std::cos(w * h);
    const double s = std::sin(w * h);
    return {c, s / w, -w * s, c};
  }
  if (q < 0.0) {
    const double w = std::sqrt(-q);
    const double c = std::cosh(w * h);
    const double s = std::sinh(w * h);
    return {c, s / w, w * s, c};
  }
  return {1.0, h, 0.0, 1.0};
}

Propagator::Propagator(const PeriodicCoefficient& a, double mu, OdeOptions opts) : a_(a), mu_(mu), opts_(opts) {}

TransferMatrix Propagator::transfer(double s, double e) const {
  TransferMatrix m;
  for (const Segment& seg : segments(a_, s, e)) {
    if (const auto c = seg.piece->expr.constant_value()) {
      m = constant_block(mu_ + *c, seg.hi - seg.lo) * m;
      continue;
    }
    const LocalQ q{a_, *seg.piece, seg.offset, mu_};
    std::array<double, 4> y{1.0, 0.0, 0.0, 1.0};  // columns (u, u') for both initial data
    const auto sys = [&q](const std::array<double, 4>& z, std::array<double, 4>& dz, double x) {
      const double qx = q(x);
      dz[0] = z[1];
      dz[1] = -qx * z[0];
      dz[2] = z[3];
      dz[3] = -qx * z[2];
    };
    integrate(sys, y, seg.lo, seg.hi, opts_, seg.piece->to - seg.piece->from);
    m = TransferMatrix{y[0], y[2], y[1], y[3]} * m;
  }
  return m;
}

std::array<double, 2> Propagator::propagate(double s, double e, std::array<double, 2> y) const {
  for (const Segment& seg : segments(a_, s, e)) {
    if (const auto c = seg.piece->expr.constant_value()) {
      y = constant_block(mu_ + *c, seg.hi - seg.lo).apply(y);
      continue;
    }
    const LocalQ q{a_, *seg.piece, seg.offset, mu_};
    const auto sys = [&q](const std::array<double, 2>& z, std::array<double, 2>& dz, double x) {
      dz[0] = z[1];
      dz[1] = -q(x) * z[0];
    };
    integrate(sys, y, seg.lo, seg.hi, opts_, seg.piece->to - seg.piece->from);
  }
  return y;
}

double Propagator::prufer_angle(double s, double e, double theta0) const {
  double theta = theta0;
  for (const Segment& seg : segments(a_, s, e)) {
    if (const auto c = seg.piece->expr.constant_value()) {
      theta = prufer_constant(mu_ + *c, seg.hi - seg.lo, theta);
      continue;
    }
    const LocalQ q{a_, *seg.piece, seg.offset, mu_};
    std::array<double, 1> y{theta};
    const auto sys = [&q](const std::array<double, 1>& z, std::array<double, 1>& dz, double x) {
      const double sn = std::sin(z[0]);
      const double cs = std::cos(z[0]);
      dz[0] = cs * cs + q(x) * sn * sn;
    };
    integrate(sys, y, seg.lo, seg.hi, opts_, seg.piece->to - seg.piece->from);
    theta = y[0];
  }
  return theta;
}

TransferMatrix monodromy(const PeriodicCoefficient& a, double mu, OdeOptions opts) {
  return Propagator(a, mu, opts).transfer(0.0, a.period());
}

}  // namespace hill
