#include "hill/witness.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "hill/errors.hpp"

namespace hill {

namespace {

constexpr double kPi = std::numbers::pi;

struct Layer {
  double k;   // frequency of the sine arc, 2nπ/T
  double q;   // quarter cell, T/(4(n+1))
  double c3;  // cubic coefficient
  double eps;

  // Cubic-corrected arc on [0, eps); the cubic kills u'(0) and two derivatives
  // vanish at eps so the join is C².
  [[nodiscard]] Expression inner(const Expression& y) const {
    return -sin(k * (y - q)) + c3 * pow(y - eps, 3);
  }
  [[nodiscard]] Expression outer(const Expression& y) const { return -sin(k * (y - q)); }
};

Layer make_layer(int n, double period, double eps) {
  if (n < 1) throw DomainError("witness family needs n >= 1");
  if (!(period > 0.0)) throw DomainError("period must be positive");
  if (!(eps > 0.0) || !(eps < max_witness_eps(n, period))) {
    throw DomainError("eps must lie in (0, T/(8(n+1)))");
  }
  const double k = 2.0 * n * kPi / period;
  const double q = period / (4.0 * (n + 1));
  const double c3 = k * std::cos(n * kPi / (2.0 * (n + 1))) / (3.0 * eps * eps);
  return {k, q, c3, eps};
}

std::vector<double> quarter_points(int n, double period) {
  std::vector<double> out;
  const double q = period / (4.0 * (n + 1));
  for (int j = 1; j <= 2 * (n + 1); ++j) out.push_back((2 * j - 1) * q);
  return out;
}

}  // namespace

double max_witness_eps(int n, double period) { return period / (8.0 * (n + 1)); }

PeriodicCoefficient make_u_eps(int n, double period, double eps) {
  const Layer L = make_layer(n, period, eps);
  const Expression x = Expression::x();
  const double q = L.q;
  std::vector<Piece> pieces;
  for (int cell = 0; cell <= n; ++cell) {
    const double b = 4.0 * q * cell;
    const Expression y = x - b;
    pieces.push_back({b, b + eps, L.inner(y)});
    pieces.push_back({b + eps, b + q, L.outer(y)});
    // odd reflection about q
    pieces.push_back({b + q, b + 2 * q - eps, -L.outer(2 * q - y)});
    pieces.push_back({b + 2 * q - eps, b + 2 * q, -L.inner(2 * q - y)});
    // even reflection about 2q
    pieces.push_back({b + 2 * q, b + 2 * q + eps, -L.inner(y - 2 * q)});
    pieces.push_back({b + 2 * q + eps, b + 3 * q, -L.outer(y - 2 * q)});
    pieces.push_back({b + 3 * q, b + 4 * q - eps, L.outer(4 * q - y)});
    pieces.push_back({b + 4 * q - eps, b + 4 * q, L.inner(4 * q - y)});
  }
  return PeriodicCoefficient(period, std::move(pieces));
}

PeriodicCoefficient make_a_eps(int n, double period, double eps) {
  const Layer L = make_layer(n, period, eps);
  const Expression x = Expression::x();
  const Expression u1 = L.inner(x);
  // -u''/u on the layer; reflections of u leave the quotient unchanged.
  const Expression layer = -u1.derivative().derivative() / u1;
  // On the sine arc the quotient is identically k².
  const Expression arc = Expression::constant(L.k * L.k);
  const double half = 2.0 * L.q;
  std::vector<Piece> pieces;
  for (int h = 0; h < 2 * (n + 1); ++h) {
    const double b = half * h;
    pieces.push_back({b, b + eps, layer.substitute_x(x - b)});
    pieces.push_back({b + eps, b + half - eps, arc});
    pieces.push_back({b + half - eps, b + half, layer.substitute_x((b + half) - x)});
  }
  return PeriodicCoefficient(period, std::move(pieces), quarter_points(n, period));
}

WitnessFamilyEps make_witness(int n, double period, double eps) {
  return {n, period, eps, make_u_eps(n, period, eps), make_a_eps(n, period, eps)};
}

std::vector<std::pair<double, double>> tightness_sweep(int n, double period, const std::vector<double>& eps_list) {
  for (std::size_t i = 1; i < eps_list.size(); ++i) {
    if (!(eps_list[i] < eps_list[i - 1])) throw DomainError("eps list must be strictly decreasing");
  }
  const double lambda = std::pow(2.0 * n * kPi / period, 2);
  std::vector<std::pair<double, double>> out;
  for (double eps : eps_list) {
    out.emplace_back(eps, l1_distance(make_a_eps(n, period, eps), lambda, 0.0, period));
  }
  return out;
}

TwoStepPotential make_two_step(double alpha, double x0) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(x0 > 0.0 && x0 < kPi)) throw DomainError("x0 must lie in (0, pi)");
  const double left = alpha * alpha / (x0 * x0);
  const double right = alpha * alpha / ((kPi - x0) * (kPi - x0));
  PeriodicCoefficient a(kPi, {Piece{0.0, x0, Expression::constant(left)}, Piece{x0, kPi, Expression::constant(right)}});
  return {alpha, x0, std::move(a)};
}

namespace {

void check_two_step_args(double alpha, double x0) {
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  if (!(x0 > 0.0 && x0 < kPi)) throw DomainError("x0 must lie in (0, pi)");
}

// Unknowns (A, B, C, D) of u = A sin(αx/x0) + B cos(αx/x0) on (0, x0) and
// u = C sin(α(x−π)/(π−x0)) + D cos(α(x−π)/(π−x0)) on (x0, π). `s` is the Floquet
// multiplier: the first two rows impose u(π) = s u(0) and u'(π) = s u'(0).
double matching_determinant(double alpha, double x0, double s) {
  const double p = alpha / x0;
  const double r = alpha / (kPi - x0);
  const double sa = std::sin(alpha);
  const double ca = std::cos(alpha);
  Eigen::Matrix4d m;
  m << 0.0, 1.0, 0.0, -s,                    //
      p, 0.0, -s * r, 0.0,                   //
      sa, ca, sa, -ca,                       //
      p * ca, -p * sa, -r * ca, -r * sa;
  return m.determinant();
}

}  // namespace

double anti_determinant(double alpha, double x0) {
  check_two_step_args(alpha, x0);
  const double sa = std::sin(alpha);
  return (-4.0 * x0 * x0 + 4.0 * x0 * kPi - kPi * kPi * sa * sa) * alpha * alpha /
         (x0 * x0 * (kPi - x0) * (kPi - x0));
}

double anti_determinant_system(double alpha, double x0) {
  check_two_step_args(alpha, x0);
  return matching_determinant(alpha, x0, -1.0);
}

double periodic_determinant(double alpha, double x0) {
  check_two_step_args(alpha, x0);
  if (!(alpha < kPi)) throw DomainError("alpha must lie in (0, pi)");
  const double sa = std::sin(alpha);
  return kPi * kPi * alpha * alpha * sa * sa / (x0 * x0 * (kPi - x0) * (kPi - x0));
}

double periodic_determinant_system(double alpha, double x0) {
  check_two_step_args(alpha, x0);
  return matching_determinant(alpha, x0, 1.0);
}

std::pair<double, double> anti_resonant_x0(double alpha) {
  if (!(alpha > 0.0 && alpha < kPi / 2)) throw DomainError("alpha must lie in (0, pi/2)");
  const double c = std::cos(alpha);
  return {kPi * (1.0 - c) / 2.0, kPi * (1.0 + c) / 2.0};
}

}  // namespace hill
