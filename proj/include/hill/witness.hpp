#pragma once

#include <utility>
#include <vector>

#include "hill/coefficient.hpp"

namespace hill {

/// Smooth extremal family for the periodic L¹ constant: a T/(n+1)-periodic
/// solution u built from a sine arc whose endpoint corner is rounded by a cubic
/// on a layer of width eps, and the coefficient a = -u''/u it solves.
struct WitnessFamilyEps {
  int n = 1;
  double period = 0.0;
  double eps = 0.0;
  PeriodicCoefficient u;
  PeriodicCoefficient a;
};

/// Largest admissible layer width, T/(8(n+1)).
double max_witness_eps(int n, double period);

/// The solution u_eps. Throws DomainError unless 0 < eps < T/(8(n+1)).
PeriodicCoefficient make_u_eps(int n, double period, double eps);
PeriodicCoefficient make_a_eps(int n, double period, double eps);
WitnessFamilyEps make_witness(int n, double period, double eps);

/// (eps, ‖a_eps − λ_{2n−1}‖_{L¹(0,T)}) for a decreasing list of widths.
std::vector<std::pair<double, double>> tightness_sweep(int n, double period, const std::vector<double>& eps_list);

/// Two-plateau coefficient on [0, π): α²/x0² on (0, x0), α²/(π−x0)² on (x0, π).
struct TwoStepPotential {
  double alpha = 0.0;
  double x0 = 0.0;
  PeriodicCoefficient a;
};

TwoStepPotential make_two_step(double alpha, double x0);

/// Determinant of the matching system for antiperiodic solutions of the
/// two-step equation at mu = 0 (closed form).
double anti_determinant(double alpha, double x0);
/// The same determinant assembled from the 4×4 matching conditions.
double anti_determinant_system(double alpha, double x0);

double periodic_determinant(double alpha, double x0);
double periodic_determinant_system(double alpha, double x0);

/// Plateau split points at which the antiperiodic problem resonates:
/// π(1 − cos α)/2 and π(1 + cos α)/2.
std::pair<double, double> anti_resonant_x0(double alpha);

}  // namespace hill
