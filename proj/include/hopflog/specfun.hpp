#pragma once

#include <functional>

namespace hopflog {

// log Gamma(x) for x > 0.
double log_gamma(double x);

// sqrt(pi) Gamma(r+1) / Gamma(r+1/2), from log-gamma differences.
double gamma_ratio(int r);

// psi(x) = (log Gamma)'(x) for x > 0.
double digamma(double x);

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Legendre P_l(u) by the three-term recurrence.
double legendre_p(int l, double u);

// Jacobi P_L^{(1,0)}(u) by the three-term recurrence. Satisfies
// (L+1) P_L^{(1,0)}(u) = sum_{l<=L} (2l+1) P_l(u).
double jacobi_p10(int L, double u);

// Closed form of the integral over [0, pi] of log(a + b cos x):
// pi log((a + sqrt(a^2 - b^2)) / 2). Requires a > 0 and a >= |b|.
double log_cos_integral(double a, double b);

// Adaptive quadrature

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  // Integrable singularities at the interval ends; the initial partition is
  // graded geometrically toward both endpoints.
  bool endpoint_singularity = false;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
  int evaluations = 0;
};

using Integrand = std::function<double(double)>;

// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b]: the interval
// with the largest error estimate is bisected until the total estimate meets
// max(abs_tol, rel_tol |I|). Throws NonConvergence (carrying the best
// estimate) when max_subdivisions is exhausted, DomainError when the
// integrand returns a non-finite value.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

// Integral over [a, inf) through t = a + u/(1-u), u in [0, 1).
QuadratureResult integrate_to_infinity(const Integrand& f, double a, const QuadratureSpec& spec = {});

}  // namespace hopflog
