#include "hopflog/specfun.hpp"

#include <cmath>
#include <numbers>

#include "hopflog/errors.hpp"

namespace hopflog {

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double gamma_ratio(int r) {
  if (r < 1) throw DomainError("gamma_ratio: r must be a positive integer");
  const double log_ratio =
      0.5 * std::log(std::numbers::pi) + log_gamma(r + 1.0) - log_gamma(r + 0.5);
  return std::exp(log_ratio);
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
  // Shift up with psi(x) = psi(x+1) - 1/x, then the asymptotic series.
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // Bernoulli terms B_2n / (2n x^2n), n = 1..7.
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12.0))))));
  return acc + std::log(x) - 0.5 / x - series;
}

double legendre_p(int l, double u) {
  if (l < 0) throw DomainError("legendre_p: negative degree");
  if (l == 0) return 1.0;
  double prev = 1.0, cur = u;
  for (int n = 2; n <= l; ++n) {
    const double next = ((2.0 * n - 1.0) * u * cur - (n - 1.0) * prev) / n;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_p10(int L, double u) {
  if (L < 0) throw DomainError("jacobi_p10: negative degree");
  if (L == 0) return 1.0;
  // (n+1)(2n-1) P_n = ((2n+1)(2n-1) u + 1) P_{n-1} - (n-1)(2n+1) P_{n-2}
  double prev = 1.0, cur = 0.5 * (3.0 * u + 1.0);
  for (int n = 2; n <= L; ++n) {
    const double nn = n;
    const double next =
        (((2.0 * nn + 1.0) * (2.0 * nn - 1.0) * u + 1.0) * cur - (nn - 1.0) * (2.0 * nn + 1.0) * prev) /
        ((nn + 1.0) * (2.0 * nn - 1.0));
    prev = cur;
    cur = next;
  }
  return cur;
}

double log_cos_integral(double a, double b) {
  if (!(a > 0.0) || a < std::abs(b)) throw DomainError("log_cos_integral: requires a > 0 and a >= |b|");
  const double root = std::sqrt((a - b) * (a + b));
  return std::numbers::pi * std::log((a + root) / 2.0);
}

}  // namespace hopflog
