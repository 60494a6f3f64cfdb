#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hopflog/errors.hpp"
#include "hopflog/specfun.hpp"
#include "support/stats.hpp"

using namespace hopflog;

namespace {

// Gamma ratio for integer r from factorials: sqrt(pi) r! / Gamma(r + 1/2)
// with Gamma(r + 1/2) = (2r)! sqrt(pi) / (4^r r!), i.e. 4^r (r!)^2 / (2r)!.
long double gamma_ratio_oracle(int r) {
  long double v = 1.0L;
  for (int j = 1; j <= r; ++j) v *= 4.0L * j * j / ((2.0L * j - 1.0L) * (2.0L * j));
  return v;
}

}  // namespace

TEST_CASE("log_gamma") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
  CHECK(log_gamma(11.0) == doctest::Approx(std::log(3628800.0)).epsilon(1e-14));
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("gamma_ratio against the factorial product") {
  CHECK(gamma_ratio(1) == doctest::Approx(2.0).epsilon(1e-14));
  for (int r = 1; r <= 200; ++r)
    CHECK(gamma_ratio(r) == doctest::Approx(static_cast<double>(gamma_ratio_oracle(r))).epsilon(1e-12));
}

TEST_CASE("digamma") {
  CHECK(digamma(1.0) == doctest::Approx(-kEulerGamma).epsilon(1e-14));
  CHECK(digamma(1.5) == doctest::Approx(2.0 - kEulerGamma - 2.0 * std::numbers::ln2).epsilon(1e-14));
  CHECK(digamma(0.5) == doctest::Approx(-kEulerGamma - 2.0 * std::numbers::ln2).epsilon(1e-14));
  for (double x : {0.1, 0.7, 2.3, 9.9, 41.0}) {
    // psi(x+1) = psi(x) + 1/x.
    CHECK(digamma(x + 1.0) == doctest::Approx(digamma(x) + 1.0 / x).epsilon(1e-13));
    // Central difference of log Gamma.
    const double h = 1e-5 * std::max(1.0, x);
    CHECK(digamma(x) == doctest::Approx((log_gamma(x + h) - log_gamma(x - h)) / (2 * h)).epsilon(1e-7));
  }
  CHECK_THROWS_AS(digamma(0.0), DomainError);
}

TEST_CASE("Legendre and Jacobi recurrences") {
  for (double u : {-1.0, -0.4, 0.0, 0.3, 0.9, 1.0}) {
    CHECK(legendre_p(0, u) == 1.0);
    CHECK(legendre_p(2, u) == doctest::Approx(1.5 * u * u - 0.5));
    CHECK(legendre_p(3, u) == doctest::Approx(2.5 * u * u * u - 1.5 * u));
    CHECK(jacobi_p10(0, u) == 1.0);
    CHECK(jacobi_p10(1, u) == doctest::Approx((3.0 * u + 1.0) / 2.0));
  }
  for (int L = 0; L <= 40; ++L) {
    CHECK(jacobi_p10(L, 1.0) == doctest::Approx(L + 1.0));
    for (double u : {-0.95, -0.2, 0.35, 0.8}) {
      double sum = 0.0;
      for (int l = 0; l <= L; ++l) sum += (2 * l + 1) * legendre_p(l, u);
      CHECK((L + 1) * jacobi_p10(L, u) == doctest::Approx(sum).epsilon(1e-10));
    }
  }
  // P_2^{(1,0)}(-1) from the sum identity: (1 - 3 + 5) / 3 = 1.
  CHECK(jacobi_p10(2, -1.0) == doctest::Approx(1.0));
}

TEST_CASE("log-cosine integral against Simpson") {
  for (auto [a, b] : {std::pair{2.0, 1.0}, {3.0, -2.5}, {1.0, 0.0}, {5.0, 4.99}}) {
    const double oracle = testsupport::simpson([&](double x) { return std::log(a + b * std::cos(x)); }, 0.0,
                                               std::numbers::pi, 200000);
    CHECK(log_cos_integral(a, b) == doctest::Approx(oracle).epsilon(1e-9));
  }
  CHECK(log_cos_integral(2.0, 2.0) == doctest::Approx(0.0).epsilon(1e-15));  // pi log(2/2)
  CHECK_THROWS_AS(log_cos_integral(1.0, 2.0), DomainError);
  CHECK_THROWS_AS(log_cos_integral(0.0, 0.0), DomainError);
}

TEST_CASE("adaptive quadrature on known integrals") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0).value ==
        doctest::Approx(std::numbers::pi / 2.0).epsilon(1e-12));

  QuadratureSpec sing;
  sing.endpoint_singularity = true;
  CHECK(integrate([](double x) { return std::log(x); }, 0.0, 1.0, sing).value == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, sing).value == doctest::Approx(2.0).epsilon(1e-9));

  const auto res = integrate([](double x) { return x * x; }, -1.0, 2.0);
  CHECK(res.value == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(res.error_estimate >= 0.0);
  CHECK(res.evaluations >= 15);
}

TEST_CASE("quadrature failures") {
  QuadratureSpec tight;
  tight.abs_tol = 1e-15;
  tight.rel_tol = 1e-15;
  tight.max_subdivisions = 3;
  CHECK_THROWS_AS(integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, tight), NonConvergence);
  try {
    integrate([](double x) { return std::sin(1.0 / (x + 1e-3)); }, 0.0, 1.0, tight);
  } catch (const NonConvergence& e) {
    CHECK(std::isfinite(e.best_estimate()));
    CHECK(e.error_bound() > 0.0);
  }
  CHECK_THROWS_AS(integrate([](double) { return std::nan(""); }, 0.0, 1.0), DomainError);
  QuadratureSpec bad;
  bad.max_subdivisions = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}
