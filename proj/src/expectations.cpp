#include "hopflog/expectations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hopflog/errors.hpp"

namespace hopflog {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kOptimalRatio = 9.0 * std::numbers::pi / 64.0;

void require_k(int k, const char* who) {
  if (k < 1) throw ValidationError(std::string(who) + ": k must be >= 1");
}

}  // namespace

double expected_uniform_s3(long n) {
  if (n < 1) throw ValidationError("expected_uniform_s3: N must be >= 1");
  const double x = static_cast<double>(n);
  return -x * x / 4.0 + x / 4.0;
}

double expected_uniform_s3_antipodal(long n) {
  if (n < 2) throw ValidationError("expected_uniform_s3_antipodal: N must be >= 2");
  if (n % 2 != 0) throw OddSize("expected_uniform_s3_antipodal: N must be even");
  const double x = static_cast<double>(n);
  return -x * x / 4.0 + (0.5 - kLn2) * x;
}

double expected_lifted_uniform(long base_points, int k) {
  if (base_points < 1) throw ValidationError("expected_lifted_uniform: M must be >= 1");
  require_k(k, "expected_lifted_uniform");
  const double n = static_cast<double>(base_points) * k;
  return -n * n / 4.0 + n * k / 4.0 - n * std::log(k);
}

double expected_lifted_antipodal(long base_points, int k) {
  if (base_points < 2) throw ValidationError("expected_lifted_antipodal: M must be >= 2");
  if (base_points % 2 != 0) throw OddSize("expected_lifted_antipodal: M must be even");
  require_k(k, "expected_lifted_antipodal");
  const double n = static_cast<double>(base_points) * k;
  return -n * n / 4.0 + n * k / 2.0 * (1.0 - kLn2) - n * std::log(k);
}

double lifted_uniform_linear_coefficient(int k) {
  require_k(k, "lifted_uniform_linear_coefficient");
  return k / 4.0 - std::log(k);
}

double lifted_antipodal_linear_coefficient(int k) {
  require_k(k, "lifted_antipodal_linear_coefficient");
  return k / 2.0 * (1.0 - kLn2) - std::log(k);
}

namespace {
template <class F>
int integer_argmin(int k_max, F coefficient) {
  if (k_max < 1) throw ValidationError("k_max must be >= 1");
  int best = 1;
  for (int k = 2; k <= k_max; ++k)
    if (coefficient(k) < coefficient(best)) best = k;
  return best;
}
}  // namespace

int optimal_k_lifted_uniform(int k_max) { return integer_argmin(k_max, lifted_uniform_linear_coefficient); }
int optimal_k_lifted_antipodal(int k_max) { return integer_argmin(k_max, lifted_antipodal_linear_coefficient); }

QuadratureResult lifted_dpp_integral(const RadialProfile& profile, DppIntegralForm form, const QuadratureSpec& spec) {
  if (profile.rank < 1) throw ValidationError("lifted_dpp_integral: rank must be >= 1");
  if (form == DppIntegralForm::automatic)
    form = profile.family == KernelFamily::harmonic ? DppIntegralForm::finite_angle : DppIntegralForm::semi_infinite;
  if (form == DppIntegralForm::semi_infinite) {
    return integrate_to_infinity(
        [&](double t) {
          const double q = 1.0 + t * t;
          const double root = std::sqrt(q);
          return std::log1p(t / root) * profile(1.0 / root) * t / (q * q);
        },
        0.0, spec);
  }
  QuadratureResult res = integrate(
      [&](double th) {
        const double h = 0.5 * th;
        return std::log1p(std::sin(h)) * profile(std::cos(h)) * std::sin(th);
      },
      0.0, std::numbers::pi, spec);
  res.value *= 0.25;
  res.error_estimate *= 0.25;
  return res;
}

double expected_lifted_dpp(const RadialProfile& profile, int k, DppIntegralForm form, const QuadratureSpec& spec) {
  require_k(k, "expected_lifted_dpp");
  const double r = static_cast<double>(profile.rank);
  const double q = lifted_dpp_integral(profile, form, spec).value;
  return -r * k * std::log(k) - k * k * r * r / 4.0 + static_cast<double>(k) * k * r * r * q;
}

double spherical_lifted_integral_closed(int r) {
  if (r < 1) throw ValidationError("spherical_lifted_integral_closed: r must be >= 1");
  return (gamma_ratio(r) - 1.0) / (4.0 * r * r);
}

double expected_lifted_spherical_closed(int r, int k) {
  if (r < 1) throw ValidationError("expected_lifted_spherical_closed: r must be >= 1");
  require_k(k, "expected_lifted_spherical_closed");
  const double kk = static_cast<double>(k) * k;
  const double rr = static_cast<double>(r) * r;
  return -kk * rr / 4.0 - static_cast<double>(r) * k * std::log(k) + kk * gamma_ratio(r) / 4.0 - kk / 4.0;
}

double spherical_linear_coefficient(long a, long b) {
  if (a < 1 || b < 1) throw ValidationError("spherical_linear_coefficient: A and B must be positive");
  if (a > b) throw ValidationError("spherical_linear_coefficient: requires A <= B");
  const double ratio = static_cast<double>(b) / static_cast<double>(a);
  return std::sqrt(std::numbers::pi) / 4.0 * std::sqrt(ratio) - std::log(ratio) / 3.0;
}

AsymptoticConstants constants() {
  AsymptoticConstants c{};
  c.optimal_ratio = kOptimalRatio;
  c.lifted_spherical = (2.0 + std::log(kOptimalRatio)) / 3.0;
  c.harmonic = std::log(1.0 / 3.0) / 3.0 + kLn2 + digamma(1.5) + 1.0 / 3.0;
  c.diamond_s2 = -0.049222;
  return c;
}

ExpansionCoefficients expansion_coefficients(const std::string& family) {
  const AsymptoticConstants c = constants();
  if (family == "lifted-spherical") return {family, -0.25, -1.0 / 3.0, c.lifted_spherical};
  if (family == "harmonic-s3") return {family, -0.25, -1.0 / 3.0, c.harmonic};
  throw ValidationError("expansion_coefficients: unknown family '" + family + "'");
}

RationalApprox rational_approx_sequence(int i) {
  if (i < 1 || i > 6) throw ValidationError("rational_approx_sequence: i must be in [1, 6]");
  std::int64_t b = 1;
  for (int j = 0; j < i; ++j) b *= 10;
  const auto a = static_cast<std::int64_t>(std::floor(kOptimalRatio * static_cast<double>(b)));
  const std::int64_t k = b;
  const std::int64_t r = a * k;  // A k^2 / B with k = B
  return {a, b, k, r, r * k};
}

double optimal_k_spherical(double n) {
  if (!(n >= 1.0)) throw ValidationError("optimal_k_spherical: N must be >= 1");
  return 4.0 / (std::pow(3.0, 2.0 / 3.0) * std::cbrt(std::numbers::pi)) * std::cbrt(n);
}

int spherical_k_rule(int r) {
  if (r < 1) throw ValidationError("spherical_k_rule: r must be >= 1");
  return std::max(1, static_cast<int>(std::round(std::sqrt(r / kOptimalRatio))));
}

int harmonic_k_rule(long r) {
  if (r < 2) throw KTooSmall("harmonic_k_rule: r must be >= 2");
  const double k = std::floor(std::sqrt(static_cast<double>(r)) / std::log(static_cast<double>(r)));
  if (k < 1.0) throw KTooSmall("harmonic_k_rule: floor(sqrt(r)/log r) < 1");
  return static_cast<int>(k);
}

double lifted_fibre_pair_term(double z1, double z2, double dphi) {
  const double a = std::sqrt((1.0 + z1) * (1.0 + z2));
  const double b = std::sqrt((1.0 - z1) * (1.0 - z2));
  const double r2 = a * a + b * b + 2.0 * a * b * std::cos(dphi);
  const double gap = 4.0 - r2;
  if (gap < 1e-24) throw SingularPair("lifted_fibre_pair_term: the two fibres coincide");
  return -0.5 * std::log1p(0.5 * std::sqrt(gap));
}

double lifted_fibre_cross_parallel_term(double z1, double z2, const LiftedDiamondOptions& options) {
  const double alpha = std::sqrt((1.0 + z1) * (1.0 + z2));
  const double beta = std::sqrt((1.0 - z1) * (1.0 - z2));
  if (options.average_over_longitude) {
    const auto res = integrate([&](double d) { return lifted_fibre_pair_term(z1, z2, d); }, 0.0, std::numbers::pi,
                               options.quadrature);
    return res.value / std::numbers::pi;
  }
  // Average over the longitude offset first (closed form), leaving the
  // relative fibre phase psi: E log d^2 = log((a + sqrt(a^2 - beta^2)) / 2),
  // a = 2 - alpha cos psi.
  const auto res = integrate(
      [&](double psi) {
        const double a = 2.0 - alpha * std::cos(psi);
        const double disc = std::max(0.0, (a - beta) * (a + beta));
        return std::log(0.5 * (a + std::sqrt(disc)));
      },
      0.0, std::numbers::pi, options.quadrature);
  return -0.5 * res.value / std::numbers::pi;
}

double expected_lifted_diamond_semianalytic(const DiamondSpec& spec, int k, const LiftedDiamondOptions& options) {
  spec.validate();
  require_k(k, "expected_lifted_diamond_semianalytic");
  const auto& r = spec.counts;
  const auto& z = spec.heights;
  const std::size_t p = r.size();
  double base = 0.0;
  for (int rj : r) base += rj;
  const double n = base * k;

  double cross = 0.0;
  for (std::size_t j = 0; j < p; ++j) {
    double same = 0.0;
    for (int d = 1; d < r[j]; ++d) same += lifted_fibre_pair_term(z[j], z[j], 2.0 * std::numbers::pi * d / r[j]);
    cross += r[j] * same;
    for (std::size_t l = j + 1; l < p; ++l)
      cross += 2.0 * r[j] * r[l] * lifted_fibre_cross_parallel_term(z[j], z[l], options);
  }
  return -n * std::log(k) + static_cast<double>(k) * k * cross;
}

NormalizedSeries normalized_series(double energy, double n) {
  if (!(n >= 2.0)) throw ValidationError("normalized_series: N must be >= 2");
  const double nlogn = n * std::log(n);
  const double shifted = energy + n * n / 4.0;
  return {shifted / nlogn, (shifted + nlogn / 3.0) / n};
}

}  // namespace hopflog
