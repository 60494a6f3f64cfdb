#pragma once

#include <cstdint>
#include <string>

#include "hopflog/diamond.hpp"
#include "hopflog/dpp.hpp"
#include "hopflog/specfun.hpp"

namespace hopflog {

// Expected logarithmic energies (ordered-pair convention) of random
// configurations on S^3, and the constants of their asymptotic expansions.

// N i.i.d. uniform points: -N^2/4 + N/4.
double expected_uniform_s3(long n);
// N/2 uniform points plus their antipodes: -N^2/4 + (1/2 - log 2) N.
// Throws OddSize for odd N.
double expected_uniform_s3_antipodal(long n);

// Uniform base points on S^2 lifted with k points per fibre, N = M k:
// -N^2/4 + N k/4 - N log k.
double expected_lifted_uniform(long base_points, int k);
// Antipodal uniform base (M even) lifted with k per fibre:
// -N^2/4 + (N k/2)(1 - log 2) - N log k. Throws OddSize for odd M.
double expected_lifted_antipodal(long base_points, int k);

// Coefficients of N in the two lifted-uniform expansions.
double lifted_uniform_linear_coefficient(int k);    // k/4 - log k
double lifted_antipodal_linear_coefficient(int k);  // (k/2)(1 - log 2) - log k
// Integer minimizers over k in [1, k_max].
int optimal_k_lifted_uniform(int k_max = 20);
int optimal_k_lifted_antipodal(int k_max = 20);

// Lifted homogeneous DPP with rank r and profile f, k points per fibre:
//
//   E = -r k log k - k^2 r^2 / 4 + k^2 r^2 Q,
//   Q = int_0^inf log(1 + t/sqrt(1+t^2)) f(1/sqrt(1+t^2)) t/(1+t^2)^2 dt
//     = 1/4 int_0^pi log(1 + sin(th/2)) f(cos(th/2)) sin(th) dth.
enum class DppIntegralForm {
  semi_infinite,  // t-form on [0, inf)
  finite_angle,   // theta-form on [0, pi]
  automatic,      // finite_angle for harmonic profiles, semi_infinite otherwise
};

// Q is multiplied by k^2 r^2, so it is integrated to near machine precision.
inline const QuadratureSpec kExpectationQuadrature{1e-14, 1e-13, 4000, false};

QuadratureResult lifted_dpp_integral(const RadialProfile& profile, DppIntegralForm form = DppIntegralForm::automatic,
                                     const QuadratureSpec& spec = kExpectationQuadrature);
double expected_lifted_dpp(const RadialProfile& profile, int k, DppIntegralForm form = DppIntegralForm::automatic,
                           const QuadratureSpec& spec = kExpectationQuadrature);

// Q for the spherical profile in closed form:
// (sqrt(pi) Gamma(r+1) - Gamma(r+1/2)) / (4 r^2 Gamma(r+1/2)).
double spherical_lifted_integral_closed(int r);
// -k^2 r^2/4 - r k log k + k^2 gamma_ratio(r)/4 - k^2/4.
double expected_lifted_spherical_closed(int r, int k);

// Linear coefficient of the lifted spherical ensemble when r/k^2 = A/B:
// (sqrt(pi)/4) (B/A)^{1/2} - log((B/A)^{1/3}). Requires A <= B.
double spherical_linear_coefficient(long a, long b);

struct AsymptoticConstants {
  double lifted_spherical;  // (2 + log(9 pi/64)) / 3
  double harmonic;          // log(1/3)/3 + log 2 + digamma(3/2) + 1/3
  double optimal_ratio;     // 9 pi / 64, the optimal r / k^2
  double diamond_s2;        // -0.049222, reference value only
};
AsymptoticConstants constants();

// -N^2/4 + c_nlogn N log N + c_linear N + o(N).
struct ExpansionCoefficients {
  std::string family;
  double c2 = -0.25;
  double c_nlogn = 0.0;
  double c_linear = 0.0;
};
// Families: "lifted-spherical", "harmonic-s3". Throws ValidationError otherwise.
ExpansionCoefficients expansion_coefficients(const std::string& family);

// Decimal rational approximations of the optimal ratio:
// B = 10^i, A = floor(9 pi/64 * 10^i), k = 10^i, r = A k^2 / B, n = r k.
struct RationalApprox {
  std::int64_t a, b, k, r, n;
  bool operator==(const RationalApprox&) const = default;
};
RationalApprox rational_approx_sequence(int i);

// k ~ (4 / (3^{2/3} pi^{1/3})) N^{1/3}, the continuous optimum for N points.
double optimal_k_spherical(double n);
// Nearest integer k with r / k^2 closest to the optimal ratio: round(sqrt(r / (9 pi/64))), at least 1.
int spherical_k_rule(int r);
// floor(sqrt(r) / log r). Throws KTooSmall if the result is below 1.
int harmonic_k_rule(long r);

// Lifted Diamond (poles removed, rotated so heights are the first
// coordinate), k points per fibre:
//
//   E = -N log k + k^2 [ sum_j r_j sum_{d=1}^{r_j-1} T(z_j, z_j, 2 pi d / r_j)
//                        + sum_{j1 != j2} r_j1 r_j2 <T(z_j1, z_j2, .)> ]
//
// where T(z1, z2, dphi) is the expected -log distance between one point of
// each of two fibres with independent uniform phases, and <.> averages over
// the independent parallel phases.
struct LiftedDiamondOptions {
  // Cross-parallel average: one-dimensional integral over the fibre phase
  // (default) or over the longitude offset.
  bool average_over_longitude = false;
  QuadratureSpec quadrature{1e-12, 1e-12, 2000, true};
};
double expected_lifted_diamond_semianalytic(const DiamondSpec& spec, int k, const LiftedDiamondOptions& options = {});

// T(z1, z2, dphi) = -(1/2) log((2 + sqrt(4 - R^2)) / 2) with
// R^2 = a^2 + b^2 + 2 a b cos(dphi), a = sqrt((1+z1)(1+z2)),
// b = sqrt((1-z1)(1-z2)). Throws SingularPair if the fibres coincide.
double lifted_fibre_pair_term(double z1, double z2, double dphi);
// <T(z1, z2, .)> over a uniform longitude offset.
double lifted_fibre_cross_parallel_term(double z1, double z2, const LiftedDiamondOptions& options = {});

// n1 = (E + N^2/4) / (N log N), n2 = (E + N^2/4 + N log N / 3) / N.
struct NormalizedSeries {
  double n1, n2;
};
NormalizedSeries normalized_series(double energy, double n);

}  // namespace hopflog
