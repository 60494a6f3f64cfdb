#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hopflog/dpp.hpp"
#include "hopflog/errors.hpp"
#include "hopflog/sampling.hpp"
#include "hopflog/specfun.hpp"
#include "support/stats.hpp"

using namespace hopflog;

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Integral over S^2 of g(x) by adaptive quadrature in z and a uniform
// trapezoid rule in longitude (exact for the trigonometric polynomials here).
template <class G>
double sphere_integral(G g, int longitudes = 96) {
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-13;
  return integrate(
             [&](double z) {
               const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
               double s = 0.0;
               for (int i = 0; i < longitudes; ++i) {
                 const double phi = 2.0 * std::numbers::pi * (i + 0.5) / longitudes;
                 s += g(SurfacePoint2::normalized(rho * std::cos(phi), rho * std::sin(phi), z));
               }
               return s * 2.0 * std::numbers::pi / longitudes;
             },
             -1.0, 1.0, spec)
      .value;
}

// 8 pi^2 int_{-1}^{1} g(u) rho_2(u) du: expected sum over ordered pairs.
template <class G, class R>
double pair_sum_expectation(G g, R rho2) {
  QuadratureSpec spec;
  spec.endpoint_singularity = true;
  return 8.0 * std::numbers::pi * std::numbers::pi *
         integrate([&](double u) { return g(u) * rho2(u); }, -1.0, 1.0, spec).value;
}

}  // namespace

TEST_CASE("radial profiles") {
  CHECK(spherical_profile(1)(0.3) == 1.0);
  for (int r = 1; r <= 12; ++r) CHECK(spherical_profile(r)(1.0) == 1.0);
  CHECK(spherical_profile(8)(1.0 / std::numbers::sqrt2) == doctest::Approx(std::ldexp(1.0, -7)).epsilon(1e-14));
  CHECK(harmonic_profile(0)(0.2) == doctest::Approx(1.0));
  CHECK(harmonic_profile(2)(1.0) == doctest::Approx(1.0));
  CHECK(harmonic_profile(2).rank == 9);
  // P_2^{(1,0)}(-1) = 1 from the Legendre sum identity, so f(0) = 1/9.
  CHECK(harmonic_profile(2)(0.0) == doctest::Approx(1.0 / 9.0));
  for (int L = 0; L <= 6; ++L)
    for (double s = 0.0; s <= 1.0; s += 0.05) {
      const double f = harmonic_profile(L)(s);
      CHECK(f >= 0.0);
      CHECK(f <= 1.0 + 1e-14);
    }
  CHECK_THROWS_AS(spherical_profile(0), ValidationError);
  CHECK_THROWS_AS(harmonic_profile(-1), ValidationError);
}

TEST_CASE("spherical pair intensity") {
  for (int r = 2; r <= 10; ++r) {
    CHECK(spherical_pair_intensity(r, 1.0) == 0.0);
    CHECK(spherical_pair_intensity(r, -1.0) == doctest::Approx(std::pow(r / kFourPi, 2)));
    // Reproducing property of a projection kernel.
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    const double integral =
        2.0 * std::numbers::pi *
        integrate([&](double u) { return std::pow(spherical_kernel_abs(r, u), 2); }, -1.0, 1.0, spec).value;
    CHECK(integral == doctest::Approx(r / kFourPi).epsilon(1e-9));
  }
  CHECK_THROWS_AS(spherical_pair_intensity(3, 1.5), DomainError);
}

TEST_CASE("harmonic kernel") {
  for (int L = 0; L <= 30; ++L) CHECK(harmonic_kernel(L, 1.0) == doctest::Approx((L + 1.0) * (L + 1.0) / kFourPi).epsilon(1e-14));
  CHECK(harmonic_kernel(0, -0.3) == doctest::Approx(1.0 / kFourPi));
  for (int L = 0; L <= 10; ++L) {
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    const double integral =
        2.0 * std::numbers::pi * integrate([&](double u) { return std::pow(harmonic_kernel(L, u), 2); }, -1.0, 1.0, spec).value;
    CHECK(integral == doctest::Approx((L + 1.0) * (L + 1.0) / kFourPi).epsilon(1e-9));
    CHECK(harmonic_pair_intensity(L, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("addition theorem for the real harmonics") {
  SeededStream s(21);
  const auto xs = sample_uniform_s2(6, s);
  const auto ys = sample_uniform_s2(6, s);
  for (int L : {0, 1, 5, 17, 30}) {
    std::vector<double> bx((L + 1) * (L + 1)), by((L + 1) * (L + 1));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      real_spherical_harmonics(L, xs.points[i], bx);
      real_spherical_harmonics(L, ys.points[i], by);
      const double u = dot(xs.points[i], ys.points[i]);
      for (int l = 0; l <= L; ++l) {
        double s_l = 0.0;
        for (int m = -l; m <= l; ++m) s_l += bx[l * l + l + m] * by[l * l + l + m];
        CHECK(s_l == doctest::Approx((2 * l + 1) / kFourPi * legendre_p(l, u)).epsilon(1e-9).scale(1.0));
      }
      const auto K = ProjectionKernel::harmonic(L);
      CHECK(K.kernel(xs.points[i], ys.points[i]).real() == doctest::Approx(harmonic_kernel(L, u)).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("kernels agree with their radial profiles") {
  SeededStream s(22);
  const auto xs = sample_uniform_s2(20, s);
  const auto ys = sample_uniform_s2(20, s);
  for (const auto& prof : {spherical_profile(1), spherical_profile(4), spherical_profile(9), harmonic_profile(0),
                           harmonic_profile(2), harmonic_profile(5)}) {
    const auto K = ProjectionKernel::from_profile(prof);
    CHECK(K.rank() == prof.rank);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto& x = xs.points[i];
      const auto& y = ys.points[i];
      const double kxx = K.kernel(x, x).real();
      CHECK(kxx == doctest::Approx(K.diagonal_bound()).epsilon(1e-12));
      const double ratio = std::norm(K.kernel(x, y)) / (kxx * kxx);
      const double sabs = cp1_abs_inner(s2_to_cp1(x), s2_to_cp1(y));
      CHECK(ratio == doctest::Approx(prof(sabs)).epsilon(1e-10).scale(1.0));
      const double u = dot(x, y);
      CHECK(pair_intensity(prof, u) == doctest::Approx(kxx * kxx - std::norm(K.kernel(x, y))).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("basis is orthonormal under the surface measure") {
  for (const auto& K : {ProjectionKernel::spherical(4), ProjectionKernel::harmonic(2), ProjectionKernel::spherical(7)}) {
    const int r = K.rank();
    for (int i = 0; i < r; ++i)
      for (int j = i; j < r; ++j) {
        auto re = [&](const SurfacePoint2& x) {
          const auto b = K.basis(x);
          return (b[i] * std::conj(b[j])).real();
        };
        auto im = [&](const SurfacePoint2& x) {
          const auto b = K.basis(x);
          return (b[i] * std::conj(b[j])).imag();
        };
        CHECK(sphere_integral(re) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
        CHECK(sphere_integral(im) == doctest::Approx(0.0).epsilon(1e-10).scale(1.0));
      }
    // Trace of the kernel equals the rank.
    CHECK(sphere_integral([&](const SurfacePoint2& x) { return K.kernel(x, x).real(); }) ==
          doctest::Approx(r).epsilon(1e-6));
  }
}

TEST_CASE("Monte Carlo Gram matrix") {
  for (const auto& K : {ProjectionKernel::spherical(4), ProjectionKernel::harmonic(2)}) {
    const int r = K.rank();
    SeededStream s(2024);
    const int samples = 1000000;
    std::vector<Complex> gram(r * r, 0.0), b(r);
    for (int t = 0; t < samples; ++t) {
      double x, y, z, n2;
      do {
        x = s.normal();
        y = s.normal();
        z = s.normal();
        n2 = x * x + y * y + z * z;
      } while (n2 == 0.0);
      K.evaluate(SurfacePoint2::normalized(x, y, z), b);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) gram[i * r + j] += b[i] * std::conj(b[j]);
    }
    double worst = 0.0;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        worst = std::max(worst, std::abs(gram[i * r + j] * (kFourPi / samples) - (i == j ? 1.0 : 0.0)));
    CHECK(worst < 5e-3);
  }
}

TEST_CASE("chart basis") {
  for (int r : {1, 2, 5, 12}) {
    const auto at0 = spherical_chart_basis(r, 0.0);
    double diag0 = 0.0;
    for (const auto& v : at0) diag0 += std::norm(v);
    CHECK(diag0 == doctest::Approx(r / std::numbers::pi).epsilon(1e-14));
    for (Complex w : {Complex(0.3, -0.2), Complex(-2.0, 1.5), Complex(0.0, 7.0)}) {
      const auto phi = spherical_chart_basis(r, w);
      double diag = 0.0;
      for (const auto& v : phi) diag += std::norm(v);
      const double m = 1.0 + std::norm(w);
      CHECK(diag == doctest::Approx(r / std::numbers::pi / (m * m)).epsilon(1e-12));
      // Pull back to S^2: phi_j(w) = c psi_j(x) with |c|^2 = 4/(1+|w|^2)^2 and c common to all j.
      const auto x = cp1_to_s2(Cp1Point(1.0, w));
      const auto psi = ProjectionKernel::spherical(r).basis(x);
      const Complex c = phi[0] / psi[0];
      CHECK(std::abs(c) == doctest::Approx(2.0 / m).epsilon(1e-12));
      for (int j = 1; j < r; ++j) CHECK(std::abs(phi[j] - c * psi[j]) < 1e-12 * std::max(1.0, std::abs(phi[j])));
    }
  }
}

TEST_CASE("sampler returns exactly rank points") {
  SeededStream s(31);
  for (int r : {1, 2, 3, 8, 20}) CHECK(hkpv_sample(ProjectionKernel::spherical(r), s).size() == static_cast<std::size_t>(r));
  for (int L : {0, 1, 3}) CHECK(hkpv_sample(ProjectionKernel::harmonic(L), s).size() == static_cast<std::size_t>((L + 1) * (L + 1)));
}

TEST_CASE("rank-one sampler is uniform") {
  SeededStream s(32);
  std::vector<double> z;
  for (int i = 0; i < 10000; ++i) z.push_back(hkpv_sample(ProjectionKernel::spherical(1), s).points[0].z());
  CHECK(testsupport::ks_pvalue(z, [](double t) { return (t + 1.0) / 2.0; }) > 1e-3);
}

TEST_CASE("sampled points are homogeneous and rotation invariant in law") {
  SeededStream s(33);
  std::vector<double> z, z_rot;
  for (int i = 0; i < 2000; ++i) {
    const auto cfg = hkpv_sample(ProjectionKernel::spherical(5), s);
    const auto rot = Rotation3::random(s).apply(hkpv_sample(ProjectionKernel::spherical(5), s));
    for (const auto& p : cfg.points) z.push_back(p.z());
    for (const auto& p : rot.points) z_rot.push_back(p.z());
  }
  // Points within one sample are dependent; use one point per sample for the one-sample test.
  std::vector<double> first;
  for (std::size_t i = 0; i < z.size(); i += 5) first.push_back(z[i]);
  CHECK(testsupport::ks_pvalue(first, [](double t) { return (t + 1.0) / 2.0; }) > 1e-3);
  std::vector<double> first_rot;
  for (std::size_t i = 0; i < z_rot.size(); i += 5) first_rot.push_back(z_rot[i]);
  CHECK(testsupport::ks_two_sample_pvalue(first, first_rot) > 1e-3);

  std::vector<double> inner, inner_rot;
  for (int i = 0; i < 2000; ++i) {
    const auto a = hkpv_sample(ProjectionKernel::harmonic(2), s);
    const auto b = Rotation3::random(s).apply(hkpv_sample(ProjectionKernel::harmonic(2), s));
    inner.push_back(dot(a.points[0], a.points[1]));
    inner_rot.push_back(dot(b.points[0], b.points[1]));
  }
  CHECK(testsupport::ks_two_sample_pvalue(inner, inner_rot) > 1e-3);
}

TEST_CASE("pair statistic of the rank-two spherical ensemble") {
  auto g = [](double u) { return -std::log1p(std::sqrt(std::max(0.0, 1.0 - 0.5 * (1.0 + u)))); };
  const double expected_pair = pair_sum_expectation(g, [](double u) { return spherical_pair_intensity(2, u); }) / 2.0;
  SeededStream s(34);
  std::vector<double> v;
  for (int i = 0; i < 10000; ++i) {
    const auto cfg = hkpv_sample(ProjectionKernel::spherical(2), s);
    v.push_back(g(dot(cfg.points[0], cfg.points[1])));
  }
  const auto m = testsupport::mean_se(v);
  CHECK(std::abs(m.mean - expected_pair) < 3.0 * m.se);
}

TEST_CASE("second-order intensity identity") {
  auto g = [](double u) { return u * u; };
  struct Case {
    ProjectionKernel kernel;
    RadialProfile profile;
  };
  for (const auto& c : {Case{ProjectionKernel::spherical(5), spherical_profile(5)},
                        Case{ProjectionKernel::harmonic(2), harmonic_profile(2)}}) {
    const double expected = pair_sum_expectation(g, [&](double u) { return pair_intensity(c.profile, u); });
    SeededStream s(35);
    std::vector<double> v;
    for (int i = 0; i < 4000; ++i) {
      const auto cfg = hkpv_sample(c.kernel, s);
      double sum = 0.0;
      for (std::size_t a = 0; a < cfg.size(); ++a)
        for (std::size_t b = 0; b < cfg.size(); ++b)
          if (a != b) sum += g(dot(cfg.points[a], cfg.points[b]));
      v.push_back(sum);
    }
    const auto m = testsupport::mean_se(v);
    CHECK(std::abs(m.mean - expected) < 3.0 * m.se);
  }
}
