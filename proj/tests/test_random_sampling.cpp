#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "hopflog/errors.hpp"
#include "hopflog/random.hpp"
#include "hopflog/sampling.hpp"
#include "support/stats.hpp"

using namespace hopflog;

namespace {

// CDF of one coordinate of a uniform point on S^3: density (2/pi) sqrt(1-v^2).
double s3_coordinate_cdf(double v) {
  v = std::clamp(v, -1.0, 1.0);
  return 0.5 + (v * std::sqrt(1.0 - v * v) + std::asin(v)) / std::numbers::pi;
}

}  // namespace

TEST_CASE("streams are reproducible and keyed by seed and index") {
  SeededStream a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
  }
  CHECK(a.counter() == 100);
  SeededStream p(1);
  auto s1 = p.substream(0), s2 = p.substream(0), s3 = p.substream(1);
  CHECK(s1() == s2());
  CHECK(s1() != s3());
}

TEST_CASE("uniform and normal variates") {
  SeededStream s(1234);
  std::vector<double> u(20000), g(20000);
  for (auto& x : u) {
    x = s.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
  }
  for (auto& x : g) x = s.normal();
  CHECK(testsupport::ks_pvalue(u, [](double x) { return x; }) > 1e-3);
  CHECK(testsupport::ks_pvalue(g, [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }) > 1e-3);
}

TEST_CASE("uniform S3 samples are unit and uniform in each coordinate") {
  for (auto method : {UniformMethod::gaussian, UniformMethod::parametric}) {
    SeededStream s(77);
    const auto cfg = sample_uniform_s3(20000, s, method);
    CHECK(cfg.size() == 20000);
    CHECK(cfg.provenance.family == "uniform-s3");
    for (int c = 0; c < 4; ++c) {
      std::vector<double> v;
      for (const auto& p : cfg.points) v.push_back(p.coords()[c]);
      CHECK(testsupport::ks_pvalue(v, s3_coordinate_cdf) > 1e-3);
    }
  }
}

TEST_CASE("uniform S2 samples have uniform heights") {
  for (auto method : {UniformMethod::gaussian, UniformMethod::parametric}) {
    SeededStream s(78);
    const auto cfg = sample_uniform_s2(20000, s, method);
    for (int c = 0; c < 3; ++c) {
      std::vector<double> v;
      for (const auto& p : cfg.points) v.push_back(p.coords()[c]);
      CHECK(testsupport::ks_pvalue(v, [](double z) { return (z + 1.0) / 2.0; }) > 1e-3);
    }
  }
}

TEST_CASE("height quantile inverts the S3 coordinate CDF") {
  for (double p : {0.0, 0.01, 0.25, 0.5, 0.8, 0.999, 1.0})
    CHECK(s3_coordinate_cdf(s3_height_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  CHECK_THROWS_AS(s3_height_quantile(1.5), DomainError);
}

TEST_CASE("antipodal augmentation") {
  SeededStream s(3);
  const auto base = sample_uniform_s3(5, s);
  const auto aug = antipodal_augment(base);
  REQUIRE(aug.size() == 10);
  for (std::size_t i = 0; i < 5; ++i) CHECK(squared_distance(aug.points[i + 5], -base.points[i]) == 0.0);
  CHECK(aug.provenance.parameters.at("antipodal") == 1.0);
}

TEST_CASE("sample sizes are validated") {
  SeededStream s(1);
  CHECK_THROWS_AS(sample_uniform_s3(0, s), ValidationError);
  CHECK_THROWS_AS(sample_uniform_s2(0, s), ValidationError);
}
