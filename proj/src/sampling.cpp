#include "hopflog/sampling.hpp"

#include <cmath>
#include <numbers>

#include "hopflog/errors.hpp"

namespace hopflog {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double s3_height_quantile(double probability) {
  if (!(probability >= 0.0 && probability <= 1.0)) throw DomainError("s3_height_quantile: probability outside [0,1]");
  // v = cos(theta), theta with density (2/pi) sin^2 theta on [0, pi] and
  // CDF G(theta) = (theta - sin theta cos theta) / pi. v decreases in theta.
  const double target = (1.0 - probability) * std::numbers::pi;
  double theta = std::numbers::pi / 2.0;
  double lo = 0.0, hi = std::numbers::pi;
  for (int iter = 0; iter < 100; ++iter) {
    const double g = theta - std::sin(theta) * std::cos(theta) - target;
    if (g > 0.0) hi = theta; else lo = theta;
    const double dg = 2.0 * std::sin(theta) * std::sin(theta);
    double next = dg > 0.0 ? theta - g / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - theta) < 1e-15) {
      theta = next;
      break;
    }
    theta = next;
  }
  return std::cos(theta);
}

Configuration3 sample_uniform_s3(std::size_t n, SeededStream& stream, UniformMethod method) {
  if (n < 1) throw ValidationError("sample_uniform_s3: n must be >= 1");
  Configuration3 cfg;
  cfg.provenance.family = "uniform-s3";
  cfg.provenance.parameters["n"] = static_cast<double>(n);
  cfg.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (method == UniformMethod::gaussian) {
      double a, b, c, d, s;
      do {
        a = stream.normal();
        b = stream.normal();
        c = stream.normal();
        d = stream.normal();
        s = a * a + b * b + c * c + d * d;
      } while (s < 1e-300);
      cfg.points.push_back(SurfacePoint3::normalized(a, b, c, d));
    } else {
      const double phi = stream.uniform(0.0, kTwoPi);
      const double u = stream.uniform(-1.0, 1.0);
      const double v = s3_height_quantile(stream.uniform());
      const double sv = std::sqrt(std::max(0.0, 1.0 - v * v));
      const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
      cfg.points.push_back(SurfacePoint3::normalized(sv * su * std::cos(phi), sv * su * std::sin(phi), sv * u, v));
    }
  }
  return cfg;
}

Configuration2 sample_uniform_s2(std::size_t n, SeededStream& stream, UniformMethod method) {
  if (n < 1) throw ValidationError("sample_uniform_s2: n must be >= 1");
  Configuration2 cfg;
  cfg.provenance.family = "uniform-s2";
  cfg.provenance.parameters["n"] = static_cast<double>(n);
  cfg.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (method == UniformMethod::gaussian) {
      double x, y, z, s;
      do {
        x = stream.normal();
        y = stream.normal();
        z = stream.normal();
        s = x * x + y * y + z * z;
      } while (s < 1e-300);
      cfg.points.push_back(SurfacePoint2::normalized(x, y, z));
    } else {
      const double phi = stream.uniform(0.0, kTwoPi);
      const double z = stream.uniform(-1.0, 1.0);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      cfg.points.push_back(SurfacePoint2::normalized(rho * std::cos(phi), rho * std::sin(phi), z));
    }
  }
  return cfg;
}

}  // namespace hopflog
