#include "hopflog/dpp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hopflog/errors.hpp"
#include "hopflog/specfun.hpp"

namespace hopflog {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void check_u(double u, const char* who) {
  if (!(u >= -1.0 - 1e-12 && u <= 1.0 + 1e-12)) throw DomainError(std::string(who) + ": |u| must be <= 1");
}

double clamp_unit(double u) { return std::clamp(u, -1.0, 1.0); }

}  // namespace

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::spherical: return "spherical";
    case KernelFamily::harmonic: return "harmonic";
    case KernelFamily::constant_one: return "constant-one";
  }
  return "unknown";
}

double RadialProfile::operator()(double s) const {
  s = std::clamp(s, 0.0, 1.0);
  switch (family) {
    case KernelFamily::spherical:
      return parameter == 1 ? 1.0 : std::pow(s, 2.0 * (parameter - 1));
    case KernelFamily::harmonic: {
      const double p = jacobi_p10(parameter, 2.0 * s * s - 1.0) / (parameter + 1.0);
      return p * p;
    }
    case KernelFamily::constant_one: return 1.0;
  }
  return 1.0;
}

RadialProfile spherical_profile(int r) {
  if (r < 1) throw ValidationError("spherical_profile: r must be >= 1");
  return {KernelFamily::spherical, r, r};
}

RadialProfile harmonic_profile(int L) {
  if (L < 0) throw ValidationError("harmonic_profile: L must be >= 0");
  return {KernelFamily::harmonic, L, static_cast<long>(L + 1) * (L + 1)};
}

RadialProfile constant_one_profile() { return {KernelFamily::constant_one, 1, 1}; }

double spherical_kernel_abs(int r, double u) {
  if (r < 1) throw ValidationError("spherical_kernel_abs: r must be >= 1");
  check_u(u, "spherical_kernel_abs");
  return r / kFourPi * std::pow(0.5 * (1.0 + clamp_unit(u)), 0.5 * (r - 1));
}

double spherical_pair_intensity(int r, double u) {
  if (r < 1) throw ValidationError("spherical_pair_intensity: r must be >= 1");
  check_u(u, "spherical_pair_intensity");
  const double d = r / kFourPi;
  return d * d * (1.0 - std::pow(0.5 * (1.0 + clamp_unit(u)), r - 1));
}

double harmonic_kernel(int L, double u) {
  if (L < 0) throw ValidationError("harmonic_kernel: L must be >= 0");
  check_u(u, "harmonic_kernel");
  return (L + 1) * jacobi_p10(L, clamp_unit(u)) / kFourPi;
}

double harmonic_pair_intensity(int L, double u) {
  const double d = (L + 1.0) * (L + 1.0) / kFourPi;
  const double k = harmonic_kernel(L, u);
  return d * d - k * k;
}

double pair_intensity(const RadialProfile& profile, double u) {
  check_u(u, "pair_intensity");
  const double d = static_cast<double>(profile.rank) / kFourPi;
  return d * d * (1.0 - profile(std::sqrt(0.5 * (1.0 + clamp_unit(u)))));
}

std::vector<Complex> spherical_chart_basis(int r, Complex w) {
  if (r < 1) throw ValidationError("spherical_chart_basis: r must be >= 1");
  std::vector<Complex> out(static_cast<std::size_t>(r));
  const double m2 = std::norm(w);
  const double log_weight = -0.5 * (r + 1) * std::log1p(m2);
  const double log_abs = m2 > 0.0 ? 0.5 * std::log(m2) : 0.0;
  const double arg = std::arg(w);
  for (int j = 0; j < r; ++j) {
    const double log_norm = 0.5 * (std::log(static_cast<double>(r)) + log_binomial(r - 1, j) - std::log(std::numbers::pi));
    if (j > 0 && m2 == 0.0) {
      out[j] = 0.0;
      continue;
    }
    out[j] = std::polar(std::exp(log_norm + log_weight + j * log_abs), j * arg);
  }
  return out;
}

void real_spherical_harmonics(int L, const SurfacePoint2& x, std::span<double> out) {
  if (L < 0) throw ValidationError("real_spherical_harmonics: L must be >= 0");
  const std::size_t count = static_cast<std::size_t>(L + 1) * (L + 1);
  if (out.size() != count) throw ValidationError("real_spherical_harmonics: output size must be (L+1)^2");
  const double c = x.z();
  const double s = std::hypot(x.x(), x.y());
  const double phi = std::atan2(x.y(), x.x());

  // Normalized associated Legendre functions, column by column in m.
  auto at = [](int l, int m) { return static_cast<std::size_t>(l) * (l + 1) / 2 + m; };
  std::vector<double> plm(static_cast<std::size_t>(L + 1) * (L + 2) / 2, 0.0);
  double pmm = std::sqrt(1.0 / kFourPi);
  for (int m = 0; m <= L; ++m) {
    if (m > 0) pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    plm[at(m, m)] = pmm;
    if (m + 1 <= L) plm[at(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * c * pmm;
    for (int l = m + 2; l <= L; ++l) {
      const double l2 = static_cast<double>(l) * l, m2 = static_cast<double>(m) * m;
      const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
      const double lm1 = l - 1.0;
      const double b = std::sqrt((lm1 * lm1 - m2) / (4.0 * lm1 * lm1 - 1.0));
      plm[at(l, m)] = a * (c * plm[at(l - 1, m)] - b * plm[at(l - 2, m)]);
    }
  }
  for (int l = 0; l <= L; ++l) {
    const std::size_t base = static_cast<std::size_t>(l) * l + l;
    out[base] = plm[at(l, 0)];
    for (int m = 1; m <= l; ++m) {
      const double v = std::numbers::sqrt2 * plm[at(l, m)];
      out[base + m] = v * std::cos(m * phi);
      out[base - m] = v * std::sin(m * phi);
    }
  }
}

ProjectionKernel::ProjectionKernel(KernelFamily family, int parameter, int rank)
    : family_(family), parameter_(parameter), rank_(rank) {}

ProjectionKernel ProjectionKernel::spherical(int r) {
  if (r < 1) throw ValidationError("ProjectionKernel::spherical: r must be >= 1");
  ProjectionKernel k(KernelFamily::spherical, r, r);
  k.coefficients_.resize(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j)
    k.coefficients_[j] = std::exp(0.5 * (std::log(static_cast<double>(r)) + log_binomial(r - 1, j) - std::log(kFourPi)));
  return k;
}

ProjectionKernel ProjectionKernel::harmonic(int L) {
  if (L < 0) throw ValidationError("ProjectionKernel::harmonic: L must be >= 0");
  return ProjectionKernel(KernelFamily::harmonic, L, (L + 1) * (L + 1));
}

ProjectionKernel ProjectionKernel::from_profile(const RadialProfile& profile) {
  switch (profile.family) {
    case KernelFamily::spherical: return spherical(profile.parameter);
    case KernelFamily::harmonic: return harmonic(profile.parameter);
    case KernelFamily::constant_one: return spherical(1);
  }
  throw ValidationError("ProjectionKernel::from_profile: unknown family");
}

double ProjectionKernel::diagonal_bound() const noexcept { return rank_ / kFourPi; }

void ProjectionKernel::evaluate(const SurfacePoint2& x, std::span<Complex> out) const {
  if (out.size() != static_cast<std::size_t>(rank_)) throw ValidationError("ProjectionKernel::evaluate: wrong output size");
  if (family_ == KernelFamily::harmonic) {
    std::vector<double> re(out.size());
    real_spherical_harmonics(parameter_, x, re);
    std::copy(re.begin(), re.end(), out.begin());
    return;
  }
  const Cp1Point p = s2_to_cp1(x);
  const Complex u = p.p1(), v = p.p2();
  // u^{r-1-j} v^j, built from both ends to avoid dividing by a small u.
  std::vector<Complex> upow(out.size()), vpow(out.size());
  upow[0] = vpow[0] = 1.0;
  for (std::size_t j = 1; j < out.size(); ++j) {
    upow[j] = upow[j - 1] * u;
    vpow[j] = vpow[j - 1] * v;
  }
  const std::size_t r = out.size();
  for (std::size_t j = 0; j < r; ++j) out[j] = coefficients_[j] * upow[r - 1 - j] * vpow[j];
}

void ProjectionKernel::evaluate_real(const SurfacePoint2& x, std::span<double> out) const {
  if (family_ != KernelFamily::harmonic) throw ValidationError("ProjectionKernel::evaluate_real: harmonic family only");
  real_spherical_harmonics(parameter_, x, out);
}

std::vector<Complex> ProjectionKernel::basis(const SurfacePoint2& x) const {
  std::vector<Complex> out(static_cast<std::size_t>(rank_));
  evaluate(x, out);
  return out;
}

Complex ProjectionKernel::kernel(const SurfacePoint2& x, const SurfacePoint2& y) const {
  const auto bx = basis(x), by = basis(y);
  Complex s = 0.0;
  for (std::size_t j = 0; j < bx.size(); ++j) s += bx[j] * std::conj(by[j]);
  return s;
}

namespace {

double conj_if_complex(double v) { return v; }
Complex conj_if_complex(Complex v) { return std::conj(v); }
double abs2(double v) { return v * v; }
double abs2(Complex v) { return std::norm(v); }

// Sequential sampler over an orthonormal basis evaluated by eval(x, span).
template <class Scalar, class Eval>
Configuration2 hkpv_run(int rank, double envelope, Eval eval, SeededStream& stream) {
  const std::size_t r = static_cast<std::size_t>(rank);
  std::vector<std::vector<Scalar>> frame;  // orthonormal, spans accepted directions
  frame.reserve(r);
  std::vector<Scalar> v(r), w(r);
  Configuration2 cfg;
  cfg.points.reserve(r);

  // Subtracts the projection onto the current frame.
  auto project_out = [&](std::vector<Scalar>& vec) {
    for (const auto& e : frame) {
      Scalar c = 0.0;
      for (std::size_t j = 0; j < r; ++j) c += conj_if_complex(e[j]) * vec[j];
      for (std::size_t j = 0; j < r; ++j) vec[j] -= c * e[j];
    }
  };

  for (std::size_t i = 0; i < r; ++i) {
    long rejections = 0;
    for (;;) {
      double gx, gy, gz, g2;
      do {
        gx = stream.normal();
        gy = stream.normal();
        gz = stream.normal();
        g2 = gx * gx + gy * gy + gz * gz;
      } while (g2 < 1e-300);
      const SurfacePoint2 x = SurfacePoint2::normalized(gx, gy, gz);
      eval(x, std::span<Scalar>(v));
      w = v;
      project_out(w);
      double res = 0.0;
      for (const auto& c : w) res += abs2(c);
      if (stream.uniform() * envelope < res) {
        // Second Gram-Schmidt pass restores orthogonality lost to cancellation.
        project_out(w);
        double norm2 = 0.0;
        for (const auto& c : w) norm2 += abs2(c);
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& c : w) c *= inv;
        frame.push_back(w);
        cfg.points.push_back(x);
        break;
      }
      if (++rejections >= kMaxConsecutiveRejections)
        throw RejectionStall("hkpv_sample: acceptance rate fell below 1e-6");
    }
  }
  return cfg;
}

}  // namespace

Configuration2 hkpv_sample(const ProjectionKernel& kernel, SeededStream& stream) {
  Configuration2 cfg;
  if (kernel.family() == KernelFamily::harmonic) {
    cfg = hkpv_run<double>(
        kernel.rank(), kernel.diagonal_bound(),
        [&](const SurfacePoint2& x, std::span<double> out) { kernel.evaluate_real(x, out); }, stream);
  } else {
    cfg = hkpv_run<Complex>(
        kernel.rank(), kernel.diagonal_bound(),
        [&](const SurfacePoint2& x, std::span<Complex> out) { kernel.evaluate(x, out); }, stream);
  }
  cfg.provenance.family = kernel.family() == KernelFamily::harmonic ? "harmonic" : "spherical";
  cfg.provenance.parameters[kernel.family() == KernelFamily::harmonic ? "L" : "r"] = kernel.parameter();
  return cfg;
}

}  // namespace hopflog
