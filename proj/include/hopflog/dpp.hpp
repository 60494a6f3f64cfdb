#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "hopflog/geometry.hpp"
#include "hopflog/random.hpp"

namespace hopflog {

enum class KernelFamily { spherical, harmonic, constant_one };

std::string to_string(KernelFamily family);

// Homogeneous DPP kernels satisfy |K(p,q)|^2 = K(p,p)^2 f(|<p,q>|), where
// p, q are unit representatives in CP^1 and |<p,q>|^2 = (1 + <x,y>)/2 for
// the S^2 images x, y. RadialProfile carries f.
struct RadialProfile {
  KernelFamily family = KernelFamily::constant_one;
  int parameter = 1;  // r for spherical, L for harmonic
  long rank = 1;      // r, (L+1)^2, or 1

  double operator()(double s) const;
};

// f(s) = s^{2(r-1)}.
RadialProfile spherical_profile(int r);
// f(s) = (P_L^{(1,0)}(2 s^2 - 1) / (L+1))^2, rank (L+1)^2.
RadialProfile harmonic_profile(int L);
// f = 1 (rank-one homogeneous kernel).
RadialProfile constant_one_profile();

// Kernels on S^2 relative to the surface measure (total area 4 pi), as
// functions of u = <x, y>.
//
// Spherical ensemble: |K(x,y)|^2 = (r/4pi)^2 ((1+u)/2)^{r-1}. This is the
// modulus-squared convention; it is the one for which the kernel reproduces
// itself, int |K(x,y)|^2 dsigma(y) = K(x,x).
double spherical_kernel_abs(int r, double u);
double spherical_pair_intensity(int r, double u);

// Harmonic ensemble: K(u) = ((L+1)/4pi) P_L^{(1,0)}(u).
double harmonic_kernel(int L, double u);
double harmonic_pair_intensity(int L, double u);

// rho_2 = K(x,x)^2 (1 - f(sqrt((1+u)/2))) for any homogeneous profile.
double pair_intensity(const RadialProfile& profile, double u);

// Chart basis of the spherical ensemble on the plane with Lebesgue measure:
// phi_j(w) = sqrt(r C(r-1,j) / pi) w^j (1 + |w|^2)^{-(r+1)/2}, j = 0..r-1.
std::vector<Complex> spherical_chart_basis(int r, Complex w);

// Orthonormal basis of a rank-r projection kernel on S^2, orthonormal with
// respect to the surface measure.
//
// spherical(r): psi_j(x) = sqrt(r C(r-1,j) / 4pi) u^{r-1-j} v^j with (u, v)
//   the CP^1 representative of x. This is the chart basis above pulled back
//   to the sphere, up to a phase common to all j (a gauge change that leaves
//   every determinant unchanged).
// harmonic(L): real spherical harmonics Y_lm, l <= L, from the normalized
//   associated-Legendre recurrence.
//
// Both kernels are homogeneous with K(x,x) = rank / 4pi, which is also the
// rejection envelope used by hkpv_sample.
class ProjectionKernel {
 public:
  static ProjectionKernel spherical(int r);
  static ProjectionKernel harmonic(int L);
  static ProjectionKernel from_profile(const RadialProfile& profile);

  KernelFamily family() const noexcept { return family_; }
  int parameter() const noexcept { return parameter_; }
  int rank() const noexcept { return rank_; }
  double diagonal_bound() const noexcept;

  // out.size() == rank(). Harmonic values are real.
  void evaluate(const SurfacePoint2& x, std::span<Complex> out) const;
  void evaluate_real(const SurfacePoint2& x, std::span<double> out) const;  // harmonic only
  std::vector<Complex> basis(const SurfacePoint2& x) const;

  // K(x, y) = sum_j psi_j(x) conj(psi_j(y)).
  Complex kernel(const SurfacePoint2& x, const SurfacePoint2& y) const;

 private:
  ProjectionKernel(KernelFamily family, int parameter, int rank);

  KernelFamily family_;
  int parameter_;
  int rank_;
  std::vector<double> coefficients_;  // spherical normalizations
};

// Real spherical harmonics of degree <= L at x, ordered (l, m) with
// m = -l..l; (L+1)^2 values.
void real_spherical_harmonics(int L, const SurfacePoint2& x, std::span<double> out);

// Exact sample of the projection DPP: exactly rank() points. Point i is drawn
// from |P_perp v(x)|^2 / (rank - i + 1) by rejection from the uniform measure
// (envelope rank / 4pi), then the residual direction is added to an
// orthonormal set by Gram-Schmidt with a second re-orthogonalization pass.
// Throws RejectionStall after 10^6 consecutive rejections.
Configuration2 hkpv_sample(const ProjectionKernel& kernel, SeededStream& stream);

inline constexpr long kMaxConsecutiveRejections = 1'000'000;

}  // namespace hopflog
