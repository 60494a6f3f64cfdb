#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hopflog/random.hpp"

namespace hopflog {

using Complex = std::complex<double>;

inline constexpr double kUnitNormTolerance = 1e-12;

// Unit vector on S^2. Construction checks |x|^2 = 1 within kUnitNormTolerance.
class SurfacePoint2 {
 public:
  static constexpr int kDim = 3;

  SurfacePoint2(double x, double y, double z);
  // Projects a nonzero vector onto the sphere.
  static SurfacePoint2 normalized(double x, double y, double z);

  double x() const noexcept { return c_[0]; }
  double y() const noexcept { return c_[1]; }
  double z() const noexcept { return c_[2]; }
  const std::array<double, 3>& coords() const noexcept { return c_; }

  SurfacePoint2 operator-() const { return {-c_[0], -c_[1], -c_[2]}; }

 private:
  std::array<double, 3> c_;
};

// Unit vector on S^3, stored as the real 4-vector (a, b, c, d). The complex
// view is (z1, z2) = (a + ib, c + id).
class SurfacePoint3 {
 public:
  static constexpr int kDim = 4;

  SurfacePoint3(double a, double b, double c, double d);
  static SurfacePoint3 normalized(double a, double b, double c, double d);
  static SurfacePoint3 from_complex(Complex z1, Complex z2);

  double a() const noexcept { return c_[0]; }
  double b() const noexcept { return c_[1]; }
  double c() const noexcept { return c_[2]; }
  double d() const noexcept { return c_[3]; }
  const std::array<double, 4>& coords() const noexcept { return c_; }

  Complex z1() const noexcept { return {c_[0], c_[1]}; }
  Complex z2() const noexcept { return {c_[2], c_[3]}; }

  // Coordinates (z1, conj z2). In these coordinates each Hopf fibre is the
  // orbit of the diagonal circle action, and the real inner product on R^4
  // equals Re<., .> on C^2.
  std::array<Complex, 2> hopf_coords() const noexcept { return {z1(), std::conj(z2())}; }
  static SurfacePoint3 from_hopf_coords(Complex u, Complex v) { return from_complex(u, std::conj(v)); }

  SurfacePoint3 operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }

 private:
  std::array<double, 4> c_;
};

// Point of CP^1 held as a unit-norm homogeneous pair. Equality is up to a
// unit-modulus scalar.
class Cp1Point {
 public:
  Cp1Point(Complex p1, Complex p2);  // normalizes; throws on the zero pair

  Complex p1() const noexcept { return p_[0]; }
  Complex p2() const noexcept { return p_[1]; }

  bool equivalent(const Cp1Point& other, double tol = 1e-10) const;

 private:
  std::array<Complex, 2> p_;
};

template <class Point>
double squared_distance(const Point& p, const Point& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.coords().size(); ++i) {
    const double t = p.coords()[i] - q.coords()[i];
    s += t * t;
  }
  return s;
}

template <class Point>
double dot(const Point& p, const Point& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.coords().size(); ++i) s += p.coords()[i] * q.coords()[i];
  return s;
}

// Where a configuration came from.
struct Provenance {
  std::string family;
  std::map<std::string, double> parameters;
  std::uint64_t seed = 0;
  std::uint64_t run = 0;
};

template <class Point>
struct Configuration {
  std::vector<Point> points;
  Provenance provenance;

  std::size_t size() const noexcept { return points.size(); }
};

using Configuration2 = Configuration<SurfacePoint2>;
using Configuration3 = Configuration<SurfacePoint3>;

// h(a,b,c,d) = (a^2+b^2-c^2-d^2, 2(ad+bc), 2(bd-ac)).
SurfacePoint2 hopf_map(const SurfacePoint3& x);

inline constexpr double kSingularBaseTolerance = 1e-14;

// Point with fibre parameter t on the Hopf fibre over p. Throws SingularBase
// when 1 + p.x() < kSingularBaseTolerance.
SurfacePoint3 fiber_point(const SurfacePoint2& p, double t);

// S^2 <-> CP^1 identification compatible with hopf_map: the fibre over x is
// {e^{it} (p1, p2)} in Hopf coordinates. (1,0,0) corresponds to [1:0] and
// (-1,0,0) to [0:1], the point at infinity of the affine chart w = p2/p1.
Cp1Point s2_to_cp1(const SurfacePoint2& x);
SurfacePoint2 cp1_to_s2(const Cp1Point& p);

// |p1 conj(q1) + p2 conj(q2)|; its square equals (1 + <x,y>)/2.
double cp1_abs_inner(const Cp1Point& p, const Cp1Point& q);

// Rotations of R^4 (orthogonal, determinant +1).
class Rotation4 {
 public:
  static Rotation4 identity();
  // Haar-distributed rotation (QR of a Gaussian matrix with sign fix).
  static Rotation4 random(SeededStream& stream);

  SurfacePoint3 apply(const SurfacePoint3& x) const;
  Configuration3 apply(const Configuration3& cfg) const;

  const Eigen::Matrix4d& matrix() const noexcept { return m_; }

 private:
  explicit Rotation4(const Eigen::Matrix4d& m) : m_(m) {}
  Eigen::Matrix4d m_;
};

class Rotation3 {
 public:
  static Rotation3 identity();
  static Rotation3 random(SeededStream& stream);

  SurfacePoint2 apply(const SurfacePoint2& x) const;
  Configuration2 apply(const Configuration2& cfg) const;

  const Eigen::Matrix3d& matrix() const noexcept { return m_; }

 private:
  explicit Rotation3(const Eigen::Matrix3d& m) : m_(m) {}
  Eigen::Matrix3d m_;
};

}  // namespace hopflog
