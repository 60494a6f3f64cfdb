#include "hopflog/geometry.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/QR>

#include "hopflog/errors.hpp"

namespace hopflog {

namespace {

template <std::size_t N>
void check_unit(const std::array<double, N>& c, const char* what) {
  double s = 0.0;
  for (double v : c) s += v * v;
  if (!(std::abs(s - 1.0) <= kUnitNormTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": squared norm " << s << " is not 1";
    throw DomainError(msg.str());
  }
}

template <std::size_t N>
std::array<double, N> normalize(std::array<double, N> c, const char* what) {
  double s = 0.0;
  for (double v : c) s += v * v;
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError(std::string(what) + ": cannot normalize");
  const double inv = 1.0 / std::sqrt(s);
  for (double& v : c) v *= inv;
  return c;
}

}  // namespace

SurfacePoint2::SurfacePoint2(double x, double y, double z) : c_{x, y, z} { check_unit(c_, "SurfacePoint2"); }

SurfacePoint2 SurfacePoint2::normalized(double x, double y, double z) {
  const auto c = normalize<3>({x, y, z}, "SurfacePoint2");
  return {c[0], c[1], c[2]};
}

SurfacePoint3::SurfacePoint3(double a, double b, double c, double d) : c_{a, b, c, d} {
  check_unit(c_, "SurfacePoint3");
}

SurfacePoint3 SurfacePoint3::normalized(double a, double b, double c, double d) {
  const auto v = normalize<4>({a, b, c, d}, "SurfacePoint3");
  return {v[0], v[1], v[2], v[3]};
}

SurfacePoint3 SurfacePoint3::from_complex(Complex z1, Complex z2) {
  return {z1.real(), z1.imag(), z2.real(), z2.imag()};
}

Cp1Point::Cp1Point(Complex p1, Complex p2) {
  const double n = std::sqrt(std::norm(p1) + std::norm(p2));
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("Cp1Point: zero or non-finite homogeneous pair");
  p_ = {p1 / n, p2 / n};
}

bool Cp1Point::equivalent(const Cp1Point& other, double tol) const {
  return std::abs(cp1_abs_inner(*this, other) - 1.0) <= tol;
}

SurfacePoint2 hopf_map(const SurfacePoint3& x) {
  const double a = x.a(), b = x.b(), c = x.c(), d = x.d();
  return SurfacePoint2::normalized(a * a + b * b - c * c - d * d, 2.0 * (a * d + b * c), 2.0 * (b * d - a * c));
}

SurfacePoint3 fiber_point(const SurfacePoint2& p, double t) {
  const double p1 = p.x(), p2 = p.y(), p3 = p.z();
  const double one_plus = 1.0 + p1;
  if (!(one_plus >= kSingularBaseTolerance)) {
    throw SingularBase("fiber_point: base point too close to (-1,0,0); rotate the configuration first");
  }
  const double ct = std::cos(t), st = std::sin(t);
  const double scale = 1.0 / std::sqrt(2.0 * one_plus);
  return SurfacePoint3::normalized(one_plus * ct * scale, one_plus * st * scale, (p2 * st - p3 * ct) * scale,
                                   (p2 * ct + p3 * st) * scale);
}

Cp1Point s2_to_cp1(const SurfacePoint2& x) {
  // u conj(v) = (-x3 + i x2) / 2 with |u|^2 = (1+x1)/2, |v|^2 = (1-x1)/2.
  const Complex w(-x.z() / 2.0, x.y() / 2.0);
  if (x.x() >= 0.0) {
    const double u = std::sqrt((1.0 + x.x()) / 2.0);
    return {Complex(u, 0.0), std::conj(w) / u};
  }
  const double v = std::sqrt((1.0 - x.x()) / 2.0);
  return {w / v, Complex(v, 0.0)};
}

SurfacePoint2 cp1_to_s2(const Cp1Point& p) {
  const Complex w = p.p1() * std::conj(p.p2());
  return SurfacePoint2::normalized(std::norm(p.p1()) - std::norm(p.p2()), 2.0 * w.imag(), -2.0 * w.real());
}

double cp1_abs_inner(const Cp1Point& p, const Cp1Point& q) {
  const double s = std::abs(p.p1() * std::conj(q.p1()) + p.p2() * std::conj(q.p2()));
  return std::min(s, 1.0);
}

namespace {

template <int D>
Eigen::Matrix<double, D, D> haar_rotation(SeededStream& stream) {
  Eigen::Matrix<double, D, D> g;
  for (int j = 0; j < D; ++j)
    for (int i = 0; i < D; ++i) g(i, j) = stream.normal();
  Eigen::HouseholderQR<Eigen::Matrix<double, D, D>> qr(g);
  Eigen::Matrix<double, D, D> q = qr.householderQ();
  const Eigen::Matrix<double, D, D> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int j = 0; j < D; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

}  // namespace

Rotation4 Rotation4::identity() { return Rotation4(Eigen::Matrix4d::Identity()); }

Rotation4 Rotation4::random(SeededStream& stream) { return Rotation4(haar_rotation<4>(stream)); }

SurfacePoint3 Rotation4::apply(const SurfacePoint3& x) const {
  const Eigen::Vector4d v = m_ * Eigen::Vector4d(x.a(), x.b(), x.c(), x.d());
  return SurfacePoint3::normalized(v[0], v[1], v[2], v[3]);
}

Configuration3 Rotation4::apply(const Configuration3& cfg) const {
  Configuration3 out{{}, cfg.provenance};
  out.points.reserve(cfg.size());
  for (const auto& p : cfg.points) out.points.push_back(apply(p));
  return out;
}

Rotation3 Rotation3::identity() { return Rotation3(Eigen::Matrix3d::Identity()); }

Rotation3 Rotation3::random(SeededStream& stream) { return Rotation3(haar_rotation<3>(stream)); }

SurfacePoint2 Rotation3::apply(const SurfacePoint2& x) const {
  const Eigen::Vector3d v = m_ * Eigen::Vector3d(x.x(), x.y(), x.z());
  return SurfacePoint2::normalized(v[0], v[1], v[2]);
}

Configuration2 Rotation3::apply(const Configuration2& cfg) const {
  Configuration2 out{{}, cfg.provenance};
  out.points.reserve(cfg.size());
  for (const auto& p : cfg.points) out.points.push_back(apply(p));
  return out;
}

}  // namespace hopflog
