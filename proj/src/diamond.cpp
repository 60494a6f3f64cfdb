#include "hopflog/diamond.hpp"

#include <cmath>
#include <numbers>

#include "hopflog/errors.hpp"

namespace hopflog {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

DiamondSpec DiamondSpec::from_counts(std::vector<int> counts) {
  DiamondSpec spec;
  spec.heights = diamond_heights(counts);
  spec.counts = std::move(counts);
  return spec;
}

DiamondSpec DiamondSpec::ansatz(int parallels) { return from_counts(diamond_rj_ansatz(parallels)); }

long DiamondSpec::total_points() const {
  long n = 2;
  for (int r : counts) n += r;
  return n;
}

void DiamondSpec::validate() const {
  if (counts.empty()) throw ValidationError("DiamondSpec: at least one parallel is required");
  if (heights.size() != counts.size()) throw ValidationError("DiamondSpec: counts and heights differ in length");
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] < 1) throw ValidationError("DiamondSpec: every parallel needs at least one point");
    if (!(heights[j] > -1.0 && heights[j] < 1.0)) throw ValidationError("DiamondSpec: heights must lie in (-1, 1)");
    if (j > 0 && !(heights[j] < heights[j - 1])) throw ValidationError("DiamondSpec: heights must decrease");
  }
}

std::vector<int> diamond_rj_ansatz(int parallels) {
  if (parallels < 1) throw ValidationError("diamond_rj_ansatz: p must be >= 1");
  const double denom = std::sin(std::numbers::pi / (2.0 * (parallels + 1)));
  std::vector<int> r(static_cast<std::size_t>(parallels));
  for (int j = 1; j <= parallels; ++j) {
    const int jj = std::min(j, parallels + 1 - j);
    const double value = 3.0 * std::sin(jj * std::numbers::pi / (parallels + 1)) / denom;
    r[j - 1] = std::max(1, static_cast<int>(std::round(value)));
  }
  return r;
}

std::vector<double> diamond_heights(const std::vector<int>& counts) {
  if (counts.empty()) throw ValidationError("diamond_heights: at least one parallel is required");
  long total = 0;
  for (int r : counts) {
    if (r < 1) throw ValidationError("diamond_heights: counts must be >= 1");
    total += r;
  }
  const double denom = static_cast<double>(total + 1);  // N - 1
  std::vector<double> z(counts.size());
  long before = 0;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    const long after = total - before - counts[l];
    z[l] = static_cast<double>(after - before) / denom;
    before += counts[l];
  }
  return z;
}

Configuration2 build_diamond(const DiamondSpec& spec, SeededStream& stream) {
  spec.validate();
  Configuration2 cfg;
  cfg.provenance.family = "diamond-s2";
  cfg.provenance.parameters["p"] = spec.parallels();
  cfg.points.reserve(static_cast<std::size_t>(spec.total_points()));
  cfg.points.emplace_back(0.0, 0.0, 1.0);
  for (std::size_t j = 0; j < spec.counts.size(); ++j) {
    const double z = spec.heights[j];
    const double rho = std::sqrt((1.0 - z) * (1.0 + z));
    const double theta = stream.uniform(0.0, kTwoPi);
    const int r = spec.counts[j];
    for (int i = 0; i < r; ++i) {
      const double phi = kTwoPi * i / r + theta;
      cfg.points.push_back(SurfacePoint2::normalized(rho * std::cos(phi), rho * std::sin(phi), z));
    }
  }
  cfg.points.emplace_back(0.0, 0.0, -1.0);
  return cfg;
}

double diamond_expected_energy_s2(const DiamondSpec& spec) {
  spec.validate();
  const auto& r = spec.counts;
  const auto& z = spec.heights;
  const std::size_t p = r.size();
  // Pole pair.
  double e = -2.0 * std::numbers::ln2;
  for (std::size_t j = 0; j < p; ++j) {
    const double rj = r[j];
    const double one_minus_z2 = (1.0 - z[j]) * (1.0 + z[j]);
    // Pole-to-parallel pairs and roots of unity on a circle of radius rho_j.
    e -= rj * (2.0 * std::numbers::ln2 + std::log(one_minus_z2));
    e -= rj * std::log(rj) + 0.5 * rj * (rj - 1.0) * std::log(one_minus_z2);
    // Distinct parallels with independent phases:
    // E log |x - y|^2 = log(1 - z_j z_k + |z_j - z_k|).
    for (std::size_t k = 0; k < p; ++k) {
      if (k == j) continue;
      e -= 0.5 * rj * r[k] * std::log(1.0 - z[j] * z[k] + std::abs(z[j] - z[k]));
    }
  }
  return e;
}

SurfacePoint2 rotate_south_pole_to_minus_x(const SurfacePoint2& x) { return {x.z(), x.x(), x.y()}; }

Configuration2 rotate_south_pole_to_minus_x(const Configuration2& cfg) {
  Configuration2 out;
  out.provenance = cfg.provenance;
  out.points.reserve(cfg.size());
  for (const auto& x : cfg.points) out.points.push_back(rotate_south_pole_to_minus_x(x));
  return out;
}

Configuration2 diamond_for_lifting(const Configuration2& diamond) {
  if (diamond.size() < 3) throw ValidationError("diamond_for_lifting: configuration has no parallels");
  const auto& north = diamond.points.front();
  const auto& south = diamond.points.back();
  if (north.z() != 1.0 || south.z() != -1.0)
    throw ValidationError("diamond_for_lifting: expected poles as first and last points");
  Configuration2 inner;
  inner.provenance = diamond.provenance;
  inner.points.assign(diamond.points.begin() + 1, diamond.points.end() - 1);
  return rotate_south_pole_to_minus_x(inner);
}

}  // namespace hopflog
