#pragma once

#include <vector>

#include "hopflog/geometry.hpp"
#include "hopflog/random.hpp"

namespace hopflog {

// Diamond ensemble on S^2: both poles plus p parallels, parallel j carrying
// r_j equally spaced points at height z_j with an independent uniform phase.
struct DiamondSpec {
  std::vector<int> counts;      // r_1..r_p
  std::vector<double> heights;  // z_1 > ... > z_p

  // Heights from diamond_heights(counts).
  static DiamondSpec from_counts(std::vector<int> counts);
  // Ansatz counts for p parallels.
  static DiamondSpec ansatz(int parallels);

  int parallels() const noexcept { return static_cast<int>(counts.size()); }
  long total_points() const;  // N = 2 + sum r_j
  void validate() const;
};

// r_j = max(1, round(3 sin(j pi/(p+1)) / sin(pi/(2(p+1))))), rounding half
// away from zero. Evaluated at min(j, p+1-j) so the list is exactly
// symmetric.
std::vector<int> diamond_rj_ansatz(int parallels);

// Heights minimizing the expected energy for the given counts:
// z_l = (sum_{j>l} r_j - sum_{j<l} r_j) / (N - 1), computed in integers.
std::vector<double> diamond_heights(const std::vector<int>& counts);

// North pole, parallels 1..p in order (longitudes 2 pi i / r_j + theta_j),
// south pole.
Configuration2 build_diamond(const DiamondSpec& spec, SeededStream& stream);

// Exact expectation of the logarithmic energy over the parallel phases.
double diamond_expected_energy_s2(const DiamondSpec& spec);

// (x, y, z) -> (z, x, y). Sends the south pole (0,0,-1) to (-1,0,0), the
// singular base point of the Hopf lift, and parallel heights to the first
// coordinate.
SurfacePoint2 rotate_south_pole_to_minus_x(const SurfacePoint2& x);
Configuration2 rotate_south_pole_to_minus_x(const Configuration2& cfg);

// Removes both poles (first and last points of build_diamond output) and
// applies the rotation above; the result has N - 2 points, all liftable.
Configuration2 diamond_for_lifting(const Configuration2& diamond);

}  // namespace hopflog
