#pragma once

#include <cstddef>
#include <span>

#include "hopflog/geometry.hpp"
#include "hopflog/random.hpp"

namespace hopflog {

// Discrete logarithmic energy, ordered-pair convention:
//
//   E0(w) = sum_{i != j} log(1 / |x_i - x_j|) = -sum_{i < j} log |x_i - x_j|^2
//
// so every unordered pair is counted twice and k roots of unity on a great
// circle carry energy -k log k. Some references halve this; we do not.

inline constexpr std::size_t kEnergyChunkRows = 64;
inline constexpr double kCoincidentSquaredDistance = 1e-24;

// Exact O(n^2) evaluation over row-major coordinates (dim values per point).
// Rows are split into fixed chunks of kEnergyChunkRows; chunk sums are reduced
// pairwise in chunk order, so the result is bit-identical for any thread
// count. Throws CoincidentPoints if some squared distance is below 1e-24.
double log_energy(std::span<const double> coords, int dim, unsigned workers = 0);

template <class Point>
double log_energy(const Configuration<Point>& cfg, unsigned workers = 0) {
  std::vector<double> flat;
  flat.reserve(cfg.size() * Point::kDim);
  for (const auto& p : cfg.points) flat.insert(flat.end(), p.coords().begin(), p.coords().end());
  return log_energy(flat, Point::kDim, workers);
}

// -k log k: energy of k equally spaced points on a great circle.
double fiber_energy(int k);

struct LiftSpec {
  int k = 1;  // points per fibre
  void validate() const;
};

// Lifts every base point to k points on its Hopf fibre with parameters
// theta_i + 2 pi j / k, theta_i uniform per fibre. Output is base-major: point
// i*k + j lies over base point i. Throws SingularBase for a base at (-1,0,0).
Configuration3 hopf_lift(const Configuration2& base, const LiftSpec& spec, SeededStream& stream);

// Split of E0 of a base-major lifted configuration into same-fibre and
// cross-fibre ordered-pair sums.
struct FibreEnergySplit {
  double within_fibres = 0.0;
  double across_fibres = 0.0;
  double total() const { return within_fibres + across_fibres; }
};
FibreEnergySplit log_energy_by_fibre(const Configuration3& lifted, int k);

}  // namespace hopflog
