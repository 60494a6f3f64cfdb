#pragma once

#include <cstddef>

#include "hopflog/geometry.hpp"
#include "hopflog/random.hpp"

namespace hopflog {

enum class UniformMethod {
  // Standard Gaussian vector normalized to unit length (default).
  gaussian,
  // Explicit (phi, u, v) parametrization of S^3, v drawn by inverting the
  // CDF of the density (2/pi) sqrt(1 - v^2). For S^2: (phi, z) with z uniform.
  parametric,
};

Configuration3 sample_uniform_s3(std::size_t n, SeededStream& stream, UniformMethod method = UniformMethod::gaussian);
Configuration2 sample_uniform_s2(std::size_t n, SeededStream& stream, UniformMethod method = UniformMethod::gaussian);

// Returns the originals followed by their antipodes (size doubles).
template <class Point>
Configuration<Point> antipodal_augment(const Configuration<Point>& cfg) {
  Configuration<Point> out{cfg.points, cfg.provenance};
  out.points.reserve(2 * cfg.size());
  for (const auto& p : cfg.points) out.points.push_back(-p);
  out.provenance.parameters["antipodal"] = 1.0;
  return out;
}

// Inverse CDF of the S^3 height density (2/pi) sqrt(1 - v^2) on [-1, 1].
double s3_height_quantile(double probability);

}  // namespace hopflog
