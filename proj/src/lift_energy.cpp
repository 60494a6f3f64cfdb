#include "hopflog/lift_energy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "hopflog/errors.hpp"
#include "hopflog/parallel.hpp"

namespace hopflog {

namespace {

[[noreturn]] void coincident(std::size_t i, std::size_t j) {
  std::ostringstream msg;
  msg << "log_energy: points " << i << " and " << j << " coincide";
  throw CoincidentPoints(msg.str());
}

// -sum_{j>i} log |x_i - x_j|^2 for rows [row_begin, row_end). Squared
// distances are multiplied in groups of four before taking the log; each
// factor is in [1e-24, 4], so a group cannot under- or overflow.
template <int D>
double chunk_energy(const double* x, std::size_t n, std::size_t row_begin, std::size_t row_end) {
  double chunk = 0.0, comp = 0.0;
  for (std::size_t i = row_begin; i < row_end; ++i) {
    const double* xi = x + i * D;
    double row = 0.0;
    std::size_t j = i + 1;
    for (; j + 4 <= n; j += 4) {
      double prod = 1.0;
      for (std::size_t q = 0; q < 4; ++q) {
        const double* xj = x + (j + q) * D;
        double s = 0.0;
        for (int c = 0; c < D; ++c) {
          const double t = xi[c] - xj[c];
          s += t * t;
        }
        if (s < kCoincidentSquaredDistance) coincident(i, j + q);
        prod *= s;
      }
      row -= std::log(prod);
    }
    for (; j < n; ++j) {
      const double* xj = x + j * D;
      double s = 0.0;
      for (int c = 0; c < D; ++c) {
        const double t = xi[c] - xj[c];
        s += t * t;
      }
      if (s < kCoincidentSquaredDistance) coincident(i, j);
      row -= std::log(s);
    }
    // Neumaier summation across rows.
    const double t = chunk + row;
    comp += std::abs(chunk) >= std::abs(row) ? (chunk - t) + row : (row - t) + chunk;
    chunk = t;
  }
  return chunk + comp;
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return 0.0;
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

template <int D>
double log_energy_dim(std::span<const double> coords, unsigned workers) {
  const std::size_t n = coords.size() / D;
  if (n < 2) return 0.0;
  const std::size_t chunks = (n + kEnergyChunkRows - 1) / kEnergyChunkRows;
  std::vector<double> sums(chunks, 0.0);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        const std::size_t begin = c * kEnergyChunkRows;
        const std::size_t end = std::min(n, begin + kEnergyChunkRows);
        sums[c] = chunk_energy<D>(coords.data(), n, begin, end);
      },
      workers);
  return pairwise_sum(sums, 0, chunks);
}

}  // namespace

double log_energy(std::span<const double> coords, int dim, unsigned workers) {
  if (dim < 1 || coords.size() % static_cast<std::size_t>(dim) != 0)
    throw ValidationError("log_energy: coordinate count is not a multiple of the dimension");
  switch (dim) {
    case 2: return log_energy_dim<2>(coords, workers);
    case 3: return log_energy_dim<3>(coords, workers);
    case 4: return log_energy_dim<4>(coords, workers);
    default: throw ValidationError("log_energy: supported dimensions are 2, 3 and 4");
  }
}

double fiber_energy(int k) {
  if (k < 1) throw ValidationError("fiber_energy: k must be >= 1");
  return -static_cast<double>(k) * std::log(static_cast<double>(k));
}

void LiftSpec::validate() const {
  if (k < 1) throw ValidationError("LiftSpec: k must be >= 1");
}

Configuration3 hopf_lift(const Configuration2& base, const LiftSpec& spec, SeededStream& stream) {
  spec.validate();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  Configuration3 out;
  out.provenance = base.provenance;
  out.provenance.family = "lifted-" + base.provenance.family;
  out.provenance.parameters["k"] = spec.k;
  out.points.reserve(base.size() * static_cast<std::size_t>(spec.k));
  for (const auto& p : base.points) {
    const double theta = stream.uniform(0.0, two_pi);
    for (int j = 0; j < spec.k; ++j) out.points.push_back(fiber_point(p, theta + two_pi * j / spec.k));
  }
  return out;
}

FibreEnergySplit log_energy_by_fibre(const Configuration3& lifted, int k) {
  if (k < 1 || lifted.size() % static_cast<std::size_t>(k) != 0)
    throw ValidationError("log_energy_by_fibre: size is not a multiple of k");
  FibreEnergySplit split;
  const std::size_t n = lifted.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = squared_distance(lifted.points[i], lifted.points[j]);
      if (s < kCoincidentSquaredDistance) coincident(i, j);
      const double term = -std::log(s);
      if (i / k == j / k)
        split.within_fibres += term;
      else
        split.across_fibres += term;
    }
  }
  return split;
}

}  // namespace hopflog
