#include "hopflog/random.hpp"

#include <cmath>

namespace hopflog {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kStreamSalt = 0xd1b54a32d192ed03ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeededStream::SeededStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : key_(mix64(mix64(master_seed) ^ mix64((stream_index + 1) * kStreamSalt))) {}

SeededStream SeededStream::substream(std::uint64_t index) const {
  return SeededStream(mix64(key_ ^ mix64((index + 1) * kStreamSalt)), 0, true);
}

SeededStream::result_type SeededStream::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGoldenGamma);
}

double SeededStream::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

// Marsaglia polar method; the second variate is kept for the next call.
double SeededStream::normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = uniform(-1.0, 1.0);
    v = uniform(-1.0, 1.0);
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * scale;
  has_spare_normal_ = true;
  return u * scale;
}

}  // namespace hopflog
