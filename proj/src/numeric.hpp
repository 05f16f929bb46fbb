#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace mpgn::detail {

// Error-free transformations; the pair (hi, lo) represents a + b exactly.
inline void two_sum(double a, double b, double& hi, double& lo) {
  hi = a + b;
  double bb = hi - a;
  lo = (a - (hi - bb)) + (b - bb);
}

inline void two_prod(double a, double b, double& hi, double& lo) {
  hi = a * b;
  lo = std::fma(a, b, -hi);
}

// Compensated dot product (Ogita, Rump, Oishi); as accurate as if computed
// in twice the working precision.
template <typename RowAccess>
double accurate_dot(int n, RowAccess&& row, std::span<const std::int64_t> c) {
  double s = 0.0, err = 0.0;
  for (int j = 0; j < n; ++j) {
    double p, pe, t, te;
    two_prod(row(j), static_cast<double>(c[static_cast<std::size_t>(j)]), p, pe);
    two_sum(s, p, t, te);
    s = t;
    err += pe + te;
  }
  return s + err;
}

// Portable uniform double in [lo, hi): the standard distributions are not
// specified bit-for-bit across library implementations.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(rng() % span);
}

}  // namespace mpgn::detail
