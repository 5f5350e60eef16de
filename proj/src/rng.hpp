#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace vlcsec {

// splitmix64 finalizer; used to derive independent per-trial seeds so that
// sweeps can be reordered or parallelized without changing any draw.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
  return mix64(mix64(master ^ mix64(a)) ^ mix64(~b));
}

// Deterministic random stream. Gaussians come from an explicit Box-Muller
// transform instead of std::normal_distribution, whose output is not pinned
// by the standard and differs between libstdc++ and libc++.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  // uniform in (0, 1)
  double uniform01() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  // circularly-symmetric complex Gaussian, unit variance (E|z|^2 = 1)
  std::complex<double> cnormal() {
    const double s = 0.70710678118654752440;
    return {s * normal(), s * normal()};
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace vlcsec
