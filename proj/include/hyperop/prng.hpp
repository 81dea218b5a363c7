#pragma once

#include <complex>
#include <cstdint>

namespace hyperop {

// SplitMix64. Used for every random draw in the harness and the test
// suites so that reports and oracle-derived values are reproducible
// across platforms and standard libraries (std:: distributions are
// implementation-defined, this is not).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::complex<double> complex_in_box(double re_lo, double re_hi, double im_lo, double im_hi) {
    const double re = uniform(re_lo, re_hi);
    const double im = uniform(im_lo, im_hi);
    return {re, im};
  }

  // Uniform on the closed disc of the given radius.
  std::complex<double> complex_in_disc(double radius) {
    for (;;) {
      const std::complex<double> c = complex_in_box(-radius, radius, -radius, radius);
      if (std::abs(c) <= radius) return c;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace hyperop
