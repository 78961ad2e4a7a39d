#pragma once

#include <complex>
#include <cstdint>

namespace rpmap {

// xoshiro256** with splitmix64 seeding.  Hand-rolled so that seeded streams
// are identical across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double uniform();                     // [0, 1)
  double uniform(double lo, double hi);
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive bounds
  std::size_t index(std::size_t n);     // [0, n); n must be >= 1
  std::complex<double> complex_box(double half_width);
  std::complex<double> complex_int_box(int lo, int hi);

 private:
  std::uint64_t s_[4];
};

}  // namespace rpmap
