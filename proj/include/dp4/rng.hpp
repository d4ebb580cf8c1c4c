#pragma once

// Counter-based generator: the value at (seed, stream, counter) does not depend on how
// the work is split across threads.

#include <cmath>
#include <cstdint>

namespace dp4 {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(splitmix64(seed) ^ splitmix64(~stream * 0xd1b54a32d192ed03ULL)) {}
  std::uint64_t at(std::uint64_t counter) const { return splitmix64(key_ ^ splitmix64(counter)); }
  // Uniform in the open interval (0, 1).
  double uniform(std::uint64_t counter) const { return (static_cast<double>(at(counter) >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
};

// Compensated accumulator.
struct NeumaierSum {
  double sum = 0, comp = 0;
  void add(double x) {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace dp4
