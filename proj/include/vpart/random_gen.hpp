#pragma once

#include <cstdint>
#include <string>

#include "vpart/instance.hpp"

namespace vpart {

// Hand-rolled generator so that seeded outputs are identical across
// platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi], inclusive.
  Value uniform(Value lo, Value hi) {
    return lo + static_cast<Value>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  bool coin() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

// Shape kinds: free | interval | single | sets. Interval shapes always admit
// a feasible size vector; single shapes are feasible compositions of n; sets
// may exclude everything.
// Objective families: quadratic | scaled-quadratic | linear | abs | table |
// convex-table | mixed (completely separable grids), product-columns |
// max-column-l1 (general built-ins), dot-quadratic (programmatic separable,
// not serializable).
struct RandomSpec {
  std::uint64_t seed = 1;
  int n = 4;
  int d = 2;
  int t = 2;
  int p = 2;
  Value a = 2;
  std::string shape = "free";
  std::string objective = "quadratic";
};

VectorInstance random_vector_instance(const RandomSpec& spec);
TypeInstance random_type_instance(const RandomSpec& spec);

}  // namespace vpart
