#pragma once

#include <optional>
#include <string>

#include "vpart/instance.hpp"

namespace vpart {

// A generated worst-case instance plus whatever ground truth the
// construction knows about itself.
struct HardnessInstance {
  std::string construction;
  std::optional<VectorInstance> vector_instance;
  std::optional<bool> equal_sum_partition;  // subset-sum construction only
};

// d = n, A = unit columns, p = 2, free shape. Any algorithm must query the
// objective on all 2^n first-column indicators. The default objective is an
// opaque lookup table keyed by the full sums matrix, with value
// (sum of part-1 indices - floor(total/2))^2, so the optimum is 0.
// The table has 2^n entries; n is capped at 16.
HardnessInstance gen_unit_vector_instance(int n);
HardnessInstance gen_unit_vector_instance(int n, Objective objective);

// d = 1, A = [1..n], p = n, single shape with all sizes 1: the admissible
// partitions are the n! permutations. Default objective sum_k k * x^k_1 as a
// general built-in; minimized by placing agent j in part n+1-j.
HardnessInstance gen_permutation_instance(int n);
HardnessInstance gen_permutation_instance(int n, Objective objective);

// Subset-sum reduction: d = 1, p = 2, free shape, both parts priced by
// (2x - S)^2 with S the total weight; the optimum is 0 iff the weights split
// into two equal-sum parts. (2x - S)^2 keeps values integral when S is odd;
// it equals 4 (x - S/2)^2 with the same argmin set.
HardnessInstance gen_partition_hardness(const std::vector<Value>& weights);

// Pseudo-polynomial subset-sum oracle: can the weights be split into two
// parts of equal sums? Empty input is trivially true.
bool check_equal_sum_partition(const std::vector<Value>& weights, Value max_total = 10'000'000);

}  // namespace vpart
