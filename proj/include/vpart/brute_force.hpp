#pragma once

#include "vpart/instance.hpp"
#include "vpart/partition.hpp"

namespace vpart {

// Cap on enumerated assignments. Exceeding it is an error, never a silent
// truncation.
struct EnumerationBudget {
  std::int64_t max_assignments = 20'000'000;
};

// Reference solver: enumerates all p^n assignments in base-p counting order
// (agent 1 is the least significant digit) and keeps the minimum-cost
// admissible one, breaking ties by lexicographically smallest assignment
// vector. No pruning, by contract.
SolveResult brute_force_solve(const VectorInstance& inst, const EnumerationBudget& budget = {});
SolveResult brute_force_solve(const TypeInstance& inst, const EnumerationBudget& budget = {});

// Number of admissible p-partitions.
std::int64_t count_admissible(const VectorInstance& inst, const EnumerationBudget& budget = {});
std::int64_t count_admissible(const TypeInstance& inst, const EnumerationBudget& budget = {});

}  // namespace vpart
