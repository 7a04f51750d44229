#pragma once

#include <functional>
#include <vector>

#include "vpart/instance.hpp"
#include "vpart/partition.hpp"

namespace vpart {

struct DpSeparableBudget {
  std::int64_t max_edges = 200'000'000;  // enumerated (state, increment) pairs
};

// Reduction of a separable vector problem to a type problem over the
// distinct columns of A: g_k(v) = f_k(sum_i v_i A^i).
struct TypeReduction {
  TypeStructure types;
  // Evaluates f_k on the weighted representative sum of a count vector.
  std::function<Value(int k, std::span<const Value> counts)> part_cost;
};

struct VectorToTypeResult {
  TypeInstance instance;
  TypeReduction reduction;
};

// Shortest path over cumulative type-count vectors [k, v]: edges add an
// increment x >= 0 with sum(x) in B_k and cost g_k(x). Requires a Separable
// or CompletelySeparable objective.
SolveResult solve_dp_separable_type(const TypeInstance& inst, const DpSeparableBudget& budget = {});

// Requires n >= 1 (the caller handles the empty instance) and a separable
// objective.
VectorToTypeResult reduce_vector_to_type(const VectorInstance& inst);

// Reduce, solve the type DP, then expand counts back to an agent assignment
// (part k takes x^k_i agents of type i, ascending agent order).
SolveResult solve_dp_separable_vector(const VectorInstance& inst,
                                      const DpSeparableBudget& budget = {});

}  // namespace vpart
