#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vpart/common.hpp"
#include "vpart/instance.hpp"
#include "vpart/matrix.hpp"

namespace vpart {

// Assignment of agents to parts. Vector instances carry the per-agent
// assignment; type instances carry the t x p count matrix (an assignment can
// be expanded from it in canonical agent order).
struct Partition {
  std::vector<int> assignment;  // agent j -> part, 0-based; sized n or empty
  Matrix counts;                // t x p for type partitions, else 0 x 0

  static Partition from_assignment(std::vector<int> assignment);
  static Partition from_counts(Matrix counts);
};

struct SolveStats {
  std::int64_t states = 0;  // DP states kept / assignments enumerated
  std::int64_t arcs = 0;    // DP edges relaxed / flow augmentations
};

struct Solution {
  Partition partition;
  Value value = 0;
  Matrix sums;  // d x p attribute sums, or t x p counts for type instances
};

enum class SolveStatus { Optimal, Infeasible };

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Solution> solution;
  SolveStats stats;

  bool optimal() const { return status == SolveStatus::Optimal; }
  const Solution& sol() const { return *solution; }
};

// Per-part attribute sums (d x p) of an assignment.
Matrix partition_sums(const VectorInstance& inst, const Partition& partition);
// Count matrix column sums -> part sizes; counts from an assignment.
Matrix counts_from_assignment(const TypeInstance& inst, const std::vector<int>& assignment);
// Canonical expansion of a count matrix: part k gets counts(i, k) agents of
// type i, ascending agent index within each type.
std::vector<int> expand_type_counts(const TypeInstance& inst, const Matrix& counts);

// Objective value of a partition. Does not check admissibility.
Value partition_cost(const VectorInstance& inst, const Partition& partition);
Value partition_cost(const TypeInstance& inst, const Partition& partition);

// |pi_k| in B_k for every part?
bool is_admissible(const VectorInstance& inst, const Partition& partition);
bool is_admissible(const TypeInstance& inst, const Partition& partition);

// Solvers run this on everything they emit: admissibility plus independent
// cost recomputation. Throws std::logic_error on mismatch (a solver bug).
void verify_solution(const VectorInstance& inst, const Solution& solution);
void verify_solution(const TypeInstance& inst, const Solution& solution);

}  // namespace vpart
