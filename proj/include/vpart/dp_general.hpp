#pragma once

#include <vector>

#include "vpart/instance.hpp"
#include "vpart/partition.hpp"

namespace vpart {

// Memory cap for the layered DP, counted in stored scalar state entries
// ((d+1)*p cells per state, summed over all layers).
struct DpGeneralBudget {
  std::int64_t max_state_entries = 100'000'000;
};

// Shortest path in the layered acyclic digraph over running-sum states.
// States are (d+1) x p matrices: row 0 tracks part cardinalities, rows 1..d
// the attribute sums of the agents placed so far. Layer j holds exactly the
// states reachable by placing agents 1..j; every intermediate edge has
// length zero, so only reachability and predecessor links are propagated and
// the objective is evaluated once over the admissible layer-n states.
// Works for any objective kind.
SolveResult solve_dp_general(const VectorInstance& inst, const DpGeneralBudget& budget = {});

// Type partition via the unit-vector encoding (d := t, a = 1).
SolveResult solve_dp_general_type(const TypeInstance& inst, const DpGeneralBudget& budget = {});

// The reachable state set after placing agents 1..layer, as full
// (d+1) x p matrices in lexicographic order. Exposed for testing.
std::vector<Matrix> reachable_states(const VectorInstance& inst, int layer,
                                     const DpGeneralBudget& budget = {});

}  // namespace vpart
