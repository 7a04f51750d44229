#pragma once

#include <optional>
#include <vector>

#include "vpart/instance.hpp"
#include "vpart/partition.hpp"

namespace vpart {

// Per-term convexity over the reachable bundle domain [0, min(u_k, n_i)].
struct ConvexityReport {
  struct Term {
    int part = 0, coord = 0;               // 0-based k, i
    bool convex = true;
    std::optional<Value> first_violation;  // interior x with negative second difference
  };
  std::vector<Term> terms;  // k-major
  bool all_convex = true;
};

ConvexityReport check_convexity(const TypeInstance& inst);

// Transportation realization of the type count model: one supply node
// per type, one node per part with demand window [l_k, u_k], and a bundle of
// min(u_k, n_i) unit increments per (type, part) pair whose r-th increment
// costs g_{k,i}(r) - g_{k,i}(r-1). Windows use the standard reduction: the
// mandatory l_k units become a node deficit (a pre-routed zero-cost arc to
// the super-sink), the optional u_k - l_k remainder is an explicit arc.
// Nodes: super-source, t types, p parts, super-sink.
struct FlowNetwork {
  int t = 0, p = 0;
  Value n = 0;
  std::vector<Value> supplies;              // n_i per type
  std::vector<Value> window_lo, window_hi;  // [l_k, u_k] per part
  Matrix bundle_cap;                        // t x p, min(u_k, n_i)
  std::vector<UnivariateTerm> terms;        // k-major grid of g_{k,i}
  Value base_cost = 0;                      // sum g_{k,i}(0), added back on read-off
  bool window_infeasible = false;           // sum l > n or sum u < n

  int node_count() const { return t + p + 2; }
  std::int64_t increment_arc_count() const;
  const UnivariateTerm& term(int k, int i) const {
    return terms[static_cast<std::size_t>(k) * t + i];
  }
};

// Throws ValidationError on a non-convex term (pointing at the DP solvers),
// a non-interval shape, or a non-completely-separable objective. Window
// infeasibility is a flag, not an error.
FlowNetwork build_flow_network(const TypeInstance& inst);

struct FlowAssignment {
  bool feasible = false;
  Matrix bundle_flow;            // t x p
  Value flow_cost = 0;           // relative to the zero flow
  std::int64_t augmentations = 0;
};

// Successive shortest augmenting paths with node potentials; the initial
// potentials come from a label-correcting pass since marginals may be
// negative. Deterministic: equal-length paths prefer the lowest node index.
FlowAssignment solve_min_cost_flow(const FlowNetwork& network);

// Optimality certificate used by the tests.
bool residual_has_negative_cycle(const FlowNetwork& network, const FlowAssignment& assignment);

// Bundle flows -> counts matrix solution, value = base_cost + flow cost.
Solution flow_to_partition(const FlowNetwork& network, const FlowAssignment& assignment,
                           const TypeInstance& inst);

// check_convexity + build + solve + read off.
SolveResult solve_flow_type(const TypeInstance& inst);

}  // namespace vpart
