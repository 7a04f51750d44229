#include "vpart/flow_solver.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace vpart {

ConvexityReport check_convexity(const TypeInstance& inst) {
  if (inst.objective().kind() != Objective::Kind::CompletelySeparable)
    throw ValidationError("convexity check requires a completely separable objective");
  auto iv = inst.shape().as_interval(inst.p(), inst.n());
  if (!iv) throw ValidationError("convexity check requires an interval shape");
  ConvexityReport report;
  for (int k = 0; k < inst.p(); ++k)
    for (int i = 0; i < inst.t(); ++i) {
      Value cap = std::min(iv->second[static_cast<std::size_t>(k)],
                           inst.counts()[static_cast<std::size_t>(i)]);
      auto violation = term_convexity_violation(inst.objective().term(k, i), 0, cap);
      report.terms.push_back({k, i, !violation.has_value(), violation});
      if (violation) report.all_convex = false;
    }
  return report;
}

std::int64_t FlowNetwork::increment_arc_count() const {
  std::int64_t total = 0;
  for (Value v : bundle_cap.data()) total += v;
  return total + p;  // unit increments plus the p sink-window arcs
}

FlowNetwork build_flow_network(const TypeInstance& inst) {
  ConvexityReport convexity = check_convexity(inst);
  if (!convexity.all_convex) {
    for (const auto& term : convexity.terms)
      if (!term.convex)
        throw ValidationError(
            "objective term (k=" + std::to_string(term.part + 1) + ", i=" +
            std::to_string(term.coord + 1) + ") is not convex (second difference negative at x=" +
            std::to_string(*term.first_violation) + "); use the DP solvers for non-convex tables");
  }
  auto iv = *inst.shape().as_interval(inst.p(), inst.n());

  FlowNetwork net;
  net.t = inst.t();
  net.p = inst.p();
  net.n = inst.n();
  net.supplies = inst.counts();
  net.window_lo = std::move(iv.first);
  net.window_hi = std::move(iv.second);
  net.bundle_cap = Matrix(net.t, net.p);
  Value lo_total = 0, hi_total = 0;
  for (int k = 0; k < net.p; ++k) {
    lo_total += net.window_lo[static_cast<std::size_t>(k)];
    hi_total += net.window_hi[static_cast<std::size_t>(k)];
  }
  net.window_infeasible = lo_total > net.n || hi_total < net.n;

  net.terms.reserve(static_cast<std::size_t>(net.p) * net.t);
  __int128 cost_scale = 0;
  for (int k = 0; k < net.p; ++k)
    for (int i = 0; i < net.t; ++i) {
      const UnivariateTerm& term = inst.objective().term(k, i);
      net.terms.push_back(term);
      Value cap = std::min(net.window_hi[static_cast<std::size_t>(k)],
                           net.supplies[static_cast<std::size_t>(i)]);
      net.bundle_cap.at(i, k) = cap;
      net.base_cost += eval_term(term, 0);
      cost_scale += term_abs_bound(term, 0, cap);
    }
  if (cost_scale > (__int128(1) << 60))
    throw ValidationError("objective scale too large for flow potentials");
  return net;
}

namespace {

constexpr Value kInf = std::numeric_limits<Value>::max() / 4;

struct Arc {
  int from, to;
  Value cap;
  Value flow = 0;
  int term = -1;  // index into network terms; -1 means constant zero cost
};

struct ResidualGraph {
  const FlowNetwork& net;
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out;  // signed slots: 2e forward, 2e+1 backward

  explicit ResidualGraph(const FlowNetwork& n) : net(n) {
    const int t = net.t, p = net.p;
    auto add = [&](int from, int to, Value cap, int term) {
      out[static_cast<std::size_t>(from)].push_back(2 * static_cast<int>(arcs.size()));
      out[static_cast<std::size_t>(to)].push_back(2 * static_cast<int>(arcs.size()) + 1);
      arcs.push_back({from, to, cap, 0, term});
    };
    out.resize(static_cast<std::size_t>(net.node_count()));
    // node ids: 0 = source, 1..t types, t+1..t+p parts, t+p+1 sink
    for (int i = 0; i < t; ++i) add(0, 1 + i, net.supplies[static_cast<std::size_t>(i)], -1);
    for (int i = 0; i < t; ++i)
      for (int k = 0; k < p; ++k)
        add(1 + i, 1 + t + k, net.bundle_cap.at(i, k), k * t + i);
    for (int k = 0; k < p; ++k)
      add(1 + t + k, t + p + 1,
          net.window_hi[static_cast<std::size_t>(k)] - net.window_lo[static_cast<std::size_t>(k)],
          -1);
  }

  // Marginal cost of pushing one more unit through slot (arc e, direction).
  Value cost(int slot) const {
    const Arc& a = arcs[static_cast<std::size_t>(slot / 2)];
    if (a.term < 0) return 0;
    const UnivariateTerm& term = net.terms[static_cast<std::size_t>(a.term)];
    if (slot % 2 == 0) return eval_term(term, a.flow + 1) - eval_term(term, a.flow);
    return -(eval_term(term, a.flow) - eval_term(term, a.flow - 1));
  }

  // Units available at the current marginal: 1 for convex bundles, the full
  // residual for constant-cost arcs.
  Value available(int slot) const {
    const Arc& a = arcs[static_cast<std::size_t>(slot / 2)];
    if (slot % 2 == 0) return a.term < 0 ? a.cap - a.flow : std::min<Value>(1, a.cap - a.flow);
    return a.term < 0 ? a.flow : std::min<Value>(1, a.flow);
  }

  int head(int slot) const {
    const Arc& a = arcs[static_cast<std::size_t>(slot / 2)];
    return slot % 2 == 0 ? a.to : a.from;
  }
  int tail(int slot) const {
    const Arc& a = arcs[static_cast<std::size_t>(slot / 2)];
    return slot % 2 == 0 ? a.from : a.to;
  }
};

}  // namespace

FlowAssignment solve_min_cost_flow(const FlowNetwork& net) {
  FlowAssignment result;
  result.bundle_flow = Matrix(net.t, net.p);
  if (net.window_infeasible) return result;

  const int nodes = net.node_count();
  const int source = 0, sink = net.t + net.p + 1;
  ResidualGraph graph(net);

  // Remaining deficits: the mandatory window units at each part node plus
  // whatever the sink still has to absorb.
  std::vector<Value> deficit(static_cast<std::size_t>(nodes), 0);
  Value lo_total = 0;
  for (int k = 0; k < net.p; ++k) {
    deficit[static_cast<std::size_t>(net.t + 1 + k)] = net.window_lo[static_cast<std::size_t>(k)];
    lo_total += net.window_lo[static_cast<std::size_t>(k)];
  }
  deficit[static_cast<std::size_t>(sink)] = net.n - lo_total;
  Value excess = net.n;

  // Initial potentials by label correcting from the source (marginals may be
  // negative; the zero-flow residual graph is acyclic so this terminates).
  std::vector<Value> potential(static_cast<std::size_t>(nodes), kInf);
  potential[source] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t e = 0; e < graph.arcs.size(); ++e) {
      int slot = 2 * static_cast<int>(e);
      if (graph.available(slot) <= 0) continue;
      const Arc& a = graph.arcs[e];
      if (potential[static_cast<std::size_t>(a.from)] == kInf) continue;
      Value cand = potential[static_cast<std::size_t>(a.from)] + graph.cost(slot);
      if (cand < potential[static_cast<std::size_t>(a.to)]) {
        potential[static_cast<std::size_t>(a.to)] = cand;
        changed = true;
      }
    }
  }
  std::replace(potential.begin(), potential.end(), kInf, Value{0});

  std::vector<Value> dist(static_cast<std::size_t>(nodes));
  std::vector<int> pred_slot(static_cast<std::size_t>(nodes));
  using Item = std::pair<Value, int>;

  while (excess > 0) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(pred_slot.begin(), pred_slot.end(), -1);
    dist[source] = 0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0, source);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (d > dist[static_cast<std::size_t>(v)]) continue;
      for (int slot : graph.out[static_cast<std::size_t>(v)]) {
        if (graph.available(slot) <= 0) continue;
        int w = graph.head(slot);
        Value reduced = graph.cost(slot) + potential[static_cast<std::size_t>(v)] -
                        potential[static_cast<std::size_t>(w)];
        Value cand = d + reduced;
        if (cand < dist[static_cast<std::size_t>(w)]) {
          dist[static_cast<std::size_t>(w)] = cand;
          pred_slot[static_cast<std::size_t>(w)] = slot;
          heap.emplace(cand, w);
        }
      }
    }

    int target = -1;
    for (int v = 0; v < nodes; ++v)
      if (deficit[static_cast<std::size_t>(v)] > 0 && dist[static_cast<std::size_t>(v)] < kInf &&
          (target == -1 || dist[static_cast<std::size_t>(v)] < dist[static_cast<std::size_t>(target)]))
        target = v;
    if (target == -1)
      throw std::logic_error("flow solver stuck with unmet deficits despite feasible windows");

    Value push = std::min(excess, deficit[static_cast<std::size_t>(target)]);
    for (int v = target; v != source; v = graph.tail(pred_slot[static_cast<std::size_t>(v)]))
      push = std::min(push, graph.available(pred_slot[static_cast<std::size_t>(v)]));
    for (int v = target; v != source; v = graph.tail(pred_slot[static_cast<std::size_t>(v)])) {
      int slot = pred_slot[static_cast<std::size_t>(v)];
      Arc& a = graph.arcs[static_cast<std::size_t>(slot / 2)];
      Value delta = slot % 2 == 0 ? push : -push;
      result.flow_cost += graph.cost(slot) * push;
      a.flow += delta;
    }
    excess -= push;
    deficit[static_cast<std::size_t>(target)] -= push;
    ++result.augmentations;

    for (int v = 0; v < nodes; ++v)
      if (dist[static_cast<std::size_t>(v)] < kInf)
        potential[static_cast<std::size_t>(v)] += dist[static_cast<std::size_t>(v)];
  }

  result.feasible = true;
  for (std::size_t e = 0; e < graph.arcs.size(); ++e) {
    const Arc& a = graph.arcs[e];
    if (a.term >= 0) result.bundle_flow.at(a.term % net.t, a.term / net.t) = a.flow;
  }
  return result;
}

bool residual_has_negative_cycle(const FlowNetwork& net, const FlowAssignment& assignment) {
  ResidualGraph graph(net);
  for (auto& arc : graph.arcs)
    if (arc.term >= 0) arc.flow = assignment.bundle_flow.at(arc.term % net.t, arc.term / net.t);
    else if (arc.from == 0) arc.flow = 0;  // source arcs: recompute below
  // restore plumbing flows by conservation
  for (auto& arc : graph.arcs) {
    if (arc.term >= 0) continue;
    if (arc.from == 0) {
      Value total = 0;
      for (const auto& other : graph.arcs)
        if (other.term >= 0 && other.from == arc.to) total += other.flow;
      arc.flow = total;
    } else {
      Value total = 0;
      for (const auto& other : graph.arcs)
        if (other.term >= 0 && other.to == arc.from) total += other.flow;
      arc.flow = total - net.window_lo[static_cast<std::size_t>(arc.from - net.t - 1)];
    }
  }

  const int nodes = net.node_count();
  std::vector<Value> dist(static_cast<std::size_t>(nodes), 0);  // virtual super-root
  for (int round = 0; round < nodes; ++round) {
    bool changed = false;
    for (std::size_t e = 0; e < graph.arcs.size(); ++e) {
      for (int dir = 0; dir < 2; ++dir) {
        int slot = 2 * static_cast<int>(e) + dir;
        if (graph.available(slot) <= 0) continue;
        Value cand = dist[static_cast<std::size_t>(graph.tail(slot))] + graph.cost(slot);
        if (cand < dist[static_cast<std::size_t>(graph.head(slot))]) {
          dist[static_cast<std::size_t>(graph.head(slot))] = cand;
          changed = true;
        }
      }
    }
    if (!changed) return false;
  }
  return true;
}

Solution flow_to_partition(const FlowNetwork& net, const FlowAssignment& assignment,
                           const TypeInstance& inst) {
  Solution sol;
  sol.partition = Partition::from_counts(assignment.bundle_flow);
  sol.partition.assignment = expand_type_counts(inst, assignment.bundle_flow);
  sol.sums = assignment.bundle_flow;
  sol.value = net.base_cost + assignment.flow_cost;
  verify_solution(inst, sol);
  return sol;
}

SolveResult solve_flow_type(const TypeInstance& inst) {
  FlowNetwork net = build_flow_network(inst);
  SolveResult result;
  result.stats.arcs = net.increment_arc_count();
  if (net.window_infeasible) return result;
  FlowAssignment assignment = solve_min_cost_flow(net);
  result.stats.states = assignment.augmentations;
  if (!assignment.feasible) return result;
  result.status = SolveStatus::Optimal;
  result.solution = flow_to_partition(net, assignment, inst);
  return result;
}

}  // namespace vpart
