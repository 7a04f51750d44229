#include "vpart/dp_separable.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace vpart {
namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct VecHash {
  std::size_t operator()(const std::vector<Value>& v) const {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (Value x : v) h = mix64(h ^ static_cast<std::uint64_t>(x));
    return static_cast<std::size_t>(h);
  }
};

using StateMap = std::unordered_map<std::vector<Value>, Value, VecHash>;

// Calls fn(s) for every admissible part size s of part k within [0, cap].
template <typename Fn>
void for_each_admissible_size(const ShapeConstraint& shape, int k, Value cap, Fn&& fn) {
  switch (shape.kind()) {
    case ShapeConstraint::Kind::Free:
      for (Value s = 0; s <= cap; ++s) fn(s);
      break;
    case ShapeConstraint::Kind::Interval: {
      Value lo = std::max<Value>(shape.lower()[static_cast<std::size_t>(k)], 0);
      Value hi = std::min(shape.upper()[static_cast<std::size_t>(k)], cap);
      for (Value s = lo; s <= hi; ++s) fn(s);
      break;
    }
    case ShapeConstraint::Kind::Single: {
      Value s = shape.sizes()[static_cast<std::size_t>(k)];
      if (s <= cap) fn(s);
      break;
    }
    case ShapeConstraint::Kind::Sets:
      for (Value s : shape.set_lists()[static_cast<std::size_t>(k)]) {
        if (s > cap) break;
        fn(s);
      }
      break;
  }
}

// Enumerates increments x with 0 <= x_i <= caps[i] and sum(x) = total, in
// lexicographically ascending order for a fixed total.
template <typename Fn>
void for_each_composition(const std::vector<Value>& caps, const std::vector<Value>& suffix_cap,
                          Value total, std::vector<Value>& x, std::size_t i, Fn&& fn) {
  if (i == caps.size()) {
    fn(x);
    return;
  }
  Value rest = suffix_cap[i + 1];
  Value lo = std::max<Value>(0, total - rest);
  Value hi = std::min(caps[i], total);
  for (Value v = lo; v <= hi; ++v) {
    x[i] = v;
    for_each_composition(caps, suffix_cap, total - v, x, i + 1, fn);
  }
}

std::vector<Value> suffix_caps(const std::vector<Value>& caps) {
  std::vector<Value> out(caps.size() + 1, 0);
  for (std::size_t i = caps.size(); i > 0; --i) out[i - 1] = out[i] + caps[i - 1];
  return out;
}

}  // namespace

SolveResult solve_dp_separable_type(const TypeInstance& inst, const DpSeparableBudget& budget) {
  if (!inst.objective().is_separable())
    throw ValidationError("dp-separable requires a separable or completely separable objective");
  const int t = inst.t(), p = inst.p();
  const std::vector<Value>& target = inst.counts();

  SolveResult result;
  std::int64_t edges = 0;
  auto charge_edge = [&edges, &budget]() {
    if (++edges > budget.max_edges)
      throw BudgetError("dp-separable edge budget of " + std::to_string(budget.max_edges) +
                        " exceeded");
  };

  // Cost-to-go from [k, v] to the terminal [p, (n_1,...,n_t)].
  std::vector<StateMap> to_go(static_cast<std::size_t>(p) + 1);
  to_go[static_cast<std::size_t>(p)].emplace(target, 0);
  result.stats.states = 1;

  std::vector<Value> x(static_cast<std::size_t>(t));
  for (int k = p; k >= 1; --k) {
    const StateMap& ahead = to_go[static_cast<std::size_t>(k)];
    StateMap& behind = to_go[static_cast<std::size_t>(k) - 1];
    for (const auto& [w, cost_ahead] : ahead) {
      // Increments x <= w keep the predecessor v = w - x nonnegative.
      auto scaps = suffix_caps(w);
      for_each_admissible_size(inst.shape(), k - 1, scaps[0], [&](Value s) {
        for_each_composition(w, scaps, s, x, 0, [&](const std::vector<Value>& inc) {
          charge_edge();
          Value cost = cost_ahead + inst.objective().part_value(k - 1, inc);
          std::vector<Value> v(static_cast<std::size_t>(t));
          for (int i = 0; i < t; ++i)
            v[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] - inc[static_cast<std::size_t>(i)];
          auto [it, inserted] = behind.try_emplace(std::move(v), cost);
          if (!inserted && cost < it->second) it->second = cost;
        });
      });
    }
    result.stats.states += static_cast<std::int64_t>(behind.size());
  }
  result.stats.arcs = edges;

  const std::vector<Value> zero(static_cast<std::size_t>(t), 0);
  auto start = to_go[0].find(zero);
  if (start == to_go[0].end()) return result;  // terminal unreachable
  const Value optimum = start->second;

  // Forward greedy walk: at each layer pick the lexicographically smallest
  // increment that stays on an optimal path, which yields the
  // lexicographically smallest counts matrix (x^1, ..., x^p) among optima.
  Matrix counts(t, p);
  std::vector<Value> v = zero;
  Value remaining = optimum;
  for (int k = 1; k <= p; ++k) {
    std::vector<Value> caps(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i)
      caps[static_cast<std::size_t>(i)] = target[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)];
    auto scaps = suffix_caps(caps);
    bool have = false;
    std::vector<Value> best;
    const StateMap& ahead = to_go[static_cast<std::size_t>(k)];
    for_each_admissible_size(inst.shape(), k - 1, scaps[0], [&](Value s) {
      for_each_composition(caps, scaps, s, x, 0, [&](const std::vector<Value>& inc) {
        std::vector<Value> w(static_cast<std::size_t>(t));
        for (int i = 0; i < t; ++i)
          w[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] + inc[static_cast<std::size_t>(i)];
        auto it = ahead.find(w);
        if (it == ahead.end()) return;
        if (inst.objective().part_value(k - 1, inc) + it->second != remaining) return;
        if (!have || inc < best) {
          have = true;
          best = inc;
        }
      });
    });
    if (!have) throw std::logic_error("dp-separable lost the optimal path during reconstruction");
    for (int i = 0; i < t; ++i) {
      counts.at(i, k - 1) = best[static_cast<std::size_t>(i)];
      v[static_cast<std::size_t>(i)] += best[static_cast<std::size_t>(i)];
    }
    remaining -= inst.objective().part_value(k - 1, best);
  }

  Solution sol;
  sol.partition = Partition::from_counts(counts);
  sol.partition.assignment = expand_type_counts(inst, counts);
  sol.value = optimum;
  sol.sums = counts;
  verify_solution(inst, sol);
  result.status = SolveStatus::Optimal;
  result.solution = std::move(sol);
  return result;
}

VectorToTypeResult reduce_vector_to_type(const VectorInstance& inst) {
  if (!inst.objective().is_separable())
    throw ValidationError("the vector-to-type reduction needs a separable objective");
  if (inst.n() < 1) throw ValidationError("the vector-to-type reduction needs n >= 1");
  TypeStructure types = compute_types(inst.attributes());

  const Matrix reps = types.representatives;
  const Objective original = inst.objective();
  const int d = inst.d();
  auto part_cost = [reps, original, d](int k, std::span<const Value> counts) -> Value {
    std::vector<Value> weighted(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d; ++i)
      for (int type = 0; type < reps.cols(); ++type)
        weighted[static_cast<std::size_t>(i)] += counts[static_cast<std::size_t>(type)] * reps.at(i, type);
    return original.part_value(k, weighted);
  };

  std::vector<Objective::PartOracle> oracles;
  oracles.reserve(static_cast<std::size_t>(inst.p()));
  for (int k = 0; k < inst.p(); ++k)
    oracles.push_back([part_cost, k](std::span<const Value> counts) { return part_cost(k, counts); });

  TypeInstance reduced(types.counts, inst.p(), inst.shape(), Objective::separable(std::move(oracles)));
  TypeReduction reduction{std::move(types), part_cost};
  return {std::move(reduced), std::move(reduction)};
}

SolveResult solve_dp_separable_vector(const VectorInstance& inst, const DpSeparableBudget& budget) {
  if (!inst.objective().is_separable())
    throw ValidationError("dp-separable requires a separable or completely separable objective");
  if (inst.n() == 0) {
    SolveResult result;
    for (int k = 0; k < inst.p(); ++k)
      if (!inst.shape().contains(k, 0)) return result;
    Solution sol;
    sol.partition = Partition::from_assignment({});
    sol.sums = Matrix(inst.d(), inst.p());
    sol.value = inst.objective().value(sol.sums);
    verify_solution(inst, sol);
    result.status = SolveStatus::Optimal;
    result.solution = std::move(sol);
    return result;
  }

  VectorToTypeResult reduced = reduce_vector_to_type(inst);
  SolveResult inner = solve_dp_separable_type(reduced.instance, budget);
  SolveResult result;
  result.stats = inner.stats;
  if (!inner.optimal()) return result;

  const Matrix& counts = inner.sol().partition.counts;
  std::vector<int> assignment(static_cast<std::size_t>(inst.n()), -1);
  for (int type = 0; type < reduced.reduction.types.type_count; ++type) {
    const auto& members = reduced.reduction.types.members[static_cast<std::size_t>(type)];
    std::size_t next = 0;
    for (int k = 0; k < inst.p(); ++k)
      for (Value r = 0; r < counts.at(type, k); ++r)
        assignment[static_cast<std::size_t>(members[next++])] = k;
  }

  Solution sol;
  sol.partition = Partition::from_assignment(std::move(assignment));
  sol.value = inner.sol().value;
  sol.sums = partition_sums(inst, sol.partition);
  verify_solution(inst, sol);
  result.status = SolveStatus::Optimal;
  result.solution = std::move(sol);
  return result;
}

}  // namespace vpart
