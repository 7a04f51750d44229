#include "vpart/brute_force.hpp"

#include <algorithm>
#include <string>

namespace vpart {
namespace {

// p^n clamped into int64 range.
std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
  __int128 r = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > (__int128(1) << 62)) return std::int64_t{1} << 62;
  }
  return static_cast<std::int64_t>(r);
}

void check_budget(std::int64_t n, std::int64_t p, const EnumerationBudget& budget) {
  if (checked_pow(p, n) > budget.max_assignments)
    throw BudgetError("p^n = " + std::to_string(p) + "^" + std::to_string(n) +
                      " exceeds the enumeration budget of " +
                      std::to_string(budget.max_assignments) + " assignments");
}

// Visits every assignment vector in base-p counting order, agent 1 least
// significant. move(j, from, to) fires on every digit change; leaf() after
// every full assignment.
template <typename MoveFn, typename LeafFn>
void enumerate_assignments(int n, int p, std::vector<int>& a, MoveFn&& move, LeafFn&& leaf) {
  a.assign(static_cast<std::size_t>(n), 0);
  for (;;) {
    leaf();
    int j = 0;
    while (j < n) {
      int from = a[static_cast<std::size_t>(j)];
      if (from + 1 == p) {
        a[static_cast<std::size_t>(j)] = 0;
        move(j, from, 0);
        ++j;
      } else {
        a[static_cast<std::size_t>(j)] = from + 1;
        move(j, from, from + 1);
        break;
      }
    }
    if (j == n) break;
  }
}

// Precomputed admissibility of every part size, for O(1) updates in the loop.
struct SizeFilter {
  int p;
  Value n;
  std::vector<std::uint8_t> ok;  // p * (n+1)
  std::vector<Value> sizes;
  int violations = 0;

  // The enumeration starts from the all-zero assignment: everyone in part 1.
  SizeFilter(const ShapeConstraint& shape, int parts, Value total) : p(parts), n(total) {
    ok.resize(static_cast<std::size_t>(p) * (n + 1));
    for (int k = 0; k < p; ++k)
      for (Value s = 0; s <= n; ++s)
        ok[static_cast<std::size_t>(k) * (n + 1) + s] = shape.contains(k, s) ? 1 : 0;
    sizes.assign(static_cast<std::size_t>(p), 0);
    sizes[0] = n;
    for (int k = 0; k < p; ++k)
      if (!admissible(k, sizes[static_cast<std::size_t>(k)])) ++violations;
  }

  bool admissible(int k, Value s) const {
    return ok[static_cast<std::size_t>(k) * (n + 1) + s] != 0;
  }

  void move(int from, int to) {
    violations += admissible(from, sizes[static_cast<std::size_t>(from)]) ? 1 : 0;
    --sizes[static_cast<std::size_t>(from)];
    violations -= admissible(from, sizes[static_cast<std::size_t>(from)]) ? 1 : 0;
    violations += admissible(to, sizes[static_cast<std::size_t>(to)]) ? 1 : 0;
    ++sizes[static_cast<std::size_t>(to)];
    violations -= admissible(to, sizes[static_cast<std::size_t>(to)]) ? 1 : 0;
  }
};

}  // namespace

SolveResult brute_force_solve(const VectorInstance& inst, const EnumerationBudget& budget) {
  check_budget(inst.n(), inst.p(), budget);
  SolveResult result;
  std::vector<int> a;
  SizeFilter filter(inst.shape(), inst.p(), inst.n());
  bool found = false;
  Value best_value = 0;
  std::vector<int> best_assignment;
  Matrix sums(inst.d(), inst.p());

  enumerate_assignments(
      inst.n(), inst.p(), a, [&](int, int from, int to) { filter.move(from, to); },
      [&]() {
        ++result.stats.states;
        if (filter.violations != 0) return;
        ++result.stats.arcs;
        sums.fill(0);
        for (int j = 0; j < inst.n(); ++j)
          for (int i = 0; i < inst.d(); ++i)
            sums.at(i, a[static_cast<std::size_t>(j)]) += inst.attributes().at(i, j);
        Value value = inst.objective().value(sums);
        if (!found || value < best_value ||
            (value == best_value &&
             std::lexicographical_compare(a.begin(), a.end(), best_assignment.begin(),
                                          best_assignment.end()))) {
          found = true;
          best_value = value;
          best_assignment = a;
        }
      });

  if (!found) return result;
  result.status = SolveStatus::Optimal;
  Solution sol;
  sol.partition = Partition::from_assignment(std::move(best_assignment));
  sol.value = best_value;
  sol.sums = partition_sums(inst, sol.partition);
  verify_solution(inst, sol);
  result.solution = std::move(sol);
  return result;
}

SolveResult brute_force_solve(const TypeInstance& inst, const EnumerationBudget& budget) {
  check_budget(inst.n(), inst.p(), budget);
  SolveResult result;
  std::vector<int> a;
  SizeFilter filter(inst.shape(), inst.p(), inst.n());
  std::vector<int> type_of(static_cast<std::size_t>(inst.n()));
  for (Value j = 0; j < inst.n(); ++j) type_of[static_cast<std::size_t>(j)] = inst.agent_type(j);
  bool found = false;
  Value best_value = 0;
  std::vector<int> best_assignment;
  Matrix counts(inst.t(), inst.p());

  enumerate_assignments(
      static_cast<int>(inst.n()), inst.p(), a,
      [&](int, int from, int to) { filter.move(from, to); },
      [&]() {
        ++result.stats.states;
        if (filter.violations != 0) return;
        ++result.stats.arcs;
        counts.fill(0);
        for (Value j = 0; j < inst.n(); ++j)
          ++counts.at(type_of[static_cast<std::size_t>(j)], a[static_cast<std::size_t>(j)]);
        Value value = inst.objective().value(counts);
        if (!found || value < best_value ||
            (value == best_value &&
             std::lexicographical_compare(a.begin(), a.end(), best_assignment.begin(),
                                          best_assignment.end()))) {
          found = true;
          best_value = value;
          best_assignment = a;
        }
      });

  if (!found) return result;
  result.status = SolveStatus::Optimal;
  Solution sol;
  sol.partition = Partition::from_assignment(best_assignment);
  sol.partition.counts = counts_from_assignment(inst, best_assignment);
  sol.value = best_value;
  sol.sums = sol.partition.counts;
  verify_solution(inst, sol);
  result.solution = std::move(sol);
  return result;
}

namespace {

template <typename Inst>
std::int64_t count_admissible_impl(const Inst& inst, const EnumerationBudget& budget) {
  check_budget(static_cast<std::int64_t>(inst.n()), inst.p(), budget);
  SizeFilter filter(inst.shape(), inst.p(), inst.n());
  std::vector<int> a;
  std::int64_t count = 0;
  enumerate_assignments(
      static_cast<int>(inst.n()), inst.p(), a,
      [&](int, int from, int to) { filter.move(from, to); },
      [&]() { count += filter.violations == 0 ? 1 : 0; });
  return count;
}

}  // namespace

std::int64_t count_admissible(const VectorInstance& inst, const EnumerationBudget& budget) {
  return count_admissible_impl(inst, budget);
}

std::int64_t count_admissible(const TypeInstance& inst, const EnumerationBudget& budget) {
  return count_admissible_impl(inst, budget);
}

}  // namespace vpart
