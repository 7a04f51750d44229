#include "vpart/dispatch.hpp"

#include <algorithm>

#include "vpart/flow_solver.hpp"

namespace vpart {

SolverChoice parse_solver_name(const std::string& name) {
  if (name == "auto") return SolverChoice::Auto;
  if (name == "dp-general") return SolverChoice::DpGeneral;
  if (name == "dp-separable") return SolverChoice::DpSeparable;
  if (name == "flow") return SolverChoice::Flow;
  if (name == "brute") return SolverChoice::Brute;
  throw ValidationError("unknown solver '" + name +
                        "' (expected auto, dp-general, dp-separable, flow or brute)");
}

std::string solver_name(SolverChoice choice) {
  switch (choice) {
    case SolverChoice::Auto: return "auto";
    case SolverChoice::DpGeneral: return "dp-general";
    case SolverChoice::DpSeparable: return "dp-separable";
    case SolverChoice::Flow: return "flow";
    case SolverChoice::Brute: return "brute";
  }
  return "?";
}

namespace {

bool objective_separable(const AnyInstance& inst) {
  return std::visit([](const auto& i) { return i.objective().is_separable(); }, inst);
}

std::string flow_ineligibility(const AnyInstance& inst) {
  const auto* type_inst = std::get_if<TypeInstance>(&inst);
  if (type_inst == nullptr)
    return "flow requires a type instance (vector instances go through the DP solvers)";
  if (type_inst->objective().kind() != Objective::Kind::CompletelySeparable)
    return "flow requires a completely separable objective";
  if (!type_inst->shape().as_interval(type_inst->p(), type_inst->n()))
    return "flow requires an interval (bounded) shape";
  ConvexityReport report = check_convexity(*type_inst);
  if (!report.all_convex) return "flow requires convex objective terms";
  return "";
}

// Work estimates, clamped; used only to pick a solver under `auto`.
std::int64_t clamp_to_i64(__int128 v) {
  const __int128 cap = __int128(1) << 62;
  return static_cast<std::int64_t>(v > cap ? cap : v);
}

std::int64_t pow_clamped(std::int64_t base, std::int64_t exp) {
  __int128 r = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > (__int128(1) << 62)) return std::int64_t{1} << 62;
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t estimate_dp_general_entries(const AnyInstance& inst) {
  Value n = 0, a = 1;
  int d = 0, p = 0;
  if (const auto* v = std::get_if<VectorInstance>(&inst)) {
    n = v->n();
    a = std::max<Value>(v->a(), 1);
    d = v->d();
    p = v->p();
  } else {
    const auto& t = std::get<TypeInstance>(inst);
    n = t.n();
    a = 1;
    d = t.t();
    p = t.p();
  }
  // per-layer states <= min(p^n, (n+1)^p (2na+1)^{dp}); n+1 layers of
  // (d+1)p entries each
  __int128 box = 1;
  for (int i = 0; i < p; ++i) box = std::min<__int128>(box * (n + 1), __int128(1) << 62);
  for (int i = 0; i < d * p; ++i)
    box = std::min<__int128>(box * (2 * n * a + 1), __int128(1) << 62);
  __int128 states = std::min<__int128>(box, pow_clamped(p, std::min<Value>(n, 64)));
  return clamp_to_i64(states * (n + 1) * (d + 1) * p);
}

std::int64_t estimate_dp_separable_edges(const AnyInstance& inst) {
  std::vector<Value> counts;
  int p = 0;
  if (const auto* v = std::get_if<VectorInstance>(&inst)) {
    if (v->n() == 0) return 1;
    counts = compute_types(v->attributes()).counts;
    p = v->p();
  } else {
    const auto& t = std::get<TypeInstance>(inst);
    counts = t.counts();
    p = t.p();
  }
  __int128 box = 1;
  for (Value c : counts) box = std::min<__int128>(box * (c + 1), __int128(1) << 31);
  return clamp_to_i64(box * box * p);
}

std::int64_t estimate_brute_assignments(const AnyInstance& inst) {
  return std::visit(
      [](const auto& i) { return pow_clamped(i.p(), static_cast<std::int64_t>(i.n())); }, inst);
}

}  // namespace

std::string solver_ineligibility(const AnyInstance& inst, SolverChoice choice) {
  switch (choice) {
    case SolverChoice::Auto:
    case SolverChoice::Brute:
    case SolverChoice::DpGeneral:
      return "";
    case SolverChoice::DpSeparable:
      if (!objective_separable(inst))
        return "dp-separable requires a separable or completely separable objective";
      return "";
    case SolverChoice::Flow:
      return flow_ineligibility(inst);
  }
  return "";
}

SolverChoice pick_auto(const AnyInstance& inst, const SolveBudgets& budgets) {
  if (solver_ineligibility(inst, SolverChoice::Flow).empty()) return SolverChoice::Flow;
  if (solver_ineligibility(inst, SolverChoice::DpSeparable).empty() &&
      estimate_dp_separable_edges(inst) <= budgets.dp_separable.max_edges)
    return SolverChoice::DpSeparable;
  if (estimate_dp_general_entries(inst) <= budgets.dp_general.max_state_entries)
    return SolverChoice::DpGeneral;
  if (estimate_brute_assignments(inst) <= budgets.brute.max_assignments)
    return SolverChoice::Brute;
  throw BudgetError("no solver fits the instance within the configured budgets");
}

SolveResult run_solver(const AnyInstance& inst, SolverChoice choice, const SolveBudgets& budgets) {
  if (choice == SolverChoice::Auto) choice = pick_auto(inst, budgets);
  if (std::string why = solver_ineligibility(inst, choice); !why.empty())
    throw ValidationError(why);
  switch (choice) {
    case SolverChoice::Brute:
      return std::visit([&](const auto& i) { return brute_force_solve(i, budgets.brute); }, inst);
    case SolverChoice::DpGeneral:
      if (const auto* v = std::get_if<VectorInstance>(&inst))
        return solve_dp_general(*v, budgets.dp_general);
      return solve_dp_general_type(std::get<TypeInstance>(inst), budgets.dp_general);
    case SolverChoice::DpSeparable:
      if (const auto* v = std::get_if<VectorInstance>(&inst))
        return solve_dp_separable_vector(*v, budgets.dp_separable);
      return solve_dp_separable_type(std::get<TypeInstance>(inst), budgets.dp_separable);
    case SolverChoice::Flow:
      return solve_flow_type(std::get<TypeInstance>(inst));
    case SolverChoice::Auto:
      break;
  }
  throw std::logic_error("unreachable solver choice");
}

}  // namespace vpart
