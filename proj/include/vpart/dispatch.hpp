#pragma once

#include <string>

#include "vpart/brute_force.hpp"
#include "vpart/dp_general.hpp"
#include "vpart/dp_separable.hpp"
#include "vpart/instance_io.hpp"

namespace vpart {

enum class SolverChoice { Auto, DpGeneral, DpSeparable, Flow, Brute };

SolverChoice parse_solver_name(const std::string& name);
std::string solver_name(SolverChoice choice);

struct SolveBudgets {
  DpGeneralBudget dp_general;
  DpSeparableBudget dp_separable;
  EnumerationBudget brute;
};

// Empty string means eligible; otherwise the violated hypothesis.
std::string solver_ineligibility(const AnyInstance& inst, SolverChoice choice);

// Cheapest eligible solver whose estimated work fits the budgets, in the
// order flow > dp-separable > dp-general > brute. Throws BudgetError when
// nothing fits.
SolverChoice pick_auto(const AnyInstance& inst, const SolveBudgets& budgets);

// Dispatch; resolves Auto first. Throws ValidationError for an ineligible
// explicit choice.
SolveResult run_solver(const AnyInstance& inst, SolverChoice choice, const SolveBudgets& budgets);

}  // namespace vpart
