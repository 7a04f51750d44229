#include "doctest.h"

#include "test_helpers.hpp"
#include "vpart/brute_force.hpp"
#include "vpart/dp_separable.hpp"
#include "vpart/flow_solver.hpp"
#include "vpart/random_gen.hpp"

using namespace vpart;
using testing::matrix;
using testing::quadratic_grid;

namespace {

Objective convex_grid(int p, int t, std::vector<UnivariateTerm> terms) {
  return Objective::completely_separable(p, t, std::move(terms));
}

}  // namespace

TEST_CASE("check_convexity") {
  SUBCASE("closed-form families are convex by construction") {
    TypeInstance inst({3, 2}, 2, ShapeConstraint::free(),
                      convex_grid(2, 2,
                                  {QuadraticTerm{3}, LinearTerm{-5}, AbsTerm{1},
                                   ScaledQuadraticTerm{2, 1}}));
    ConvexityReport report = check_convexity(inst);
    CHECK(report.all_convex);
    CHECK(report.terms.size() == 4);
  }
  SUBCASE("non-convex table reports the violating interior point") {
    // g = [0, 2, 1, 4]: g(0) + g(2) = 1 < 4 = 2 g(1), so x = 1 fails
    std::vector<UnivariateTerm> terms(4, TableTerm{0, {0, 2, 1, 4}});
    TypeInstance inst({3}, 4, ShapeConstraint::free(),
                      Objective::completely_separable(4, 1, std::move(terms)));
    ConvexityReport report = check_convexity(inst);
    CHECK_FALSE(report.all_convex);
    REQUIRE(report.terms[0].first_violation.has_value());
    CHECK(*report.terms[0].first_violation == 1);
    CHECK_THROWS_AS(build_flow_network(inst), ValidationError);
  }
}

TEST_CASE("build_flow_network") {
  SUBCASE("bundle capacities follow min(u_k, n_i)") {
    TypeInstance inst({2, 1}, 2, ShapeConstraint::interval({0, 0}, {3, 3}), quadratic_grid(2, 2));
    FlowNetwork net = build_flow_network(inst);
    CHECK(net.node_count() == 2 + 2 + 2);
    CHECK(net.bundle_cap == matrix({{2, 2}, {1, 1}}));
    CHECK_FALSE(net.window_infeasible);
  }
  SUBCASE("quadratic marginals are the odd numbers") {
    TypeInstance inst({3}, 1, ShapeConstraint::free(), quadratic_grid(1, 1));
    FlowNetwork net = build_flow_network(inst);
    const UnivariateTerm& term = net.term(0, 0);
    for (Value r = 1; r <= 3; ++r)
      CHECK(eval_term(term, r) - eval_term(term, r - 1) == 2 * r - 1);
  }
  SUBCASE("window sums out of range flag infeasibility") {
    TypeInstance tight({2, 1}, 2, ShapeConstraint::interval({3, 2}, {3, 3}), quadratic_grid(2, 2));
    CHECK(build_flow_network(tight).window_infeasible);  // sum l = 5 > n = 3
    SolveResult r = solve_flow_type(tight);
    CHECK(r.status == SolveStatus::Infeasible);
  }
}

TEST_CASE("flow solves the centered quadratic at zero") {
  TypeInstance inst({2, 2}, 2, ShapeConstraint::single({2, 2}), quadratic_grid(2, 2, 1));
  SolveResult r = solve_flow_type(inst);
  REQUIRE(r.optimal());
  CHECK(r.sol().value == 0);
  CHECK(r.sol().partition.counts == matrix({{1, 1}, {1, 1}}));
}

TEST_CASE("single part takes all supply") {
  TypeInstance inst({4, 1}, 1, ShapeConstraint::free(), quadratic_grid(1, 2));
  SolveResult r = solve_flow_type(inst);
  REQUIRE(r.optimal());
  CHECK(r.sol().partition.counts == matrix({{4}, {1}}));
  CHECK(r.sol().value == 16 + 1);
}

TEST_CASE("zero-cost objective routes any feasible flow") {
  TypeInstance inst({3, 2}, 2, ShapeConstraint::interval({1, 1}, {4, 4}),
                    convex_grid(2, 2, {LinearTerm{0}, LinearTerm{0}, LinearTerm{0}, LinearTerm{0}}));
  SolveResult r = solve_flow_type(inst);
  REQUIRE(r.optimal());
  CHECK(r.sol().value == 0);
}

TEST_CASE("negative marginals from shifted centers") {
  // center far right makes early increments profitable (negative marginals)
  TypeInstance inst({4}, 2, ShapeConstraint::free(), quadratic_grid(2, 1, 3));
  SolveResult flow = solve_flow_type(inst);
  SolveResult dp = solve_dp_separable_type(inst);
  REQUIRE(flow.optimal());
  CHECK(flow.sol().value == dp.sol().value);
}

TEST_CASE("flow equals the separable DP and brute force on small instances") {
  const char* objectives[] = {"quadratic", "abs", "convex-table", "scaled-quadratic"};
  const char* shapes[] = {"free", "interval", "single"};
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomSpec spec;
    spec.seed = seed * 2654435761ULL;
    spec.t = 1 + static_cast<int>(seed % 4);
    spec.p = 1 + static_cast<int>(seed % 4);
    spec.n = 2 + static_cast<int>(seed % 9);
    spec.shape = shapes[seed % 3];
    spec.objective = objectives[seed % 4];
    TypeInstance inst = random_type_instance(spec);
    CAPTURE(seed);
    SolveResult flow = solve_flow_type(inst);
    SolveResult dp = solve_dp_separable_type(inst);
    REQUIRE(flow.status == dp.status);
    if (dp.optimal()) CHECK(flow.sol().value == dp.sol().value);
    if (inst.n() <= 8 && inst.p() <= 3) {
      SolveResult bf = brute_force_solve(inst);
      REQUIRE(flow.status == bf.status);
      if (bf.optimal()) CHECK(flow.sol().value == bf.sol().value);
    }
  }
}

TEST_CASE("flow conservation and window bounds on the output") {
  RandomSpec spec;
  spec.seed = 77;
  spec.t = 3;
  spec.p = 3;
  spec.n = 12;
  spec.shape = "interval";
  spec.objective = "quadratic";
  TypeInstance inst = random_type_instance(spec);
  FlowNetwork net = build_flow_network(inst);
  FlowAssignment assignment = solve_min_cost_flow(net);
  REQUIRE(assignment.feasible);
  for (int i = 0; i < net.t; ++i) {
    Value row = 0;
    for (int k = 0; k < net.p; ++k) {
      CHECK(assignment.bundle_flow.at(i, k) >= 0);
      CHECK(assignment.bundle_flow.at(i, k) <= net.bundle_cap.at(i, k));
      row += assignment.bundle_flow.at(i, k);
    }
    CHECK(row == net.supplies[static_cast<std::size_t>(i)]);
  }
  for (int k = 0; k < net.p; ++k) {
    Value y = 0;
    for (int i = 0; i < net.t; ++i) y += assignment.bundle_flow.at(i, k);
    CHECK(y >= net.window_lo[static_cast<std::size_t>(k)]);
    CHECK(y <= net.window_hi[static_cast<std::size_t>(k)]);
  }
  CHECK_FALSE(residual_has_negative_cycle(net, assignment));
}

TEST_CASE("read-off value matches partition_cost") {
  RandomSpec spec;
  spec.seed = 123;
  spec.t = 2;
  spec.p = 4;
  spec.n = 9;
  spec.shape = "interval";
  spec.objective = "abs";
  TypeInstance inst = random_type_instance(spec);
  SolveResult r = solve_flow_type(inst);
  REQUIRE(r.optimal());
  CHECK(r.sol().value == partition_cost(inst, r.sol().partition));
}

TEST_CASE("no negative cycles at optimality across seeds") {
  for (std::uint64_t seed = 200; seed < 210; ++seed) {
    RandomSpec spec;
    spec.seed = seed;
    spec.t = 2;
    spec.p = 2;
    spec.n = 6;
    spec.shape = "interval";
    spec.objective = "convex-table";
    TypeInstance inst = random_type_instance(spec);
    FlowNetwork net = build_flow_network(inst);
    if (net.window_infeasible) continue;
    FlowAssignment assignment = solve_min_cost_flow(net);
    REQUIRE(assignment.feasible);
    CHECK_FALSE(residual_has_negative_cycle(net, assignment));
  }
}
