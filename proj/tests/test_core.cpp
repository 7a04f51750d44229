#include "doctest.h"

#include "test_helpers.hpp"
#include "vpart/partition.hpp"

using namespace vpart;
using testing::matrix;
using testing::product_columns;
using testing::quadratic_grid;

TEST_CASE("attribute_bound") {
  CHECK(attribute_bound(matrix({{0}})) == 0);
  CHECK(attribute_bound(matrix({{1, -2}, {3, 0}})) == 3);
  CHECK(attribute_bound(matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == 1);
  CHECK(attribute_bound(Matrix(1, 0)) == 0);

  // invariant under column permutation
  CHECK(attribute_bound(matrix({{-2, 1}, {0, 3}})) == 3);
}

TEST_CASE("compute_types") {
  SUBCASE("distinct column count") {
    TypeStructure ts = compute_types(matrix({{1, 1, 2}}));
    CHECK(ts.type_count == 2);
    CHECK(ts.members == std::vector<std::vector<int>>{{0, 1}, {2}});
    CHECK(ts.counts == std::vector<Value>{2, 1});
    CHECK(ts.representatives == matrix({{1, 2}}));
  }
  SUBCASE("unit vectors give t = n") {
    Matrix a(3, 3);
    for (int i = 0; i < 3; ++i) a.at(i, i) = 1;
    CHECK(compute_types(a).type_count == 3);
  }
  SUBCASE("all equal columns give t = 1") {
    CHECK(compute_types(matrix({{5, 5, 5}, {1, 1, 1}})).type_count == 1);
  }
  SUBCASE("expansion reproduces the column multiset") {
    Matrix a = matrix({{2, 1, 2, 1, 2}, {0, 3, 0, 3, 0}});
    TypeStructure ts = compute_types(a);
    Matrix rebuilt(a.rows(), a.cols());
    for (int type = 0; type < ts.type_count; ++type)
      for (int agent : ts.members[static_cast<std::size_t>(type)])
        for (int r = 0; r < a.rows(); ++r) rebuilt.at(r, agent) = ts.representatives.at(r, type);
    CHECK(rebuilt == a);
  }
}

TEST_CASE("instance validation") {
  SUBCASE("well-formed") {
    VectorInstance inst(matrix({{1, 2}}), 2, ShapeConstraint::free(), product_columns());
    CHECK(inst.n() == 2);
    CHECK(inst.d() == 1);
    CHECK(inst.a() == 2);
  }
  SUBCASE("empty interval rejected") {
    CHECK_THROWS_WITH_AS(
        VectorInstance(matrix({{1}}), 1, ShapeConstraint::interval({3}, {2}), quadratic_grid(1, 1)),
        "empty interval at k=1", ValidationError);
  }
  SUBCASE("table must cover the reachable domain") {
    // n = 5 with 0/1 attributes: sums reach [-5, 5]; covering [0, 3] is short
    std::vector<UnivariateTerm> terms = {TableTerm{0, {0, 1, 2, 3}}};
    CHECK_THROWS_AS(VectorInstance(matrix({{1, 1, 1, 1, 1}}), 1, ShapeConstraint::free(),
                                   Objective::completely_separable(1, 1, std::move(terms))),
                    ValidationError);
  }
  SUBCASE("negative type counts rejected") {
    CHECK_THROWS_AS(TypeInstance({2, -1}, 2, ShapeConstraint::free(), quadratic_grid(2, 2)),
                    ValidationError);
  }
  SUBCASE("dimension mismatches rejected") {
    CHECK_THROWS_AS(VectorInstance(matrix({{1}}), 2, ShapeConstraint::interval({0}, {1}),
                                   quadratic_grid(2, 1)),
                    ValidationError);
    CHECK_THROWS_AS(VectorInstance(matrix({{1}}), 1, ShapeConstraint::free(), quadratic_grid(2, 2)),
                    ValidationError);
  }
  SUBCASE("overflow guarded by interval arithmetic") {
    std::vector<UnivariateTerm> terms = {ScaledQuadraticTerm{1'000'000'000'000, 0}};
    CHECK_THROWS_AS(VectorInstance(matrix({{1, 1, 1, 1}}), 1, ShapeConstraint::free(),
                                   Objective::completely_separable(1, 1, std::move(terms))),
                    ValidationError);
  }
}

TEST_CASE("univariate terms") {
  CHECK(eval_term(QuadraticTerm{3}, 5) == 4);
  CHECK(eval_term(ScaledQuadraticTerm{2, 5}, 1) == 9);
  CHECK(eval_term(LinearTerm{-4}, 3) == -12);
  CHECK(eval_term(AbsTerm{2}, -1) == 3);
  CHECK(eval_term(TableTerm{-1, {7, 8, 9}}, 1) == 9);
  CHECK_THROWS_AS(eval_term(TableTerm{0, {1}}, 2), DomainError);
}

TEST_CASE("partition_cost") {
  SUBCASE("product of column sums") {
    VectorInstance inst(matrix({{1, 2}}), 2, ShapeConstraint::free(), product_columns());
    CHECK(partition_cost(inst, Partition::from_assignment({0, 1})) == 2);
  }
  SUBCASE("zero objective") {
    VectorInstance inst(matrix({{4, -1, 3}}), 2, ShapeConstraint::free(),
                        Objective::general([](const Matrix&) { return Value{0}; }));
    CHECK(partition_cost(inst, Partition::from_assignment({0, 1, 0})) == 0);
  }
  SUBCASE("completely separable quadratic") {
    VectorInstance inst(matrix({{1, 1}}), 2, ShapeConstraint::free(), quadratic_grid(2, 1));
    CHECK(partition_cost(inst, Partition::from_assignment({0, 0})) == 4);
  }
}

TEST_CASE("is_admissible") {
  VectorInstance free_inst(matrix({{1, 2}}), 2, ShapeConstraint::free(), product_columns());
  CHECK(is_admissible(free_inst, Partition::from_assignment({0, 0})));

  VectorInstance single_inst(matrix({{1, 2}}), 2, ShapeConstraint::single({1, 1}),
                             product_columns());
  CHECK_FALSE(is_admissible(single_inst, Partition::from_assignment({0, 0})));

  VectorInstance interval_inst(matrix({{1, 2}}), 2, ShapeConstraint::interval({0, 1}, {2, 2}),
                               product_columns());
  CHECK(is_admissible(interval_inst, Partition::from_assignment({0, 1})));
}

TEST_CASE("sets shape") {
  ShapeConstraint s = ShapeConstraint::sets({{2, 0}, {1}});
  CHECK(s.contains(0, 0));
  CHECK(s.contains(0, 2));
  CHECK_FALSE(s.contains(0, 1));
  CHECK(s.contains(1, 1));
  CHECK(s.size_hull(0, 5) == std::pair<Value, Value>{0, 2});
  CHECK_FALSE(s.as_interval(2, 5).has_value());

  // empty B_k is constructible; nothing is admissible for that part
  ShapeConstraint empty = ShapeConstraint::sets({{}, {1}});
  empty.validate(2, 3);
  CHECK_FALSE(empty.contains(0, 0));
}

TEST_CASE("general matrix table objective") {
  MatrixTableObjective table;
  table.entries.emplace_back(matrix({{1, 2}}), 7);
  Objective obj = Objective::general(GeneralBuiltin{table});
  CHECK(obj.value(matrix({{1, 2}})) == 7);
  CHECK_THROWS_AS(obj.value(matrix({{2, 1}})), DomainError);
}

TEST_CASE("type instance basics") {
  TypeInstance inst({2, 1}, 2, ShapeConstraint::free(), quadratic_grid(2, 2));
  CHECK(inst.n() == 3);
  CHECK(inst.agent_type(0) == 0);
  CHECK(inst.agent_type(2) == 1);
  Matrix counts = counts_from_assignment(inst, {0, 1, 0});
  CHECK(counts == matrix({{1, 1}, {1, 0}}));
  CHECK(expand_type_counts(inst, counts) == std::vector<int>{0, 1, 0});
  CHECK(partition_cost(inst, Partition::from_counts(counts)) == 3);
}
