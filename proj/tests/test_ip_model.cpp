#include "doctest.h"

#include <set>
#include <sstream>

#include "test_helpers.hpp"
#include "vpart/brute_force.hpp"
#include "vpart/dp_general.hpp"
#include "vpart/dp_separable.hpp"
#include "vpart/ip_model.hpp"
#include "vpart/random_gen.hpp"

using namespace vpart;
using testing::matrix;
using testing::quadratic_grid;

TEST_CASE("vector model dimensions and bounds") {
  VectorInstance inst(matrix({{1, 2}}), 2, ShapeConstraint::interval({0, 0}, {2, 2}),
                      quadratic_grid(2, 1));
  IPModel m = build_vector_ip(inst);
  CHECK(m.num_vars() == 8);   // p (n + d + 1)
  CHECK(m.num_rows() == 6);   // p (d + 1) + n
  // y_{k,0} carries the window, y_{k,i} the +-na box
  CHECK(m.lower[static_cast<std::size_t>(m.y_index(0, 0))] == 0);
  CHECK(m.upper[static_cast<std::size_t>(m.y_index(0, 0))] == 2);
  CHECK(m.lower[static_cast<std::size_t>(m.y_index(0, 1))] == -4);
  CHECK(m.upper[static_cast<std::size_t>(m.y_index(0, 1))] == 4);
  CHECK_FALSE(m.objective_terms[static_cast<std::size_t>(m.x_index(0, 0))].has_value());
  CHECK_FALSE(m.objective_terms[static_cast<std::size_t>(m.y_index(0, 0))].has_value());
  CHECK(m.objective_terms[static_cast<std::size_t>(m.y_index(0, 1))].has_value());

  // ||B||_inf = ||A||_inf = a
  CHECK(attribute_bound(m.constraints) == inst.a());
}

TEST_CASE("y bounds scale with n and a") {
  VectorInstance inst(matrix({{3, -3, 1, 2}}), 2, ShapeConstraint::interval({0, 0}, {4, 4}),
                      quadratic_grid(2, 1));
  IPModel m = build_vector_ip(inst);
  CHECK(m.lower[static_cast<std::size_t>(m.y_index(1, 1))] == -12);
  CHECK(m.upper[static_cast<std::size_t>(m.y_index(1, 1))] == 12);
}

TEST_CASE("vector model rejects non-interval shapes and non-separable objectives") {
  CHECK_THROWS_AS(build_vector_ip(VectorInstance(matrix({{1}}), 1,
                                                 ShapeConstraint::sets({{0, 1}}),
                                                 quadratic_grid(1, 1))),
                  ValidationError);
  CHECK_THROWS_AS(build_vector_ip(VectorInstance(matrix({{1}}), 1, ShapeConstraint::free(),
                                                 Objective::general([](const Matrix&) {
                                                   return Value{0};
                                                 }))),
                  ValidationError);
}

TEST_CASE("type model dimensions") {
  TypeInstance inst({1, 1}, 2, ShapeConstraint::interval({0, 0}, {2, 2}), quadratic_grid(2, 2));
  IPModel m = build_type_ip(inst);
  CHECK(m.num_vars() == 6);  // p (t + 1)
  CHECK(m.num_rows() == 4);  // p + t
  SUBCASE("x upper bound is min(u_k, n_i)") {
    TypeInstance capped({5}, 1, ShapeConstraint::interval({0}, {1}), quadratic_grid(1, 1));
    IPModel cm = build_type_ip(capped);
    CHECK(cm.upper[static_cast<std::size_t>(cm.x_index(0, 0))] == 1);
  }
}

TEST_CASE("feasible point counts equal admissible partition counts") {
  SUBCASE("vector model") {
    VectorInstance inst(matrix({{1, 2}}), 2, ShapeConstraint::interval({0, 0}, {2, 2}),
                        quadratic_grid(2, 1));
    IPModel m = build_vector_ip(inst);
    std::int64_t feasible = 0;
    enumerate_feasible(m, {}, [&](const std::vector<Value>&) { ++feasible; });
    CHECK(feasible == 4);
    CHECK(feasible == count_admissible(inst));
  }
  SUBCASE("type model") {
    TypeInstance inst({1, 1}, 2, ShapeConstraint::interval({0, 0}, {2, 2}), quadratic_grid(2, 2));
    IPModel m = build_type_ip(inst);
    std::int64_t feasible = 0;
    enumerate_feasible(m, {}, [&](const std::vector<Value>&) { ++feasible; });
    CHECK(feasible == 4);
    CHECK(feasible == count_admissible(inst));
  }
}

TEST_CASE("tree-depth certificate") {
  SUBCASE("height formula (d+1)p + 1") {
    RandomSpec spec;
    spec.seed = 9;
    spec.n = 3;
    spec.d = 2;
    spec.p = 3;
    spec.a = 1;
    spec.shape = "interval";
    spec.objective = "quadratic";
    VectorInstance inst = random_vector_instance(spec);
    IPModel m = build_vector_ip(inst);
    RootedTreeCertificate tree = tree_depth_certificate(m);
    CHECK(tree.height() == 10);
  }
  SUBCASE("d=1, p=2, n=3: 7 vertices, height 5") {
    VectorInstance inst(matrix({{1, 1, 1}}), 2, ShapeConstraint::interval({0, 0}, {3, 3}),
                        quadratic_grid(2, 1));
    IPModel m = build_vector_ip(inst);
    RootedTreeCertificate tree = tree_depth_certificate(m);
    CHECK(tree.parent.size() == 7);
    CHECK(tree.height() == 5);
    CHECK(verify_valid_tree(constraint_graph(transpose(m.constraints)), tree));
  }
  SUBCASE("valid for G(B^T) across small sizes") {
    for (int d = 1; d <= 4; ++d)
      for (int p = 1; p <= 4; ++p)
        for (int n = 1; n <= 6; n += 2) {
          RandomSpec spec;
          spec.seed = static_cast<std::uint64_t>(d * 100 + p * 10 + n);
          spec.n = n;
          spec.d = d;
          spec.p = p;
          spec.a = 2;
          spec.shape = "interval";
          spec.objective = "quadratic";
          VectorInstance inst = random_vector_instance(spec);
          IPModel m = build_vector_ip(inst);
          RootedTreeCertificate tree = tree_depth_certificate(m);
          CAPTURE(d);
          CAPTURE(p);
          CAPTURE(n);
          CHECK(tree.height() == (d + 1) * p + 1);
          CHECK(verify_valid_tree(constraint_graph(transpose(m.constraints)), tree));
        }
  }
}

TEST_CASE("verify_valid_tree") {
  SUBCASE("perfect matching with star augmentation has height 3") {
    // matching {i, m+i} on [2m]; the tree roots at vertex 0, children are
    // its partner and the other left vertices, each left vertex keeping its
    // partner as a leaf
    const int m_half = 3;
    ConstraintGraph g;
    g.vertices = 2 * m_half;
    for (int i = 0; i < m_half; ++i) g.edges.emplace_back(i, m_half + i);
    RootedTreeCertificate tree;
    tree.root = 0;
    tree.parent.assign(static_cast<std::size_t>(2 * m_half), -1);
    for (int i = 1; i < m_half; ++i) tree.parent[static_cast<std::size_t>(i)] = 0;
    for (int i = 0; i < m_half; ++i) tree.parent[static_cast<std::size_t>(m_half + i)] = i;
    CHECK(verify_valid_tree(g, tree));
    CHECK(tree.height() == 3);
  }
  SUBCASE("path graph rooted at the middle") {
    ConstraintGraph g;
    g.vertices = 3;
    g.edges = {{0, 1}, {1, 2}};
    RootedTreeCertificate tree;
    tree.root = 1;
    tree.parent = {1, -1, 1};
    CHECK(verify_valid_tree(g, tree));
  }
  SUBCASE("triangle: path tree valid, star tree invalid") {
    ConstraintGraph g;
    g.vertices = 3;
    g.edges = {{0, 1}, {0, 2}, {1, 2}};
    RootedTreeCertificate path;
    path.root = 0;
    path.parent = {-1, 0, 1};
    CHECK(verify_valid_tree(g, path));
    RootedTreeCertificate star;
    star.root = 0;
    star.parent = {-1, 0, 0};
    CHECK_FALSE(verify_valid_tree(g, star));  // edge {1,2} unrelated
  }
  SUBCASE("vertex mismatch throws") {
    ConstraintGraph g;
    g.vertices = 2;
    RootedTreeCertificate tree;
    tree.root = 0;
    tree.parent = {-1};
    CHECK_THROWS_AS(verify_valid_tree(g, tree), ValidationError);
  }
}

TEST_CASE("constraint_graph") {
  SUBCASE("identity has no edges") {
    CHECK(constraint_graph(matrix({{1, 0}, {0, 1}})).edges.empty());
  }
  SUBCASE("an all-ones row makes a clique") {
    ConstraintGraph g = constraint_graph(matrix({{1, 1, 1}}));
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  }
  SUBCASE("B^T for n=d=p=1 links the two equations through x") {
    VectorInstance inst(matrix({{1}}), 1, ShapeConstraint::interval({0}, {1}),
                        quadratic_grid(1, 1));
    IPModel m = build_vector_ip(inst);
    ConstraintGraph g = constraint_graph(transpose(m.constraints));
    CHECK(g.vertices == 3);  // r[1][0], r[1][1], s[1]
    // x_{1,1} appears in all three equations (A entry is 1)
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
  }
}

TEST_CASE("TU certificate") {
  SUBCASE("type model rows split part-size vs type-conservation") {
    TypeInstance inst({1, 1}, 2, ShapeConstraint::interval({0, 0}, {2, 2}), quadratic_grid(2, 2));
    IPModel m = build_type_ip(inst);
    auto cert = verify_tu_condition(m.constraints);
    REQUIRE(cert.has_value());
    for (int k = 0; k < inst.p(); ++k) CHECK(cert->row_color[static_cast<std::size_t>(k)] == 0);
    for (int i = 0; i < inst.t(); ++i)
      CHECK(cert->row_color[static_cast<std::size_t>(inst.p() + i)] == 1);
  }
  SUBCASE("forced same-color conflict is NotApplicable") {
    // columns force (0,1) apart, (1,2) apart, (0,2) apart: odd cycle
    Matrix m = matrix({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
    CHECK_FALSE(verify_tu_condition(m).has_value());
  }
  SUBCASE("entries outside -1..1 are NotApplicable") {
    CHECK_FALSE(verify_tu_condition(matrix({{2}})).has_value());
  }
  SUBCASE("three nonzeros in a column are NotApplicable") {
    CHECK_FALSE(verify_tu_condition(matrix({{1}, {1}, {1}})).has_value());
  }
  SUBCASE("opposite signs demand equal colors") {
    Matrix m = matrix({{1, 1}, {-1, 0}, {0, 1}});
    auto cert = verify_tu_condition(m);
    REQUIRE(cert.has_value());
    CHECK(cert->row_color[0] == cert->row_color[1]);  // column 0: +1, -1
    CHECK(cert->row_color[0] != cert->row_color[2]);  // column 1: +1, +1
  }
}

TEST_CASE("subdeterminant_check") {
  SUBCASE("type model minors up to order 4") {
    TypeInstance inst({1, 1}, 2, ShapeConstraint::interval({0, 0}, {2, 2}), quadratic_grid(2, 2));
    CHECK(subdeterminant_check(build_type_ip(inst).constraints, 4));
  }
  SUBCASE("the classic 2x2 counterexample") {
    CHECK_FALSE(subdeterminant_check(matrix({{1, 1}, {1, -1}}), 2));
  }
  SUBCASE("0/+-1 diagonal matrices pass") {
    CHECK(subdeterminant_check(matrix({{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}), 3));
  }
  SUBCASE("budget guard") {
    Matrix wide(6, 20, 1);
    CHECK_THROWS_AS(subdeterminant_check(wide, 6, 100), BudgetError);
  }
}

TEST_CASE("exhaustive IP solving cross-checks the DP solvers") {
  SUBCASE("vector model vs dp-general") {
    VectorInstance inst(matrix({{1, 2}}), 2, ShapeConstraint::interval({0, 0}, {2, 2}),
                        quadratic_grid(2, 1));
    IPModel m = build_vector_ip(inst);
    IPSolveResult ip = solve_ip_exhaustive(m);
    REQUIRE(ip.status == SolveStatus::Optimal);
    CHECK(ip.value == solve_dp_general(inst).sol().value);
  }
  SUBCASE("type model vs separable DP") {
    TypeInstance inst({2, 1}, 2, ShapeConstraint::interval({0, 0}, {3, 3}), quadratic_grid(2, 2));
    IPModel m = build_type_ip(inst);
    IPSolveResult ip = solve_ip_exhaustive(m);
    REQUIRE(ip.status == SolveStatus::Optimal);
    CHECK(ip.value == solve_dp_separable_type(inst).sol().value);
  }
  SUBCASE("contradictory variable bounds are infeasible") {
    TypeInstance inst({2}, 1, ShapeConstraint::interval({0}, {2}), quadratic_grid(1, 1));
    IPModel m = build_type_ip(inst);
    m.lower[0] = 3;
    m.upper[0] = 1;
    CHECK(solve_ip_exhaustive(m).status == SolveStatus::Infeasible);
  }
}

TEST_CASE("read-off maps") {
  VectorInstance inst(matrix({{1, 2}}), 2, ShapeConstraint::interval({0, 0}, {2, 2}),
                      quadratic_grid(2, 1));
  IPModel m = build_vector_ip(inst);

  SUBCASE("x block decodes the partition") {
    std::vector<Value> z(static_cast<std::size_t>(m.num_vars()), 0);
    z[static_cast<std::size_t>(m.x_index(0, 0))] = 1;
    z[static_cast<std::size_t>(m.x_index(0, 1))] = 1;
    Partition part = ip_point_to_partition(m, z);
    CHECK(part.assignment == std::vector<int>{0, 0});
  }
  SUBCASE("round trip on every admissible partition, values agree") {
    std::vector<int> a(2, 0);
    for (int first = 0; first < 2; ++first)
      for (int second = 0; second < 2; ++second) {
        a = {first, second};
        Partition part = Partition::from_assignment(a);
        std::vector<Value> z = partition_to_ip_point(m, part);
        // y values reconstruct the per-part sums
        CHECK(z[static_cast<std::size_t>(m.y_index(first, 1))] >= -4);
        Partition back = ip_point_to_partition(m, z);
        CHECK(back.assignment == a);
        CHECK(m.objective_value(z) == partition_cost(inst, part));
        Matrix sums = partition_sums(inst, part);
        for (int k = 0; k < inst.p(); ++k)
          CHECK(z[static_cast<std::size_t>(m.y_index(k, 1))] == sums.at(0, k));
      }
  }
}

TEST_CASE("bijection property on random small instances") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    RandomSpec spec;
    spec.seed = seed * 31;
    spec.n = 2 + static_cast<int>(seed % 3);
    spec.d = 1 + static_cast<int>(seed % 2);
    spec.p = 2;
    spec.a = 1;
    spec.shape = "interval";
    spec.objective = "quadratic";
    VectorInstance inst = random_vector_instance(spec);
    IPModel m = build_vector_ip(inst);
    CAPTURE(seed);

    std::multiset<Value> ip_values;
    enumerate_feasible(m, {}, [&](const std::vector<Value>& z) {
      ip_values.insert(m.objective_value(z));
      Partition part = ip_point_to_partition(m, z);
      CHECK(is_admissible(inst, part));
      CHECK(partition_cost(inst, part) == m.objective_value(z));
    });

    std::multiset<Value> partition_values;
    std::vector<int> a(static_cast<std::size_t>(inst.n()), 0);
    for (;;) {
      Partition part = Partition::from_assignment(a);
      if (is_admissible(inst, part)) {
        partition_values.insert(partition_cost(inst, part));
        std::vector<Value> z = partition_to_ip_point(m, part);
        CHECK(ip_point_to_partition(m, z).assignment == a);
      }
      int j = 0;
      while (j < inst.n() && a[static_cast<std::size_t>(j)] == inst.p() - 1)
        a[static_cast<std::size_t>(j++)] = 0;
      if (j == inst.n()) break;
      ++a[static_cast<std::size_t>(j)];
    }
    CHECK(ip_values == partition_values);
  }
}

TEST_CASE("model listing is line oriented") {
  TypeInstance inst({1, 1}, 2, ShapeConstraint::interval({0, 0}, {2, 2}), quadratic_grid(2, 2));
  IPModel m = build_type_ip(inst);
  std::ostringstream os;
  print_model(m, os);
  CHECK(os.str().find("r[1]: +1 x[1][1] +1 x[1][2] -1 y[1] = 0") != std::string::npos);
  CHECK(os.str().find("s[1]: +1 x[1][1] +1 x[2][1] = 1") != std::string::npos);
}
