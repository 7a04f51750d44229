#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vpart/instance.hpp"
#include "vpart/partition.hpp"

namespace vpart {

// Integer program min sum_j f_j(z_j) s.t. M z = rhs, lower <= z <= upper.
// Variables are ordered x-block first (k-major), then y-block; rows are the
// coupling equations first (k-major), then the assignment/count equations.
struct IPModel {
  enum class Kind { Vector, Type };

  Kind kind = Kind::Vector;
  int p = 0;
  int dim = 0;      // d for vector models, t for type models
  Value n = 0;

  Matrix constraints;  // rows x vars
  std::vector<Value> rhs;
  std::vector<Value> lower, upper;
  std::vector<std::optional<UnivariateTerm>> objective_terms;  // per variable
  std::vector<std::string> var_names, row_names;

  int num_vars() const { return constraints.cols(); }
  int num_rows() const { return constraints.rows(); }

  // Vector model: x(k, j) and y(k, i) with i in [0, d].
  // Type model: x(k, i) with i in [0, t) and y(k).
  int x_index(int k, int j) const;
  int y_index(int k, int i = 0) const;

  Value objective_value(const std::vector<Value>& point) const;
};

// Vector assignment model with the all-ones row 0 augmentation: binary
// x_{k,j} pick a part per agent, integer y_{k,i} carry the per-part sums.
// Requires a CompletelySeparable objective and an interval-expressible shape
// (Free, Interval or Single).
IPModel build_vector_ip(const VectorInstance& inst);

// Type count model: x_{k,i} counts of type i in part k, y_k the part sizes.
// Same preconditions.
IPModel build_type_ip(const TypeInstance& inst);

// Vertices are the columns of a matrix; {j, k} is an edge iff some row has
// nonzero entries in both columns.
struct ConstraintGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, sorted, unique
};

ConstraintGraph constraint_graph(const Matrix& m);
Matrix transpose(const Matrix& m);

// Rooted tree given by parent pointers (parent[root] == -1). Height counts
// vertices on the longest root-leaf path.
struct RootedTreeCertificate {
  int root = 0;
  std::vector<int> parent;

  int height() const;
};

// The path-plus-leaves tree for the vector model's transposed constraint
// graph: the coupling rows form a path from the root, the n assignment rows
// hang off its end. Height is exactly (d+1)p + 1 for n >= 1.
RootedTreeCertificate tree_depth_certificate(const IPModel& model);

// True iff the tree is a rooted tree on the graph's vertex set and every
// graph edge has one endpoint on the root path of the other. Throws
// ValidationError when the vertex sets differ in size.
bool verify_valid_tree(const ConstraintGraph& graph, const RootedTreeCertificate& tree);

// Row 2-coloring witnessing the classical TU sufficient condition: entries
// in {-1,0,1}, at most two nonzeros per column, same-sign pairs split across
// the classes, opposite-sign pairs together.
struct TuCertificate {
  std::vector<std::uint8_t> row_color;  // 0 or 1 per row
};

// nullopt when the hypothesis fails or no consistent coloring exists.
std::optional<TuCertificate> verify_tu_condition(const Matrix& m);

// Exhaustively checks all square minors up to max_order. Test oracle only.
bool subdeterminant_check(const Matrix& m, int max_order, std::int64_t max_minors = 10'000'000);

struct IPSolveBudget {
  std::int64_t max_points = 20'000'000;
};

struct IPSolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<Value> point;
  Value value = 0;
};

// Lattice-box enumeration in lexicographic order; first optimum found is the
// lexicographically smallest. Validation oracle, not a production solver.
IPSolveResult solve_ip_exhaustive(const IPModel& model, const IPSolveBudget& budget = {});

// Calls fn on every feasible lattice point, in lexicographic order.
void enumerate_feasible(const IPModel& model, const IPSolveBudget& budget,
                        const std::function<void(const std::vector<Value>&)>& fn);

// Read-off maps between feasible points and admissible partitions. Both
// throw ValidationError on infeasible/inadmissible input.
Partition ip_point_to_partition(const IPModel& model, const std::vector<Value>& point);
std::vector<Value> partition_to_ip_point(const IPModel& model, const Partition& partition);

// Line-oriented plain-text equation listing (debugging aid).
void print_model(const IPModel& model, std::ostream& os);

}  // namespace vpart
