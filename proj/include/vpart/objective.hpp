#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "vpart/common.hpp"
#include "vpart/matrix.hpp"

namespace vpart {

// ---------------------------------------------------------------------------
// Univariate objective terms (the declarative families usable in files).
// All take integer arguments and return integer values.

struct QuadraticTerm {
  Value center = 0;  // (x - b)^2
  friend bool operator==(const QuadraticTerm&, const QuadraticTerm&) = default;
};
struct ScaledQuadraticTerm {
  Value scale = 1;  // (c*x - b)^2
  Value center = 0;
  friend bool operator==(const ScaledQuadraticTerm&, const ScaledQuadraticTerm&) = default;
};
struct LinearTerm {
  Value slope = 0;  // c*x
  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};
struct AbsTerm {
  Value center = 0;  // |x - b|
  friend bool operator==(const AbsTerm&, const AbsTerm&) = default;
};
struct TableTerm {
  Value domain_min = 0;  // values[x - domain_min]; queries outside are an error
  std::vector<Value> values;
  friend bool operator==(const TableTerm&, const TableTerm&) = default;
};

using UnivariateTerm =
    std::variant<QuadraticTerm, ScaledQuadraticTerm, LinearTerm, AbsTerm, TableTerm>;

Value eval_term(const UnivariateTerm& term, Value x);

// Largest |value| the term can take on [lo, hi]; throws ValidationError when
// it cannot be represented within kValueBound.
Value term_abs_bound(const UnivariateTerm& term, Value lo, Value hi);

// Tables must cover the whole reachable domain of their argument.
void check_table_coverage(const UnivariateTerm& term, Value lo, Value hi);

// Quadratic/ScaledQuadratic/Linear/Abs are convex by construction. For a
// table, returns the first interior x with g(x-1) + g(x+1) < 2 g(x) on the
// intersection of [lo, hi] with the covered domain, or nullopt if convex.
std::optional<Value> term_convexity_violation(const UnivariateTerm& term, Value lo, Value hi);

// ---------------------------------------------------------------------------
// Named general objectives (the built-ins the file format accepts).

// prod_k (w . x^k); default weights are all ones.
struct ProductColumnsObjective {
  std::vector<Value> weights;
  friend bool operator==(const ProductColumnsObjective&, const ProductColumnsObjective&) = default;
};
// max_k sum_i |w_i * x^k_i|
struct MaxColumnL1Objective {
  std::vector<Value> weights;
  friend bool operator==(const MaxColumnL1Objective&, const MaxColumnL1Objective&) = default;
};
// Explicit sums-matrix -> value lookup, keys sorted; missing key is an error.
struct MatrixTableObjective {
  std::vector<std::pair<Matrix, Value>> entries;
  friend bool operator==(const MatrixTableObjective&, const MatrixTableObjective&) = default;
};

using GeneralBuiltin =
    std::variant<ProductColumnsObjective, MaxColumnL1Objective, MatrixTableObjective>;

// ---------------------------------------------------------------------------
// Objective: one value type covering the three separability classes.
//
// General                f(sums matrix)
// Separable              sum_k f_k(column k)
// CompletelySeparable    sum_k sum_i f_{k,i}(sums[i][k])
//
// Declarative objectives (built-ins, univariate grids) round-trip through the
// file format; programmatic oracles are for library use and tests only.
class Objective {
 public:
  enum class Kind { General, Separable, CompletelySeparable };

  using MatrixOracle = std::function<Value(const Matrix&)>;
  using PartOracle = std::function<Value(std::span<const Value>)>;

  Objective() = default;

  static Objective general(MatrixOracle oracle);
  static Objective general(GeneralBuiltin builtin);
  static Objective separable(std::vector<PartOracle> parts);
  // terms in k-major order: f_{1,1..dim}, f_{2,1..dim}, ...
  static Objective completely_separable(int parts, int dim, std::vector<UnivariateTerm> terms);

  Kind kind() const { return kind_; }
  bool is_separable() const { return kind_ != Kind::General; }
  bool serializable() const;

  int parts() const { return parts_; }
  int dim() const { return dim_; }

  // Objective on a full dim x parts sums matrix. Works for every kind.
  Value value(const Matrix& sums) const;
  // Part contribution f_k(column); requires a separable kind. k is 0-based.
  Value part_value(int k, std::span<const Value> column) const;
  // Single term; requires CompletelySeparable. k, i are 0-based.
  Value term_value(int k, int i, Value x) const { return eval_term(term(k, i), x); }
  const UnivariateTerm& term(int k, int i) const;
  const std::vector<UnivariateTerm>& terms() const { return terms_; }

  const GeneralBuiltin* builtin() const { return builtin_ ? &*builtin_ : nullptr; }

  // Arity check against the owning instance (p parts, dim coordinates) plus
  // interval-arithmetic overflow check over the coordinate box [lo, hi]^dim
  // and table coverage. Programmatic oracles skip the numeric checks.
  void validate_for(int parts, int dim, Value lo, Value hi);

  // Declarative objectives compare by content; any programmatic oracle
  // compares unequal.
  friend bool operator==(const Objective& a, const Objective& b);

 private:
  Kind kind_ = Kind::General;
  int parts_ = 0;
  int dim_ = 0;
  std::vector<UnivariateTerm> terms_;       // CompletelySeparable, k-major
  std::vector<PartOracle> part_oracles_;    // Separable (programmatic)
  std::optional<GeneralBuiltin> builtin_;   // General, declarative
  MatrixOracle custom_;                     // General, programmatic
};

Value eval_builtin(const GeneralBuiltin& builtin, const Matrix& sums);

}  // namespace vpart
