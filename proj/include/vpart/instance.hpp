#pragma once

#include <vector>

#include "vpart/common.hpp"
#include "vpart/matrix.hpp"
#include "vpart/objective.hpp"
#include "vpart/shape.hpp"

namespace vpart {

// a := ||A||_inf, the maximum absolute attribute value; 0 for n = 0.
Value attribute_bound(const Matrix& attributes);

// Agents sharing an attribute vector form a type.
struct TypeStructure {
  int type_count = 0;                      // t
  Matrix representatives;                  // d x t, first-occurrence order
  std::vector<std::vector<int>> members;   // 0-based agent lists per type
  std::vector<Value> counts;               // n_i = |members[i]|
};

TypeStructure compute_types(const Matrix& attributes);

// n agents with d-dimensional integer attributes, to be split into p parts.
class VectorInstance {
 public:
  // Validates all invariants; throws ValidationError naming the violation.
  VectorInstance(Matrix attributes, int parts, ShapeConstraint shape, Objective objective);

  int n() const { return attributes_.cols(); }
  int d() const { return attributes_.rows(); }
  int p() const { return parts_; }
  Value a() const { return attr_bound_; }

  const Matrix& attributes() const { return attributes_; }
  std::vector<Value> agent_attributes(int j) const { return attributes_.column(j); }
  const ShapeConstraint& shape() const { return shape_; }
  const Objective& objective() const { return objective_; }

 private:
  Matrix attributes_;
  int parts_;
  ShapeConstraint shape_;
  Objective objective_;
  Value attr_bound_;
};

// t agent types with multiplicities; cost depends on the t x p count matrix.
class TypeInstance {
 public:
  TypeInstance(std::vector<Value> counts, int parts, ShapeConstraint shape, Objective objective);

  int t() const { return static_cast<int>(counts_.size()); }
  int p() const { return parts_; }
  Value n() const { return total_; }

  const std::vector<Value>& counts() const { return counts_; }
  const ShapeConstraint& shape() const { return shape_; }
  const Objective& objective() const { return objective_; }

  // Canonical agent order: type 1 first, then type 2, ... Agent j's type.
  int agent_type(Value j) const;

 private:
  std::vector<Value> counts_;
  int parts_;
  ShapeConstraint shape_;
  Objective objective_;
  Value total_;
};

}  // namespace vpart
