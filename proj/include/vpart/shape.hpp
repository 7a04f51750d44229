#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vpart/common.hpp"

namespace vpart {

// Part-size constraints B_1,...,B_p. A partition is admissible when
// |pi_k| lies in B_k for every part k.
class ShapeConstraint {
 public:
  enum class Kind { Free, Interval, Single, Sets };

  static ShapeConstraint free() { return ShapeConstraint(Kind::Free); }
  static ShapeConstraint interval(std::vector<Value> lower, std::vector<Value> upper);
  static ShapeConstraint single(std::vector<Value> sizes);
  // Explicit subsets of {0,...,n}; stored sorted and deduplicated.
  static ShapeConstraint sets(std::vector<std::vector<Value>> sets);

  Kind kind() const { return kind_; }

  // Throws ValidationError on dimension mismatch, l_k > u_k, out-of-range
  // set entries. An empty B_k passes construction; it just makes every
  // partition inadmissible.
  void validate(int parts, Value n) const;

  // |pi_k| == size admissible for part k (0-based)?
  bool contains(int k, Value size) const;

  // Smallest interval [lo, hi] containing B_k, intersected with [0, n].
  std::pair<Value, Value> size_hull(int k, Value n) const;

  // [l, u] when the shape is an interval in disguise (Free, Interval,
  // Single); nullopt for Sets.
  std::optional<std::pair<std::vector<Value>, std::vector<Value>>> as_interval(int parts,
                                                                               Value n) const;

  const std::vector<Value>& lower() const { return lower_; }
  const std::vector<Value>& upper() const { return upper_; }
  const std::vector<Value>& sizes() const { return sizes_; }
  const std::vector<std::vector<Value>>& set_lists() const { return sets_; }

  friend bool operator==(const ShapeConstraint&, const ShapeConstraint&) = default;

 private:
  explicit ShapeConstraint(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::Free;
  std::vector<Value> lower_, upper_;            // Interval
  std::vector<Value> sizes_;                    // Single
  std::vector<std::vector<Value>> sets_;        // Sets, each sorted
};

}  // namespace vpart
