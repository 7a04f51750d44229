#include "vpart/shape.hpp"

#include <algorithm>
#include <string>

namespace vpart {

ShapeConstraint ShapeConstraint::interval(std::vector<Value> lower, std::vector<Value> upper) {
  ShapeConstraint s(Kind::Interval);
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

ShapeConstraint ShapeConstraint::single(std::vector<Value> sizes) {
  ShapeConstraint s(Kind::Single);
  s.sizes_ = std::move(sizes);
  return s;
}

ShapeConstraint ShapeConstraint::sets(std::vector<std::vector<Value>> sets) {
  ShapeConstraint s(Kind::Sets);
  for (auto& set : sets) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  s.sets_ = std::move(sets);
  return s;
}

void ShapeConstraint::validate(int parts, Value n) const {
  auto check_len = [parts](std::size_t len, const char* what) {
    if (len != static_cast<std::size_t>(parts))
      throw ValidationError(std::string(what) + " must have one entry per part");
  };
  switch (kind_) {
    case Kind::Free:
      break;
    case Kind::Interval:
      check_len(lower_.size(), "interval lower bounds");
      check_len(upper_.size(), "interval upper bounds");
      for (int k = 0; k < parts; ++k) {
        if (lower_[k] > upper_[k])
          throw ValidationError("empty interval at k=" + std::to_string(k + 1));
        if (lower_[k] < 0 || upper_[k] > n)
          throw ValidationError("interval bounds outside [0, n] at k=" + std::to_string(k + 1));
      }
      break;
    case Kind::Single:
      // Sizes that cannot fit (sum != n, size > n) make the instance
      // infeasible, not invalid.
      check_len(sizes_.size(), "single-shape sizes");
      for (int k = 0; k < parts; ++k)
        if (sizes_[k] < 0)
          throw ValidationError("negative single-shape size at k=" + std::to_string(k + 1));
      break;
    case Kind::Sets:
      check_len(sets_.size(), "shape sets");
      for (int k = 0; k < parts; ++k)
        for (Value v : sets_[k])
          if (v < 0 || v > n)
            throw ValidationError("set entry outside [0, n] at k=" + std::to_string(k + 1));
      break;
  }
}

bool ShapeConstraint::contains(int k, Value size) const {
  switch (kind_) {
    case Kind::Free:
      return size >= 0;
    case Kind::Interval:
      return lower_[k] <= size && size <= upper_[k];
    case Kind::Single:
      return size == sizes_[k];
    case Kind::Sets:
      return std::binary_search(sets_[k].begin(), sets_[k].end(), size);
  }
  return false;
}

std::pair<Value, Value> ShapeConstraint::size_hull(int k, Value n) const {
  switch (kind_) {
    case Kind::Free:
      return {0, n};
    case Kind::Interval:
      return {std::max<Value>(lower_[k], 0), std::min(upper_[k], n)};
    case Kind::Single:
      return {sizes_[k], sizes_[k]};
    case Kind::Sets: {
      if (sets_[k].empty()) return {1, 0};  // empty hull
      return {std::max<Value>(sets_[k].front(), 0), std::min(sets_[k].back(), n)};
    }
  }
  return {0, n};
}

std::optional<std::pair<std::vector<Value>, std::vector<Value>>> ShapeConstraint::as_interval(
    int parts, Value n) const {
  std::vector<Value> l(static_cast<std::size_t>(parts)), u(static_cast<std::size_t>(parts));
  switch (kind_) {
    case Kind::Free:
      std::fill(l.begin(), l.end(), 0);
      std::fill(u.begin(), u.end(), n);
      return std::make_pair(std::move(l), std::move(u));
    case Kind::Interval:
      return std::make_pair(lower_, upper_);
    case Kind::Single:
      return std::make_pair(sizes_, sizes_);
    case Kind::Sets:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace vpart
