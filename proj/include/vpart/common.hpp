#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpart {

// All attribute data, objective values and solver arithmetic use 64-bit
// signed integers. Instance validation bounds every reachable objective
// evaluation so that it fits (see Objective::check_value_bounds).
using Value = std::int64_t;

// Largest total objective magnitude accepted at validation time. Leaves
// headroom below INT64_MAX for sums of per-term bounds and flow potentials.
inline constexpr Value kValueBound = Value{1} << 62;

// Invalid instance or model input.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Work or memory budget exceeded. Reported instead of thrashing.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Table oracle queried outside its covered domain.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed instance or solution file.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vpart
