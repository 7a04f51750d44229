#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "vpart/instance.hpp"
#include "vpart/partition.hpp"

namespace vpart {

using AnyInstance = std::variant<VectorInstance, TypeInstance>;

// Self-describing text format, integers only. '#' starts a comment; tokens
// are whitespace-separated so line breaks are cosmetic. Fields appear in a
// fixed order and unknown keywords are rejected. See the README for the
// grammar. parse(serialize(x)) == x for every valid instance.
AnyInstance parse_instance(std::istream& in);
AnyInstance parse_instance_text(const std::string& text);
AnyInstance load_instance(const std::string& path);

// Throws ValidationError for programmatic (non-declarative) objectives.
void serialize_instance(const AnyInstance& inst, std::ostream& out,
                        const std::vector<std::string>& header_comments = {});
std::string instance_to_text(const AnyInstance& inst,
                             const std::vector<std::string>& header_comments = {});
void save_instance(const AnyInstance& inst, const std::string& path,
                   const std::vector<std::string>& header_comments = {});

struct SolutionFile {
  std::string solver;
  std::string status;  // optimal | infeasible | error
  Value value = 0;
  std::vector<int> assignment;  // 0-based in memory, 1-based on disk
  Matrix counts;                // type solutions
  Matrix sums;                  // vector solutions: d x p per-part sums
  SolveStats stats;
  std::int64_t wall_ms = 0;
  std::string message;  // status == error

  static SolutionFile from_result(const std::string& solver, const SolveResult& result);
};

void serialize_solution(const SolutionFile& sol, std::ostream& out);
std::string solution_to_text(const SolutionFile& sol);
SolutionFile parse_solution(std::istream& in);
SolutionFile parse_solution_text(const std::string& text);

}  // namespace vpart
