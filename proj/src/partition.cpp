#include "vpart/partition.hpp"

#include <string>

namespace vpart {

Partition Partition::from_assignment(std::vector<int> assignment) {
  Partition p;
  p.assignment = std::move(assignment);
  return p;
}

Partition Partition::from_counts(Matrix counts) {
  Partition p;
  p.counts = std::move(counts);
  return p;
}

Matrix partition_sums(const VectorInstance& inst, const Partition& partition) {
  if (static_cast<int>(partition.assignment.size()) != inst.n())
    throw ValidationError("assignment length must equal n");
  Matrix sums(inst.d(), inst.p());
  for (int j = 0; j < inst.n(); ++j) {
    int k = partition.assignment[static_cast<std::size_t>(j)];
    if (k < 0 || k >= inst.p()) throw ValidationError("assignment entry outside [p]");
    for (int i = 0; i < inst.d(); ++i) sums.at(i, k) += inst.attributes().at(i, j);
  }
  return sums;
}

Matrix counts_from_assignment(const TypeInstance& inst, const std::vector<int>& assignment) {
  if (static_cast<Value>(assignment.size()) != inst.n())
    throw ValidationError("assignment length must equal n");
  Matrix counts(inst.t(), inst.p());
  for (Value j = 0; j < inst.n(); ++j) {
    int k = assignment[static_cast<std::size_t>(j)];
    if (k < 0 || k >= inst.p()) throw ValidationError("assignment entry outside [p]");
    ++counts.at(inst.agent_type(j), k);
  }
  return counts;
}

std::vector<int> expand_type_counts(const TypeInstance& inst, const Matrix& counts) {
  if (counts.rows() != inst.t() || counts.cols() != inst.p())
    throw ValidationError("count matrix must be t x p");
  std::vector<int> assignment(static_cast<std::size_t>(inst.n()), -1);
  Value base = 0;
  for (int i = 0; i < inst.t(); ++i) {
    Value row_total = 0;
    Value next = base;
    for (int k = 0; k < inst.p(); ++k) {
      Value c = counts.at(i, k);
      if (c < 0) throw ValidationError("negative count matrix entry");
      row_total += c;
      for (Value r = 0; r < c; ++r) assignment[static_cast<std::size_t>(next++)] = k;
    }
    if (row_total != inst.counts()[static_cast<std::size_t>(i)])
      throw ValidationError("count matrix row sum differs from n_i at i=" + std::to_string(i + 1));
    base += row_total;
  }
  return assignment;
}

Value partition_cost(const VectorInstance& inst, const Partition& partition) {
  return inst.objective().value(partition_sums(inst, partition));
}

Value partition_cost(const TypeInstance& inst, const Partition& partition) {
  const Matrix counts = partition.counts.empty()
                            ? counts_from_assignment(inst, partition.assignment)
                            : partition.counts;
  if (counts.rows() != inst.t() || counts.cols() != inst.p())
    throw ValidationError("count matrix must be t x p");
  return inst.objective().value(counts);
}

bool is_admissible(const VectorInstance& inst, const Partition& partition) {
  std::vector<Value> sizes(static_cast<std::size_t>(inst.p()), 0);
  for (int j = 0; j < inst.n(); ++j) ++sizes[static_cast<std::size_t>(partition.assignment[static_cast<std::size_t>(j)])];
  for (int k = 0; k < inst.p(); ++k)
    if (!inst.shape().contains(k, sizes[static_cast<std::size_t>(k)])) return false;
  return true;
}

bool is_admissible(const TypeInstance& inst, const Partition& partition) {
  const Matrix counts = partition.counts.empty()
                            ? counts_from_assignment(inst, partition.assignment)
                            : partition.counts;
  for (int k = 0; k < inst.p(); ++k) {
    Value size = 0;
    for (int i = 0; i < inst.t(); ++i) size += counts.at(i, k);
    if (!inst.shape().contains(k, size)) return false;
  }
  return true;
}

void verify_solution(const VectorInstance& inst, const Solution& solution) {
  if (!is_admissible(inst, solution.partition))
    throw std::logic_error("solver emitted an inadmissible partition");
  if (partition_cost(inst, solution.partition) != solution.value)
    throw std::logic_error("solver value disagrees with recomputed partition cost");
  if (partition_sums(inst, solution.partition) != solution.sums)
    throw std::logic_error("solver sums disagree with recomputed per-part sums");
}

void verify_solution(const TypeInstance& inst, const Solution& solution) {
  if (!is_admissible(inst, solution.partition))
    throw std::logic_error("solver emitted an inadmissible partition");
  if (partition_cost(inst, solution.partition) != solution.value)
    throw std::logic_error("solver value disagrees with recomputed partition cost");
}

}  // namespace vpart
