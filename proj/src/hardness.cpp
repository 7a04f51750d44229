#include "vpart/hardness.hpp"

#include <numeric>
#include <string>

namespace vpart {
namespace {

Objective default_unit_vector_objective(int n) {
  // Lookup table keyed by the full sums matrix; column 1 is the indicator of
  // part 1, so there is one entry per subset of [n]. Value: squared distance
  // of the part-1 index sum from half the total, giving a known optimum of 0
  // (every integer up to n(n+1)/2 is a subset sum of {1..n}).
  const Value total = static_cast<Value>(n) * (n + 1) / 2;
  MatrixTableObjective table;
  table.entries.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Matrix key(n, 2);
    Value sum = 0;
    for (int i = 0; i < n; ++i) {
      bool in_first = (mask >> i) & 1;
      key.at(i, 0) = in_first ? 1 : 0;
      key.at(i, 1) = in_first ? 0 : 1;
      if (in_first) sum += i + 1;
    }
    Value diff = sum - total / 2;
    table.entries.emplace_back(std::move(key), diff * diff);
  }
  return Objective::general(GeneralBuiltin{std::move(table)});
}

Objective default_permutation_objective(int n) {
  // sum_k k * x^k_1: weights the value landing in part k by k.
  std::vector<UnivariateTerm> terms;
  terms.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) terms.push_back(LinearTerm{k});
  return Objective::completely_separable(n, 1, std::move(terms));
}

}  // namespace

HardnessInstance gen_unit_vector_instance(int n) {
  if (n < 1 || n > 16)
    throw ValidationError("unit-vector construction supports 1 <= n <= 16 (the default "
                          "objective table has 2^n entries)");
  return gen_unit_vector_instance(n, default_unit_vector_objective(n));
}

HardnessInstance gen_unit_vector_instance(int n, Objective objective) {
  if (n < 1) throw ValidationError("unit-vector construction needs n >= 1");
  Matrix attributes(n, n);
  for (int j = 0; j < n; ++j) attributes.at(j, j) = 1;
  HardnessInstance out;
  out.construction = "unit-vector";
  out.vector_instance.emplace(std::move(attributes), 2, ShapeConstraint::free(),
                              std::move(objective));
  return out;
}

HardnessInstance gen_permutation_instance(int n) {
  if (n < 1) throw ValidationError("permutation construction needs n >= 1");
  return gen_permutation_instance(n, default_permutation_objective(n));
}

HardnessInstance gen_permutation_instance(int n, Objective objective) {
  if (n < 1) throw ValidationError("permutation construction needs n >= 1");
  Matrix attributes(1, n);
  for (int j = 0; j < n; ++j) attributes.at(0, j) = j + 1;
  HardnessInstance out;
  out.construction = "permutation";
  out.vector_instance.emplace(std::move(attributes), n,
                              ShapeConstraint::single(std::vector<Value>(static_cast<std::size_t>(n), 1)),
                              std::move(objective));
  return out;
}

HardnessInstance gen_partition_hardness(const std::vector<Value>& weights) {
  if (weights.empty()) throw ValidationError("subset-sum construction needs at least one weight");
  Value total = 0;
  for (Value w : weights) {
    if (w <= 0) throw ValidationError("subset-sum weights must be positive");
    total += w;
  }
  Matrix attributes(1, static_cast<int>(weights.size()));
  for (std::size_t j = 0; j < weights.size(); ++j)
    attributes.at(0, static_cast<int>(j)) = weights[j];
  std::vector<UnivariateTerm> terms = {ScaledQuadraticTerm{2, total}, ScaledQuadraticTerm{2, total}};
  HardnessInstance out;
  out.construction = "subset-sum";
  out.vector_instance.emplace(std::move(attributes), 2, ShapeConstraint::free(),
                              Objective::completely_separable(2, 1, std::move(terms)));
  out.equal_sum_partition = check_equal_sum_partition(weights);
  return out;
}

bool check_equal_sum_partition(const std::vector<Value>& weights, Value max_total) {
  Value total = 0;
  for (Value w : weights) {
    if (w <= 0) throw ValidationError("subset-sum weights must be positive");
    total += w;
  }
  if (total % 2 != 0) return false;
  if (total > max_total)
    throw BudgetError("subset-sum total " + std::to_string(total) +
                      " exceeds the DP budget of " + std::to_string(max_total));
  const Value half = total / 2;
  std::vector<std::uint64_t> reach(static_cast<std::size_t>(half / 64 + 1), 0);
  reach[0] = 1;
  for (Value w : weights) {
    if (w > half) continue;
    const std::size_t words = reach.size();
    const std::size_t shift_words = static_cast<std::size_t>(w / 64);
    const int shift_bits = static_cast<int>(w % 64);
    for (std::size_t i = words; i-- > shift_words;) {
      std::uint64_t v = reach[i - shift_words] << shift_bits;
      if (shift_bits != 0 && i > shift_words)
        v |= reach[i - shift_words - 1] >> (64 - shift_bits);
      reach[i] |= v;
    }
  }
  return (reach[static_cast<std::size_t>(half / 64)] >> (half % 64)) & 1;
}

}  // namespace vpart
