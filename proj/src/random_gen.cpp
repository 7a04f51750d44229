#include "vpart/random_gen.hpp"

#include <algorithm>

namespace vpart {
namespace {

UnivariateTerm random_term(SplitMix64& rng, const std::string& family, Value lo, Value hi) {
  if (family == "quadratic") return QuadraticTerm{rng.uniform(lo, hi)};
  if (family == "scaled-quadratic") {
    Value scale = rng.uniform(1, 3) * (rng.coin() ? 1 : -1);
    return ScaledQuadraticTerm{scale, rng.uniform(2 * lo, 2 * hi)};
  }
  if (family == "linear") return LinearTerm{rng.uniform(-5, 5)};
  if (family == "abs") return AbsTerm{rng.uniform(lo, hi)};
  if (family == "table" || family == "convex-table") {
    if (hi - lo > 100'000) throw ValidationError("table objective domain too large to materialize");
    TableTerm table;
    table.domain_min = lo;
    table.values.reserve(static_cast<std::size_t>(hi - lo + 1));
    if (family == "table") {
      for (Value x = lo; x <= hi; ++x) table.values.push_back(rng.uniform(-50, 50));
    } else {
      Value value = rng.uniform(-20, 20);
      Value slope = rng.uniform(-5, 0);
      for (Value x = lo; x <= hi; ++x) {
        table.values.push_back(value);
        slope += rng.uniform(0, 2);  // nonnegative second differences
        value += slope;
      }
    }
    return table;
  }
  if (family == "mixed") {
    static const char* kFamilies[] = {"quadratic", "scaled-quadratic", "linear",
                                      "abs",       "table",            "convex-table"};
    return random_term(rng, kFamilies[rng.uniform(0, 5)], lo, hi);
  }
  throw ValidationError("unknown univariate objective family '" + family + "'");
}

Objective random_objective(SplitMix64& rng, const std::string& family, int p, int dim, Value lo,
                           Value hi) {
  if (family == "product-columns") {
    ProductColumnsObjective b;
    for (int i = 0; i < dim; ++i) b.weights.push_back(rng.uniform(-2, 2));
    return Objective::general(GeneralBuiltin{std::move(b)});
  }
  if (family == "max-column-l1") {
    MaxColumnL1Objective b;
    for (int i = 0; i < dim; ++i) b.weights.push_back(rng.uniform(-3, 3));
    return Objective::general(GeneralBuiltin{std::move(b)});
  }
  if (family == "dot-quadratic") {
    // f_k(x) = (w_k . x - b_k)^2: separable but not completely separable.
    std::vector<Objective::PartOracle> parts;
    for (int k = 0; k < p; ++k) {
      std::vector<Value> w;
      for (int i = 0; i < dim; ++i) w.push_back(rng.uniform(-2, 2));
      Value center = rng.uniform(lo, hi);
      parts.push_back([w, center](std::span<const Value> column) {
        Value dot = -center;
        for (std::size_t i = 0; i < column.size(); ++i) dot += w[i] * column[i];
        return dot * dot;
      });
    }
    return Objective::separable(std::move(parts));
  }
  std::vector<UnivariateTerm> terms;
  terms.reserve(static_cast<std::size_t>(p) * dim);
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < dim; ++i) terms.push_back(random_term(rng, family, lo, hi));
  return Objective::completely_separable(p, dim, std::move(terms));
}

ShapeConstraint random_shape(SplitMix64& rng, const std::string& kind, int p, Value n) {
  if (kind == "free") return ShapeConstraint::free();
  if (kind == "interval") {
    // Always leaves sum(l) <= n <= sum(u).
    std::vector<Value> l(static_cast<std::size_t>(p)), u(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) l[static_cast<std::size_t>(k)] = rng.uniform(0, n / p);
    Value hi_total = 0;
    for (int k = 0; k < p; ++k) {
      u[static_cast<std::size_t>(k)] = rng.uniform(l[static_cast<std::size_t>(k)], n);
      hi_total += u[static_cast<std::size_t>(k)];
    }
    for (int k = 0; hi_total < n; k = (k + 1) % p) {
      Value bump = std::min(n - u[static_cast<std::size_t>(k)], n - hi_total);
      u[static_cast<std::size_t>(k)] += bump;
      hi_total += bump;
    }
    return ShapeConstraint::interval(std::move(l), std::move(u));
  }
  if (kind == "single") {
    // A feasible composition of n.
    std::vector<Value> sizes(static_cast<std::size_t>(p), 0);
    Value left = n;
    for (int k = 0; k + 1 < p; ++k) {
      sizes[static_cast<std::size_t>(k)] = rng.uniform(0, left);
      left -= sizes[static_cast<std::size_t>(k)];
    }
    sizes[static_cast<std::size_t>(p - 1)] = left;
    return ShapeConstraint::single(std::move(sizes));
  }
  if (kind == "sets") {
    std::vector<std::vector<Value>> sets(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) {
      Value count = rng.uniform(1, 4);
      for (Value c = 0; c < count; ++c) sets[static_cast<std::size_t>(k)].push_back(rng.uniform(0, n));
    }
    return ShapeConstraint::sets(std::move(sets));
  }
  throw ValidationError("unknown shape kind '" + kind + "'");
}

}  // namespace

VectorInstance random_vector_instance(const RandomSpec& spec) {
  SplitMix64 rng(spec.seed);
  Matrix attributes(spec.d, spec.n);
  for (int i = 0; i < spec.d; ++i)
    for (int j = 0; j < spec.n; ++j) attributes.at(i, j) = rng.uniform(-spec.a, spec.a);
  ShapeConstraint shape = random_shape(rng, spec.shape, spec.p, spec.n);
  Value bound = static_cast<Value>(spec.n) * spec.a;
  Objective objective = random_objective(rng, spec.objective, spec.p, spec.d, -bound, bound);
  return VectorInstance(std::move(attributes), spec.p, std::move(shape), std::move(objective));
}

TypeInstance random_type_instance(const RandomSpec& spec) {
  SplitMix64 rng(spec.seed);
  std::vector<Value> counts(static_cast<std::size_t>(spec.t), 0);
  Value left = spec.n;
  for (int i = 0; i + 1 < spec.t; ++i) {
    counts[static_cast<std::size_t>(i)] = rng.uniform(0, left);
    left -= counts[static_cast<std::size_t>(i)];
  }
  counts[static_cast<std::size_t>(spec.t - 1)] = left;
  ShapeConstraint shape = random_shape(rng, spec.shape, spec.p, spec.n);
  Objective objective = random_objective(rng, spec.objective, spec.p, spec.t, 0, spec.n);
  return TypeInstance(std::move(counts), spec.p, std::move(shape), std::move(objective));
}

}  // namespace vpart
