#include "vpart/objective.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace vpart {
namespace {

using Wide = __int128;

Value to_value_checked(Wide v, const char* what) {
  if (v > Wide(kValueBound) || v < -Wide(kValueBound))
    throw ValidationError(std::string(what) + " exceeds the 64-bit value range");
  return static_cast<Value>(v);
}

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

}  // namespace

Value eval_term(const UnivariateTerm& term, Value x) {
  return std::visit(
      [x](const auto& t) -> Value {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, QuadraticTerm>) {
          Wide e = Wide(x) - t.center;
          return static_cast<Value>(e * e);
        } else if constexpr (std::is_same_v<T, ScaledQuadraticTerm>) {
          Wide e = Wide(t.scale) * x - t.center;
          return static_cast<Value>(e * e);
        } else if constexpr (std::is_same_v<T, LinearTerm>) {
          return t.slope * x;
        } else if constexpr (std::is_same_v<T, AbsTerm>) {
          return x >= t.center ? x - t.center : t.center - x;
        } else {
          Value idx = x - t.domain_min;
          if (idx < 0 || idx >= static_cast<Value>(t.values.size()))
            throw DomainError("table term queried at " + std::to_string(x) +
                              " outside covered domain [" + std::to_string(t.domain_min) + ", " +
                              std::to_string(t.domain_min + static_cast<Value>(t.values.size()) - 1) +
                              "]");
          return t.values[static_cast<std::size_t>(idx)];
        }
      },
      term);
}

Value term_abs_bound(const UnivariateTerm& term, Value lo, Value hi) {
  return std::visit(
      [lo, hi](const auto& t) -> Value {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, QuadraticTerm>) {
          Wide m = std::max(wide_abs(Wide(lo) - t.center), wide_abs(Wide(hi) - t.center));
          return to_value_checked(m * m, "quadratic term bound");
        } else if constexpr (std::is_same_v<T, ScaledQuadraticTerm>) {
          Wide a = Wide(t.scale) * lo - t.center;
          Wide b = Wide(t.scale) * hi - t.center;
          Wide m = std::max(wide_abs(a), wide_abs(b));
          return to_value_checked(m * m, "scaled quadratic term bound");
        } else if constexpr (std::is_same_v<T, LinearTerm>) {
          Wide m = std::max(wide_abs(Wide(t.slope) * lo), wide_abs(Wide(t.slope) * hi));
          return to_value_checked(m, "linear term bound");
        } else if constexpr (std::is_same_v<T, AbsTerm>) {
          Wide m = std::max(wide_abs(Wide(lo) - t.center), wide_abs(Wide(hi) - t.center));
          return to_value_checked(m, "abs term bound");
        } else {
          Wide m = 0;
          for (Value v : t.values) m = std::max(m, wide_abs(v));
          return to_value_checked(m, "table term bound");
        }
      },
      term);
}

void check_table_coverage(const UnivariateTerm& term, Value lo, Value hi) {
  const auto* table = std::get_if<TableTerm>(&term);
  if (table == nullptr) return;
  Value covered_hi = table->domain_min + static_cast<Value>(table->values.size()) - 1;
  if (table->domain_min > lo || covered_hi < hi)
    throw ValidationError("table does not cover reachable domain [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] (covers [" + std::to_string(table->domain_min) +
                          ", " + std::to_string(covered_hi) + "])");
}

std::optional<Value> term_convexity_violation(const UnivariateTerm& term, Value lo, Value hi) {
  const auto* table = std::get_if<TableTerm>(&term);
  if (table == nullptr) return std::nullopt;  // closed-form families are convex
  Value from = std::max(lo, table->domain_min);
  Value to = std::min(hi, table->domain_min + static_cast<Value>(table->values.size()) - 1);
  for (Value x = from + 1; x + 1 <= to; ++x) {
    // convex iff g(x-1) + g(x+1) >= 2 g(x) at every interior point
    Value g0 = eval_term(term, x - 1), g1 = eval_term(term, x), g2 = eval_term(term, x + 1);
    if (g0 + g2 < 2 * g1) return x;
  }
  return std::nullopt;
}

Value eval_builtin(const GeneralBuiltin& builtin, const Matrix& sums) {
  return std::visit(
      [&sums](const auto& b) -> Value {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ProductColumnsObjective>) {
          Value prod = 1;
          for (int k = 0; k < sums.cols(); ++k) {
            Value dot = 0;
            for (int i = 0; i < sums.rows(); ++i) {
              Value w = b.weights.empty() ? 1 : b.weights[static_cast<std::size_t>(i)];
              dot += w * sums.at(i, k);
            }
            prod *= dot;
          }
          return prod;
        } else if constexpr (std::is_same_v<T, MaxColumnL1Objective>) {
          Value best = 0;
          for (int k = 0; k < sums.cols(); ++k) {
            Value norm = 0;
            for (int i = 0; i < sums.rows(); ++i) {
              Value w = b.weights.empty() ? 1 : b.weights[static_cast<std::size_t>(i)];
              norm += std::abs(w * sums.at(i, k));
            }
            best = k == 0 ? norm : std::max(best, norm);
          }
          return best;
        } else {
          auto it = std::lower_bound(b.entries.begin(), b.entries.end(), sums,
                                     [](const auto& e, const Matrix& key) { return e.first < key; });
          if (it == b.entries.end() || it->first != sums)
            throw DomainError("matrix table objective has no entry for the reached sums");
          return it->second;
        }
      },
      builtin);
}

Objective Objective::general(MatrixOracle oracle) {
  Objective o;
  o.kind_ = Kind::General;
  o.custom_ = std::move(oracle);
  return o;
}

Objective Objective::general(GeneralBuiltin builtin) {
  Objective o;
  o.kind_ = Kind::General;
  if (auto* table = std::get_if<MatrixTableObjective>(&builtin)) {
    std::sort(table->entries.begin(), table->entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < table->entries.size(); ++i)
      if (table->entries[i - 1].first == table->entries[i].first)
        throw ValidationError("matrix table objective has duplicate keys");
  }
  o.builtin_ = std::move(builtin);
  return o;
}

Objective Objective::separable(std::vector<PartOracle> parts) {
  Objective o;
  o.kind_ = Kind::Separable;
  o.parts_ = static_cast<int>(parts.size());
  o.part_oracles_ = std::move(parts);
  return o;
}

Objective Objective::completely_separable(int parts, int dim, std::vector<UnivariateTerm> terms) {
  if (static_cast<std::size_t>(parts) * dim != terms.size())
    throw ValidationError("completely separable objective needs exactly p*d terms");
  Objective o;
  o.kind_ = Kind::CompletelySeparable;
  o.parts_ = parts;
  o.dim_ = dim;
  o.terms_ = std::move(terms);
  return o;
}

bool Objective::serializable() const {
  switch (kind_) {
    case Kind::General:
      return builtin_.has_value();
    case Kind::Separable:
      return false;
    case Kind::CompletelySeparable:
      return true;
  }
  return false;
}

Value Objective::value(const Matrix& sums) const {
  switch (kind_) {
    case Kind::General:
      return builtin_ ? eval_builtin(*builtin_, sums) : custom_(sums);
    case Kind::Separable:
    case Kind::CompletelySeparable: {
      Value total = 0;
      std::vector<Value> column(sums.rows());
      for (int k = 0; k < sums.cols(); ++k) {
        for (int i = 0; i < sums.rows(); ++i) column[static_cast<std::size_t>(i)] = sums.at(i, k);
        total += part_value(k, column);
      }
      return total;
    }
  }
  return 0;
}

Value Objective::part_value(int k, std::span<const Value> column) const {
  if (kind_ == Kind::Separable) return part_oracles_[static_cast<std::size_t>(k)](column);
  if (kind_ == Kind::CompletelySeparable) {
    Value total = 0;
    for (int i = 0; i < static_cast<int>(column.size()); ++i)
      total += term_value(k, i, column[static_cast<std::size_t>(i)]);
    return total;
  }
  throw std::logic_error("part_value on a general objective");
}

const UnivariateTerm& Objective::term(int k, int i) const {
  if (kind_ != Kind::CompletelySeparable)
    throw std::logic_error("term access on a non-completely-separable objective");
  return terms_[static_cast<std::size_t>(k) * dim_ + i];
}

void Objective::validate_for(int parts, int dim, Value lo, Value hi) {
  switch (kind_) {
    case Kind::General: {
      if (!builtin_) {
        if (!custom_) throw ValidationError("general objective has no oracle");
        break;  // programmatic oracle: bounds are the caller's responsibility
      }
      std::visit(
          [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (!std::is_same_v<T, MatrixTableObjective>) {
              if (!b.weights.empty() && static_cast<int>(b.weights.size()) != dim)
                throw ValidationError("objective weight vector length must equal the dimension");
              Wide per_column = 0;
              for (int i = 0; i < dim; ++i) {
                Value w = b.weights.empty() ? 1 : b.weights[static_cast<std::size_t>(i)];
                per_column += wide_abs(Wide(w)) * std::max(wide_abs(lo), wide_abs(hi));
              }
              if constexpr (std::is_same_v<T, ProductColumnsObjective>) {
                Wide prod = 1;
                for (int k = 0; k < parts; ++k) {
                  prod *= std::max<Wide>(per_column, 1);
                  if (prod > Wide(kValueBound))
                    throw ValidationError("product objective can exceed the 64-bit value range");
                }
              } else {
                to_value_checked(per_column, "column L1 bound");
              }
            } else {
              for (const auto& [key, v] : b.entries) {
                if (key.rows() != dim || key.cols() != parts)
                  throw ValidationError("matrix table key has wrong dimensions");
                (void)v;
              }
            }
          },
          *builtin_);
      parts_ = parts;
      dim_ = dim;
      break;
    }
    case Kind::Separable:
      if (parts_ != parts)
        throw ValidationError("separable objective must provide exactly p part functions");
      dim_ = dim;
      break;
    case Kind::CompletelySeparable: {
      if (parts_ != parts || dim_ != dim)
        throw ValidationError("completely separable objective grid must be p x d");
      Wide total = 0;
      for (const auto& term : terms_) {
        check_table_coverage(term, lo, hi);
        total += term_abs_bound(term, lo, hi);
      }
      to_value_checked(total, "objective bound");
      break;
    }
  }
}

bool operator==(const Objective& a, const Objective& b) {
  if (a.kind_ != b.kind_ || a.parts_ != b.parts_ || a.dim_ != b.dim_) return false;
  if (a.custom_ || b.custom_ || !a.part_oracles_.empty() || !b.part_oracles_.empty()) return false;
  return a.terms_ == b.terms_ && a.builtin_ == b.builtin_;
}

}  // namespace vpart
