#include "vpart/instance.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace vpart {

Value attribute_bound(const Matrix& attributes) {
  Value a = 0;
  for (Value v : attributes.data()) a = std::max(a, v >= 0 ? v : -v);
  return a;
}

TypeStructure compute_types(const Matrix& attributes) {
  TypeStructure ts;
  const int n = attributes.cols();
  const int d = attributes.rows();
  std::map<std::vector<Value>, int> seen;  // column -> type index
  std::vector<std::vector<Value>> reps;
  for (int j = 0; j < n; ++j) {
    auto col = attributes.column(j);
    auto [it, inserted] = seen.try_emplace(col, static_cast<int>(reps.size()));
    if (inserted) {
      reps.push_back(col);
      ts.members.emplace_back();
      ts.counts.push_back(0);
    }
    ts.members[static_cast<std::size_t>(it->second)].push_back(j);
    ++ts.counts[static_cast<std::size_t>(it->second)];
  }
  // Representatives ordered by first occurrence, not map order.
  std::vector<int> order(reps.size());
  {
    std::vector<std::vector<int>> members_by_first = ts.members;
    std::vector<std::pair<int, int>> firsts;  // (first agent, type idx)
    for (std::size_t i = 0; i < members_by_first.size(); ++i)
      firsts.emplace_back(members_by_first[i].front(), static_cast<int>(i));
    std::sort(firsts.begin(), firsts.end());
    std::vector<std::vector<int>> members;
    std::vector<Value> counts;
    Matrix rep_matrix(d, static_cast<int>(reps.size()));
    for (std::size_t pos = 0; pos < firsts.size(); ++pos) {
      int idx = firsts[pos].second;
      members.push_back(std::move(members_by_first[static_cast<std::size_t>(idx)]));
      counts.push_back(ts.counts[static_cast<std::size_t>(idx)]);
      for (int r = 0; r < d; ++r)
        rep_matrix.at(r, static_cast<int>(pos)) = reps[static_cast<std::size_t>(idx)][static_cast<std::size_t>(r)];
    }
    ts.members = std::move(members);
    ts.counts = std::move(counts);
    ts.representatives = std::move(rep_matrix);
  }
  ts.type_count = static_cast<int>(ts.counts.size());
  return ts;
}

namespace {

// Keeps n*a (and hence every DP state entry) comfortably inside int32 and
// every attribute sum inside int64.
constexpr Value kMaxSumMagnitude = Value{1} << 30;

}  // namespace

VectorInstance::VectorInstance(Matrix attributes, int parts, ShapeConstraint shape,
                               Objective objective)
    : attributes_(std::move(attributes)),
      parts_(parts),
      shape_(std::move(shape)),
      objective_(std::move(objective)) {
  if (attributes_.rows() < 1) throw ValidationError("attribute dimension d must be at least 1");
  if (attributes_.cols() < 0) throw ValidationError("agent count n must be nonnegative");
  if (parts_ < 1) throw ValidationError("part count p must be at least 1");
  attr_bound_ = attribute_bound(attributes_);
  if (n() > 0 && attr_bound_ > kMaxSumMagnitude / n())
    throw ValidationError("n*a too large: attribute sums would overflow solver state");
  shape_.validate(parts_, n());
  Value sum_bound = attr_bound_ * n();
  objective_.validate_for(parts_, d(), -sum_bound, sum_bound);
}

TypeInstance::TypeInstance(std::vector<Value> counts, int parts, ShapeConstraint shape,
                           Objective objective)
    : counts_(std::move(counts)),
      parts_(parts),
      shape_(std::move(shape)),
      objective_(std::move(objective)),
      total_(0) {
  if (counts_.empty()) throw ValidationError("type count t must be at least 1");
  if (parts_ < 1) throw ValidationError("part count p must be at least 1");
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] < 0)
      throw ValidationError("negative type count at i=" + std::to_string(i + 1));
    total_ += counts_[i];
  }
  if (total_ > kMaxSumMagnitude) throw ValidationError("total agent count too large");
  shape_.validate(parts_, total_);
  objective_.validate_for(parts_, t(), 0, total_);
}

int TypeInstance::agent_type(Value j) const {
  Value acc = 0;
  for (int i = 0; i < t(); ++i) {
    acc += counts_[static_cast<std::size_t>(i)];
    if (j < acc) return i;
  }
  throw std::out_of_range("agent index beyond n");
}

}  // namespace vpart
