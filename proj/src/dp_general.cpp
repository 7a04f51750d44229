#include "vpart/dp_general.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <string>

namespace vpart {
namespace {

// States are packed row-major into 64-bit words, most significant field
// first, so lexicographic comparison of the word array equals lexicographic
// comparison of the state matrix. Row 0 fields hold cardinalities in [0, n];
// attribute fields hold sums offset by +n*a into [0, 2na]. Field widths are
// sized so that every reachable value fits, which also means packed addition
// of a per-(agent, part) delta word never carries across fields.
struct StatePacker {
  int d, p, fields;
  Value n, a;
  int width_card, width_sum;
  int words;

  StatePacker(int d_, int p_, Value n_, Value a_) : d(d_), p(p_), fields((d_ + 1) * p_), n(n_), a(a_) {
    width_card = std::max(1, static_cast<int>(std::bit_width(static_cast<std::uint64_t>(n))));
    width_sum = std::max(1, static_cast<int>(std::bit_width(static_cast<std::uint64_t>(2 * n * a))));
    int total = p * width_card + d * p * width_sum;
    words = (total + 63) / 64;
  }

  int field_width(int field) const { return field < p ? width_card : width_sum; }
  Value field_offset(int field) const { return field < p ? 0 : n * a; }

  void pack(const std::int32_t* state, std::uint64_t* out) const {
    for (int w = 0; w < words; ++w) out[w] = 0;
    int bit = 0;  // from the top of word 0
    for (int f = 0; f < fields; ++f) {
      int width = field_width(f);
      std::uint64_t v = static_cast<std::uint64_t>(state[f] + field_offset(f));
      int word = bit / 64, shift = bit % 64;
      if (shift + width <= 64) {
        out[word] |= v << (64 - shift - width);
      } else {
        int low = shift + width - 64;
        out[word] |= v >> low;
        out[word + 1] |= v << (64 - low);
      }
      bit += width;
    }
  }

  void unpack(const std::uint64_t* in, std::int32_t* state) const {
    int bit = 0;
    for (int f = 0; f < fields; ++f) {
      int width = field_width(f);
      std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
      int word = bit / 64, shift = bit % 64;
      std::uint64_t v;
      if (shift + width <= 64) {
        v = (in[word] >> (64 - shift - width)) & mask;
      } else {
        int low = shift + width - 64;
        v = ((in[word] << low) | (in[word + 1] >> (64 - low))) & mask;
      }
      state[f] = static_cast<std::int32_t>(static_cast<Value>(v) - field_offset(f));
      bit += width;
    }
  }
};

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Open-addressing index from packed state keys to dense slot numbers.
// Iteration happens over the dense arrays in insertion order, so results
// never depend on the hash layout.
class StateIndex {
 public:
  void reset(std::size_t expected, int words) {
    words_ = words;
    std::size_t cap = 16;
    while (cap * 2 < expected * 3) cap <<= 1;
    slots_.assign(cap, 0);
    mask_ = cap - 1;
    count_ = 0;
  }

  // Returns the dense index; found is set when the key already existed.
  std::uint32_t insert(const std::vector<std::uint64_t>& keys, const std::uint64_t* key,
                       bool& found) {
    if ((count_ + 1) * 3 > slots_.size() * 2) grow(keys);
    std::size_t pos = hash(key) & mask_;
    for (;;) {
      std::uint32_t slot = slots_[pos];
      if (slot == 0) {
        slots_[pos] = static_cast<std::uint32_t>(++count_);
        found = false;
        return static_cast<std::uint32_t>(count_ - 1);
      }
      if (std::memcmp(&keys[static_cast<std::size_t>(slot - 1) * words_], key,
                      sizeof(std::uint64_t) * static_cast<std::size_t>(words_)) == 0) {
        found = true;
        return slot - 1;
      }
      pos = (pos + 1) & mask_;
    }
  }

 private:
  std::size_t hash(const std::uint64_t* key) const {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (int w = 0; w < words_; ++w) h = mix64(h ^ key[w]);
    return static_cast<std::size_t>(h);
  }

  void grow(const std::vector<std::uint64_t>& keys) {
    std::vector<std::uint32_t> old = std::move(slots_);
    slots_.assign(old.size() * 2, 0);
    mask_ = slots_.size() - 1;
    for (std::uint32_t slot : old) {
      if (slot == 0) continue;
      std::size_t pos = hash(&keys[static_cast<std::size_t>(slot - 1) * words_]) & mask_;
      while (slots_[pos] != 0) pos = (pos + 1) & mask_;
      slots_[pos] = slot;
    }
  }

  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
  std::size_t count_ = 0;
  int words_ = 1;
};

struct Layer {
  std::vector<std::uint64_t> keys;   // count * words
  std::vector<std::int32_t> preds;   // index into previous layer
  std::vector<std::int32_t> parts;   // chosen part k
  std::size_t count = 0;
};

struct ForwardRun {
  StatePacker packer;
  Layer current;                              // layer `layers_done`
  std::vector<std::vector<std::int32_t>> pred_history;
  std::vector<std::vector<std::int32_t>> part_history;
  std::int64_t total_states = 0;
  std::int64_t total_edges = 0;
};

// Runs the forward reachability pass up to `up_to` layers, keeping
// predecessor links when `keep_history` is set.
ForwardRun run_forward(const VectorInstance& inst, int up_to, bool keep_history,
                       const DpGeneralBudget& budget) {
  const int d = inst.d(), p = inst.p();
  ForwardRun run{StatePacker(d, p, std::max<Value>(inst.n(), 1), std::max<Value>(inst.a(), 1)),
                 {}, {}, {}, 0, 0};
  const StatePacker& packer = run.packer;
  const int words = packer.words;
  const int fields = packer.fields;

  std::vector<std::int32_t> zero(static_cast<std::size_t>(fields), 0);
  run.current.keys.assign(static_cast<std::size_t>(words), 0);
  packer.pack(zero.data(), run.current.keys.data());
  run.current.preds = {-1};
  run.current.parts = {-1};
  run.current.count = 1;
  run.total_states = 1;

  StateIndex index;
  std::vector<std::int32_t> buf(static_cast<std::size_t>(fields));
  std::vector<std::uint64_t> key(static_cast<std::size_t>(words));

  for (int j = 1; j <= up_to; ++j) {
    Layer next;
    const std::size_t expected = run.current.count * static_cast<std::size_t>(p);
    index.reset(expected, words);
    next.keys.reserve(expected * static_cast<std::size_t>(words));
    next.preds.reserve(expected);
    next.parts.reserve(expected);

    // Packed per-part deltas for agent j; single-word states add in place.
    std::vector<std::uint64_t> delta;
    if (words == 1) {
      delta.resize(static_cast<std::size_t>(p));
      std::uint64_t zero_key;
      std::fill(buf.begin(), buf.end(), 0);
      packer.pack(buf.data(), &zero_key);
      for (int k = 0; k < p; ++k) {
        std::fill(buf.begin(), buf.end(), 0);
        buf[static_cast<std::size_t>(k)] = 1;
        for (int i = 1; i <= d; ++i)
          buf[static_cast<std::size_t>(i * p + k)] =
              static_cast<std::int32_t>(inst.attributes().at(i - 1, j - 1));
        std::uint64_t with_delta;
        packer.pack(buf.data(), &with_delta);
        delta[static_cast<std::size_t>(k)] = with_delta - zero_key;
      }
    }

    for (std::size_t s = 0; s < run.current.count; ++s) {
      const std::uint64_t* prev_key = &run.current.keys[s * static_cast<std::size_t>(words)];
      for (int k = 0; k < p; ++k) {
        ++run.total_edges;
        if (words == 1) {
          key[0] = prev_key[0] + delta[static_cast<std::size_t>(k)];
        } else {
          packer.unpack(prev_key, buf.data());
          buf[static_cast<std::size_t>(k)] += 1;
          for (int i = 1; i <= d; ++i)
            buf[static_cast<std::size_t>(i * p + k)] +=
                static_cast<std::int32_t>(inst.attributes().at(i - 1, j - 1));
          packer.pack(buf.data(), key.data());
        }
        bool found = false;
        std::uint32_t idx = index.insert(next.keys, key.data(), found);
        if (!found) {
          next.keys.insert(next.keys.end(), key.begin(), key.end());
          next.preds.push_back(static_cast<std::int32_t>(s));
          next.parts.push_back(k);
          ++next.count;
          if ((run.total_states + static_cast<std::int64_t>(next.count)) *
                  static_cast<std::int64_t>(fields) >
              budget.max_state_entries)
            throw BudgetError("dp-general state budget of " +
                              std::to_string(budget.max_state_entries) +
                              " entries exceeded at layer " + std::to_string(j));
        } else if (k < next.parts[idx]) {
          next.parts[idx] = k;  // same successor, prefer the smallest part
          next.preds[idx] = static_cast<std::int32_t>(s);
        }
      }
    }

    run.total_states += static_cast<std::int64_t>(next.count);
    if (keep_history) {
      run.pred_history.push_back(std::move(run.current.preds));
      run.part_history.push_back(std::move(run.current.parts));
    }
    run.current = std::move(next);
  }
  return run;
}

template <typename Shape>
bool layer_state_admissible(const Shape& shape, const std::int32_t* state, int p) {
  for (int k = 0; k < p; ++k)
    if (!shape.contains(k, state[k])) return false;
  return true;
}

}  // namespace

SolveResult solve_dp_general(const VectorInstance& inst, const DpGeneralBudget& budget) {
  const int n = inst.n(), d = inst.d(), p = inst.p();
  ForwardRun run = run_forward(inst, n, /*keep_history=*/true, budget);
  const StatePacker& packer = run.packer;

  SolveResult result;
  result.stats.states = run.total_states;
  result.stats.arcs = run.total_edges;

  // Terminal minimization over admissible layer-n states; ties go to the
  // lexicographically smallest state matrix.
  std::vector<std::int32_t> buf(static_cast<std::size_t>(packer.fields));
  Matrix sums(d, p);
  bool found = false;
  Value best_value = 0;
  std::size_t best_idx = 0;
  std::vector<std::uint64_t> best_key;
  for (std::size_t s = 0; s < run.current.count; ++s) {
    const std::uint64_t* key = &run.current.keys[s * static_cast<std::size_t>(packer.words)];
    packer.unpack(key, buf.data());
    if (!layer_state_admissible(inst.shape(), buf.data(), p)) continue;
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < p; ++k) sums.at(i, k) = buf[static_cast<std::size_t>((i + 1) * p + k)];
    Value value = inst.objective().value(sums);
    bool better = !found || value < best_value;
    if (!better && value == best_value)
      better = std::lexicographical_compare(key, key + packer.words, best_key.data(),
                                            best_key.data() + packer.words);
    if (better) {
      found = true;
      best_value = value;
      best_idx = s;
      best_key.assign(key, key + packer.words);
    }
  }
  if (!found) return result;

  // pred/part history holds layers 0..n-1; layer n sits in run.current.
  std::vector<int> assignment(static_cast<std::size_t>(n));
  std::size_t idx = best_idx;
  for (int j = n; j >= 1; --j) {
    const bool archived = j < static_cast<int>(run.part_history.size());
    const auto& parts = archived ? run.part_history[static_cast<std::size_t>(j)] : run.current.parts;
    const auto& preds = archived ? run.pred_history[static_cast<std::size_t>(j)] : run.current.preds;
    assignment[static_cast<std::size_t>(j - 1)] = parts[idx];
    idx = static_cast<std::size_t>(preds[idx]);
  }

  Solution sol;
  sol.partition = Partition::from_assignment(std::move(assignment));
  sol.value = best_value;
  sol.sums = partition_sums(inst, sol.partition);
  verify_solution(inst, sol);
  result.status = SolveStatus::Optimal;
  result.solution = std::move(sol);
  return result;
}

SolveResult solve_dp_general_type(const TypeInstance& inst, const DpGeneralBudget& budget) {
  // Unit-vector encoding: d := t, column j = e_{type(j)}, a = 1. The
  // objective is forwarded as an oracle; it was already validated on the
  // count box of the type instance.
  const int t = inst.t();
  const Value n = inst.n();
  Matrix attributes(t, static_cast<int>(n));
  for (Value j = 0; j < n; ++j) attributes.at(inst.agent_type(j), static_cast<int>(j)) = 1;
  const Objective& g = inst.objective();
  VectorInstance encoded(std::move(attributes), inst.p(), inst.shape(),
                         Objective::general([&g](const Matrix& counts) { return g.value(counts); }));
  SolveResult inner = solve_dp_general(encoded, budget);
  if (!inner.optimal()) return inner;

  SolveResult result;
  result.stats = inner.stats;
  result.status = SolveStatus::Optimal;
  Solution sol;
  sol.partition = Partition::from_assignment(inner.sol().partition.assignment);
  sol.partition.counts = inner.sol().sums;  // t x p unit-vector sums are the counts
  sol.value = inner.sol().value;
  sol.sums = inner.sol().sums;
  verify_solution(inst, sol);
  result.solution = std::move(sol);
  return result;
}

std::vector<Matrix> reachable_states(const VectorInstance& inst, int layer,
                                     const DpGeneralBudget& budget) {
  if (layer < 0 || layer > inst.n())
    throw ValidationError("layer must lie in [0, n]");
  ForwardRun run = run_forward(inst, layer, /*keep_history=*/false, budget);
  const StatePacker& packer = run.packer;
  std::vector<std::int32_t> buf(static_cast<std::size_t>(packer.fields));
  std::vector<Matrix> out;
  out.reserve(run.current.count);
  for (std::size_t s = 0; s < run.current.count; ++s) {
    packer.unpack(&run.current.keys[s * static_cast<std::size_t>(packer.words)], buf.data());
    Matrix m(inst.d() + 1, inst.p());
    for (int f = 0; f < packer.fields; ++f)
      m.at(f / inst.p(), f % inst.p()) = buf[static_cast<std::size_t>(f)];
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace vpart
