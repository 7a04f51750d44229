#include "vpart/ip_model.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace vpart {

int IPModel::x_index(int k, int j) const {
  return kind == Kind::Vector ? k * static_cast<int>(n) + j : k * dim + j;
}

int IPModel::y_index(int k, int i) const {
  int x_block = kind == Kind::Vector ? p * static_cast<int>(n) : p * dim;
  return kind == Kind::Vector ? x_block + k * (dim + 1) + i : x_block + k;
}

Value IPModel::objective_value(const std::vector<Value>& point) const {
  Value total = 0;
  for (int v = 0; v < num_vars(); ++v)
    if (objective_terms[static_cast<std::size_t>(v)])
      total += eval_term(*objective_terms[static_cast<std::size_t>(v)], point[static_cast<std::size_t>(v)]);
  return total;
}

namespace {

std::pair<std::vector<Value>, std::vector<Value>> interval_shape_or_throw(
    const ShapeConstraint& shape, int p, Value n, const char* who) {
  auto iv = shape.as_interval(p, n);
  if (!iv)
    throw ValidationError(std::string(who) + " requires an interval (bounded) shape; "
                                             "explicit set shapes are not expressible");
  return *iv;
}

const std::vector<UnivariateTerm>& completely_separable_or_throw(const Objective& obj,
                                                                 const char* who) {
  if (obj.kind() != Objective::Kind::CompletelySeparable)
    throw ValidationError(std::string(who) + " requires a completely separable objective");
  return obj.terms();
}

}  // namespace

IPModel build_vector_ip(const VectorInstance& inst) {
  const int n = inst.n(), d = inst.d(), p = inst.p();
  auto [l, u] = interval_shape_or_throw(inst.shape(), p, n, "build_vector_ip");
  const auto& terms = completely_separable_or_throw(inst.objective(), "build_vector_ip");
  const Value a = inst.a();

  IPModel m;
  m.kind = IPModel::Kind::Vector;
  m.p = p;
  m.dim = d;
  m.n = n;
  const int vars = p * (n + d + 1);
  const int rows = p * (d + 1) + n;
  m.constraints = Matrix(rows, vars);
  m.rhs.assign(static_cast<std::size_t>(rows), 0);
  m.lower.assign(static_cast<std::size_t>(vars), 0);
  m.upper.assign(static_cast<std::size_t>(vars), 0);
  m.objective_terms.assign(static_cast<std::size_t>(vars), std::nullopt);
  m.var_names.resize(static_cast<std::size_t>(vars));
  m.row_names.resize(static_cast<std::size_t>(rows));

  for (int k = 0; k < p; ++k)
    for (int j = 0; j < n; ++j) {
      int v = m.x_index(k, j);
      m.lower[static_cast<std::size_t>(v)] = 0;
      m.upper[static_cast<std::size_t>(v)] = 1;
      m.var_names[static_cast<std::size_t>(v)] =
          "x[" + std::to_string(k + 1) + "][" + std::to_string(j + 1) + "]";
    }
  for (int k = 0; k < p; ++k)
    for (int i = 0; i <= d; ++i) {
      int v = m.y_index(k, i);
      if (i == 0) {
        m.lower[static_cast<std::size_t>(v)] = l[static_cast<std::size_t>(k)];
        m.upper[static_cast<std::size_t>(v)] = u[static_cast<std::size_t>(k)];
      } else {
        m.lower[static_cast<std::size_t>(v)] = -static_cast<Value>(n) * a;
        m.upper[static_cast<std::size_t>(v)] = static_cast<Value>(n) * a;
        m.objective_terms[static_cast<std::size_t>(v)] =
            terms[static_cast<std::size_t>(k) * d + (i - 1)];
      }
      m.var_names[static_cast<std::size_t>(v)] =
          "y[" + std::to_string(k + 1) + "][" + std::to_string(i) + "]";
    }

  // coupling rows r[k][i], k-major with i = 0..d:
  // sum_j A^j_i x_{k,j} - y_{k,i} = 0, where row 0 of A is augmented to all
  // ones so that y_{k,0} tracks |pi_k|.
  for (int k = 0; k < p; ++k)
    for (int i = 0; i <= d; ++i) {
      int r = k * (d + 1) + i;
      for (int j = 0; j < n; ++j)
        m.constraints.at(r, m.x_index(k, j)) = i == 0 ? 1 : inst.attributes().at(i - 1, j);
      m.constraints.at(r, m.y_index(k, i)) = -1;
      m.rhs[static_cast<std::size_t>(r)] = 0;
      m.row_names[static_cast<std::size_t>(r)] =
          "r[" + std::to_string(k + 1) + "][" + std::to_string(i) + "]";
    }
  // assignment rows s[j]: sum_k x_{k,j} = 1.
  for (int j = 0; j < n; ++j) {
    int r = p * (d + 1) + j;
    for (int k = 0; k < p; ++k) m.constraints.at(r, m.x_index(k, j)) = 1;
    m.rhs[static_cast<std::size_t>(r)] = 1;
    m.row_names[static_cast<std::size_t>(r)] = "s[" + std::to_string(j + 1) + "]";
  }
  return m;
}

IPModel build_type_ip(const TypeInstance& inst) {
  const int t = inst.t(), p = inst.p();
  auto [l, u] = interval_shape_or_throw(inst.shape(), p, inst.n(), "build_type_ip");
  const auto& terms = completely_separable_or_throw(inst.objective(), "build_type_ip");

  IPModel m;
  m.kind = IPModel::Kind::Type;
  m.p = p;
  m.dim = t;
  m.n = inst.n();
  const int vars = p * (t + 1);
  const int rows = p + t;
  m.constraints = Matrix(rows, vars);
  m.rhs.assign(static_cast<std::size_t>(rows), 0);
  m.lower.assign(static_cast<std::size_t>(vars), 0);
  m.upper.assign(static_cast<std::size_t>(vars), 0);
  m.objective_terms.assign(static_cast<std::size_t>(vars), std::nullopt);
  m.var_names.resize(static_cast<std::size_t>(vars));
  m.row_names.resize(static_cast<std::size_t>(rows));

  for (int k = 0; k < p; ++k)
    for (int i = 0; i < t; ++i) {
      int v = m.x_index(k, i);
      m.lower[static_cast<std::size_t>(v)] = 0;
      m.upper[static_cast<std::size_t>(v)] =
          std::min(u[static_cast<std::size_t>(k)], inst.counts()[static_cast<std::size_t>(i)]);
      m.objective_terms[static_cast<std::size_t>(v)] = terms[static_cast<std::size_t>(k) * t + i];
      m.var_names[static_cast<std::size_t>(v)] =
          "x[" + std::to_string(k + 1) + "][" + std::to_string(i + 1) + "]";
    }
  for (int k = 0; k < p; ++k) {
    int v = m.y_index(k);
    m.lower[static_cast<std::size_t>(v)] = l[static_cast<std::size_t>(k)];
    m.upper[static_cast<std::size_t>(v)] = u[static_cast<std::size_t>(k)];
    m.var_names[static_cast<std::size_t>(v)] = "y[" + std::to_string(k + 1) + "]";
  }

  // part-size rows r[k]: sum_i x_{k,i} - y_k = 0.
  for (int k = 0; k < p; ++k) {
    for (int i = 0; i < t; ++i) m.constraints.at(k, m.x_index(k, i)) = 1;
    m.constraints.at(k, m.y_index(k)) = -1;
    m.rhs[static_cast<std::size_t>(k)] = 0;
    m.row_names[static_cast<std::size_t>(k)] = "r[" + std::to_string(k + 1) + "]";
  }
  // type-conservation rows s[i]: sum_k x_{k,i} = n_i.
  for (int i = 0; i < t; ++i) {
    int r = p + i;
    for (int k = 0; k < p; ++k) m.constraints.at(r, m.x_index(k, i)) = 1;
    m.rhs[static_cast<std::size_t>(r)] = inst.counts()[static_cast<std::size_t>(i)];
    m.row_names[static_cast<std::size_t>(r)] = "s[" + std::to_string(i + 1) + "]";
  }
  return m;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.at(c, r) = m.at(r, c);
  return out;
}

ConstraintGraph constraint_graph(const Matrix& m) {
  ConstraintGraph g;
  g.vertices = m.cols();
  std::vector<std::pair<int, int>> edges;
  std::vector<int> nonzero;
  for (int r = 0; r < m.rows(); ++r) {
    nonzero.clear();
    for (int c = 0; c < m.cols(); ++c)
      if (m.at(r, c) != 0) nonzero.push_back(c);
    for (std::size_t a = 0; a < nonzero.size(); ++a)
      for (std::size_t b = a + 1; b < nonzero.size(); ++b)
        edges.emplace_back(nonzero[a], nonzero[b]);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  return g;
}

int RootedTreeCertificate::height() const {
  const int n = static_cast<int>(parent.size());
  std::vector<int> depth(static_cast<std::size_t>(n), 0);
  int best = 0;
  for (int v = 0; v < n; ++v) {
    // walk to the root or to a vertex with a known depth
    std::vector<int> chain;
    int u = v;
    while (u != -1 && depth[static_cast<std::size_t>(u)] == 0) {
      chain.push_back(u);
      u = parent[static_cast<std::size_t>(u)];
    }
    int base = u == -1 ? 0 : depth[static_cast<std::size_t>(u)];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      depth[static_cast<std::size_t>(*it)] = ++base;
    best = std::max(best, base);
  }
  return best;
}

RootedTreeCertificate tree_depth_certificate(const IPModel& model) {
  if (model.kind != IPModel::Kind::Vector)
    throw ValidationError("tree_depth_certificate expects the vector model");
  const int path_len = model.p * (model.dim + 1);
  RootedTreeCertificate tree;
  tree.root = 0;
  tree.parent.assign(static_cast<std::size_t>(model.num_rows()), -1);
  for (int r = 1; r < path_len; ++r) tree.parent[static_cast<std::size_t>(r)] = r - 1;
  for (int j = 0; j < static_cast<int>(model.n); ++j)
    tree.parent[static_cast<std::size_t>(path_len + j)] = path_len - 1;
  return tree;
}

bool verify_valid_tree(const ConstraintGraph& graph, const RootedTreeCertificate& tree) {
  const int n = graph.vertices;
  if (static_cast<int>(tree.parent.size()) != n)
    throw ValidationError("tree vertex set does not match the graph");
  if (n == 0) return true;
  if (tree.root < 0 || tree.root >= n || tree.parent[static_cast<std::size_t>(tree.root)] != -1)
    return false;

  // depths; also rejects multiple roots and cycles
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  depth[static_cast<std::size_t>(tree.root)] = 1;
  for (int v = 0; v < n; ++v) {
    std::vector<int> chain;
    int u = v;
    while (u != -1 && depth[static_cast<std::size_t>(u)] == -1) {
      chain.push_back(u);
      if (static_cast<int>(chain.size()) > n) return false;  // cycle
      u = tree.parent[static_cast<std::size_t>(u)];
    }
    if (u == -1) return false;  // second root or dangling parent
    int base = depth[static_cast<std::size_t>(u)];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      depth[static_cast<std::size_t>(*it)] = ++base;
  }

  auto is_ancestor_related = [&](int a, int b) {
    int x = a, y = b;
    if (depth[static_cast<std::size_t>(x)] < depth[static_cast<std::size_t>(y)]) std::swap(x, y);
    while (depth[static_cast<std::size_t>(x)] > depth[static_cast<std::size_t>(y)])
      x = tree.parent[static_cast<std::size_t>(x)];
    return x == y;
  };
  for (auto [a, b] : graph.edges)
    if (!is_ancestor_related(a, b)) return false;
  return true;
}

std::optional<TuCertificate> verify_tu_condition(const Matrix& m) {
  const int rows = m.rows(), cols = m.cols();
  for (Value v : m.data())
    if (v < -1 || v > 1) return std::nullopt;

  // Row-conflict constraints from two-nonzero columns: same sign -> rows in
  // opposite classes, opposite signs -> same class. Single-nonzero columns
  // impose nothing.
  std::vector<std::vector<std::pair<int, bool>>> adj(static_cast<std::size_t>(rows));
  for (int c = 0; c < cols; ++c) {
    int r1 = -1, r2 = -1;
    int count = 0;
    for (int r = 0; r < rows; ++r) {
      if (m.at(r, c) == 0) continue;
      ++count;
      if (count == 1) r1 = r;
      else if (count == 2) r2 = r;
      else return std::nullopt;  // more than two nonzeros
    }
    if (count < 2) continue;
    bool must_differ = m.at(r1, c) == m.at(r2, c);
    adj[static_cast<std::size_t>(r1)].emplace_back(r2, must_differ);
    adj[static_cast<std::size_t>(r2)].emplace_back(r1, must_differ);
  }

  TuCertificate cert;
  cert.row_color.assign(static_cast<std::size_t>(rows), 0);
  std::vector<int> color(static_cast<std::size_t>(rows), -1);
  std::vector<int> queue;
  for (int start = 0; start < rows; ++start) {
    if (color[static_cast<std::size_t>(start)] != -1) continue;
    color[static_cast<std::size_t>(start)] = 0;
    queue.assign(1, start);
    while (!queue.empty()) {
      int r = queue.back();
      queue.pop_back();
      for (auto [s, differ] : adj[static_cast<std::size_t>(r)]) {
        int want = differ ? 1 - color[static_cast<std::size_t>(r)] : color[static_cast<std::size_t>(r)];
        if (color[static_cast<std::size_t>(s)] == -1) {
          color[static_cast<std::size_t>(s)] = want;
          queue.push_back(s);
        } else if (color[static_cast<std::size_t>(s)] != want) {
          return std::nullopt;  // no consistent 2-coloring
        }
      }
    }
  }
  for (int r = 0; r < rows; ++r)
    cert.row_color[static_cast<std::size_t>(r)] = static_cast<std::uint8_t>(color[static_cast<std::size_t>(r)]);
  return cert;
}

namespace {

Value det_laplace(const Matrix& m, std::vector<int>& rows, std::vector<int>& cols) {
  const std::size_t q = rows.size();
  if (q == 1) return m.at(rows[0], cols[0]);
  Value det = 0;
  int top = rows[0];
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < q; ++c) {
    Value pivot = m.at(top, cols[c]);
    if (pivot == 0) continue;
    std::vector<int> sub_cols;
    sub_cols.reserve(q - 1);
    for (std::size_t cc = 0; cc < q; ++cc)
      if (cc != c) sub_cols.push_back(cols[cc]);
    Value minor = det_laplace(m, sub_rows, sub_cols);
    det += (c % 2 == 0 ? pivot : -pivot) * minor;
  }
  return det;
}

template <typename Fn>
bool for_each_subset(int universe, int size, std::vector<int>& subset, Fn&& fn) {
  // subset holds `size` increasing indices; fn returns false to abort
  for (int i = 0; i < size; ++i) subset[static_cast<std::size_t>(i)] = i;
  if (size > universe) return true;
  for (;;) {
    if (!fn(subset)) return false;
    int i = size - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == universe - size + i) --i;
    if (i < 0) return true;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < size; ++j)
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

bool subdeterminant_check(const Matrix& m, int max_order, std::int64_t max_minors) {
  std::int64_t minors = 0;
  bool ok = true;
  for (int q = 1; q <= std::min({max_order, m.rows(), m.cols()}) && ok; ++q) {
    std::vector<int> rows(static_cast<std::size_t>(q)), cols(static_cast<std::size_t>(q));
    for_each_subset(m.rows(), q, rows, [&](std::vector<int>& rsel) {
      return for_each_subset(m.cols(), q, cols, [&](std::vector<int>& csel) {
        if (++minors > max_minors)
          throw BudgetError("subdeterminant budget of " + std::to_string(max_minors) +
                            " minors exceeded");
        Value det = det_laplace(m, rsel, csel);
        if (det < -1 || det > 1) {
          ok = false;
          return false;
        }
        return true;
      });
    });
  }
  return ok;
}

namespace {

bool point_feasible(const IPModel& model, const std::vector<Value>& z) {
  for (int r = 0; r < model.num_rows(); ++r) {
    Value acc = 0;
    for (int v = 0; v < model.num_vars(); ++v) acc += model.constraints.at(r, v) * z[static_cast<std::size_t>(v)];
    if (acc != model.rhs[static_cast<std::size_t>(r)]) return false;
  }
  return true;
}

}  // namespace

void enumerate_feasible(const IPModel& model, const IPSolveBudget& budget,
                        const std::function<void(const std::vector<Value>&)>& fn) {
  const int vars = model.num_vars();
  __int128 box = 1;
  for (int v = 0; v < vars; ++v) {
    if (model.lower[static_cast<std::size_t>(v)] > model.upper[static_cast<std::size_t>(v)]) return;
    box *= model.upper[static_cast<std::size_t>(v)] - model.lower[static_cast<std::size_t>(v)] + 1;
    if (box > budget.max_points)
      throw BudgetError("IP lattice box exceeds the enumeration budget of " +
                        std::to_string(budget.max_points) + " points");
  }
  std::vector<Value> z(model.lower);
  for (;;) {
    if (point_feasible(model, z)) fn(z);
    int v = vars - 1;
    while (v >= 0 && z[static_cast<std::size_t>(v)] == model.upper[static_cast<std::size_t>(v)]) {
      z[static_cast<std::size_t>(v)] = model.lower[static_cast<std::size_t>(v)];
      --v;
    }
    if (v < 0) break;
    ++z[static_cast<std::size_t>(v)];
  }
}

IPSolveResult solve_ip_exhaustive(const IPModel& model, const IPSolveBudget& budget) {
  IPSolveResult result;
  enumerate_feasible(model, budget, [&](const std::vector<Value>& z) {
    Value value = model.objective_value(z);
    if (result.status == SolveStatus::Infeasible || value < result.value) {
      result.status = SolveStatus::Optimal;
      result.value = value;
      result.point = z;
    }
  });
  return result;
}

Partition ip_point_to_partition(const IPModel& model, const std::vector<Value>& point) {
  if (static_cast<int>(point.size()) != model.num_vars())
    throw ValidationError("point size does not match the model");
  if (model.kind == IPModel::Kind::Vector) {
    std::vector<int> assignment(static_cast<std::size_t>(model.n), -1);
    for (int j = 0; j < static_cast<int>(model.n); ++j) {
      for (int k = 0; k < model.p; ++k) {
        if (point[static_cast<std::size_t>(model.x_index(k, j))] == 1) {
          if (assignment[static_cast<std::size_t>(j)] != -1)
            throw ValidationError("agent assigned to two parts in the IP point");
          assignment[static_cast<std::size_t>(j)] = k;
        }
      }
      if (assignment[static_cast<std::size_t>(j)] == -1)
        throw ValidationError("agent unassigned in the IP point");
    }
    return Partition::from_assignment(std::move(assignment));
  }
  Matrix counts(model.dim, model.p);
  for (int k = 0; k < model.p; ++k)
    for (int i = 0; i < model.dim; ++i)
      counts.at(i, k) = point[static_cast<std::size_t>(model.x_index(k, i))];
  return Partition::from_counts(std::move(counts));
}

std::vector<Value> partition_to_ip_point(const IPModel& model, const Partition& partition) {
  std::vector<Value> z(static_cast<std::size_t>(model.num_vars()), 0);
  if (model.kind == IPModel::Kind::Vector) {
    if (static_cast<Value>(partition.assignment.size()) != model.n)
      throw ValidationError("assignment length does not match the model");
    for (int j = 0; j < static_cast<int>(model.n); ++j)
      z[static_cast<std::size_t>(model.x_index(partition.assignment[static_cast<std::size_t>(j)], j))] = 1;
  } else {
    if (partition.counts.rows() != model.dim || partition.counts.cols() != model.p)
      throw ValidationError("count matrix does not match the model");
    for (int k = 0; k < model.p; ++k)
      for (int i = 0; i < model.dim; ++i)
        z[static_cast<std::size_t>(model.x_index(k, i))] = partition.counts.at(i, k);
  }
  // y variables follow from the coupling equations: move the x contribution
  // of row r onto the (unique) y variable with coefficient -1.
  for (int r = 0; r < model.num_rows(); ++r) {
    int y_var = -1;
    Value acc = 0;
    for (int v = 0; v < model.num_vars(); ++v) {
      Value c = model.constraints.at(r, v);
      if (c == 0) continue;
      if (c == -1 && model.var_names[static_cast<std::size_t>(v)][0] == 'y')
        y_var = v;
      else
        acc += c * z[static_cast<std::size_t>(v)];
    }
    if (y_var != -1) z[static_cast<std::size_t>(y_var)] = acc;
  }
  for (int v = 0; v < model.num_vars(); ++v)
    if (z[static_cast<std::size_t>(v)] < model.lower[static_cast<std::size_t>(v)] ||
        z[static_cast<std::size_t>(v)] > model.upper[static_cast<std::size_t>(v)])
      throw ValidationError("partition is not admissible for the model bounds (variable " +
                            model.var_names[static_cast<std::size_t>(v)] + ")");
  return z;
}

void print_model(const IPModel& model, std::ostream& os) {
  os << "# " << (model.kind == IPModel::Kind::Vector ? "vector" : "type") << " IP model: p="
     << model.p << " " << (model.kind == IPModel::Kind::Vector ? "d" : "t") << "=" << model.dim
     << " n=" << model.n << "\n";
  os << "min";
  bool first = true;
  for (int v = 0; v < model.num_vars(); ++v) {
    if (!model.objective_terms[static_cast<std::size_t>(v)]) continue;
    os << (first ? " " : " + ") << "f(" << model.var_names[static_cast<std::size_t>(v)] << ")";
    first = false;
  }
  if (first) os << " 0";
  os << "\n";
  for (int r = 0; r < model.num_rows(); ++r) {
    os << model.row_names[static_cast<std::size_t>(r)] << ":";
    for (int v = 0; v < model.num_vars(); ++v) {
      Value c = model.constraints.at(r, v);
      if (c == 0) continue;
      os << " " << (c > 0 ? "+" : "-") << (c > 0 ? c : -c) << " "
         << model.var_names[static_cast<std::size_t>(v)];
    }
    os << " = " << model.rhs[static_cast<std::size_t>(r)] << "\n";
  }
  for (int v = 0; v < model.num_vars(); ++v)
    os << model.lower[static_cast<std::size_t>(v)] << " <= " << model.var_names[static_cast<std::size_t>(v)]
       << " <= " << model.upper[static_cast<std::size_t>(v)] << "\n";
}

}  // namespace vpart
