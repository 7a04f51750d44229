#include "vpart/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace vpart {
namespace {

constexpr const char* kInstanceMagic = "vpart-instance";
constexpr const char* kSolutionMagic = "vpart-solution";
constexpr const char* kVersion = "v1";

// Whitespace tokenizer with '#' line comments and position tracking for
// error messages.
class Tokens {
 public:
  explicit Tokens(std::istream& in) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) {
        tokens_.push_back(std::move(tok));
        lines_.push_back(line_no);
      }
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }

  const std::string& peek() const {
    if (done()) throw ParseError("unexpected end of file");
    return tokens_[pos_];
  }

  std::string next() {
    if (done()) throw ParseError("unexpected end of file");
    return tokens_[pos_++];
  }

  void expect(const std::string& keyword) {
    std::string tok = next();
    if (tok != keyword) throw ParseError("expected '" + keyword + "' but found '" + tok + "'" + at());
  }

  Value integer() {
    std::string tok = next();
    try {
      std::size_t used = 0;
      Value v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError("expected an integer but found '" + tok + "'" + at());
    }
  }

  std::vector<Value> integers(std::size_t count) {
    std::vector<Value> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(integer());
    return out;
  }

  std::string at() const {
    if (pos_ == 0 || pos_ > lines_.size()) return "";
    return " (line " + std::to_string(lines_[pos_ - 1]) + ")";
  }

 private:
  std::vector<std::string> tokens_;
  std::vector<int> lines_;
  std::size_t pos_ = 0;
};

ShapeConstraint parse_shape(Tokens& t, int p) {
  t.expect("shape");
  std::string kind = t.next();
  if (kind == "free") return ShapeConstraint::free();
  if (kind == "interval") {
    t.expect("l");
    auto l = t.integers(static_cast<std::size_t>(p));
    t.expect("u");
    auto u = t.integers(static_cast<std::size_t>(p));
    return ShapeConstraint::interval(std::move(l), std::move(u));
  }
  if (kind == "single") {
    t.expect("sizes");
    return ShapeConstraint::single(t.integers(static_cast<std::size_t>(p)));
  }
  if (kind == "sets") {
    std::vector<std::vector<Value>> sets;
    for (int k = 0; k < p; ++k) {
      t.expect("set");
      Value count = t.integer();
      if (count < 0) throw ParseError("negative set size" + t.at());
      sets.push_back(t.integers(static_cast<std::size_t>(count)));
    }
    return ShapeConstraint::sets(std::move(sets));
  }
  throw ParseError("unknown shape kind '" + kind + "'" + t.at());
}

UnivariateTerm parse_term(Tokens& t) {
  std::string family = t.next();
  if (family == "quadratic") return QuadraticTerm{t.integer()};
  if (family == "scaled-quadratic") {
    Value scale = t.integer();
    Value center = t.integer();
    return ScaledQuadraticTerm{scale, center};
  }
  if (family == "linear") return LinearTerm{t.integer()};
  if (family == "abs") return AbsTerm{t.integer()};
  if (family == "table") {
    Value domain_min = t.integer();
    Value count = t.integer();
    if (count < 1) throw ParseError("table needs at least one value" + t.at());
    TableTerm table;
    table.domain_min = domain_min;
    table.values = t.integers(static_cast<std::size_t>(count));
    return table;
  }
  throw ParseError("unknown objective term family '" + family + "'" + t.at());
}

Objective parse_objective(Tokens& t, int p, int dim) {
  t.expect("objective");
  std::string kind = t.next();
  if (kind == "completely-separable") {
    std::vector<UnivariateTerm> terms;
    terms.reserve(static_cast<std::size_t>(p) * dim);
    for (int i = 0; i < p * dim; ++i) {
      t.expect("term");
      terms.push_back(parse_term(t));
    }
    return Objective::completely_separable(p, dim, std::move(terms));
  }
  if (kind == "general") {
    std::string builtin = t.next();
    if (builtin == "product-columns" || builtin == "max-column-l1") {
      std::vector<Value> weights;
      if (!t.done() && t.peek() == "weights") {
        t.expect("weights");
        weights = t.integers(static_cast<std::size_t>(dim));
      }
      if (builtin == "product-columns")
        return Objective::general(GeneralBuiltin{ProductColumnsObjective{std::move(weights)}});
      return Objective::general(GeneralBuiltin{MaxColumnL1Objective{std::move(weights)}});
    }
    if (builtin == "table") {
      Value count = t.integer();
      if (count < 1) throw ParseError("general table needs at least one entry" + t.at());
      MatrixTableObjective table;
      for (Value e = 0; e < count; ++e) {
        t.expect("entry");
        Matrix key(dim, p);
        for (int i = 0; i < dim; ++i)
          for (int k = 0; k < p; ++k) key.at(i, k) = t.integer();
        Value value = t.integer();
        table.entries.emplace_back(std::move(key), value);
      }
      return Objective::general(GeneralBuiltin{std::move(table)});
    }
    throw ParseError("unknown general objective '" + builtin + "'" + t.at());
  }
  throw ParseError("unknown objective kind '" + kind + "'" + t.at());
}

AnyInstance parse_instance_tokens(Tokens& t) {
  t.expect(kInstanceMagic);
  t.expect(kVersion);
  t.expect("kind");
  std::string kind = t.next();
  if (kind == "vector") {
    t.expect("n");
    Value n = t.integer();
    t.expect("d");
    Value d = t.integer();
    t.expect("p");
    Value p = t.integer();
    if (n < 0 || d < 1 || p < 1) throw ParseError("invalid dimensions" + t.at());
    Matrix attributes(static_cast<int>(d), static_cast<int>(n));
    t.expect("A");
    for (int i = 0; i < d; ++i) {
      t.expect("row");
      for (int j = 0; j < n; ++j) attributes.at(i, j) = t.integer();
    }
    ShapeConstraint shape = parse_shape(t, static_cast<int>(p));
    Objective objective = parse_objective(t, static_cast<int>(p), static_cast<int>(d));
    t.expect("end");
    if (!t.done()) throw ParseError("trailing content after 'end'" + t.at());
    return VectorInstance(std::move(attributes), static_cast<int>(p), std::move(shape),
                          std::move(objective));
  }
  if (kind == "type") {
    t.expect("t");
    Value types = t.integer();
    t.expect("p");
    Value p = t.integer();
    if (types < 1 || p < 1) throw ParseError("invalid dimensions" + t.at());
    t.expect("counts");
    std::vector<Value> counts = t.integers(static_cast<std::size_t>(types));
    ShapeConstraint shape = parse_shape(t, static_cast<int>(p));
    Objective objective = parse_objective(t, static_cast<int>(p), static_cast<int>(types));
    t.expect("end");
    if (!t.done()) throw ParseError("trailing content after 'end'" + t.at());
    return TypeInstance(std::move(counts), static_cast<int>(p), std::move(shape),
                        std::move(objective));
  }
  throw ParseError("unknown instance kind '" + kind + "'" + t.at());
}

void write_values(std::ostream& out, const std::vector<Value>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << values[i];
}

void write_shape(std::ostream& out, const ShapeConstraint& shape) {
  switch (shape.kind()) {
    case ShapeConstraint::Kind::Free:
      out << "shape free\n";
      break;
    case ShapeConstraint::Kind::Interval:
      out << "shape interval\nl ";
      write_values(out, shape.lower());
      out << "\nu ";
      write_values(out, shape.upper());
      out << "\n";
      break;
    case ShapeConstraint::Kind::Single:
      out << "shape single\nsizes ";
      write_values(out, shape.sizes());
      out << "\n";
      break;
    case ShapeConstraint::Kind::Sets:
      out << "shape sets\n";
      for (const auto& set : shape.set_lists()) {
        out << "set " << set.size();
        for (Value v : set) out << " " << v;
        out << "\n";
      }
      break;
  }
}

void write_term(std::ostream& out, const UnivariateTerm& term) {
  std::visit(
      [&out](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, QuadraticTerm>) {
          out << "quadratic " << t.center;
        } else if constexpr (std::is_same_v<T, ScaledQuadraticTerm>) {
          out << "scaled-quadratic " << t.scale << " " << t.center;
        } else if constexpr (std::is_same_v<T, LinearTerm>) {
          out << "linear " << t.slope;
        } else if constexpr (std::is_same_v<T, AbsTerm>) {
          out << "abs " << t.center;
        } else {
          out << "table " << t.domain_min << " " << t.values.size();
          for (Value v : t.values) out << " " << v;
        }
      },
      term);
}

void write_objective(std::ostream& out, const Objective& objective) {
  if (!objective.serializable())
    throw ValidationError("programmatic objectives cannot be serialized");
  if (objective.kind() == Objective::Kind::CompletelySeparable) {
    out << "objective completely-separable\n";
    for (const UnivariateTerm& term : objective.terms()) {
      out << "term ";
      write_term(out, term);
      out << "\n";
    }
    return;
  }
  const GeneralBuiltin& builtin = *objective.builtin();
  std::visit(
      [&out](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ProductColumnsObjective> ||
                      std::is_same_v<T, MaxColumnL1Objective>) {
          out << "objective general "
              << (std::is_same_v<T, ProductColumnsObjective> ? "product-columns" : "max-column-l1")
              << "\n";
          if (!b.weights.empty()) {
            out << "weights ";
            write_values(out, b.weights);
            out << "\n";
          }
        } else {
          out << "objective general table " << b.entries.size() << "\n";
          for (const auto& [key, value] : b.entries) {
            out << "entry";
            for (int i = 0; i < key.rows(); ++i)
              for (int k = 0; k < key.cols(); ++k) out << " " << key.at(i, k);
            out << " " << value << "\n";
          }
        }
      },
      builtin);
}

void write_matrix_rows(std::ostream& out, const Matrix& m) {
  for (int r = 0; r < m.rows(); ++r) {
    out << "row";
    for (int c = 0; c < m.cols(); ++c) out << " " << m.at(r, c);
    out << "\n";
  }
}

}  // namespace

AnyInstance parse_instance(std::istream& in) {
  Tokens t(in);
  return parse_instance_tokens(t);
}

AnyInstance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in);
}

AnyInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  return parse_instance(in);
}

void serialize_instance(const AnyInstance& inst, std::ostream& out,
                        const std::vector<std::string>& header_comments) {
  for (const std::string& comment : header_comments) out << "# " << comment << "\n";
  out << kInstanceMagic << " " << kVersion << "\n";
  if (const auto* v = std::get_if<VectorInstance>(&inst)) {
    out << "kind vector\n";
    out << "n " << v->n() << "\n";
    out << "d " << v->d() << "\n";
    out << "p " << v->p() << "\n";
    out << "A\n";
    write_matrix_rows(out, v->attributes());
    write_shape(out, v->shape());
    write_objective(out, v->objective());
  } else {
    const auto& t = std::get<TypeInstance>(inst);
    out << "kind type\n";
    out << "t " << t.t() << "\n";
    out << "p " << t.p() << "\n";
    out << "counts ";
    write_values(out, t.counts());
    out << "\n";
    write_shape(out, t.shape());
    write_objective(out, t.objective());
  }
  out << "end\n";
}

std::string instance_to_text(const AnyInstance& inst,
                             const std::vector<std::string>& header_comments) {
  std::ostringstream out;
  serialize_instance(inst, out, header_comments);
  return out.str();
}

void save_instance(const AnyInstance& inst, const std::string& path,
                   const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write instance file '" + path + "'");
  serialize_instance(inst, out, header_comments);
}

SolutionFile SolutionFile::from_result(const std::string& solver, const SolveResult& result) {
  SolutionFile sol;
  sol.solver = solver;
  sol.stats = result.stats;
  if (result.optimal()) {
    sol.status = "optimal";
    sol.value = result.sol().value;
    sol.assignment = result.sol().partition.assignment;
    sol.counts = result.sol().partition.counts;
    sol.sums = result.sol().sums;
  } else {
    sol.status = "infeasible";
  }
  return sol;
}

void serialize_solution(const SolutionFile& sol, std::ostream& out) {
  out << kSolutionMagic << " " << kVersion << "\n";
  out << "solver " << sol.solver << "\n";
  out << "status " << sol.status << "\n";
  if (sol.status == "error") {
    out << "message " << sol.message << "\n";
  } else if (sol.status == "optimal") {
    out << "value " << sol.value << "\n";
    if (!sol.assignment.empty() || sol.counts.empty()) {
      out << "assignment";
      for (int k : sol.assignment) out << " " << k + 1;
      out << "\n";
    }
    if (!sol.counts.empty()) {
      out << "counts " << sol.counts.rows() << " " << sol.counts.cols() << "\n";
      write_matrix_rows(out, sol.counts);
    }
    if (!sol.sums.empty() && sol.sums != sol.counts) {
      out << "sums " << sol.sums.rows() << " " << sol.sums.cols() << "\n";
      write_matrix_rows(out, sol.sums);
    }
  }
  out << "states " << sol.stats.states << "\n";
  out << "arcs " << sol.stats.arcs << "\n";
  out << "wall-ms " << sol.wall_ms << "\n";
  out << "end\n";
}

std::string solution_to_text(const SolutionFile& sol) {
  std::ostringstream out;
  serialize_solution(sol, out);
  return out.str();
}

SolutionFile parse_solution(std::istream& in) {
  Tokens t(in);
  t.expect(kSolutionMagic);
  t.expect(kVersion);
  SolutionFile sol;
  t.expect("solver");
  sol.solver = t.next();
  t.expect("status");
  sol.status = t.next();
  if (sol.status != "optimal" && sol.status != "infeasible" && sol.status != "error")
    throw ParseError("unknown status '" + sol.status + "'" + t.at());
  if (sol.status == "error") {
    t.expect("message");
    while (!t.done() && t.peek() != "states") {
      if (!sol.message.empty()) sol.message += " ";
      sol.message += t.next();
    }
  } else if (sol.status == "optimal") {
    t.expect("value");
    sol.value = t.integer();
    if (t.peek() == "assignment") {
      t.next();
      while (!t.done() && t.peek() != "counts" && t.peek() != "sums" && t.peek() != "states") {
        Value k = t.integer();
        if (k < 1) throw ParseError("assignment entries are 1-based parts" + t.at());
        sol.assignment.push_back(static_cast<int>(k - 1));
      }
    }
    for (Matrix* m : {&sol.counts, &sol.sums}) {
      const char* keyword = m == &sol.counts ? "counts" : "sums";
      if (!t.done() && t.peek() == keyword) {
        t.next();
        Value rows = t.integer();
        Value cols = t.integer();
        if (rows < 0 || cols < 0) throw ParseError("bad matrix dimensions" + t.at());
        *m = Matrix(static_cast<int>(rows), static_cast<int>(cols));
        for (int r = 0; r < rows; ++r) {
          t.expect("row");
          for (int c = 0; c < cols; ++c) m->at(r, c) = t.integer();
        }
      }
    }
    if (sol.sums.empty() && !sol.counts.empty()) sol.sums = sol.counts;
  }
  t.expect("states");
  sol.stats.states = t.integer();
  t.expect("arcs");
  sol.stats.arcs = t.integer();
  t.expect("wall-ms");
  sol.wall_ms = t.integer();
  t.expect("end");
  if (!t.done()) throw ParseError("trailing content after 'end'" + t.at());
  return sol;
}

SolutionFile parse_solution_text(const std::string& text) {
  std::istringstream in(text);
  return parse_solution(in);
}

}  // namespace vpart
