// Command-line driver: solve, gen, verify and bench subcommands over the
// instance file format. Exit codes for solve: 0 optimal, 2 infeasible,
// 1 error; all other subcommands use 0/1.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "vpart/dispatch.hpp"
#include "vpart/flow_solver.hpp"
#include "vpart/hardness.hpp"
#include "vpart/instance_io.hpp"
#include "vpart/ip_model.hpp"
#include "vpart/random_gen.hpp"

namespace {

using namespace vpart;

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               start)
      .count();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  std::string instance_path;
  std::string solver = "auto";
  std::string out;
  std::int64_t budget_states = DpGeneralBudget{}.max_state_entries;
  std::int64_t budget_edges = DpSeparableBudget{}.max_edges;
  std::int64_t budget_assignments = EnumerationBudget{}.max_assignments;
  bool zero_time = false;
};

int cmd_solve(const SolveOptions& opt) {
  SolveBudgets budgets;
  budgets.dp_general.max_state_entries = opt.budget_states;
  budgets.dp_separable.max_edges = opt.budget_edges;
  budgets.brute.max_assignments = opt.budget_assignments;

  SolverChoice requested = parse_solver_name(opt.solver);
  AnyInstance inst = load_instance(opt.instance_path);
  SolverChoice effective =
      requested == SolverChoice::Auto ? pick_auto(inst, budgets) : requested;

  auto start = std::chrono::steady_clock::now();
  SolutionFile sol;
  int exit_code = 0;
  try {
    SolveResult result = run_solver(inst, effective, budgets);
    sol = SolutionFile::from_result(solver_name(effective), result);
    exit_code = result.optimal() ? 0 : 2;
  } catch (const std::exception& e) {
    sol.solver = solver_name(effective);
    sol.status = "error";
    sol.message = e.what();
    exit_code = 1;
  }
  sol.wall_ms = opt.zero_time ? 0 : elapsed_ms(start);
  if (!sol.counts.empty()) sol.assignment.clear();  // counts are canonical for type solutions
  write_text(opt.out, solution_to_text(sol));
  if (sol.status == "error") std::cerr << "error: " << sol.message << "\n";
  return exit_code;
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  std::string construction;
  std::string out;
  int n = 4;
  std::vector<Value> weights;
  RandomSpec random;
  std::string kind = "vector";
};

AnyInstance generate(const GenOptions& opt, std::vector<std::string>& comments) {
  comments.push_back("construction " + opt.construction);
  if (opt.construction == "unit-vector") {
    comments.push_back("n " + std::to_string(opt.n));
    return *gen_unit_vector_instance(opt.n).vector_instance;
  }
  if (opt.construction == "permutation") {
    comments.push_back("n " + std::to_string(opt.n));
    return *gen_permutation_instance(opt.n).vector_instance;
  }
  if (opt.construction == "subset-sum") {
    HardnessInstance h = gen_partition_hardness(opt.weights);
    std::string w = "weights";
    for (Value v : opt.weights) w += " " + std::to_string(v);
    comments.push_back(w);
    comments.push_back(std::string("equal-sum-partition ") +
                       (*h.equal_sum_partition ? "true" : "false"));
    return *h.vector_instance;
  }
  if (opt.construction == "random") {
    RandomSpec spec = opt.random;
    spec.n = opt.n;
    comments.push_back("seed " + std::to_string(spec.seed));
    comments.push_back("shape " + spec.shape + ", objective " + spec.objective);
    if (opt.kind == "vector") return random_vector_instance(spec);
    if (opt.kind == "type") return random_type_instance(spec);
    throw ValidationError("unknown instance kind '" + opt.kind + "'");
  }
  throw ValidationError("unknown construction '" + opt.construction + "'");
}

int cmd_gen(const GenOptions& opt) {
  std::vector<std::string> comments;
  AnyInstance inst = generate(opt, comments);
  std::ostringstream out;
  serialize_instance(inst, out, comments);
  write_text(opt.out, out.str());
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string instance_path;
  int subdet = 0;
  bool dump_model = false;
};

// The certificates concern the constraint matrix only, so a non-separable
// objective is swapped for a zero grid before building.
VectorInstance with_zero_objective_if_needed(const VectorInstance& inst, bool& replaced) {
  if (inst.objective().kind() == Objective::Kind::CompletelySeparable) {
    replaced = false;
    return inst;
  }
  replaced = true;
  std::vector<UnivariateTerm> zeros(static_cast<std::size_t>(inst.p()) * inst.d(), LinearTerm{0});
  return VectorInstance(inst.attributes(), inst.p(), inst.shape(),
                        Objective::completely_separable(inst.p(), inst.d(), std::move(zeros)));
}

TypeInstance with_zero_objective_if_needed(const TypeInstance& inst, bool& replaced) {
  if (inst.objective().kind() == Objective::Kind::CompletelySeparable) {
    replaced = false;
    return inst;
  }
  replaced = true;
  std::vector<UnivariateTerm> zeros(static_cast<std::size_t>(inst.p()) * inst.t(), LinearTerm{0});
  return TypeInstance(inst.counts(), inst.p(), inst.shape(),
                      Objective::completely_separable(inst.p(), inst.t(), std::move(zeros)));
}

int cmd_verify(const VerifyOptions& opt) {
  AnyInstance any = load_instance(opt.instance_path);
  bool ok = true;
  bool replaced = false;

  if (const auto* v = std::get_if<VectorInstance>(&any)) {
    VectorInstance inst = with_zero_objective_if_needed(*v, replaced);
    IPModel model = build_vector_ip(inst);
    if (replaced) std::cout << "objective not completely separable; certified with zero terms\n";
    std::cout << "model vector rows " << model.num_rows() << " vars " << model.num_vars() << "\n";
    RootedTreeCertificate tree = tree_depth_certificate(model);
    int expected = (inst.d() + 1) * inst.p() + 1;
    bool valid = verify_valid_tree(constraint_graph(transpose(model.constraints)), tree);
    std::cout << "tree-height " << tree.height() << " (bound " << expected << ")\n";
    std::cout << "tree-valid " << (valid ? "true" : "false") << "\n";
    ok = ok && valid && (inst.n() == 0 || tree.height() == expected);
    if (opt.subdet > 0) {
      bool sub = subdeterminant_check(model.constraints, opt.subdet);
      std::cout << "subdet " << opt.subdet << " " << (sub ? "ok" : "violated") << "\n";
      // B is generally not TU; the spot check only reports, the certificate
      // for the vector model is the tree
    }
    if (opt.dump_model) print_model(model, std::cout);
  } else {
    TypeInstance inst = with_zero_objective_if_needed(std::get<TypeInstance>(any), replaced);
    IPModel model = build_type_ip(inst);
    if (replaced) std::cout << "objective not completely separable; certified with zero terms\n";
    std::cout << "model type rows " << model.num_rows() << " vars " << model.num_vars() << "\n";
    auto cert = verify_tu_condition(model.constraints);
    std::cout << "tu-certificate " << (cert ? "found" : "not-applicable") << "\n";
    if (cert) {
      std::cout << "tu-rows";
      for (std::uint8_t c : cert->row_color) std::cout << " " << static_cast<int>(c);
      std::cout << "\n";
    }
    ok = ok && cert.has_value();
    if (opt.subdet > 0) {
      bool sub = subdeterminant_check(model.constraints, opt.subdet);
      std::cout << "subdet " << opt.subdet << " " << (sub ? "ok" : "violated") << "\n";
      ok = ok && sub;
    }
    if (opt.dump_model) print_model(model, std::cout);
  }
  std::cout << (ok ? "certificates ok" : "certificates FAILED") << "\n";
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::string construction = "random";
  std::string kind = "vector";
  std::vector<int> grid_n;
  int d = 2, t = 2, p = 2;
  Value a = 2;
  std::string shape = "free";
  std::string objective = "quadratic";
  std::vector<std::string> solvers;
  int reps = 1;
  std::uint64_t seed = 1;
  std::string out;
  int jobs = 1;
  bool zero_time = false;
  std::int64_t budget_assignments = EnumerationBudget{}.max_assignments;
};

AnyInstance bench_instance(const BenchOptions& opt, int n, std::uint64_t seed) {
  if (opt.construction == "random") {
    RandomSpec spec;
    spec.seed = seed;
    spec.n = n;
    spec.d = opt.d;
    spec.t = opt.t;
    spec.p = opt.p;
    spec.a = opt.a;
    spec.shape = opt.shape;
    spec.objective = opt.objective;
    if (opt.kind == "type") return random_type_instance(spec);
    return random_vector_instance(spec);
  }
  if (opt.construction == "permutation") return *gen_permutation_instance(n).vector_instance;
  if (opt.construction == "unit-vector") return *gen_unit_vector_instance(n).vector_instance;
  if (opt.construction == "subset-sum") {
    SplitMix64 rng(seed);
    std::vector<Value> weights;
    for (int j = 0; j < n; ++j) weights.push_back(rng.uniform(1, 2 * n));
    return *gen_partition_hardness(weights).vector_instance;
  }
  throw ValidationError("unknown construction '" + opt.construction + "'");
}

struct BenchRow {
  std::int64_t order;  // cell-major, then solver
  std::string csv;
  std::string status;
  Value value;
};

std::vector<BenchRow> bench_cells(const BenchOptions& opt, const std::vector<int>& cells) {
  SolveBudgets budgets;
  budgets.brute.max_assignments = opt.budget_assignments;
  std::vector<BenchRow> rows;
  for (int cell : cells) {
    const int n_idx = cell / opt.reps;
    const int rep = cell % opt.reps;
    const int n = opt.grid_n[static_cast<std::size_t>(n_idx)];
    const std::uint64_t seed = opt.seed + 1000003ULL * static_cast<std::uint64_t>(cell);
    AnyInstance inst = bench_instance(opt, n, seed);
    for (std::size_t s = 0; s < opt.solvers.size(); ++s) {
      SolverChoice choice = parse_solver_name(opt.solvers[s]);
      auto start = std::chrono::steady_clock::now();
      SolveResult result = run_solver(inst, choice, budgets);
      std::int64_t ms = opt.zero_time ? 0 : elapsed_ms(start);
      BenchRow row;
      row.order = static_cast<std::int64_t>(cell) * 1000 + static_cast<std::int64_t>(s);
      row.status = result.optimal() ? "optimal" : "infeasible";
      row.value = result.optimal() ? result.sol().value : 0;
      std::ostringstream line;
      line << opt.construction << "," << opt.kind << "," << n << "," << opt.d << "," << opt.t
           << "," << opt.p << "," << opt.a << "," << opt.shape << "," << opt.objective << ","
           << seed << "," << rep << "," << opt.solvers[s] << "," << row.status << "," << row.value
           << "," << ms << "," << result.stats.states << "," << result.stats.arcs;
      row.csv = line.str();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

int cmd_bench(const BenchOptions& opt) {
  if (opt.solvers.empty()) throw ValidationError("bench needs at least one solver");
  if (opt.grid_n.empty()) throw ValidationError("bench needs a grid of n values");
  if (opt.reps < 1) throw ValidationError("reps must be positive");

  const int total_cells = static_cast<int>(opt.grid_n.size()) * opt.reps;
  std::vector<BenchRow> rows;

  if (opt.jobs <= 1 || total_cells == 1) {
    std::vector<int> cells(static_cast<std::size_t>(total_cells));
    for (int c = 0; c < total_cells; ++c) cells[static_cast<std::size_t>(c)] = c;
    rows = bench_cells(opt, cells);
  } else {
    // Worker processes over disjoint cell sets; each ships its rows back
    // through a pipe as "order|status|value|csv" lines.
    const int jobs = std::min(opt.jobs, total_cells);
    std::vector<int> fds;
    std::vector<pid_t> pids;
    for (int w = 0; w < jobs; ++w) {
      int pipe_fd[2];
      if (pipe(pipe_fd) != 0) throw std::runtime_error("pipe failed");
      pid_t pid = fork();
      if (pid < 0) throw std::runtime_error("fork failed");
      if (pid == 0) {
        close(pipe_fd[0]);
        std::vector<int> cells;
        for (int c = w; c < total_cells; c += jobs) cells.push_back(c);
        std::string payload;
        int code = 0;
        try {
          for (const BenchRow& row : bench_cells(opt, cells))
            payload += std::to_string(row.order) + "|" + row.status + "|" +
                       std::to_string(row.value) + "|" + row.csv + "\n";
        } catch (const std::exception& e) {
          payload = std::string("!") + e.what() + "\n";
          code = 1;
        }
        std::size_t off = 0;
        while (off < payload.size()) {
          ssize_t wrote = write(pipe_fd[1], payload.data() + off, payload.size() - off);
          if (wrote <= 0) break;
          off += static_cast<std::size_t>(wrote);
        }
        close(pipe_fd[1]);
        _exit(code);
      }
      close(pipe_fd[1]);
      fds.push_back(pipe_fd[0]);
      pids.push_back(pid);
    }
    bool failed = false;
    for (int w = 0; w < jobs; ++w) {
      std::string payload;
      char buf[4096];
      ssize_t got;
      while ((got = read(fds[static_cast<std::size_t>(w)], buf, sizeof buf)) > 0)
        payload.append(buf, static_cast<std::size_t>(got));
      close(fds[static_cast<std::size_t>(w)]);
      int status = 0;
      waitpid(pids[static_cast<std::size_t>(w)], &status, 0);
      if (status != 0) failed = true;
      std::istringstream lines(payload);
      std::string line;
      while (std::getline(lines, line)) {
        if (line.empty()) continue;
        if (line[0] == '!') {
          std::cerr << "worker error: " << line.substr(1) << "\n";
          failed = true;
          continue;
        }
        BenchRow row;
        std::size_t p1 = line.find('|');
        std::size_t p2 = line.find('|', p1 + 1);
        std::size_t p3 = line.find('|', p2 + 1);
        row.order = std::stoll(line.substr(0, p1));
        row.status = line.substr(p1 + 1, p2 - p1 - 1);
        row.value = std::stoll(line.substr(p2 + 1, p3 - p2 - 1));
        row.csv = line.substr(p3 + 1);
        rows.push_back(std::move(row));
      }
    }
    if (failed) return 1;
  }

  std::sort(rows.begin(), rows.end(),
            [](const BenchRow& a, const BenchRow& b) { return a.order < b.order; });

  // All solvers must agree per cell; a disagreement is a correctness bug.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::size_t cell = static_cast<std::size_t>(rows[i].order / 1000);
    std::size_t base = i - static_cast<std::size_t>(rows[i].order % 1000);
    if (rows[i].status != rows[base].status ||
        (rows[i].status == "optimal" && rows[i].value != rows[base].value)) {
      std::cerr << "solver disagreement in cell " << cell << ": " << rows[base].csv << " vs "
                << rows[i].csv << "\n";
      return 1;
    }
  }

  std::ostringstream out;
  out << "construction,kind,n,d,t,p,a,shape,objective,seed,rep,solver,status,value,wall_ms,states,"
         "arcs\n";
  for (const BenchRow& row : rows) out << row.csv << "\n";
  write_text(opt.out, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solvers for vector and type partition problems"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("instance", solve_opt.instance_path, "instance file")->required();
  solve->add_option("--solver", solve_opt.solver,
                    "auto | dp-general | dp-separable | flow | brute");
  solve->add_option("--out", solve_opt.out, "solution file (default stdout)");
  solve->add_option("--budget-states", solve_opt.budget_states, "dp-general state entry cap");
  solve->add_option("--budget-edges", solve_opt.budget_edges, "dp-separable edge cap");
  solve->add_option("--budget-assignments", solve_opt.budget_assignments,
                    "brute-force assignment cap");
  solve->add_flag("--zero-time", solve_opt.zero_time, "report wall-ms 0 for reproducible output");

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("construction", gen_opt.construction,
                  "unit-vector | permutation | subset-sum | random")
      ->required();
  gen->add_option("--n", gen_opt.n, "size parameter");
  gen->add_option("--weights", gen_opt.weights, "subset-sum weights")->delimiter(',');
  gen->add_option("--seed", gen_opt.random.seed, "random seed");
  gen->add_option("--kind", gen_opt.kind, "random: vector | type");
  gen->add_option("--d", gen_opt.random.d, "random: attribute dimension");
  gen->add_option("--t", gen_opt.random.t, "random: type count");
  gen->add_option("--p", gen_opt.random.p, "part count");
  gen->add_option("--a", gen_opt.random.a, "random: attribute magnitude");
  gen->add_option("--shape", gen_opt.random.shape, "free | interval | single | sets");
  gen->add_option("--objective", gen_opt.random.objective,
                  "quadratic | scaled-quadratic | linear | abs | table | convex-table | mixed | "
                  "product-columns | max-column-l1");
  gen->add_option("--out", gen_opt.out, "output file (default stdout)");

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand("verify", "build the IP models and check certificates");
  verify->add_option("instance", verify_opt.instance_path, "instance file")->required();
  verify->add_option("--subdet", verify_opt.subdet, "exhaustive minor check up to this order");
  verify->add_flag("--dump-model", verify_opt.dump_model, "print the equation listing");

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "run a solver grid and write CSV");
  bench->add_option("--construction", bench_opt.construction,
                    "random | permutation | unit-vector | subset-sum");
  bench->add_option("--kind", bench_opt.kind, "random: vector | type");
  bench->add_option("--grid-n", bench_opt.grid_n, "n values")->delimiter(',')->required();
  bench->add_option("--d", bench_opt.d, "attribute dimension");
  bench->add_option("--t", bench_opt.t, "type count");
  bench->add_option("--p", bench_opt.p, "part count");
  bench->add_option("--a", bench_opt.a, "attribute magnitude");
  bench->add_option("--shape", bench_opt.shape, "shape kind");
  bench->add_option("--objective", bench_opt.objective, "objective family");
  bench->add_option("--solvers", bench_opt.solvers, "solver list")->delimiter(',')->required();
  bench->add_option("--reps", bench_opt.reps, "repetitions per grid point");
  bench->add_option("--seed", bench_opt.seed, "base seed");
  bench->add_option("--jobs", bench_opt.jobs, "parallel worker processes");
  bench->add_option("--out", bench_opt.out, "CSV path (default stdout)");
  bench->add_option("--budget-assignments", bench_opt.budget_assignments,
                    "brute-force assignment cap");
  bench->add_flag("--zero-time", bench_opt.zero_time, "report wall_ms 0 for reproducible output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // exit-code contract: 0 ok (covers --help), 1 any error
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*solve) return cmd_solve(solve_opt);
    if (*gen) return cmd_gen(gen_opt);
    if (*verify) return cmd_verify(verify_opt);
    if (*bench) return cmd_bench(bench_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
