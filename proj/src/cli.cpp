#include "collatz/cli.hpp"

#include "collatz/core.hpp"
#include "collatz/graph.hpp"
#include "collatz/io.hpp"
#include "collatz/matrix.hpp"
#include "collatz/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

namespace collatz::cli {

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

unsigned long matrix_dim_cap() {
  const char* env = std::getenv("COLLATZ_MATRIX_DIM_CAP");
  if (env == nullptr || *env == '\0') {
    return kDefaultMatrixDimCap;
  }
  try {
    std::size_t used = 0;
    const unsigned long cap = std::stoul(env, &used);
    if (used != std::string(env).size() || cap == 0) {
      throw std::invalid_argument(env);
    }
    return cap;
  } catch (const std::exception&) {
    throw UsageError(std::string("COLLATZ_MATRIX_DIM_CAP is not a positive integer: ") + env);
  }
}

void require_matrix_dim(Nat dim) {
  const unsigned long cap = matrix_dim_cap();
  if (dim > cap) {
    throw UsageError("matrix dimension " + std::to_string(dim) + " exceeds the matrix-engine cap " +
                     std::to_string(cap) + " (set COLLATZ_MATRIX_DIM_CAP to raise it)");
  }
}

/// Routes output to --out when given, else to the provided stream.
int emit(const std::string& out_path, std::ostream& out, const std::function<int(std::ostream&)>& body) {
  if (out_path.empty()) {
    return body(out);
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw UsageError("cannot open output file " + out_path);
  }
  const int code = body(file);
  if (!file.flush()) {
    throw UsageError("failed writing " + out_path);
  }
  return code;
}

struct Options {
  Nat n = 0;
  std::string which = "A";
  std::string format = "mm";
  std::uint64_t p_max = 0;
  std::string method = "both";
  Nat n_min = 3;
  Nat n_max = 0;
  Nat step = 1;
  std::uint64_t cap = 10000;
  std::uint64_t p = 1;
  Nat from = 1;
  Nat to = 1;
  unsigned threads = 1;
  std::string out_path;
};

int cmd_build(const Options& o, std::ostream& out) {
  const bool is_a = o.which == "A";
  if (is_a ? o.n < 1 : o.n < 3) {
    throw UsageError(is_a ? "build: --n must be >= 1" : "build: --n must be >= 3 for C");
  }
  if (o.format == "dot") {
    const auto g = build_digraph(o.n, is_a ? GraphVariant::Full : GraphVariant::CSub);
    return emit(o.out_path, out, [&](std::ostream& s) {
      write_dot(s, g);
      return kSuccess;
    });
  }
  require_matrix_dim(is_a ? o.n : o.n - 2);
  const SparseBinaryMatrix m = is_a ? build_A(o.n) : build_C(o.n);
  return emit(o.out_path, out, [&](std::ostream& s) {
    if (o.format == "mm") {
      write_matrix_market(s, m);
    } else {
      write_dense(s, m);
    }
    return kSuccess;
  });
}

int cmd_trace(const Options& o, std::ostream& out) {
  if (o.n < 2 || o.p_max < 1) {
    throw UsageError("trace: need --n >= 2 and --pmax >= 1");
  }
  require_matrix_dim(o.n);
  const TraceTable table = trace_table(o.n, o.p_max);
  return emit(o.out_path, out, [&](std::ostream& s) {
    write_trace_table(s, table);
    return table.all_pass() ? kSuccess : kVerificationFailed;
  });
}

int cmd_nilpotency(const Options& o, std::ostream& out) {
  if (o.n < 3) {
    throw UsageError("nilpotency: --n must be >= 3");
  }
  const bool use_graph = o.method != "matrix";
  const bool use_matrix = o.method != "graph";
  if (use_matrix) {
    require_matrix_dim(o.n - 2);
  }
  std::optional<std::uint64_t> graph_index;
  std::optional<std::uint64_t> matrix_index;
  int code = kSuccess;
  std::ostringstream text;
  text << "n " << o.n << '\n';
  if (use_graph) {
    const auto g = build_digraph(o.n, GraphVariant::CSub);
    if (auto cycle = detect_cycle(g)) {
      text << "graph: cycle length " << cycle->length() << ':';
      for (Nat v : cycle->vertices) {
        text << ' ' << v;
      }
      text << '\n';
      code = kVerificationFailed;
    } else {
      const auto cert = topological_certificate(g);
      graph_index = cert.index;
      text << "graph: acyclic, longest path " << cert.longest_path_len << ", index " << cert.index
           << '\n';
    }
  }
  if (use_matrix) {
    const auto c = build_C(o.n);
    matrix_index = nilpotency_index_matrix(c);
    if (matrix_index) {
      text << "matrix: nilpotent, index " << *matrix_index << '\n';
    } else {
      text << "matrix: not nilpotent\n";
      code = kVerificationFailed;
    }
    if (auto violation = trace_nilpotency_check(c)) {
      text << "matrix: trace(C^" << violation->p << ") = " << violation->trace_value << '\n';
      code = kVerificationFailed;
    } else {
      text << "matrix: trace(C^p) = 0 for p = 1.." << (o.n - 2) << '\n';
    }
  }
  if (use_graph && use_matrix) {
    const bool agree = graph_index == matrix_index;
    text << "engines agree: " << (agree ? "yes" : "no") << '\n';
    if (!agree) {
      code = kVerificationFailed;
    }
  }
  return emit(o.out_path, out, [&](std::ostream& s) {
    s << text.str();
    return code;
  });
}

int cmd_index_table(const Options& o, std::ostream& out) {
  if (o.n_min < 3 || o.n_min > o.n_max || o.step < 1) {
    throw UsageError("index-table: need 3 <= --n-min <= --n-max and --step >= 1");
  }
  const auto rows = index_table(o.n_min, o.n_max, o.step);
  return emit(o.out_path, out, [&](std::ostream& s) {
    write_index_table(s, rows);
    return kSuccess;
  });
}

int cmd_verify_range(const Options& o, std::ostream& out) {
  if (o.n_max < 3) {
    throw UsageError("verify-range: --n-max must be >= 3");
  }
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.subject = "verify_range";
  report.params = {{"n_max", o.n_max}, {"threads", o.threads}};
  try {
    const RangeReport r = verify_range(o.n_max, o.threads);
    report.result = {{"acyclic", r.acyclic},
                     {"max_depth", r.max_depth},
                     {"deepest_vertex", r.deepest_vertex},
                     {"index", r.index()}};
  } catch (const CycleExists& e) {
    report.pass = false;
    report.counterexample = {{"n_max", o.n_max},
                             {"cycle", {{"length", e.witness().length()},
                                        {"vertices", e.witness().vertices}}}};
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return emit(o.out_path, out, [&](std::ostream& s) {
    s << report.to_json().dump(2) << '\n';
    return report.pass ? kSuccess : kVerificationFailed;
  });
}

int cmd_trajectory(const Options& o, std::ostream& out) {
  if (o.n < 1 || o.cap < 1) {
    throw UsageError("trajectory: need --n >= 1 and --cap >= 1");
  }
  TrajectoryRecord record;
  try {
    record = classify_trajectory(o.n, o.cap);
  } catch (const OverflowError& e) {
    throw UsageError(std::string("trajectory: ") + e.what());
  }
  // A cycle that avoids 1 would be a nontrivial cycle.
  int code = kSuccess;
  if (const auto* cyc = std::get_if<CycleDetected>(&record.classification)) {
    bool touches_one = false;
    for (auto k = cyc->entry_offset; k < cyc->entry_offset + cyc->period; ++k) {
      touches_one = touches_one || record.steps[k] == 1;
    }
    code = touches_one ? kSuccess : kVerificationFailed;
  }
  return emit(o.out_path, out, [&](std::ostream& s) {
    s << "start " << record.start << '\n' << "steps";
    for (Nat v : record.steps) {
      s << ' ' << v;
    }
    s << '\n' << to_string(record.classification) << '\n';
    return code;
  });
}

int cmd_walks(const Options& o, std::ostream& out) {
  if (o.n < 1 || o.from < 1 || o.from > o.n || o.to < 1 || o.to > o.n) {
    throw UsageError("walks: --from and --to must lie in 1..n");
  }
  const auto oracle = walk_count_oracle(o.n, o.p, o.from, o.to);
  std::optional<Entry> from_matrix;
  if (o.n <= matrix_dim_cap()) {
    from_matrix = mat_power(build_A(o.n), o.p).at(o.from, o.to);
  }
  return emit(o.out_path, out, [&](std::ostream& s) {
    s << "walks of length " << o.p << " from " << o.from << " to " << o.to << " in Gamma_" << o.n
      << '\n';
    s << "chain: " << oracle << '\n';
    if (from_matrix) {
      s << "matrix: " << *from_matrix << '\n';
    } else {
      s << "matrix: skipped (dimension above cap)\n";
    }
    return (!from_matrix || *from_matrix == oracle) ? kSuccess : kVerificationFailed;
  });
}

int cmd_self_test(const Options& o, std::ostream& out) {
  std::vector<VerificationReport> reports;
  reports.push_back(check_alves_condition({2, 50}, 40));
  reports.push_back(check_block_trace_identity({3, 50}, 30));
  reports.push_back(check_block_power_formula({3, 20}, 6));
  reports.push_back(cross_check_nilpotency({3, 200}).report);

  auto since = [](std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  auto t0 = std::chrono::steady_clock::now();
  VerificationReport detector;
  detector.subject = "positive_trace_detector";
  detector.params = {{"n", 200}, {"p_max", 100}};
  if (auto hit = positive_trace_detector(Nat{200}, 100)) {
    detector.pass = false;
    detector.counterexample = {{"m", hit->m}, {"p", hit->p}, {"trace", hit->trace_value}};
  }
  detector.elapsed_ms = since(t0);
  reports.push_back(detector);

  t0 = std::chrono::steady_clock::now();
  VerificationReport mutants;
  mutants.subject = "mutation_sensitivity";
  mutants.params = {{"n_max", 50}, {"count", 20}};
  for (const Mutant& m : generate_cycle_mutants(50, 20, 1)) {
    const CollatzDigraph g = m.graph();
    const auto row = compare_engines(g);
    const auto hit = positive_trace_detector(g, m.n);
    const bool flagged = row.cycle && row.cycle->length() == m.cycle_length && !row.matrix_index &&
                         row.trace_violation && hit && hit->p == m.cycle_length;
    if (!flagged) {
      mutants.pass = false;
      mutants.counterexample = {{"n", m.n}, {"from", m.from}, {"to", m.to}};
      break;
    }
  }
  mutants.elapsed_ms = since(t0);
  reports.push_back(mutants);

  return emit(o.out_path, out, [&](std::ostream& s) {
    bool all = true;
    for (const auto& r : reports) {
      s << r.to_json().dump() << '\n';
      all = all && r.pass;
    }
    return all ? kSuccess : kVerificationFailed;
  });
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated Collatz adjacency matrices: traces, nilpotency and certificates",
               "collatz-matrix"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "Emit A_n or C_n");
  build->add_option("--n", o.n, "Truncation size")->required();
  build->add_option("--which", o.which, "A or C")->check(CLI::IsMember({"A", "C"}));
  build->add_option("--format", o.format, "mm (Matrix Market), dot or dense")
      ->check(CLI::IsMember({"mm", "dot", "dense"}));
  build->add_option("--out", o.out_path, "Output file");

  auto* trace_cmd = app.add_subcommand("trace", "Table of trace(A_n^p) against the 2/0 pattern");
  trace_cmd->add_option("--n", o.n)->required();
  trace_cmd->add_option("--pmax", o.p_max)->required();
  trace_cmd->add_option("--out", o.out_path);

  auto* nil = app.add_subcommand("nilpotency", "Nilpotency index of C_n");
  nil->add_option("--n", o.n)->required();
  nil->add_option("--method", o.method)->check(CLI::IsMember({"graph", "matrix", "both"}));
  nil->add_option("--out", o.out_path);

  auto* table = app.add_subcommand("index-table", "CSV of index(C_n) over a range of n");
  table->add_option("--n-min", o.n_min)->required();
  table->add_option("--n-max", o.n_max)->required();
  table->add_option("--step", o.step);
  table->add_option("--out", o.out_path);

  auto* range = app.add_subcommand("verify-range", "Acyclicity of CSub(Gamma_n) for all n <= n-max");
  range->add_option("--n-max", o.n_max)->required();
  range->add_option("--threads", o.threads)->check(CLI::Range(1u, 256u));
  range->add_option("--out", o.out_path);

  auto* traj = app.add_subcommand("trajectory", "Classify the orbit of n");
  traj->add_option("--n", o.n)->required();
  traj->add_option("--cap", o.cap);
  traj->add_option("--out", o.out_path);

  auto* walks = app.add_subcommand("walks", "Count walks of length p between two vertices");
  walks->add_option("--n", o.n)->required();
  walks->add_option("--p", o.p)->required();
  walks->add_option("--from", o.from)->required();
  walks->add_option("--to", o.to)->required();
  walks->add_option("--out", o.out_path);

  auto* self_test = app.add_subcommand("self-test", "Run the built-in verification suite");
  self_test->add_option("--out", o.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (build->parsed()) return cmd_build(o, out);
    if (trace_cmd->parsed()) return cmd_trace(o, out);
    if (nil->parsed()) return cmd_nilpotency(o, out);
    if (table->parsed()) return cmd_index_table(o, out);
    if (range->parsed()) return cmd_verify_range(o, out);
    if (traj->parsed()) return cmd_trajectory(o, out);
    if (walks->parsed()) return cmd_walks(o, out);
    if (self_test->parsed()) return cmd_self_test(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

} // namespace collatz::cli
