#include "collatz/verify.hpp"

#include <chrono>
#include <set>
#include <tuple>

namespace collatz {

namespace {

using json = nlohmann::json;

class Stopwatch {
public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void require_range(NRange r, Nat min_n, const char* what) {
  if (r.lo < min_n || r.lo > r.hi) {
    throw std::invalid_argument(std::string(what) + ": need " + std::to_string(min_n) +
                                " <= n_lo <= n_hi");
  }
}

VerificationReport start_report(std::string subject, json params) {
  VerificationReport r;
  r.subject = std::move(subject);
  r.params = std::move(params);
  return r;
}

void fail(VerificationReport& r, json counterexample) {
  r.pass = false;
  r.counterexample = std::move(counterexample);
}

json cycle_json(const CycleWitness& w) {
  return json{{"length", w.length()}, {"vertices", w.vertices}};
}

/// Lower-left block (rows 3..n, cols 1..2) of a power of A_n.
SparseBinaryMatrix lower_left(const SparseBinaryMatrix& a_power) {
  return extract_blocks(a_power).b;
}

} // namespace

json VerificationReport::to_json() const {
  json out{{"subject", subject}, {"params", params}, {"verdict", pass ? "pass" : "fail"}};
  if (counterexample) {
    out["counterexample"] = *counterexample;
  }
  if (result) {
    out["result"] = *result;
  }
  out["elapsed_ms"] = elapsed_ms;
  return out;
}

VerificationReport check_alves_condition(NRange n_range, std::uint64_t p_max) {
  require_range(n_range, 2, "check_alves_condition");
  Stopwatch clock;
  auto report = start_report("alves_trace_condition",
                             {{"n_min", n_range.lo}, {"n_max", n_range.hi}, {"p_max", p_max}});
  for (Nat n = n_range.lo; n <= n_range.hi && report.pass; ++n) {
    for (const TraceRow& row : trace_table(n, p_max).entries) {
      if (!row.pass()) {
        fail(report, {{"n", n}, {"p", row.p}, {"trace", row.trace_value}, {"expected", row.expected}});
        break;
      }
    }
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

VerificationReport check_block_trace_identity(NRange n_range, std::uint64_t p_max) {
  require_range(n_range, 3, "check_block_trace_identity");
  Stopwatch clock;
  auto report = start_report("block_trace_identity",
                             {{"n_min", n_range.lo}, {"n_max", n_range.hi}, {"p_max", p_max}});
  const SparseBinaryMatrix a2 = build_A(2);
  for (Nat n = n_range.lo; n <= n_range.hi && report.pass; ++n) {
    const SparseBinaryMatrix a = build_A(n);
    const SparseBinaryMatrix c = build_C(n);
    SparseBinaryMatrix a_pow = a;
    SparseBinaryMatrix a2_pow = a2;
    SparseBinaryMatrix c_pow = c;
    for (std::uint64_t p = 1; p <= p_max; ++p) {
      const Entry lhs = trace(a_pow);
      const Entry t_a2 = trace(a2_pow);
      const Entry t_c = trace(c_pow);
      if (lhs != t_a2 + t_c) {
        fail(report, {{"n", n}, {"p", p}, {"trace_A_n", lhs}, {"trace_A_2", t_a2}, {"trace_C_n", t_c}});
        break;
      }
      a_pow = mat_mul(a_pow, a);
      a2_pow = mat_mul(a2_pow, a2);
      c_pow = mat_mul(c_pow, c);
    }
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

VerificationReport check_block_power_formula(NRange n_range, std::uint64_t p_max) {
  require_range(n_range, 3, "check_block_power_formula");
  Stopwatch clock;
  auto report = start_report("block_power_formula",
                             {{"n_min", n_range.lo}, {"n_max", n_range.hi}, {"p_max", p_max}});
  for (Nat n = n_range.lo; n <= n_range.hi && report.pass; ++n) {
    const SparseBinaryMatrix a = build_A(n);
    const BlockDecomposition blocks = extract_blocks(a);
    for (std::uint64_t p = 1; p <= p_max; ++p) {
      SparseBinaryMatrix sum(n - 2, 2, 3, 1);
      for (std::uint64_t k = 0; k < p; ++k) {
        const auto term =
            mat_mul(mat_mul(mat_power(blocks.c, k), blocks.b), mat_power(blocks.a2, p - 1 - k));
        sum = mat_add(sum, term);
      }
      const SparseBinaryMatrix direct = lower_left(mat_power(a, p));
      if (!(sum == direct)) {
        Nat bad_row = 3;
        Nat bad_col = 1;
        for (Nat i = 3; i <= n; ++i) {
          for (Nat j = 1; j <= 2; ++j) {
            if (sum.at(i, j) != direct.at(i, j)) {
              bad_row = i;
              bad_col = j;
            }
          }
        }
        fail(report, {{"n", n},
                      {"p", p},
                      {"row", bad_row},
                      {"col", bad_col},
                      {"from_power", direct.at(bad_row, bad_col)},
                      {"from_formula", sum.at(bad_row, bad_col)}});
        break;
      }
    }
  }
  report.elapsed_ms = clock.elapsed_ms();
  return report;
}

bool EngineComparison::agree() const noexcept {
  const bool graph_acyclic = graph_index.has_value();
  if (graph_acyclic == cycle.has_value()) {
    return false;
  }
  if (graph_acyclic != matrix_index.has_value() || graph_acyclic == trace_violation.has_value()) {
    return false;
  }
  return !graph_acyclic || *graph_index == *matrix_index;
}

EngineComparison compare_engines(const CollatzDigraph& g) {
  EngineComparison row;
  row.n = g.n();
  row.cycle = detect_cycle(g);
  if (!row.cycle) {
    row.graph_index = topological_certificate(g).index;
  }
  const SparseBinaryMatrix m = adjacency_matrix(g);
  row.matrix_index = nilpotency_index_matrix(m);
  row.trace_violation = trace_nilpotency_check(m);
  return row;
}

CrossCheckResult cross_check_nilpotency(NRange n_range) {
  require_range(n_range, 3, "cross_check_nilpotency");
  Stopwatch clock;
  CrossCheckResult result{
      start_report("nilpotency_cross_check", {{"n_min", n_range.lo}, {"n_max", n_range.hi}}), {}};
  for (Nat n = n_range.lo; n <= n_range.hi; ++n) {
    EngineComparison row = compare_engines(build_digraph(n, GraphVariant::CSub));
    if (result.report.pass && !row.agree()) {
      json ce{{"n", n}};
      ce["graph_index"] = row.graph_index ? json(*row.graph_index) : json(nullptr);
      ce["matrix_index"] = row.matrix_index ? json(*row.matrix_index) : json(nullptr);
      if (row.trace_violation) {
        ce["trace_violation"] = {{"p", row.trace_violation->p}, {"trace", row.trace_violation->trace_value}};
      }
      if (row.cycle) {
        ce["cycle"] = cycle_json(*row.cycle);
      }
      fail(result.report, std::move(ce));
    }
    result.rows.push_back(std::move(row));
  }
  result.report.elapsed_ms = clock.elapsed_ms();
  return result;
}

std::uint64_t walk_count_oracle(Nat n, std::uint64_t p, Nat i, Nat j) {
  if (n < 1 || i < 1 || i > n || j < 1 || j > n) {
    throw std::out_of_range("walk_count_oracle: labels must lie in {1.." + std::to_string(n) + "}");
  }
  Nat cur = i;
  for (std::uint64_t step = 0; step < p; ++step) {
    cur = shortcut_step(cur);
    if (cur > n) {
      return 0;
    }
  }
  return cur == j ? 1 : 0;
}

std::optional<PositiveTrace> positive_trace_detector(const CollatzDigraph& g, std::uint64_t p_max) {
  if (g.variant() != GraphVariant::CSub) {
    throw std::invalid_argument("positive_trace_detector: expects a CSub digraph");
  }
  for (Nat m = 3; m <= g.n(); ++m) {
    const SparseBinaryMatrix c = adjacency_matrix(g.truncated(m));
    SparseBinaryMatrix power = c;
    for (std::uint64_t p = 1; p <= p_max; ++p) {
      if (const Entry t = trace(power); t > 0) {
        return PositiveTrace{m, p, t};
      }
      if (power.is_zero()) {
        break;
      }
      power = mat_mul(power, c);
    }
  }
  return std::nullopt;
}

std::optional<PositiveTrace> positive_trace_detector(Nat n, std::uint64_t p_max) {
  return positive_trace_detector(build_digraph(n, GraphVariant::CSub), p_max);
}

CollatzDigraph Mutant::graph() const {
  return build_digraph(n, GraphVariant::CSub).with_edge(from, to);
}

std::vector<Mutant> generate_cycle_mutants(Nat n_max, std::size_t count, std::uint64_t seed) {
  if (n_max < 3) {
    throw std::invalid_argument("generate_cycle_mutants: n_max must be >= 3");
  }
  std::mt19937_64 rng(seed);
  std::set<std::tuple<Nat, Nat, Nat>> seen;
  std::vector<Mutant> out;
  const std::size_t max_attempts = 1000 * (count + 1);
  for (std::size_t attempt = 0; out.size() < count && attempt < max_attempts; ++attempt) {
    const Nat n = std::uniform_int_distribution<Nat>(3, n_max)(rng);
    const CollatzDigraph g = build_digraph(n, GraphVariant::CSub);
    const Nat from = std::uniform_int_distribution<Nat>(3, n)(rng);

    // (vertex, distance to `from`) for every vertex whose chain passes through it.
    std::vector<std::pair<Nat, std::size_t>> ancestors;
    for (Nat v = 3; v <= n; ++v) {
      std::size_t dist = 0;
      std::optional<Nat> cur = v;
      while (cur && *cur != from) {
        cur = g.successor(*cur);
        ++dist;
      }
      if (cur) {
        ancestors.emplace_back(v, dist);
      }
    }
    const auto& [to, dist] =
        ancestors[std::uniform_int_distribution<std::size_t>(0, ancestors.size() - 1)(rng)];
    if (!seen.emplace(n, from, to).second) {
      continue;
    }
    out.push_back(Mutant{n, from, to, dist + 1});
  }
  return out;
}

} // namespace collatz
