#pragma once

#include "collatz/graph.hpp"
#include "collatz/matrix.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace collatz {

/// Inclusive range of n.
struct NRange {
  Nat lo;
  Nat hi;
};

struct VerificationReport {
  std::string subject;
  nlohmann::json params;
  bool pass = true;
  /// Present exactly when pass is false.
  std::optional<nlohmann::json> counterexample;
  /// Optional summary of what was computed (indices, depths).
  std::optional<nlohmann::json> result;
  double elapsed_ms = 0.0;

  /// { subject, params, verdict, counterexample?, result?, elapsed_ms }
  nlohmann::json to_json() const;
};

/// trace(A_n^p) == 2 / 0 for even / odd p, every n in range, p = 1..p_max.
VerificationReport check_alves_condition(NRange n_range, std::uint64_t p_max);

/// trace(A_n^p) == trace(A_2^p) + trace(C_n^p).
VerificationReport check_block_trace_identity(NRange n_range, std::uint64_t p_max);

/// Lower-left block of A_n^p equals sum_{k<p} C^k B A_2^{p-1-k}, entrywise.
VerificationReport check_block_power_formula(NRange n_range, std::uint64_t p_max);

/// Both engines' view of one CSub digraph.
struct EngineComparison {
  Nat n = 0;
  std::optional<std::uint64_t> graph_index;  ///< nullopt: cycle found
  std::optional<std::uint64_t> matrix_index; ///< nullopt: not nilpotent
  std::optional<TraceViolation> trace_violation;
  std::optional<CycleWitness> cycle;
  bool agree() const noexcept;
};

EngineComparison compare_engines(const CollatzDigraph& g);

struct CrossCheckResult {
  VerificationReport report;
  std::vector<EngineComparison> rows; ///< ascending n
};

/// Graph verdict (acyclic + index) against matrix verdict (nilpotent +
/// index) and the trace criterion, for every CSub(Gamma_n) in range.
CrossCheckResult cross_check_nilpotency(NRange n_range);

/// Walks of length p from i to j in Gamma_n, counted by following the
/// successor chain. Throws std::out_of_range for labels outside {1..n}.
std::uint64_t walk_count_oracle(Nat n, std::uint64_t p, Nat i, Nat j);

struct PositiveTrace {
  Nat m;
  std::uint64_t p;
  Entry trace_value;
  friend bool operator==(const PositiveTrace&, const PositiveTrace&) = default;
};

/// First (m, p), scanning m = 3..n then p = 1..p_max, with trace(C_m^p) > 0,
/// where C_m is the adjacency matrix of g restricted to {3..m}.
std::optional<PositiveTrace> positive_trace_detector(const CollatzDigraph& g, std::uint64_t p_max);
std::optional<PositiveTrace> positive_trace_detector(Nat n, std::uint64_t p_max);

/// A CSub digraph with one out-edge redirected so that it closes a cycle.
struct Mutant {
  Nat n;
  Nat from;
  Nat to;
  std::size_t cycle_length;
  CollatzDigraph graph() const;
};

/// Deterministic for a given seed. Every mutant has n in [3, n_max] and
/// its injected edge lands on from itself or on an ancestor of from.
std::vector<Mutant> generate_cycle_mutants(Nat n_max, std::size_t count, std::uint64_t seed);

} // namespace collatz
