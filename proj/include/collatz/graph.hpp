#pragma once

#include "collatz/core.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace collatz {

/// Full is Gamma_n on {1..n}; CSub drops vertices 1 and 2, which is the
/// digraph whose adjacency matrix is C_n.
enum class GraphVariant { Full, CSub };

/// Functional digraph stored as a successor array. Vertex labels are dense
/// integers in [first_vertex(), n]; a successor of 0 means "none".
class CollatzDigraph {
public:
  /// Edges i -> f(i) whenever f(i) lies in the vertex set.
  static CollatzDigraph build(Nat n, GraphVariant variant);

  Nat n() const noexcept { return n_; }
  GraphVariant variant() const noexcept { return variant_; }
  Nat first_vertex() const noexcept { return variant_ == GraphVariant::Full ? 1 : 3; }
  std::size_t vertex_count() const noexcept { return succ_.size(); }
  bool contains(Nat v) const noexcept { return v >= first_vertex() && v <= n_; }

  std::optional<Nat> successor(Nat v) const;
  std::size_t edge_count() const noexcept;

  /// Copy of this graph with the out-edge of `from` replaced by from -> to.
  /// Only the mutation harness uses this; the result no longer follows f.
  CollatzDigraph with_edge(Nat from, Nat to) const;

  /// Restriction to the vertices {first_vertex()..m}.
  CollatzDigraph truncated(Nat m) const;

private:
  CollatzDigraph(Nat n, GraphVariant variant, std::vector<Nat> succ)
      : n_(n), variant_(variant), succ_(std::move(succ)) {}

  std::size_t slot(Nat v) const noexcept { return static_cast<std::size_t>(v - first_vertex()); }

  Nat n_;
  GraphVariant variant_;
  std::vector<Nat> succ_;
};

inline CollatzDigraph build_digraph(Nat n, GraphVariant variant) {
  return CollatzDigraph::build(n, variant);
}

/// Listed from the smallest vertex of the cycle onward.
struct CycleWitness {
  std::vector<Nat> vertices;
  std::size_t length() const noexcept { return vertices.size(); }
};

class CycleExists : public std::runtime_error {
public:
  explicit CycleExists(CycleWitness witness);
  const CycleWitness& witness() const noexcept { return witness_; }

private:
  CycleWitness witness_;
};

struct NilpotencyCertificate {
  std::vector<Nat> order;
  std::uint64_t longest_path_len = 0;
  std::uint64_t index = 1;
};

/// Among all directed cycles, returns the one whose minimal vertex is
/// smallest.
std::optional<CycleWitness> detect_cycle(const CollatzDigraph& g);

/// Throws CycleExists when g is not acyclic. The order lists vertices by
/// decreasing depth, ties by label, so every edge points forward.
NilpotencyCertificate topological_certificate(const CollatzDigraph& g);

/// Number of edges followed from i before the chain leaves the vertex set.
std::uint64_t depth(const CollatzDigraph& g, Nat i);

struct RangeReport {
  Nat n_max = 0;
  bool acyclic = true;
  std::uint64_t max_depth = 0;
  Nat deepest_vertex = 0;
  std::uint64_t index() const noexcept { return max_depth + 1; }
  friend bool operator==(const RangeReport&, const RangeReport&) = default;
};

/// Memoized depth scan of an arbitrary digraph. Throws CycleExists.
/// With threads > 1 the vertex range is processed in waves; the result is
/// identical to the single-threaded scan.
RangeReport scan_depths(const CollatzDigraph& g, unsigned threads = 1);

/// Acyclicity of CSub(Gamma_{n_max}), which covers every n <= n_max by
/// nesting. Computes f on the fly, so memory is one depth word per vertex.
RangeReport verify_range(Nat n_max, unsigned threads = 1);

} // namespace collatz
