#include "collatz/graph.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

namespace collatz {

namespace {

constexpr Nat kNone = 0;

using DepthWord = std::uint32_t;
constexpr DepthWord kUnvisited = std::numeric_limits<DepthWord>::max();
constexpr DepthWord kInProgress = kUnvisited - 1;
constexpr std::size_t kWaveChunk = std::size_t{1} << 16;

CycleWitness rotate_to_min(std::vector<Nat> cycle) {
  auto smallest = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), smallest, cycle.end());
  return CycleWitness{std::move(cycle)};
}

std::string describe(const CycleWitness& w) {
  std::string s = "directed cycle of length " + std::to_string(w.length()) + ":";
  for (Nat v : w.vertices) {
    s += ' ';
    s += std::to_string(v);
  }
  return s;
}

/// Memoized depth table over [first, last]. `succ(v)` returns kNone or a
/// label inside the range.
template <class Successor>
class DepthScan {
public:
  DepthScan(Nat first, Nat last, Successor succ) : first_(first), last_(last), succ_(succ) {
    const Nat count = last - first + 1;
    if (count >= kInProgress) {
      throw std::length_error("depth scan: vertex range too large");
    }
    depth_.assign(static_cast<std::size_t>(count), kUnvisited);
  }

  void run_sequential() {
    std::vector<Nat> path;
    for (Nat v = first_; v <= last_; ++v) {
      if (at(v) != kUnvisited) {
        continue;
      }
      path.clear();
      Nat cur = v;
      while (cur != kNone && at(cur) == kUnvisited) {
        at(cur) = kInProgress;
        path.push_back(cur);
        cur = succ_(cur);
      }
      std::uint64_t next_depth = 0;
      if (cur != kNone) {
        if (at(cur) == kInProgress) {
          auto start = std::find(path.begin(), path.end(), cur);
          throw CycleExists(rotate_to_min(std::vector<Nat>(start, path.end())));
        }
        next_depth = std::uint64_t{at(cur)} + 1;
      }
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        at(*it) = static_cast<DepthWord>(next_depth);
        ++next_depth;
      }
    }
  }

  /// Waves of consecutive vertices. Inside a wave each worker resolves its
  /// own vertices by walking until it reaches a vertex from an earlier wave,
  /// so workers read only slots published before the wave started.
  /// Returns false when a walk exceeded the vertex count (a cycle).
  bool run_parallel(unsigned threads) {
    const Nat count = last_ - first_ + 1;
    const Nat wave = static_cast<Nat>(kWaveChunk) * threads;
    std::atomic<bool> cyclic{false};
    for (Nat wave_begin = first_; wave_begin <= last_; wave_begin += wave) {
      const Nat wave_end = std::min(last_, wave_begin + wave - 1);
      std::vector<std::thread> workers;
      workers.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) {
        const Nat lo = wave_begin + t * static_cast<Nat>(kWaveChunk);
        if (lo > wave_end) {
          break;
        }
        const Nat hi = std::min(wave_end, lo + kWaveChunk - 1);
        workers.emplace_back([this, lo, hi, wave_begin, count, &cyclic] {
          for (Nat v = lo; v <= hi && !cyclic.load(std::memory_order_relaxed); ++v) {
            std::uint64_t steps = 0;
            std::uint64_t base = 0;
            Nat cur = succ_(v);
            while (cur != kNone) {
              ++steps;
              if (cur < wave_begin) {
                base = at(cur);
                break;
              }
              if (steps > count) {
                cyclic.store(true, std::memory_order_relaxed);
                return;
              }
              cur = succ_(cur);
            }
            at(v) = static_cast<DepthWord>(steps + base);
          }
        });
      }
      for (auto& w : workers) {
        w.join();
      }
      if (cyclic.load()) {
        return false;
      }
    }
    return true;
  }

  RangeReport report(Nat n_max) const {
    RangeReport r;
    r.n_max = n_max;
    r.deepest_vertex = first_;
    for (Nat v = first_; v <= last_; ++v) {
      if (depth(v) > r.max_depth) {
        r.max_depth = depth(v);
        r.deepest_vertex = v;
      }
    }
    return r;
  }

  std::uint64_t depth(Nat v) const { return depth_[static_cast<std::size_t>(v - first_)]; }

private:
  DepthWord& at(Nat v) { return depth_[static_cast<std::size_t>(v - first_)]; }

  Nat first_;
  Nat last_;
  Successor succ_;
  std::vector<DepthWord> depth_;
};

template <class Successor>
RangeReport scan(Nat first, Nat last, Nat n_max, Successor succ, unsigned threads) {
  DepthScan<Successor> s(first, last, succ);
  if (threads <= 1 || !s.run_parallel(threads)) {
    DepthScan<Successor> seq(first, last, succ);
    seq.run_sequential();
    return seq.report(n_max);
  }
  return s.report(n_max);
}

} // namespace

CycleExists::CycleExists(CycleWitness witness)
    : std::runtime_error(describe(witness)), witness_(std::move(witness)) {}

CollatzDigraph CollatzDigraph::build(Nat n, GraphVariant variant) {
  const Nat first = variant == GraphVariant::Full ? 1 : 3;
  if (n < first) {
    throw std::invalid_argument("build_digraph: n = " + std::to_string(n) +
                                " is too small for this variant (need n >= " +
                                std::to_string(first) + ")");
  }
  std::vector<Nat> succ(static_cast<std::size_t>(n - first + 1), kNone);
  for (Nat i = first; i <= n; ++i) {
    const Nat j = shortcut_step(i);
    if (j >= first && j <= n) {
      succ[static_cast<std::size_t>(i - first)] = j;
    }
  }
  return CollatzDigraph(n, variant, std::move(succ));
}

std::optional<Nat> CollatzDigraph::successor(Nat v) const {
  if (!contains(v)) {
    throw std::out_of_range("vertex " + std::to_string(v) + " is not in the digraph");
  }
  const Nat s = succ_[slot(v)];
  if (s == kNone) {
    return std::nullopt;
  }
  return s;
}

std::size_t CollatzDigraph::edge_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(succ_.begin(), succ_.end(), [](Nat s) { return s != kNone; }));
}

CollatzDigraph CollatzDigraph::with_edge(Nat from, Nat to) const {
  if (!contains(from) || !contains(to)) {
    throw std::out_of_range("with_edge: endpoint outside the vertex set");
  }
  CollatzDigraph copy = *this;
  copy.succ_[slot(from)] = to;
  return copy;
}

CollatzDigraph CollatzDigraph::truncated(Nat m) const {
  if (m < first_vertex() || m > n_) {
    throw std::out_of_range("truncated: m = " + std::to_string(m) + " outside the vertex set");
  }
  std::vector<Nat> succ(succ_.begin(), succ_.begin() + static_cast<std::ptrdiff_t>(m - first_vertex() + 1));
  for (Nat& s : succ) {
    if (s > m) {
      s = kNone;
    }
  }
  return CollatzDigraph(m, variant_, std::move(succ));
}

std::optional<CycleWitness> detect_cycle(const CollatzDigraph& g) {
  // 0 = unvisited, otherwise the start vertex of the walk that claimed it.
  std::vector<Nat> owner(g.vertex_count(), 0);
  const Nat first = g.first_vertex();
  auto slot = [first](Nat v) { return static_cast<std::size_t>(v - first); };

  std::optional<CycleWitness> best;
  for (Nat v = first; v <= g.n(); ++v) {
    if (owner[slot(v)] != 0) {
      continue;
    }
    Nat cur = v;
    std::optional<Nat> next = cur;
    while (next && owner[slot(*next)] == 0) {
      cur = *next;
      owner[slot(cur)] = v;
      next = g.successor(cur);
    }
    if (!next || owner[slot(*next)] != v) {
      continue;
    }
    std::vector<Nat> cycle{*next};
    for (Nat w = *g.successor(*next); w != *next; w = *g.successor(w)) {
      cycle.push_back(w);
    }
    CycleWitness found = rotate_to_min(std::move(cycle));
    if (!best || found.vertices.front() < best->vertices.front()) {
      best = std::move(found);
    }
  }
  return best;
}

std::uint64_t depth(const CollatzDigraph& g, Nat i) {
  if (!g.contains(i)) {
    throw std::out_of_range("depth: vertex " + std::to_string(i) + " is not in the digraph");
  }
  std::uint64_t d = 0;
  Nat cur = i;
  while (auto next = g.successor(cur)) {
    cur = *next;
    if (++d > g.vertex_count()) {
      // cur is now on the cycle the chain fell into.
      std::vector<Nat> cycle{cur};
      for (Nat w = *g.successor(cur); w != cur; w = *g.successor(w)) {
        cycle.push_back(w);
      }
      throw CycleExists(rotate_to_min(std::move(cycle)));
    }
  }
  return d;
}

NilpotencyCertificate topological_certificate(const CollatzDigraph& g) {
  if (auto cycle = detect_cycle(g)) {
    throw CycleExists(std::move(*cycle));
  }
  auto succ = [&g](Nat v) { return g.successor(v).value_or(kNone); };
  DepthScan<decltype(succ)> s(g.first_vertex(), g.n(), succ);
  s.run_sequential();

  NilpotencyCertificate cert;
  cert.order.resize(g.vertex_count());
  std::iota(cert.order.begin(), cert.order.end(), g.first_vertex());
  std::stable_sort(cert.order.begin(), cert.order.end(),
                   [&s](Nat a, Nat b) { return s.depth(a) > s.depth(b); });
  cert.longest_path_len = s.depth(cert.order.front());
  cert.index = cert.longest_path_len + 1;
  return cert;
}

RangeReport scan_depths(const CollatzDigraph& g, unsigned threads) {
  auto succ = [&g](Nat v) { return g.successor(v).value_or(kNone); };
  return scan(g.first_vertex(), g.n(), g.n(), succ, threads);
}

RangeReport verify_range(Nat n_max, unsigned threads) {
  if (n_max < 3) {
    throw std::invalid_argument("verify_range: n_max must be >= 3");
  }
  auto succ = [n_max](Nat v) {
    const Nat j = shortcut_step(v);
    return (j >= 3 && j <= n_max) ? j : kNone;
  };
  return scan(Nat{3}, n_max, n_max, succ, threads);
}

} // namespace collatz
