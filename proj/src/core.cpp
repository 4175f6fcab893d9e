#include "collatz/core.hpp"

#include <limits>
#include <unordered_map>

namespace collatz {

OverflowError::OverflowError(Nat value)
    : std::overflow_error("3n+1 overflows 64 bits for n = " + std::to_string(value)),
      value_(value) {}

Nat shortcut_step(Nat n) {
  if (n == 0) {
    throw std::invalid_argument("shortcut_step: n must be >= 1");
  }
  if ((n & 1u) == 0) {
    return n >> 1;
  }
  constexpr Nat kMaxOdd = (std::numeric_limits<Nat>::max() - 1) / 3;
  if (n > kMaxOdd) {
    throw OverflowError(n);
  }
  return (3 * n + 1) >> 1;
}

Nat iterate(Nat n, std::uint64_t k) {
  for (std::uint64_t i = 0; i < k; ++i) {
    n = shortcut_step(n);
  }
  return n;
}

StoppingTime total_stopping_time(Nat n, std::uint64_t cap) {
  if (cap == 0) {
    throw std::invalid_argument("total_stopping_time: cap must be >= 1");
  }
  Nat value = n;
  for (std::uint64_t p = 1; p <= cap; ++p) {
    value = shortcut_step(value);
    if (value == 1) {
      return p;
    }
  }
  return Undecided{cap};
}

TrajectoryRecord classify_trajectory(Nat n, std::uint64_t cap) {
  if (n == 0) {
    throw std::invalid_argument("classify_trajectory: n must be >= 1");
  }
  if (cap == 0) {
    throw std::invalid_argument("classify_trajectory: cap must be >= 1");
  }
  TrajectoryRecord record{n, {n}, Undecided{cap}};
  std::unordered_map<Nat, std::uint64_t> first_seen{{n, 0}};

  Nat value = n;
  for (std::uint64_t k = 1; k <= cap; ++k) {
    value = shortcut_step(value);
    record.steps.push_back(value);
    if (auto it = first_seen.find(value); it != first_seen.end()) {
      record.classification = CycleDetected{it->second, k - it->second};
      return record;
    }
    if (value == 1) {
      record.classification = Converged{k};
      return record;
    }
    first_seen.emplace(value, k);
  }
  return record;
}

std::string to_string(const Classification& c) {
  struct Visitor {
    std::string operator()(const Converged& v) const {
      return "converged total_stopping_time=" + std::to_string(v.total_stopping_time);
    }
    std::string operator()(const CycleDetected& v) const {
      return "cycle entry_offset=" + std::to_string(v.entry_offset) +
             " period=" + std::to_string(v.period);
    }
    std::string operator()(const Undecided& v) const {
      return "undecided cap=" + std::to_string(v.cap);
    }
  };
  return std::visit(Visitor{}, c);
}

} // namespace collatz
