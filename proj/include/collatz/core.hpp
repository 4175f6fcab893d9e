#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace collatz {

using Nat = std::uint64_t;

/// Raised when 3n+1 does not fit in a Nat. Carries the odd input that
/// could not be stepped.
class OverflowError : public std::overflow_error {
public:
  explicit OverflowError(Nat value);
  Nat value() const noexcept { return value_; }

private:
  Nat value_;
};

/// f(n) = n/2 for even n, (3n+1)/2 for odd n. Throws std::invalid_argument
/// for n == 0 and OverflowError when 3n+1 is not representable.
Nat shortcut_step(Nat n);

/// f^k(n), with f^0(n) = n.
Nat iterate(Nat n, std::uint64_t k);

struct Undecided {
  std::uint64_t cap;
  friend bool operator==(const Undecided&, const Undecided&) = default;
};

struct Converged {
  std::uint64_t total_stopping_time;
  friend bool operator==(const Converged&, const Converged&) = default;
};

/// steps[entry_offset + period] == steps[entry_offset].
struct CycleDetected {
  std::uint64_t entry_offset;
  std::uint64_t period;
  friend bool operator==(const CycleDetected&, const CycleDetected&) = default;
};

using Classification = std::variant<Converged, CycleDetected, Undecided>;
using StoppingTime = std::variant<std::uint64_t, Undecided>;

struct TrajectoryRecord {
  Nat start;
  std::vector<Nat> steps;
  Classification classification;
};

/// Smallest positive p <= cap with f^p(n) == 1. Note that the trivial
/// cycle makes total_stopping_time(1) == 2.
StoppingTime total_stopping_time(Nat n, std::uint64_t cap);

/// Records the orbit of n for at most cap steps. A repeated value wins over
/// reaching 1, so the orbit of 1 itself is reported as the 1 -> 2 -> 1 cycle.
/// Overflow propagates as OverflowError and is never folded into Undecided.
TrajectoryRecord classify_trajectory(Nat n, std::uint64_t cap);

std::string to_string(const Classification& c);

} // namespace collatz
