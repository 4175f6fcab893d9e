#pragma once

#include "collatz/core.hpp"
#include "collatz/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace collatz {

using Entry = std::uint64_t;

/// Exact nonnegative-integer sparse matrix addressed by labels.
///
/// Rows are labeled row_offset .. row_offset + rows - 1 and columns
/// col_offset .. col_offset + cols - 1, so C_n is addressed by {3..n} just
/// like the submatrix it is. Storage is 0-based; the offsets are applied at
/// the public boundary. Square matrices with equal offsets expose
/// dim() / index_offset().
class SparseBinaryMatrix {
public:
  struct Cell {
    Nat col; ///< column label
    Entry value;
    friend bool operator==(const Cell&, const Cell&) = default;
  };

  SparseBinaryMatrix(std::size_t rows, std::size_t cols, Nat row_offset, Nat col_offset);
  static SparseBinaryMatrix zero(std::size_t dim, Nat index_offset);
  static SparseBinaryMatrix identity(std::size_t dim, Nat index_offset);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  Nat row_offset() const noexcept { return row_offset_; }
  Nat col_offset() const noexcept { return col_offset_; }
  bool is_square() const noexcept { return rows() == cols_ && row_offset_ == col_offset_; }

  /// Square matrices only.
  std::size_t dim() const;
  Nat index_offset() const;

  Nat last_row_label() const noexcept { return row_offset_ + rows() - 1; }
  Nat last_col_label() const noexcept { return col_offset_ + cols_ - 1; }

  Entry at(Nat row_label, Nat col_label) const;
  /// Overwrites one entry; storing 0 removes it.
  void set(Nat row_label, Nat col_label, Entry value);

  /// Nonzero cells of one row, ascending by column label.
  std::span<const Cell> row(Nat row_label) const;

  std::size_t nonzeros() const noexcept;
  bool is_zero() const noexcept;
  Entry max_entry() const noexcept;

  friend bool operator==(const SparseBinaryMatrix&, const SparseBinaryMatrix&) = default;

private:
  std::size_t row_slot(Nat row_label) const;

  std::size_t cols_;
  Nat row_offset_;
  Nat col_offset_;
  std::vector<std::vector<Cell>> rows_;
};

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A_n: row i holds a single 1 at column f(i) when f(i) <= n.
SparseBinaryMatrix build_A(Nat n);
/// C_n: labels {3..n}, entry (i,j) = 1 iff j = f(i).
SparseBinaryMatrix build_C(Nat n);
/// Adjacency matrix of any digraph, labeled by its vertices.
SparseBinaryMatrix adjacency_matrix(const CollatzDigraph& g);

struct BlockDecomposition {
  SparseBinaryMatrix a2; ///< labels {1,2} x {1,2}
  SparseBinaryMatrix b;  ///< labels {3..n} x {1,2}
  SparseBinaryMatrix c;  ///< labels {3..n} x {3..n}
};

BlockDecomposition extract_blocks(const SparseBinaryMatrix& a);
/// [a2 0; b c].
SparseBinaryMatrix reassemble(const BlockDecomposition& blocks);

/// Exact product. The column labels of x must match the row labels of y.
SparseBinaryMatrix mat_mul(const SparseBinaryMatrix& x, const SparseBinaryMatrix& y);
SparseBinaryMatrix mat_add(const SparseBinaryMatrix& x, const SparseBinaryMatrix& y);
/// Repeated squaring; x^0 is the identity.
SparseBinaryMatrix mat_power(const SparseBinaryMatrix& x, std::uint64_t p);
Entry trace(const SparseBinaryMatrix& x);

/// Smallest k >= 1 with x^k = 0, by sequential products up to k = dim.
/// nullopt means not nilpotent.
std::optional<std::uint64_t> nilpotency_index_matrix(const SparseBinaryMatrix& x);

struct TraceViolation {
  std::uint64_t p;
  Entry trace_value;
  friend bool operator==(const TraceViolation&, const TraceViolation&) = default;
};

/// nullopt when trace(x^p) == 0 for p = 1..dim, otherwise the first
/// violating power.
std::optional<TraceViolation> trace_nilpotency_check(const SparseBinaryMatrix& x);

struct TraceRow {
  std::uint64_t p;
  Entry trace_value;
  Entry expected;
  bool pass() const noexcept { return trace_value == expected; }
};

struct TraceTable {
  Nat n = 0;
  std::vector<TraceRow> entries;
  bool all_pass() const noexcept;
};

/// trace(A_n^p) for p = 1..p_max against 2 (even p) / 0 (odd p).
TraceTable trace_table(Nat n, std::uint64_t p_max);

} // namespace collatz
