#include "collatz/matrix.hpp"

#include <algorithm>
#include <string>

namespace collatz {

namespace {

Entry checked_add(Entry a, Entry b) {
  Entry out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("matrix entry overflow");
  }
  return out;
}

Entry checked_mul(Entry a, Entry b) {
  Entry out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("matrix entry overflow");
  }
  return out;
}

std::string shape(const SparseBinaryMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " @(" +
         std::to_string(m.row_offset()) + "," + std::to_string(m.col_offset()) + ")";
}

} // namespace

SparseBinaryMatrix::SparseBinaryMatrix(std::size_t rows, std::size_t cols, Nat row_offset,
                                       Nat col_offset)
    : cols_(cols), row_offset_(row_offset), col_offset_(col_offset), rows_(rows) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("matrix dimensions must be positive");
  }
  if (row_offset == 0 || col_offset == 0) {
    throw DimensionError("labels are 1-based; offsets must be positive");
  }
}

SparseBinaryMatrix SparseBinaryMatrix::zero(std::size_t dim, Nat index_offset) {
  return SparseBinaryMatrix(dim, dim, index_offset, index_offset);
}

SparseBinaryMatrix SparseBinaryMatrix::identity(std::size_t dim, Nat index_offset) {
  SparseBinaryMatrix m = zero(dim, index_offset);
  for (std::size_t k = 0; k < dim; ++k) {
    m.rows_[k].push_back({index_offset + k, 1});
  }
  return m;
}

std::size_t SparseBinaryMatrix::dim() const {
  if (!is_square()) {
    throw DimensionError("dim() on non-square matrix " + shape(*this));
  }
  return rows();
}

Nat SparseBinaryMatrix::index_offset() const {
  if (!is_square()) {
    throw DimensionError("index_offset() on non-square matrix " + shape(*this));
  }
  return row_offset_;
}

std::size_t SparseBinaryMatrix::row_slot(Nat row_label) const {
  if (row_label < row_offset_ || row_label > last_row_label()) {
    throw std::out_of_range("row label " + std::to_string(row_label) + " outside " + shape(*this));
  }
  return static_cast<std::size_t>(row_label - row_offset_);
}

Entry SparseBinaryMatrix::at(Nat row_label, Nat col_label) const {
  if (col_label < col_offset_ || col_label > last_col_label()) {
    throw std::out_of_range("column label " + std::to_string(col_label) + " outside " + shape(*this));
  }
  const auto& r = rows_[row_slot(row_label)];
  auto it = std::lower_bound(r.begin(), r.end(), col_label,
                             [](const Cell& c, Nat label) { return c.col < label; });
  return (it != r.end() && it->col == col_label) ? it->value : 0;
}

void SparseBinaryMatrix::set(Nat row_label, Nat col_label, Entry value) {
  if (col_label < col_offset_ || col_label > last_col_label()) {
    throw std::out_of_range("column label " + std::to_string(col_label) + " outside " + shape(*this));
  }
  auto& r = rows_[row_slot(row_label)];
  auto it = std::lower_bound(r.begin(), r.end(), col_label,
                             [](const Cell& c, Nat label) { return c.col < label; });
  const bool present = it != r.end() && it->col == col_label;
  if (value == 0) {
    if (present) {
      r.erase(it);
    }
  } else if (present) {
    it->value = value;
  } else {
    r.insert(it, Cell{col_label, value});
  }
}

std::span<const SparseBinaryMatrix::Cell> SparseBinaryMatrix::row(Nat row_label) const {
  return rows_[row_slot(row_label)];
}

std::size_t SparseBinaryMatrix::nonzeros() const noexcept {
  std::size_t total = 0;
  for (const auto& r : rows_) {
    total += r.size();
  }
  return total;
}

bool SparseBinaryMatrix::is_zero() const noexcept {
  return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
}

Entry SparseBinaryMatrix::max_entry() const noexcept {
  Entry best = 0;
  for (const auto& r : rows_) {
    for (const Cell& c : r) {
      best = std::max(best, c.value);
    }
  }
  return best;
}

SparseBinaryMatrix build_A(Nat n) {
  if (n < 1) {
    throw DimensionError("build_A: n must be >= 1");
  }
  SparseBinaryMatrix a = SparseBinaryMatrix::zero(n, 1);
  for (Nat i = 1; i <= n; ++i) {
    if (const Nat j = shortcut_step(i); j <= n) {
      a.set(i, j, 1);
    }
  }
  return a;
}

SparseBinaryMatrix build_C(Nat n) {
  if (n < 3) {
    throw DimensionError("build_C: n must be >= 3");
  }
  SparseBinaryMatrix c = SparseBinaryMatrix::zero(n - 2, 3);
  for (Nat i = 3; i <= n; ++i) {
    if (const Nat j = shortcut_step(i); j >= 3 && j <= n) {
      c.set(i, j, 1);
    }
  }
  return c;
}

SparseBinaryMatrix adjacency_matrix(const CollatzDigraph& g) {
  SparseBinaryMatrix m = SparseBinaryMatrix::zero(g.vertex_count(), g.first_vertex());
  for (Nat v = g.first_vertex(); v <= g.n(); ++v) {
    if (auto s = g.successor(v)) {
      m.set(v, *s, 1);
    }
  }
  return m;
}

BlockDecomposition extract_blocks(const SparseBinaryMatrix& a) {
  if (!a.is_square() || a.index_offset() != 1 || a.dim() <= 2) {
    throw DimensionError("extract_blocks needs A_n with n > 2, got " + shape(a));
  }
  const std::size_t n = a.dim();
  BlockDecomposition blocks{SparseBinaryMatrix::zero(2, 1), SparseBinaryMatrix(n - 2, 2, 3, 1),
                            SparseBinaryMatrix::zero(n - 2, 3)};
  for (Nat i = 1; i <= n; ++i) {
    for (const auto& cell : a.row(i)) {
      if (i <= 2 && cell.col <= 2) {
        blocks.a2.set(i, cell.col, cell.value);
      } else if (i <= 2) {
        throw DimensionError("extract_blocks: upper-right block is not zero");
      } else if (cell.col <= 2) {
        blocks.b.set(i, cell.col, cell.value);
      } else {
        blocks.c.set(i, cell.col, cell.value);
      }
    }
  }
  return blocks;
}

SparseBinaryMatrix reassemble(const BlockDecomposition& blocks) {
  const std::size_t n = blocks.c.dim() + 2;
  if (blocks.a2.dim() != 2 || blocks.b.rows() != n - 2 || blocks.b.cols() != 2) {
    throw DimensionError("reassemble: inconsistent block shapes");
  }
  SparseBinaryMatrix a = SparseBinaryMatrix::zero(n, 1);
  for (Nat i = 1; i <= 2; ++i) {
    for (const auto& cell : blocks.a2.row(i)) {
      a.set(i, cell.col, cell.value);
    }
  }
  for (Nat i = 3; i <= n; ++i) {
    for (const auto& cell : blocks.b.row(i)) {
      a.set(i, cell.col, cell.value);
    }
    for (const auto& cell : blocks.c.row(i)) {
      a.set(i, cell.col, cell.value);
    }
  }
  return a;
}

SparseBinaryMatrix mat_mul(const SparseBinaryMatrix& x, const SparseBinaryMatrix& y) {
  if (x.cols() != y.rows() || x.col_offset() != y.row_offset()) {
    throw DimensionError("mat_mul: " + shape(x) + " times " + shape(y));
  }
  SparseBinaryMatrix out(x.rows(), y.cols(), x.row_offset(), y.col_offset());

  // Gustavson row-by-row product with a dense accumulator.
  std::vector<Entry> acc(y.cols(), 0);
  std::vector<std::size_t> touched;
  for (Nat i = x.row_offset(); i <= x.last_row_label(); ++i) {
    touched.clear();
    for (const auto& xc : x.row(i)) {
      for (const auto& yc : y.row(xc.col)) {
        const auto slot = static_cast<std::size_t>(yc.col - y.col_offset());
        if (acc[slot] == 0) {
          touched.push_back(slot);
        }
        acc[slot] = checked_add(acc[slot], checked_mul(xc.value, yc.value));
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t slot : touched) {
      out.set(i, y.col_offset() + slot, acc[slot]);
      acc[slot] = 0;
    }
  }
  return out;
}

SparseBinaryMatrix mat_add(const SparseBinaryMatrix& x, const SparseBinaryMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.row_offset() != y.row_offset() ||
      x.col_offset() != y.col_offset()) {
    throw DimensionError("mat_add: " + shape(x) + " plus " + shape(y));
  }
  SparseBinaryMatrix out = x;
  for (Nat i = y.row_offset(); i <= y.last_row_label(); ++i) {
    for (const auto& cell : y.row(i)) {
      out.set(i, cell.col, checked_add(out.at(i, cell.col), cell.value));
    }
  }
  return out;
}

SparseBinaryMatrix mat_power(const SparseBinaryMatrix& x, std::uint64_t p) {
  SparseBinaryMatrix result = SparseBinaryMatrix::identity(x.dim(), x.index_offset());
  SparseBinaryMatrix base = x;
  while (p > 0) {
    if (p & 1u) {
      result = mat_mul(result, base);
    }
    p >>= 1;
    if (p > 0) {
      base = mat_mul(base, base);
    }
  }
  return result;
}

Entry trace(const SparseBinaryMatrix& x) {
  Entry total = 0;
  for (Nat i = x.index_offset(); i <= x.last_row_label(); ++i) {
    total = checked_add(total, x.at(i, i));
  }
  return total;
}

std::optional<std::uint64_t> nilpotency_index_matrix(const SparseBinaryMatrix& x) {
  const std::size_t dim = x.dim();
  SparseBinaryMatrix power = x;
  for (std::uint64_t k = 1; k <= dim; ++k) {
    if (power.is_zero()) {
      return k;
    }
    if (k < dim) {
      power = mat_mul(power, x);
    }
  }
  return std::nullopt;
}

std::optional<TraceViolation> trace_nilpotency_check(const SparseBinaryMatrix& x) {
  const std::size_t dim = x.dim();
  SparseBinaryMatrix power = x;
  for (std::uint64_t p = 1; p <= dim; ++p) {
    if (const Entry t = trace(power); t != 0) {
      return TraceViolation{p, t};
    }
    if (power.is_zero()) {
      break; // every further power is zero as well
    }
    if (p < dim) {
      power = mat_mul(power, x);
    }
  }
  return std::nullopt;
}

bool TraceTable::all_pass() const noexcept {
  return std::all_of(entries.begin(), entries.end(), [](const TraceRow& r) { return r.pass(); });
}

TraceTable trace_table(Nat n, std::uint64_t p_max) {
  if (n < 2) {
    throw DimensionError("trace_table: n must be >= 2");
  }
  if (p_max < 1) {
    throw std::invalid_argument("trace_table: p_max must be >= 1");
  }
  const SparseBinaryMatrix a = build_A(n);
  TraceTable table;
  table.n = n;
  table.entries.reserve(p_max);
  for (std::uint64_t p = 1; p <= p_max; ++p) {
    table.entries.push_back({p, trace(mat_power(a, p)), p % 2 == 0 ? Entry{2} : Entry{0}});
  }
  return table;
}

} // namespace collatz
