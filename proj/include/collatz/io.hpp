#pragma once

#include "collatz/graph.hpp"
#include "collatz/matrix.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace collatz {

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Vertices ascending, then one `i -> j;` line per edge in ascending i.
void write_dot(std::ostream& out, const CollatzDigraph& g);

/// Coordinate format with paper labels as coordinates, so C_5 reads
/// `3 5 1`. The label offsets are kept in `%% index_offset:` comments.
void write_matrix_market(std::ostream& out, const SparseBinaryMatrix& m);
SparseBinaryMatrix read_matrix_market(std::istream& in);

/// Rows of labeled 0/1 digits, one matrix row per line.
void write_dense(std::ostream& out, const SparseBinaryMatrix& m);

/// Header `p,trace,expected,verdict`.
void write_trace_table(std::ostream& out, const TraceTable& table);

struct IndexRow {
  Nat n;
  std::uint64_t index;
  Nat deepest_vertex;
  friend bool operator==(const IndexRow&, const IndexRow&) = default;
};

/// Graph-engine index of C_n for n = n_min, n_min + step, ... <= n_max.
/// Ties on depth go to the smallest vertex.
std::vector<IndexRow> index_table(Nat n_min, Nat n_max, Nat step);

/// Header `n,index,deepest_vertex`, `\n` line endings.
void write_index_table(std::ostream& out, const std::vector<IndexRow>& rows);

} // namespace collatz
