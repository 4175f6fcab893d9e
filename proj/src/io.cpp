#include "collatz/io.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace collatz {

void write_dot(std::ostream& out, const CollatzDigraph& g) {
  out << "digraph collatz {\n";
  for (Nat v = g.first_vertex(); v <= g.n(); ++v) {
    out << "  " << v << ";\n";
  }
  for (Nat v = g.first_vertex(); v <= g.n(); ++v) {
    if (auto s = g.successor(v)) {
      out << "  " << v << " -> " << *s << ";\n";
    }
  }
  out << "}\n";
}

void write_matrix_market(std::ostream& out, const SparseBinaryMatrix& m) {
  out << "%%MatrixMarket matrix coordinate integer general\n";
  out << "%% index_offset: " << m.row_offset() << '\n';
  if (m.col_offset() != m.row_offset()) {
    out << "%% col_index_offset: " << m.col_offset() << '\n';
  }
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonzeros() << '\n';
  for (Nat i = m.row_offset(); i <= m.last_row_label(); ++i) {
    for (const auto& cell : m.row(i)) {
      out << i << ' ' << cell.col << ' ' << cell.value << '\n';
    }
  }
}

SparseBinaryMatrix read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("%%MatrixMarket matrix coordinate", 0) != 0) {
    throw ParseError("Matrix Market: missing coordinate banner");
  }
  if (line.find(" general") == std::string::npos ||
      (line.find(" integer") == std::string::npos && line.find(" pattern") == std::string::npos)) {
    throw ParseError("Matrix Market: only integer/pattern general matrices are supported");
  }
  const bool pattern = line.find(" pattern") != std::string::npos;

  Nat row_offset = 1;
  std::optional<Nat> col_offset;
  while (std::getline(in, line) && !line.empty() && line[0] == '%') {
    std::istringstream comment(line);
    std::string marker;
    std::string key;
    Nat value = 0;
    if (comment >> marker >> key >> value) {
      if (key == "index_offset:") {
        row_offset = value;
      } else if (key == "col_index_offset:") {
        col_offset = value;
      }
    }
  }

  std::istringstream size_line(line);
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t nnz = 0;
  if (!(size_line >> rows >> cols >> nnz)) {
    throw ParseError("Matrix Market: malformed size line '" + line + "'");
  }
  SparseBinaryMatrix m(rows, cols, row_offset, col_offset.value_or(row_offset));
  for (std::size_t k = 0; k < nnz; ++k) {
    Nat i = 0;
    Nat j = 0;
    Entry v = 1;
    if (!(in >> i >> j) || (!pattern && !(in >> v))) {
      throw ParseError("Matrix Market: expected " + std::to_string(nnz) + " entries, got " +
                       std::to_string(k));
    }
    try {
      m.set(i, j, v);
    } catch (const std::out_of_range& e) {
      throw ParseError(std::string("Matrix Market: ") + e.what());
    }
  }
  return m;
}

void write_dense(std::ostream& out, const SparseBinaryMatrix& m) {
  for (Nat i = m.row_offset(); i <= m.last_row_label(); ++i) {
    out << i << ':';
    for (Nat j = m.col_offset(); j <= m.last_col_label(); ++j) {
      out << ' ' << m.at(i, j);
    }
    out << '\n';
  }
}

void write_trace_table(std::ostream& out, const TraceTable& table) {
  out << "p,trace,expected,verdict\n";
  for (const auto& row : table.entries) {
    out << row.p << ',' << row.trace_value << ',' << row.expected << ','
        << (row.pass() ? "pass" : "fail") << '\n';
  }
}

std::vector<IndexRow> index_table(Nat n_min, Nat n_max, Nat step) {
  if (n_min < 3 || n_min > n_max) {
    throw std::invalid_argument("index_table: need 3 <= n_min <= n_max");
  }
  if (step < 1) {
    throw std::invalid_argument("index_table: step must be >= 1");
  }
  std::vector<IndexRow> rows;
  for (Nat n = n_min; n <= n_max; n += step) {
    const RangeReport r = scan_depths(build_digraph(n, GraphVariant::CSub));
    rows.push_back({n, r.index(), r.deepest_vertex});
    if (n_max - n < step) {
      break;
    }
  }
  return rows;
}

void write_index_table(std::ostream& out, const std::vector<IndexRow>& rows) {
  out << "n,index,deepest_vertex\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.index << ',' << r.deepest_vertex << '\n';
  }
}

} // namespace collatz
