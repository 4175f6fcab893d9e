#include "collatz/io.hpp"
#include "doctest.h"

#include <random>
#include <sstream>

using namespace collatz;

TEST_SUITE_BEGIN("io");

TEST_CASE("dot export is sorted with one edge per line") {
  std::ostringstream out;
  write_dot(out, build_digraph(5, GraphVariant::Full));
  CHECK(out.str() ==
        "digraph collatz {\n"
        "  1;\n  2;\n  3;\n  4;\n  5;\n"
        "  1 -> 2;\n"
        "  2 -> 1;\n"
        "  3 -> 5;\n"
        "  4 -> 2;\n"
        "}\n");
}

TEST_CASE("matrix market uses labels") {
  std::ostringstream out;
  write_matrix_market(out, build_C(5));
  CHECK(out.str() ==
        "%%MatrixMarket matrix coordinate integer general\n"
        "%% index_offset: 3\n"
        "3 3 1\n"
        "3 5 1\n");
}

TEST_CASE("matrix market round trip keeps offsets") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 1 + rng() % 12;
    const std::size_t cols = 1 + rng() % 12;
    const Nat row_offset = 1 + rng() % 5;
    const Nat col_offset = trial % 2 == 0 ? row_offset : 1 + rng() % 5;
    SparseBinaryMatrix m(rows, cols, row_offset, col_offset);
    for (int k = 0; k < 15; ++k) {
      m.set(row_offset + rng() % rows, col_offset + rng() % cols, rng() % 4);
    }
    std::stringstream buffer;
    write_matrix_market(buffer, m);
    REQUIRE(read_matrix_market(buffer) == m);
  }
  for (Nat n = 3; n <= 20; ++n) {
    std::stringstream buffer;
    write_matrix_market(buffer, build_C(n));
    const auto back = read_matrix_market(buffer);
    CHECK(back.index_offset() == 3);
    CHECK(back == build_C(n));
  }
}

TEST_CASE("matrix market parse errors") {
  std::istringstream no_banner("3 3 1\n3 5 1\n");
  CHECK_THROWS_AS(read_matrix_market(no_banner), ParseError);

  std::istringstream short_body("%%MatrixMarket matrix coordinate integer general\n3 3 2\n1 1 1\n");
  CHECK_THROWS_AS(read_matrix_market(short_body), ParseError);

  std::istringstream off_range(
      "%%MatrixMarket matrix coordinate integer general\n%% index_offset: 3\n3 3 1\n1 1 1\n");
  CHECK_THROWS_AS(read_matrix_market(off_range), ParseError);

  std::istringstream pattern("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 2\n");
  CHECK(read_matrix_market(pattern) == [] {
    SparseBinaryMatrix m = SparseBinaryMatrix::zero(2, 1);
    m.set(1, 2, 1);
    return m;
  }());
}

TEST_CASE("index table") {
  std::ostringstream out;
  write_index_table(out, index_table(3, 5, 1));
  CHECK(out.str() == "n,index,deepest_vertex\n3,1,3\n4,1,3\n5,2,3\n");

  CHECK(index_table(3, 3, 1) == std::vector<IndexRow>{{3, 1, 3}});
  CHECK(index_table(3, 10, 7) == std::vector<IndexRow>{{3, 1, 3}, {10, 5, 6}});
  CHECK_THROWS(index_table(2, 5, 1));
  CHECK_THROWS(index_table(6, 5, 1));
  CHECK_THROWS(index_table(3, 5, 0));
}

TEST_CASE("trace table csv") {
  std::ostringstream out;
  write_trace_table(out, trace_table(2, 4));
  CHECK(out.str() == "p,trace,expected,verdict\n1,0,0,pass\n2,2,2,pass\n3,0,0,pass\n4,2,2,pass\n");
}

TEST_CASE("dense print") {
  std::ostringstream out;
  write_dense(out, build_C(5));
  CHECK(out.str() == "3: 0 0 1\n4: 0 0 0\n5: 0 0 0\n");
}

TEST_SUITE_END();
