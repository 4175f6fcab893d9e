#include "collatz/cli.hpp"
#include "doctest.h"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"collatz-matrix"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out;
  std::ostringstream err;
  const int code = collatz::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("nilpotency --method both") {
  const auto r = run({"nilpotency", "--n", "10", "--method", "both"});
  CHECK(r.code == 0);
  CHECK(r.out.find("graph: acyclic, longest path 4, index 5") != std::string::npos);
  CHECK(r.out.find("matrix: nilpotent, index 5") != std::string::npos);
  CHECK(r.out.find("engines agree: yes") != std::string::npos);
}

TEST_CASE("trace") {
  const auto r = run({"trace", "--n", "2", "--pmax", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "p,trace,expected,verdict\n1,0,0,pass\n2,2,2,pass\n3,0,0,pass\n4,2,2,pass\n");
}

TEST_CASE("build C in Matrix Market format") {
  const auto r = run({"build", "--n", "5", "--which", "C", "--format", "mm"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "%%MatrixMarket matrix coordinate integer general\n%% index_offset: 3\n3 3 1\n3 5 1\n");
}

TEST_CASE("build dot and --out") {
  const auto path = std::filesystem::temp_directory_path() / "collatz_cli_test.dot";
  const std::string p = path.string();
  const auto r = run({"build", "--n", "4", "--which", "A", "--format", "dot", "--out", p.c_str()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str() == "digraph collatz {\n  1;\n  2;\n  3;\n  4;\n  1 -> 2;\n  2 -> 1;\n  4 -> 2;\n}\n");
  std::filesystem::remove(path);
}

TEST_CASE("index-table") {
  const auto r = run({"index-table", "--n-min", "3", "--n-max", "10", "--step", "7"});
  CHECK(r.code == 0);
  CHECK(r.out == "n,index,deepest_vertex\n3,1,3\n10,5,6\n");
}

TEST_CASE("verify-range emits a json report") {
  const auto r = run({"verify-range", "--n-max", "10"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("subject") == "verify_range");
  CHECK(j.at("verdict") == "pass");
  CHECK(j.at("result").at("max_depth") == 4);
  CHECK(j.at("result").at("deepest_vertex") == 6);
  CHECK(j.contains("elapsed_ms"));
}

TEST_CASE("trajectory") {
  auto r = run({"trajectory", "--n", "3", "--cap", "10"});
  CHECK(r.code == 0);
  CHECK(r.out == "start 3\nsteps 3 5 8 4 2 1\nconverged total_stopping_time=5\n");

  r = run({"trajectory", "--n", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("cycle entry_offset=0 period=2") != std::string::npos);

  r = run({"trajectory", "--n", "18446744073709551613"});
  CHECK(r.code == 2);
}

TEST_CASE("walks") {
  const auto r = run({"walks", "--n", "5", "--p", "2", "--from", "4", "--to", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("chain: 1\nmatrix: 1\n") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"build", "--n", "2", "--which", "C"}).code == 2);
  CHECK(run({"build", "--n", "5", "--which", "B"}).code == 2);
  CHECK(run({"trace", "--n", "1", "--pmax", "3"}).code == 2);
  CHECK(run({"trace", "--n", "abc", "--pmax", "3"}).code == 2);
  CHECK(run({"index-table", "--n-min", "5", "--n-max", "4"}).code == 2);
  CHECK(run({"walks", "--n", "5", "--p", "2", "--from", "9", "--to", "1"}).code == 2);
  CHECK(run({"verify-range", "--n-max", "2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("matrix dimension cap") {
  CHECK(run({"build", "--n", "4097", "--which", "A"}).code == 2);
  ::setenv("COLLATZ_MATRIX_DIM_CAP", "8", 1);
  CHECK(run({"nilpotency", "--n", "11", "--method", "matrix"}).code == 2);
  CHECK(run({"nilpotency", "--n", "10", "--method", "matrix"}).code == 0);
  CHECK(run({"nilpotency", "--n", "11", "--method", "graph"}).code == 0);
  ::setenv("COLLATZ_MATRIX_DIM_CAP", "zero", 1);
  CHECK(run({"trace", "--n", "5", "--pmax", "2"}).code == 2);
  ::unsetenv("COLLATZ_MATRIX_DIM_CAP");
}

TEST_SUITE_END();
