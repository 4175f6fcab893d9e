#include "collatz/verify.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace collatz;

TEST_SUITE_BEGIN("verify");

TEST_CASE("check_alves_condition") {
  CHECK(check_alves_condition({2, 50}, 40).pass);
  CHECK(check_alves_condition({2, 2}, 4).pass);
  const auto small = check_alves_condition({2, 3}, 1);
  CHECK(small.pass);
  CHECK_FALSE(small.counterexample);
  CHECK_THROWS_AS(check_alves_condition({1, 5}, 3), std::invalid_argument);
  CHECK_THROWS_AS(check_alves_condition({6, 5}, 3), std::invalid_argument);
}

TEST_CASE("check_block_trace_identity") {
  CHECK(check_block_trace_identity({3, 50}, 30).pass);
  CHECK(check_block_trace_identity({3, 3}, 1).pass);

  // n = 4, p = 2: A_4^2 has the 1 <-> 2 diagonal and nothing else.
  const auto a4_sq = mat_power(build_A(4), 2);
  CHECK(trace(a4_sq) == 2);
  CHECK(trace(mat_power(build_A(2), 2)) == 2);
  CHECK(trace(mat_power(build_C(4), 2)) == 0);
}

TEST_CASE("check_block_power_formula") {
  CHECK(check_block_power_formula({3, 20}, 6).pass);
}

TEST_CASE("cross_check_nilpotency") {
  const auto result = cross_check_nilpotency({3, 200});
  CHECK(result.report.pass);
  REQUIRE(result.rows.size() == 198);
  CHECK(result.rows[0].n == 3);
  CHECK(result.rows[0].graph_index == 1u);
  CHECK(result.rows[0].matrix_index == 1u);
  CHECK(result.rows[7].n == 10);
  CHECK(result.rows[7].graph_index == 5u);
  CHECK(result.rows[7].matrix_index == 5u);
  for (const auto& row : result.rows) {
    CHECK(row.agree());
    CHECK_FALSE(row.cycle);
    CHECK_FALSE(row.trace_violation);
  }
}

TEST_CASE("walk_count_oracle") {
  CHECK(walk_count_oracle(5, 2, 4, 1) == 1);
  CHECK(walk_count_oracle(5, 1, 3, 4) == 0);
  CHECK(walk_count_oracle(2, 2, 1, 1) == 1);
  CHECK_THROWS_AS(walk_count_oracle(5, 1, 6, 1), std::out_of_range);
  CHECK_THROWS_AS(walk_count_oracle(5, 1, 1, 0), std::out_of_range);
}

TEST_CASE("walk counts equal entries of powers of A_n") {
  for (Nat n = 1; n <= 30; ++n) {
    const auto a = build_A(n);
    SparseBinaryMatrix power = SparseBinaryMatrix::identity(n, 1);
    for (std::uint64_t p = 1; p <= 10; ++p) {
      power = mat_mul(power, a);
      for (Nat i = 1; i <= n; ++i) {
        for (Nat j = 1; j <= n; ++j) {
          REQUIRE(power.at(i, j) == walk_count_oracle(n, p, i, j));
        }
      }
    }
  }
}

TEST_CASE("positive_trace_detector") {
  CHECK_FALSE(positive_trace_detector(Nat{200}, 100));
  CHECK_FALSE(positive_trace_detector(Nat{3}, 1));

  const auto mutant = build_digraph(5, GraphVariant::CSub).with_edge(5, 3);
  const auto hit = positive_trace_detector(mutant, 5);
  REQUIRE(hit);
  CHECK(hit->m == 5);
  CHECK(hit->p == 2);
  CHECK(hit->trace_value >= 1);

  CHECK_THROWS_AS(positive_trace_detector(build_digraph(5, GraphVariant::Full), 3),
                  std::invalid_argument);
}

TEST_CASE("generated mutants close exactly one cycle") {
  const auto mutants = generate_cycle_mutants(50, 20, 1);
  REQUIRE(mutants.size() == 20);
  CHECK(generate_cycle_mutants(50, 20, 1).size() == 20);
  for (const auto& m : mutants) {
    const auto g = m.graph();
    const auto s = oracle::SuccessorMap{3, m.n, [&] {
                                          std::vector<oracle::u64> succ;
                                          for (Nat v = 3; v <= m.n; ++v) {
                                            succ.push_back(g.successor(v).value_or(0));
                                          }
                                          return succ;
                                        }()};
    const auto found = oracle::smallest_cycle_vertex(s);
    REQUIRE(found);
    CHECK(found->second == m.cycle_length);
  }
}

TEST_CASE("all four detectors flag every mutant with the injected cycle length") {
  for (const auto& m : generate_cycle_mutants(50, 20, 99)) {
    const auto g = m.graph();
    const auto row = compare_engines(g);
    REQUIRE(row.cycle);
    CHECK(row.cycle->length() == m.cycle_length);
    CHECK_FALSE(row.graph_index);
    CHECK_FALSE(row.matrix_index);
    REQUIRE(row.trace_violation);
    CHECK(row.trace_violation->p == m.cycle_length);
    CHECK(row.agree());
    const auto hit = positive_trace_detector(g, m.n);
    REQUIRE(hit);
    CHECK(hit->p == m.cycle_length);
  }
}

TEST_CASE("report json schema") {
  VerificationReport ok;
  ok.subject = "x";
  ok.params = {{"n", 3}};
  ok.elapsed_ms = 1.5;
  const auto j = ok.to_json();
  CHECK(j.at("subject") == "x");
  CHECK(j.at("verdict") == "pass");
  CHECK(j.at("params").at("n") == 3);
  CHECK_FALSE(j.contains("counterexample"));
  CHECK(j.at("elapsed_ms") == 1.5);

  VerificationReport bad = ok;
  bad.pass = false;
  bad.counterexample = nlohmann::json{{"n", 5}, {"p", 2}};
  CHECK(bad.to_json().at("verdict") == "fail");
  CHECK(bad.to_json().at("counterexample").at("p") == 2);
}

TEST_SUITE_END();
