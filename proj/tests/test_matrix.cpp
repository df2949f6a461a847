#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "mprover/dimacs.hpp"
#include "mprover/error.hpp"
#include "mprover/generator.hpp"
#include "mprover/oracle.hpp"
#include "mprover/search.hpp"
#include "oracles.hpp"

using namespace mprover;

namespace {

Matrix uniform_distinct(std::size_t n, std::size_t m) {
  // clause i uses symbols i*m .. i*m+m-1, all positive: no closures possible
  std::vector<Clause> cs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) cs[i].push_back({static_cast<std::uint32_t>(i * m + j), false});
  }
  return Matrix(std::move(cs), static_cast<std::uint32_t>(n * m));
}

PathCount product_of_lengths_after(const Matrix& m, std::size_t clause_index_1based) {
  PathCount p = 1;
  for (std::size_t i = clause_index_1based; i < m.size(); ++i) p *= m.clause(i).size();
  return p;
}

}  // namespace

TEST_CASE("total_paths is the product of clause lengths") {
  CHECK(total_paths(uniform_distinct(20, 3)) == PathCount(3486784401ULL));
  CHECK(total_paths(Matrix({}, 1)) == 1);
  CHECK(total_paths(mat({{1, 2}, {}, {1}})) == 0);
  CHECK(total_paths(mat({{1, 2}, {1, 2, 3}, {1}})) == 6);
}

TEST_CASE("matrix rejects literals outside the alphabet") {
  CHECK_THROWS_AS(Matrix({{Literal{3, false}}}, 3), Error);
}

TEST_CASE("initial search states") {
  SUBCASE("two unit clauses") {
    auto m = mat({{1}, {-1}});
    SearchState s(m);
    CHECK(s.status() == SearchStatus::Running);
    CHECK(s.total() == 1);
    CHECK(s.fraction_explored() == 0);
  }
  SUBCASE("empty clause is proof of w") {
    auto m = mat({{1}, {}});
    SearchState s(m);
    CHECK(s.status() == SearchStatus::Exhausted);
    CHECK(s.closed() == 0);
    CHECK(s.total() == 0);
    CHECK_THROWS_AS(s.fraction_explored(), Error);
  }
  SUBCASE("empty matrix has the empty open path") {
    Matrix m({}, 1);
    SearchState s(m);
    CHECK(s.status() == SearchStatus::OpenFound);
    REQUIRE(s.witness());
    CHECK(s.witness()->empty());
  }
}

TEST_CASE("step_search examples") {
  SUBCASE("complementary units close in one event") {
    auto m = mat({{1}, {-1}});
    SearchState s(m);
    auto events = s.step(PathCount(1));
    REQUIRE(events.size() == 1);
    CHECK(events[0].clause_index == 2);
    CHECK(events[0].pruned == 1);
    CHECK(events[0].cumulative_closed == 1);
    CHECK(s.status() == SearchStatus::Exhausted);
    CHECK(s.fraction_explored() == 1);
    try {
      s.step(PathCount(1));
      FAIL("expected invalid-state");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InvalidState);
    }
  }
  SUBCASE("satisfiable by B") {
    auto m = mat({{1, 2}, {-1, 2}});
    SearchState s(m);
    auto events = s.step(PathCount(1000));
    REQUIRE(events.size() == 1);
    CHECK(events[0].clause_index == 2);
    CHECK(events[0].pruned == 1);
    CHECK(s.status() == SearchStatus::OpenFound);
    auto w = s.witness_literals();
    REQUIRE(w.size() == 2);
    CHECK(w[0] == Literal{0, false});
    CHECK(w[1] == Literal{1, false});
  }
  SUBCASE("budget below 1 is rejected") {
    auto m = mat({{1}, {-1}});
    SearchState s(m);
    CHECK_THROWS_AS(s.step(PathCount(0)), Error);
  }
}

TEST_CASE("closure at the second of 20 ternary clauses explores 1/9") {
  // clause 1 = {A, x, y}; clause 2 = {~A, ...}; the rest fresh symbols
  std::vector<Clause> cs(20);
  std::uint32_t next = 1;
  cs[0] = {{0, false}, {next++, false}, {next++, false}};
  cs[1] = {{0, true}, {next++, false}, {next++, false}};
  for (std::size_t i = 2; i < 20; ++i) {
    for (int j = 0; j < 3; ++j) cs[i].push_back({next++, false});
  }
  Matrix m(std::move(cs), next);
  SearchState s(m);
  auto events = s.step(PathCount(1));
  REQUIRE(events.size() == 1);
  CHECK(events[0].clause_index == 2);
  CHECK(events[0].pruned == boost::multiprecision::pow(PathCount(3), 18));
  CHECK(s.fraction_explored() == Rational(1, 9));
}

TEST_CASE("brute_force_sat examples and limit") {
  CHECK_FALSE(brute_force_sat(mat({{1}, {-1}})));
  CHECK(brute_force_sat(mat({{1, 2}, {-1, 2}})));
  CHECK(brute_force_sat(Matrix({}, 3)));
  CHECK_FALSE(brute_force_sat(mat({{1}, {}})));
  Matrix big({{Literal{20, false}}}, 21);
  try {
    brute_force_sat(big);
    FAIL("expected oracle-limit-exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OracleLimitExceeded);
  }
  CHECK(brute_force_sat(big, 21));
}

TEST_CASE("the two satisfiability oracles agree") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto m = oracle::random_matrix(rng, 1 + rng() % 8, 1 + rng() % 12, 1, 3);
    CHECK(brute_force_sat(m) == oracle::satisfiable(m));
  }
}

TEST_CASE("200 random 8-symbol instances: search verdict matches truth table") {
  GeneratorConfig cfg{14, 3, 8, 2024};
  auto corpus = generate_corpus(cfg, 200);
  for (const auto& m : corpus) {
    SearchState s(m);
    s.run_to_end();
    CHECK((s.status() == SearchStatus::OpenFound) == brute_force_sat(m));
  }
}

TEST_CASE("search properties on random matrices with mixed clause lengths") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 400; ++iter) {
    const auto k = static_cast<std::uint32_t>(1 + rng() % 12);
    auto m = oracle::random_matrix(rng, k, 1 + rng() % 10, 1, 4);
    SearchState s(m);
    std::vector<ClosureEvent> log;
    Rational last = 0;
    while (!s.terminal()) {
      const PathCount budget = 1 + rng() % 7;
      auto events = s.step(budget);
      for (const auto& e : events) {
        // per-event pruning equals the product of the clause lengths below it
        CHECK(e.pruned == product_of_lengths_after(m, e.clause_index));
        CHECK(e.cumulative_closed <= s.total());
      }
      log.insert(log.end(), events.begin(), events.end());
      const Rational f = s.fraction_explored();
      CHECK(f >= last);
      last = f;
    }
    const bool sat = oracle::satisfiable(m);
    CHECK((s.status() == SearchStatus::OpenFound) == sat);

    // closed count is reproducible from the event log
    PathCount sum = 0;
    for (const auto& e : log) sum += e.pruned;
    CHECK(sum == s.closed());
    if (s.status() == SearchStatus::Exhausted) CHECK(sum == total_paths(m));

    if (s.status() == SearchStatus::OpenFound) {
      auto w = s.witness_literals();
      REQUIRE(w.size() == m.size());
      for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) CHECK_FALSE(w[i] == w[j].complement());
      }
    }

    // determinism: a fresh run with one big budget yields the same log
    SearchState again(m);
    std::vector<ClosureEvent> log2;
    while (!again.terminal()) {
      auto ev = again.step(total_paths(m) + 1);
      log2.insert(log2.end(), ev.begin(), ev.end());
    }
    CHECK(log2 == log);
    CHECK(again.status() == s.status());
  }
}

TEST_CASE("tautologies never close a path by themselves") {
  auto m = mat({{1, -1}});
  SearchState s(m);
  s.run_to_end();
  CHECK(s.status() == SearchStatus::OpenFound);
}

TEST_CASE("dimacs parsing") {
  auto m = parse_dimacs("c comment\np cnf 3 2\n1 -2 0\n3\n -1 0\n");
  REQUIRE(m.size() == 2);
  CHECK(m.alphabet_size() == 3);
  CHECK(m.clause(0) == Clause{{0, false}, {1, true}});
  CHECK(m.clause(1) == Clause{{2, false}, {0, true}});

  auto empty_clause = parse_dimacs("p cnf 1 2\n1 0\n0\n");
  CHECK(empty_clause.clause(1).empty());

  auto expect_parse_error = [](const char* text) {
    try {
      parse_dimacs(text);
      FAIL("expected parse error for: " << text);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ParseError);
    }
  };
  expect_parse_error("1 2 0\n");
  expect_parse_error("p cnf 2 1\n1 3 0\n");
  expect_parse_error("p cnf 2 2\n1 2 0\n");
  expect_parse_error("p cnf 2 1\n1 2\n");
  expect_parse_error("p cnf 2 1\n1 x 0\n");
  expect_parse_error("p dnf 2 1\n1 0\n");
}

TEST_CASE("dimacs write/parse round trip") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto m = oracle::random_matrix(rng, 1 + rng() % 20, rng() % 15, 0, 5);
    CHECK(parse_dimacs(to_dimacs(m)) == m);
  }
}
