#include <catch2/catch_amalgamated.hpp>

#include <climits>
#include <random>
#include <sstream>

#include "latdeck/milp.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace latdeck;
using namespace latdeck::milp;

TEST_CASE("trivial feasibility and infeasibility") {
  Model feasible;
  const int x = feasible.add_binary("x");
  feasible.add_constraint({{x, 1.0}}, Relation::kGreaterEqual, 1.0);
  const auto r1 = solve(feasible);
  REQUIRE(r1.status == SolveStatus::kOptimal);
  CHECK(r1.value(x) == 1.0);

  Model infeasible;
  const int y = infeasible.add_binary("y");
  infeasible.add_constraint({{y, 1.0}}, Relation::kGreaterEqual, 2.0);
  CHECK(solve(infeasible).status == SolveStatus::kInfeasible);
}

TEST_CASE("model validation") {
  Model m;
  const int x = m.add_binary("x");
  CHECK_THROWS_AS(m.add_constraint({{x + 1, 1.0}}, Relation::kEqual, 0.0), InvalidInputError);
  CHECK_THROWS_AS(m.add_constraint({{x, 1.0 / 0.0}}, Relation::kEqual, 0.0), InvalidInputError);
  CHECK_THROWS_AS(m.set_objective_coefficient(7, 1.0), InvalidInputError);
}

TEST_CASE("repeated solves are deterministic") {
  std::mt19937 rng(8);
  Model m;
  for (int j = 0; j < 10; ++j) m.add_binary("b" + std::to_string(j));
  for (int c = 0; c < 6; ++c) {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < 10; ++j) {
      const int coef = static_cast<int>(rng() % 5) - 2;
      if (coef) terms.emplace_back(j, coef);
    }
    m.add_constraint(terms, Relation::kLessEqual, static_cast<int>(rng() % 4));
  }
  for (int j = 0; j < 10; ++j) m.set_objective_coefficient(j, static_cast<int>(rng() % 3));
  const auto first = solve(m);
  for (int repeat = 0; repeat < 3; ++repeat) {
    const auto again = solve(m);
    REQUIRE(again.status == first.status);
    if (first.status == SolveStatus::kOptimal) {
      CHECK(again.objective == first.objective);
      CHECK(again.assignment == first.assignment);
    }
  }
}

TEST_CASE("random models agree with exhaustive enumeration") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 600; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const int rows = 1 + static_cast<int>(rng() % 8);
    Model m;
    for (int j = 0; j < n; ++j) m.add_binary("");
    std::vector<std::vector<int>> coefs(static_cast<std::size_t>(rows),
                                        std::vector<int>(static_cast<std::size_t>(n)));
    std::vector<int> rhs(static_cast<std::size_t>(rows));
    std::vector<int> rel(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) {
      std::vector<std::pair<int, double>> terms;
      for (int j = 0; j < n; ++j) {
        coefs[r][j] = static_cast<int>(rng() % 7) - 3;
        if (coefs[r][j]) terms.emplace_back(j, coefs[r][j]);
      }
      rhs[r] = static_cast<int>(rng() % 9) - 3;
      rel[r] = static_cast<int>(rng() % 3);
      m.add_constraint(terms,
                       rel[r] == 0   ? Relation::kLessEqual
                       : rel[r] == 1 ? Relation::kGreaterEqual
                                     : Relation::kEqual,
                       rhs[r]);
    }
    std::vector<int> obj(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      obj[j] = static_cast<int>(rng() % 6) - 2;
      m.set_objective_coefficient(j, obj[j]);
    }

    long best = LONG_MAX;
    for (long mask = 0; mask < (1L << n); ++mask) {
      bool ok = true;
      for (int r = 0; r < rows && ok; ++r) {
        long lhs = 0;
        for (int j = 0; j < n; ++j)
          if (mask >> j & 1) lhs += coefs[r][j];
        ok = rel[r] == 0 ? lhs <= rhs[r] : rel[r] == 1 ? lhs >= rhs[r] : lhs == rhs[r];
      }
      if (!ok) continue;
      long o = 0;
      for (int j = 0; j < n; ++j)
        if (mask >> j & 1) o += obj[j];
      best = std::min(best, o);
    }

    const auto outcome = solve(m);
    if (best == LONG_MAX) {
      REQUIRE(outcome.status == SolveStatus::kInfeasible);
    } else {
      REQUIRE(outcome.status == SolveStatus::kOptimal);
      REQUIRE(std::llround(outcome.objective) == best);
    }
  }
}

TEST_CASE("continuous variables are honored") {
  // minimize 0 with y >= b1 + b2 - 1, y + z <= 0.5, b1 + b2 >= k
  for (int k : {1, 2}) {
    Model m;
    const int b1 = m.add_binary("b1");
    const int b2 = m.add_binary("b2");
    const int y = m.add_continuous("y");
    m.add_constraint({{y, 1.0}, {b1, -1.0}, {b2, -1.0}}, Relation::kGreaterEqual, -1.0);
    m.add_constraint({{y, 1.0}}, Relation::kLessEqual, 0.5);
    m.add_constraint({{b1, 1.0}, {b2, 1.0}}, Relation::kGreaterEqual, k);
    const auto outcome = solve(m);
    if (k == 1)
      CHECK(outcome.status == SolveStatus::kOptimal);
    else
      CHECK(outcome.status == SolveStatus::kInfeasible);  // y would need to be 1
  }
}

TEST_CASE("distinct-votes assignment model reproduces the partition oracle") {
  const auto style = latdeck::testing::fig2_style();
  CHECK(latdeck::testing::distinct_votes_length_oracle(style) == 8);

  // The same optimum through the solver-backed model: built in test form
  // here; the bounds module exercises the production path.
  Model m;
  const int n = style.candidate_count();
  std::vector<std::vector<int>> gamma(static_cast<std::size_t>(style.contest_count()),
                                      std::vector<int>(static_cast<std::size_t>(n + 1)));
  for (int c = 0; c < style.contest_count(); ++c)
    for (int g = 1; g <= n; ++g) gamma[c][g] = m.add_binary("");
  std::vector<int> bits;
  for (int value = 1; value <= n * (n + 1) / 2; value *= 2) bits.push_back(m.add_binary(""));
  for (std::size_t k = 0; k < bits.size(); ++k)
    m.set_objective_coefficient(bits[k], static_cast<double>(1 << k));
  for (int c = 0; c < style.contest_count(); ++c) {
    std::vector<std::pair<int, double>> row;
    for (int g = 1; g <= n; ++g) row.emplace_back(gamma[c][g], 1.0);
    m.add_constraint(row, Relation::kEqual, style.contests()[c].size());
    std::vector<std::pair<int, double>> load;
    for (std::size_t k = 0; k < bits.size(); ++k)
      load.emplace_back(bits[k], style.contests()[c].max_votes * static_cast<double>(1 << k));
    for (int g = 1; g <= n; ++g) load.emplace_back(gamma[c][g], -static_cast<double>(g));
    m.add_constraint(load, Relation::kGreaterEqual, 0.0);
  }
  for (int g = 1; g <= n; ++g) {
    std::vector<std::pair<int, double>> col;
    for (int c = 0; c < style.contest_count(); ++c) col.emplace_back(gamma[c][g], 1.0);
    m.add_constraint(col, Relation::kEqual, 1.0);
  }
  std::vector<std::pair<int, double>> length;
  for (std::size_t k = 0; k < bits.size(); ++k)
    length.emplace_back(bits[k], static_cast<double>(1 << k));
  m.add_constraint(length, Relation::kGreaterEqual, n);
  const auto outcome = solve(m);
  REQUIRE(outcome.status == SolveStatus::kOptimal);
  CHECK(std::llround(outcome.objective) == 8);
}

TEST_CASE("timeouts are reported, not mislabelled") {
  std::mt19937 rng(5150);
  Model m;
  const int n = 26;
  for (int j = 0; j < n; ++j) m.add_binary("");
  for (int r = 0; r < 18; ++r) {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < n; ++j) terms.emplace_back(j, static_cast<int>(rng() % 13) - 6);
    m.add_constraint(terms, Relation::kEqual, static_cast<int>(rng() % 3) - 1);
  }
  m.params().time_limit_seconds = 1e-6;
  const auto outcome = solve(m);
  CHECK(outcome.status == SolveStatus::kTimeout);
}

TEST_CASE("unknown backends are rejected and the default is present") {
  CHECK(default_backend() == "native");
  Model m;
  m.add_binary("x");
  CHECK_THROWS_AS(solve(m, "gurobi"), InvalidInputError);
  CHECK_THROWS_AS(set_default_backend("mosek"), InvalidInputError);
}

TEST_CASE("lp export emits the model") {
  Model m;
  const int x = m.add_binary("x");
  const int y = m.add_continuous("y");
  m.set_objective_coefficient(x, 2.0);
  m.add_constraint({{x, 1.0}, {y, -1.0}}, Relation::kLessEqual, 3.0, "cap");
  std::ostringstream out;
  m.write_lp(out);
  const std::string text = out.str();
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("cap:") != std::string::npos);
  CHECK(text.find("Binaries") != std::string::npos);
  CHECK(text.find("x") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}
