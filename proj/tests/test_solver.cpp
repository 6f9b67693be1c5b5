#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "latdeck/cut.hpp"
#include "latdeck/pipeline.hpp"
#include "latdeck/solver.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace latdeck;
using namespace latdeck::testing;

TEST_CASE("merging noncompetitive contests") {
  const auto merged = merge_noncompetitive(example1_style());
  REQUIRE(merged.has_merged_contest);
  REQUIRE(merged.style.contest_count() == 1);
  CHECK(merged.style.contests()[0].candidates == std::vector<int>{1, 2, 3});
  CHECK(merged.style.contests()[0].max_votes == 3);

  const auto untouched = merge_noncompetitive(fig2_style());
  CHECK_FALSE(untouched.has_merged_contest);
  CHECK(untouched.style.contest_count() == 2);
}

TEST_CASE("merging preserves every machine output") {
  std::mt19937 rng(606);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);  // up to 6 candidates
    const auto style = random_style(rng, n);
    const auto merged = merge_noncompetitive(style);
    for (int check = 0; check < 50; ++check) {
      const auto deck = random_feasible_deck(rng, style, static_cast<int>(rng() % 4));
      REQUIRE(tabulate_correct(style, deck) == tabulate_correct(merged.style, deck));
      const auto sigma = random_swap(rng, n);
      REQUIRE(tabulate_swapped(style, deck, sigma) ==
              tabulate_swapped(merged.style, deck, sigma));
    }
  }
}

TEST_CASE("the merged example solves in one iteration at length two") {
  const auto style = example1_style();
  const auto result = solve_style(style, RuleSet::none());
  REQUIRE(result.certified());
  CHECK(result.deck_length == 2);
  CHECK(result.iterations == 1);
  const bool first = result.deck.ballots == std::vector<Ballot>{Ballot{2, 3}, Ballot{3}};
  const bool second = result.deck.ballots == std::vector<Ballot>{Ballot{3}, Ballot{2, 3}};
  CHECK((first || second));
  CHECK(brute_force_check(style, result.deck).secure());
}

TEST_CASE("without merging the example needs extra iterations") {
  const auto result =
      solve_style(example1_style(), RuleSet::none(), Improvements::all_except(5));
  REQUIRE(result.certified());
  CHECK(result.deck_length == 2);
  CHECK(result.iterations >= 2);
  CHECK(brute_force_check(example1_style(), result.deck).secure());
}

TEST_CASE("two equivalent two-candidate contests need four ballots") {
  const BallotStyle twins("twins", {{"a", {1, 2}, 1}, {"b", {3, 4}, 1}});
  const auto result = solve_style(twins, RuleSet::michigan());
  REQUIRE(result.certified());
  CHECK(result.deck_length == 4);
  CHECK(brute_force_check(twins, result.deck).secure());
  // and no rule-satisfying three-ballot deck is secure
  CHECK_FALSE(SecureDeckSearch(twins, 3, true).find().has_value());
  // while the closed-form length formula predicts only three
  const auto formula = optimal_length_formula_check(twins);
  CHECK(formula.heuristic_length == 3);
  CHECK(formula.noncompetitive_candidates == 0);
  CHECK(formula.predicted_optimum == 3);
}

TEST_CASE("length formula on the worked examples") {
  const auto fig2 = optimal_length_formula_check(fig2_style());
  // president: max(3, ceil(12/2)) = 6; senate: max(2, ceil(6/2)) = 3
  CHECK(fig2.heuristic_length == 6);
  CHECK(fig2.noncompetitive_candidates == 0);
  CHECK(fig2.predicted_optimum == 6);

  const auto example1 = optimal_length_formula_check(example1_style());
  CHECK(example1.heuristic_length == 2);
  CHECK(example1.noncompetitive_candidates == 3);
  CHECK(example1.predicted_optimum == 3);
  // the formula presumes per-contest distinctness on the original contests;
  // without any rules the true optimum is two, so this is report-only
  CHECK(solve_style(example1_style(), RuleSet::none()).deck_length == 2);
}

TEST_CASE("solver certificates are confirmed by exhaustive search") {
  std::mt19937 rng(8088);
  RuleSet rules;
  rules.at_least_one_vote = true;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);  // up to 5 candidates
    const auto style = random_style(rng, n);
    const auto result = solve_style(style, rules);
    REQUIRE(result.certified());
    CHECK(brute_force_check(style, result.deck).secure());
    const auto counts = mark_counts(style, result.deck);
    for (int v : counts) CHECK(v >= 1);
    if (result.deck_length > 1)
      CHECK_FALSE(SecureDeckSearch(style, result.deck_length - 1, true).find().has_value());
  }
}

TEST_CASE("the tried lengths never decrease and cuts never repeat") {
  const BallotStyle style("s", {{"a", {1, 2}, 1}, {"b", {3, 4}, 1}, {"c", {5}, 1}});
  const auto result = solve_style(style, RuleSet::michigan());
  REQUIRE(result.certified());
  int last_length = 0;
  for (const auto& entry : result.trace) {
    CHECK(entry.deck_length >= last_length);
    last_length = entry.deck_length;
  }
  for (std::size_t a = 0; a < result.cut_set.size(); ++a)
    for (std::size_t b = a + 1; b < result.cut_set.size(); ++b)
      CHECK_FALSE(result.cut_set[a] == result.cut_set[b]);
  // trace alternates master solves and cut searches with timings
  CHECK_FALSE(result.trace.empty());
  for (const auto& entry : result.trace) CHECK(entry.wall_ms >= 0.0);
}

TEST_CASE("time limits produce partial results with a lower bound") {
  const auto style = generate_experiment(1, 5);
  SolveOptions options;
  options.time_limit_seconds = 1e-6;
  const auto result = solve_style(style, RuleSet::michigan(), Improvements::all(), options);
  CHECK_FALSE(result.certified());
  CHECK(result.lower_bound >= 1);
}

TEST_CASE("stopping at a known translatable length certifies without a deck") {
  // solving the same style twice: the second run early-halts at the first
  // run's optimum
  const auto style = generate_experiment(2, 3);
  const auto full = solve_style(style, RuleSet::michigan());
  REQUIRE(full.certified());
  SolveOptions options;
  options.stop_at_length = full.deck_length;
  const auto halted = solve_style(style, RuleSet::michigan(), Improvements::all(), options);
  CHECK(halted.certified());
  CHECK(halted.early_halt);
  CHECK(halted.deck_length == full.deck_length);
  CHECK(halted.deck.ballots.empty());
}

TEST_CASE("appended rule ballots are flagged and kept out of the security deck") {
  RuleSet rules = RuleSet::michigan();
  rules.append_full_overvote_ballot = true;
  const auto style = fig2_style();
  const auto result = solve_style(style, rules);
  REQUIRE(result.certified());
  REQUIRE(result.appended_ballots.size() == 1);
  CHECK(result.appended_ballots[0] == full_overvote_ballot(style));
  CHECK_FALSE(is_feasible(style, result.appended_ballots[0]));
  CHECK(is_feasible(style, result.deck));
  CHECK(result.full_deck().size() == result.deck.size() + 1);

  RuleSet exact = RuleSet::michigan();
  exact.append_exact_overvote_ballot = true;
  CHECK_THROWS_AS(solve_style(style, exact), InvalidInputError);
  exact.overvote_alert_assumed = true;
  const auto with_exact = solve_style(style, exact);
  REQUIRE(with_exact.appended_ballots.size() == 1);
  // two marks in each competitive contest of the original style
  CHECK(with_exact.appended_ballots[0] == Ballot{1, 2, 4, 5});
}

TEST_CASE("overvote ballots by construction") {
  const auto style = fig2_style();
  CHECK(full_overvote_ballot(style) == Ballot{1, 2, 3, 4, 5});
  CHECK(exact_overvote_ballot(style) == Ballot{1, 2, 4, 5});
  // noncompetitive contests receive no marks in the exact variant
  const auto ex1 = example1_style();
  CHECK(exact_overvote_ballot(ex1) == Ballot{});
}
