#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "latdeck/ballot.hpp"
#include "support/fixtures.hpp"

using namespace latdeck;
using namespace latdeck::testing;

TEST_CASE("ballot style validation") {
  CHECK_NOTHROW(fig2_style());
  // candidate appearing twice
  CHECK_THROWS_AS(BallotStyle("bad", {{"a", {1, 2}, 1}, {"b", {2, 3}, 1}}), InvalidInputError);
  // index outside 1..N
  CHECK_THROWS_AS(BallotStyle("bad", {{"a", {1, 3}, 1}}), InvalidInputError);
  // cap above contest size
  CHECK_THROWS_AS(BallotStyle("bad", {{"a", {1, 2}, 3}}), InvalidInputError);
  CHECK_THROWS_AS(BallotStyle("bad", {{"a", {1, 2}, 0}}), InvalidInputError);
  // empty contest
  CHECK_THROWS_AS(BallotStyle("bad", {{"a", {}, 1}}), InvalidInputError);

  const auto style = fig2_style();
  CHECK(style.candidate_count() == 5);
  CHECK(style.contest_of(2) == 0);
  CHECK(style.contest_of(5) == 1);
  CHECK(style.candidate_name(5) == "Clay");
  CHECK(style.contests()[0].noncompetitive() == false);
}

TEST_CASE("ballot feasibility") {
  const auto style = fig2_style();
  CHECK(is_feasible(style, Ballot{1, 4}));
  CHECK(is_feasible(style, Ballot{}));
  CHECK_FALSE(is_feasible(style, Ballot{1, 2}));
  CHECK_THROWS_AS(is_feasible(style, Ballot{6}), InvalidInputError);
}

TEST_CASE("correct tabulation of the heuristic deck") {
  const auto style = fig2_style();
  const auto deck = fig2_heuristic_deck();
  CHECK(tabulate_correct(style, deck).totals == std::vector<int>{1, 2, 3, 1, 2});
  CHECK(tabulate_correct(style, Deck{}).totals == std::vector<int>{0, 0, 0, 0, 0});
  // an overvoted contest contributes nothing, other contests are unaffected
  CHECK(tabulate_correct(style, Deck({Ballot{1, 2}})).totals ==
        std::vector<int>{0, 0, 0, 0, 0});
  CHECK(tabulate_correct(style, Deck({Ballot{1, 2, 4}})).totals ==
        std::vector<int>{0, 0, 0, 1, 0});
}

TEST_CASE("swapped tabulation matches the worked example") {
  const auto style = fig2_style();
  const auto deck = fig2_heuristic_deck();
  const auto correct = tabulate_correct(style, deck);

  // Jefferson/Clay swap leaves the output unchanged: not detected.
  const auto hidden = tabulate_swapped(style, deck, Swap::transposition(5, 2, 5));
  CHECK(hidden.totals == std::vector<int>{1, 2, 3, 1, 2});
  CHECK(hidden == correct);

  // Jefferson/Lincoln swap changes totals: detected.
  CHECK(tabulate_swapped(style, deck, Swap::transposition(5, 2, 3)) != correct);

  CHECK(tabulate_swapped(style, deck, Swap::identity(5)) == correct);
  CHECK_THROWS_AS(tabulate_swapped(style, deck, Swap::identity(4)), InvalidSwapError);
}

TEST_CASE("identity tabulation equals correct tabulation on infeasible decks") {
  const auto style = fig2_style();
  const Deck deck({Ballot{1, 2, 3}, Ballot{4, 5}, Ballot{1, 2, 4, 5}});
  CHECK(tabulate_swapped(style, deck, Swap::identity(5)) == tabulate_correct(style, deck));
}

TEST_CASE("detects matches the worked example and rejects bad input") {
  const auto style = fig2_style();
  const auto deck = fig2_heuristic_deck();
  CHECK_FALSE(detects(style, deck, Swap::transposition(5, 2, 5)));
  CHECK(detects(style, deck, Swap::transposition(5, 2, 3)));
  CHECK_THROWS_AS(detects(style, deck, Swap::identity(5)), InvalidSwapError);
  const Deck overvoted({Ballot{1, 2}});
  CHECK_THROWS_AS(detects(style, overvoted, Swap::transposition(5, 2, 3)), PreconditionError);
}

TEST_CASE("detects is equivalent to comparing machine outputs") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);  // up to 6 candidates
    const auto style = random_style(rng, n);
    const auto deck = random_feasible_deck(rng, style, static_cast<int>(rng() % 5));
    const auto correct = tabulate_correct(style, deck);
    for_each_nonidentity_swap(n, [&](const Swap& sigma) {
      const bool by_conditions = detects(style, deck, sigma);
      const bool by_tallies = tabulate_swapped(style, deck, sigma) != correct;
      REQUIRE(by_conditions == by_tallies);
    });
  }
  // spot check at 7 candidates
  const auto style = random_style(rng, 7);
  const auto deck = random_feasible_deck(rng, style, 4);
  const auto correct = tabulate_correct(style, deck);
  for_each_nonidentity_swap(7, [&](const Swap& sigma) {
    REQUIRE(detects(style, deck, sigma) == (tabulate_swapped(style, deck, sigma) != correct));
  });
}

TEST_CASE("feasible-deck totals count the ballots marking each target") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const auto style = random_style(rng, n);
    const auto deck = random_feasible_deck(rng, style, static_cast<int>(rng() % 6));
    const auto tally = tabulate_correct(style, deck);
    const auto counts = mark_counts(style, deck);
    CHECK(tally.totals == counts);
    for (int v : tally.totals) {
      CHECK(v >= 0);
      CHECK(v <= deck.size());
    }
  }
}

TEST_CASE("tallies are invariant under deck reordering") {
  std::mt19937 rng(99);
  const auto style = random_style(rng, 6);
  const auto deck = random_feasible_deck(rng, style, 5);
  const auto sigma = random_swap(rng, 6);
  auto shuffled = deck;
  std::shuffle(shuffled.ballots.begin(), shuffled.ballots.end(), rng);
  CHECK(tabulate_correct(style, deck) == tabulate_correct(style, shuffled));
  CHECK(tabulate_swapped(style, deck, sigma) == tabulate_swapped(style, shuffled, sigma));
}

TEST_CASE("swapped totals stay within deck bounds under any mapping") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const auto style = random_style(rng, n);
    const auto deck = random_feasible_deck(rng, style, static_cast<int>(rng() % 5));
    const auto sigma = random_swap(rng, n);
    for (int total : tabulate_swapped(style, deck, sigma).totals) {
      CHECK(total >= 0);
      CHECK(total <= deck.size());
    }
  }
}
