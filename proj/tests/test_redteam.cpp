#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "latdeck/cut.hpp"
#include "latdeck/redteam.hpp"
#include "support/fixtures.hpp"

using namespace latdeck;
using namespace latdeck::testing;

TEST_CASE("the singleton deck hides every swap at once") {
  const auto style = fig2_style();
  const auto deck = hide_any_swap(style, Swap::transposition(5, 2, 5));
  CHECK(deck.size() == 5);
  CHECK(mark_counts(style, deck) == std::vector<int>{1, 1, 1, 1, 1});
  const auto correct = tabulate_correct(style, deck);
  for_each_nonidentity_swap(5, [&](const Swap& sigma) {
    REQUIRE(tabulate_swapped(style, deck, sigma) == correct);
  });
  CHECK_FALSE(brute_force_check(style, deck).secure());
  CHECK_THROWS_AS(hide_any_swap(style, Swap::identity(5)), InvalidSwapError);
}

TEST_CASE("singleton decks hide random swaps on random styles") {
  std::mt19937 rng(86);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);  // up to 7 candidates
    const auto style = random_style(rng, n);
    const auto sigma = random_swap(rng, n);
    const auto deck = hide_any_swap(style, sigma);
    CHECK(tabulate_swapped(style, deck, sigma) == tabulate_correct(style, deck));
    for (int v : mark_counts(style, deck)) CHECK(v == 1);
  }
}

TEST_CASE("the cycle-block deck defeats the distinct-totals rule") {
  const auto style = fig2_style();
  const auto sigma = Swap::transposition(5, 2, 5);
  const auto deck = hide_cross_contest_swap(style, sigma);
  // cycles {1}, {2,5}, {3}, {4} give 1 + 2 + 3 + 4 ballots
  CHECK(deck.size() == 10);
  CHECK(is_feasible(style, deck));
  // hidden
  CHECK(tabulate_swapped(style, deck, sigma) == tabulate_correct(style, deck));
  CHECK_FALSE(detects(style, deck, sigma));
  // at least one vote everywhere, distinct totals within each contest
  const auto counts = mark_counts(style, deck);
  for (int v : counts) CHECK(v >= 1);
  for (const auto& contest : style.contests())
    for (std::size_t a = 0; a < contest.candidates.size(); ++a)
      for (std::size_t b = a + 1; b < contest.candidates.size(); ++b)
        CHECK(counts[static_cast<std::size_t>(contest.candidates[a] - 1)] !=
              counts[static_cast<std::size_t>(contest.candidates[b] - 1)]);
  // and the checker still flags the deck
  const auto report = find_undetected_swap(style, deck);
  REQUIRE_FALSE(report.secure());
  CHECK_FALSE(detects(style, deck, *report.witness));
}

TEST_CASE("the construction refuses cycles that revisit a contest") {
  const auto style = fig2_style();
  // 2 -> 3 -> 2 stays inside the presidential contest
  CHECK_THROWS_AS(hide_cross_contest_swap(style, Swap::transposition(5, 2, 3)),
                  ConstructionInapplicableError);
}

TEST_CASE("cycle-block decks hide applicable random swaps") {
  std::mt19937 rng(249);
  int applicable = 0;
  for (int trial = 0; trial < 200 && applicable < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);  // up to 6 candidates
    const auto style = random_style(rng, n);
    const auto sigma = random_swap(rng, n);
    Deck deck;
    try {
      deck = hide_cross_contest_swap(style, sigma);
    } catch (const ConstructionInapplicableError&) {
      continue;
    }
    ++applicable;
    CHECK(is_feasible(style, deck));
    CHECK(tabulate_swapped(style, deck, sigma) == tabulate_correct(style, deck));
    const auto counts = mark_counts(style, deck);
    for (int v : counts) CHECK(v >= 1);
    for (const auto& contest : style.contests())
      for (std::size_t a = 0; a < contest.candidates.size(); ++a)
        for (std::size_t b = a + 1; b < contest.candidates.size(); ++b)
          CHECK(counts[static_cast<std::size_t>(contest.candidates[a] - 1)] !=
                counts[static_cast<std::size_t>(contest.candidates[b] - 1)]);
  }
  CHECK(applicable >= 25);
}
