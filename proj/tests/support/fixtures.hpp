#pragma once

#include <random>
#include <vector>

#include "latdeck/ballot.hpp"
#include "latdeck/swap.hpp"

namespace latdeck::testing {

// The running example: a presidential contest (Washington, Jefferson,
// Lincoln) and a senatorial contest (Adams, Clay), one vote each.
inline BallotStyle fig2_style() {
  return BallotStyle(
      "fig2",
      {{"president", {1, 2, 3}, 1}, {"senate", {4, 5}, 1}},
      {"Washington", "Jefferson", "Lincoln", "Adams", "Clay"});
}

// The heuristic deck for that style: one ballot for the first candidate of
// each contest, two for the second, three for the third.
inline Deck fig2_heuristic_deck() {
  return Deck({Ballot{1, 4}, Ballot{2, 5}, Ballot{2, 5}, Ballot{3}, Ballot{3}, Ballot{3}});
}

// Two noncompetitive contests: {1} with one vote and {2,3} with two votes.
inline BallotStyle example1_style() {
  return BallotStyle("example1", {{"first", {1}, 1}, {"second", {2, 3}, 2}});
}

// Random ballot style with the given candidate count: a random partition of
// 1..n into contests with random caps.
inline BallotStyle random_style(std::mt19937& rng, int n) {
  std::vector<Contest> contests;
  int next = 1;
  int c = 0;
  while (next <= n) {
    const int remaining = n - next + 1;
    const int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(remaining));
    Contest contest;
    contest.contest_id = "c" + std::to_string(++c);
    for (int k = 0; k < size; ++k) contest.candidates.push_back(next++);
    contest.max_votes = 1 + static_cast<int>(rng() % static_cast<unsigned>(size));
    contests.push_back(std::move(contest));
  }
  return BallotStyle("random", std::move(contests));
}

// Random feasible ballot: per contest, up to the cap of its candidates.
inline Ballot random_feasible_ballot(std::mt19937& rng, const BallotStyle& style) {
  std::vector<int> marks;
  for (const auto& contest : style.contests()) {
    const int picks = static_cast<int>(rng() % static_cast<unsigned>(contest.max_votes + 1));
    std::vector<int> pool = contest.candidates;
    for (int k = 0; k < picks; ++k) {
      const std::size_t at = rng() % pool.size();
      marks.push_back(pool[at]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
    }
  }
  return Ballot(std::move(marks));
}

inline Deck random_feasible_deck(std::mt19937& rng, const BallotStyle& style, int length) {
  Deck deck;
  for (int b = 0; b < length; ++b) deck.ballots.push_back(random_feasible_ballot(rng, style));
  return deck;
}

inline Swap random_swap(std::mt19937& rng, int n) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 1);
  do {
    std::shuffle(image.begin(), image.end(), rng);
  } while (std::is_sorted(image.begin(), image.end()));
  return Swap(image);
}

/// Visit every non-identity bijection of 1..n.
template <typename Fn>
void for_each_nonidentity_swap(int n, Fn&& fn) {
  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 1);
  while (std::next_permutation(image.begin(), image.end())) fn(Swap(image));
}

}  // namespace latdeck::testing
