#pragma once

#include <vector>

#include "latdeck/ballot.hpp"
#include "latdeck/errors.hpp"
#include "latdeck/swap.hpp"

namespace latdeck {

/// Adversarial deck that hides every swap at once: one singleton ballot per
/// candidate. All totals equal one, and a swap can never cause an overvote on
/// singleton ballots, so the machine output is unchanged under any mapping.
/// Satisfies the at-least-one-vote rule, which is all many states require.
inline Deck hide_any_swap(const BallotStyle& style, const Swap& sigma) {
  if (sigma.size() != style.candidate_count())
    throw InvalidSwapError("swap size does not match candidate count");
  if (sigma.is_identity())
    throw InvalidSwapError("there is nothing to hide for the identity mapping");
  Deck deck;
  deck.ballots.reserve(static_cast<std::size_t>(style.candidate_count()));
  for (int i = 1; i <= style.candidate_count(); ++i) deck.ballots.push_back(Ballot{i});
  return deck;
}

/// Adversarial deck for a swap whose cycles never revisit a contest: k
/// copies of the ballot marking the k-th cycle's members. Candidates sharing
/// a contest land in different cycles, so their totals differ, which defeats
/// even the distinct-within-contest rule while the chosen swap stays hidden.
inline Deck hide_cross_contest_swap(const BallotStyle& style, const Swap& sigma) {
  if (sigma.size() != style.candidate_count())
    throw InvalidSwapError("swap size does not match candidate count");
  if (sigma.is_identity())
    throw InvalidSwapError("there is nothing to hide for the identity mapping");

  const auto cycles = cycle_decomposition(sigma);
  for (const auto& cycle : cycles) {
    std::vector<char> contest_seen(static_cast<std::size_t>(style.contest_count()), 0);
    for (int i : cycle) {
      auto& seen = contest_seen[static_cast<std::size_t>(style.contest_of(i))];
      if (seen)
        throw ConstructionInapplicableError(
            "a cycle of the swap visits one contest twice; the construction does not apply");
      seen = 1;
    }
  }

  Deck deck;
  for (std::size_t k = 0; k < cycles.size(); ++k) {
    const Ballot ballot{std::vector<int>(cycles[k].begin(), cycles[k].end())};
    for (std::size_t copy = 0; copy <= k; ++copy) deck.ballots.push_back(ballot);
  }
  return deck;
}

}  // namespace latdeck
