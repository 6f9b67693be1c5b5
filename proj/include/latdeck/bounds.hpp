#pragma once

#include <string>
#include <vector>

#include "latdeck/ballot.hpp"
#include "latdeck/errors.hpp"
#include "latdeck/milp.hpp"

namespace latdeck {

/// The closed-form feasible deck: candidate i alone on exactly i singleton
/// ballots, N(N+1)/2 ballots total. Every candidate ends with a distinct
/// positive total, which detects every swap.
inline Deck triangular_deck(const BallotStyle& style) {
  Deck deck;
  const int n = style.candidate_count();
  deck.ballots.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int i = 1; i <= n; ++i)
    for (int copy = 0; copy < i; ++copy) deck.ballots.push_back(Ballot{i});
  return deck;
}

/// Shortest deck giving every candidate a distinct positive vote total.
/// Chooses which total in 1..N each contest's candidates receive by a small
/// assignment model, then packs the votes round-robin into ballots.
inline Deck distinct_votes_deck(const BallotStyle& style, double time_limit_seconds = 0.0) {
  const int n = style.candidate_count();
  const int num_contests = style.contest_count();

  // gamma[c][g] = 1 when some candidate of contest c receives exactly g
  // votes (g in 1..N). The deck length B is a bounded integer modelled in
  // binary so the assignment trades off against the packing bound.
  milp::Model model;
  std::vector<std::vector<int>> gamma(static_cast<std::size_t>(num_contests),
                                      std::vector<int>(static_cast<std::size_t>(n + 1)));
  for (int c = 0; c < num_contests; ++c)
    for (int g = 1; g <= n; ++g)
      gamma[static_cast<std::size_t>(c)][static_cast<std::size_t>(g)] =
          model.add_binary("gamma_c" + std::to_string(c) + "_g" + std::to_string(g));

  const int max_length = n * (n + 1) / 2;  // the triangular deck always fits
  std::vector<int> bits;
  for (int value = 1; value <= max_length; value *= 2)
    bits.push_back(model.add_binary("B_bit" + std::to_string(bits.size())));
  std::vector<std::pair<int, double>> length_terms;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    length_terms.emplace_back(bits[k], static_cast<double>(1 << k));
    model.set_objective_coefficient(bits[k], static_cast<double>(1 << k));
  }

  for (int c = 0; c < num_contests; ++c) {
    const auto& contest = style.contests()[static_cast<std::size_t>(c)];
    std::vector<std::pair<int, double>> row;
    for (int g = 1; g <= n; ++g)
      row.emplace_back(gamma[static_cast<std::size_t>(c)][static_cast<std::size_t>(g)], 1.0);
    model.add_constraint(std::move(row), milp::Relation::kEqual, contest.size());
    // B >= (sum of this contest's totals) / v_c
    std::vector<std::pair<int, double>> load = length_terms;
    for (auto& term : load) term.second *= contest.max_votes;
    for (int g = 1; g <= n; ++g)
      load.emplace_back(gamma[static_cast<std::size_t>(c)][static_cast<std::size_t>(g)],
                        -static_cast<double>(g));
    model.add_constraint(std::move(load), milp::Relation::kGreaterEqual, 0.0);
  }
  for (int g = 1; g <= n; ++g) {
    std::vector<std::pair<int, double>> col;
    for (int c = 0; c < num_contests; ++c)
      col.emplace_back(gamma[static_cast<std::size_t>(c)][static_cast<std::size_t>(g)], 1.0);
    model.add_constraint(std::move(col), milp::Relation::kEqual, 1.0);
  }
  model.add_constraint(length_terms, milp::Relation::kGreaterEqual, static_cast<double>(n));
  model.params().time_limit_seconds = time_limit_seconds;

  const auto outcome = milp::solve(model);
  if (outcome.status == milp::SolveStatus::kTimeout)
    throw TimeoutError("distinct-votes bound hit its time limit");
  if (outcome.status != milp::SolveStatus::kOptimal)
    throw InternalError("distinct-votes bound could not be solved");

  int length = 0;
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (outcome.value(bits[k]) > 0.5) length += 1 << k;

  // Candidate totals: each contest's selected values in increasing order, by
  // increasing candidate index.
  std::vector<int> votes_for(static_cast<std::size_t>(n + 1), 0);
  for (int c = 0; c < num_contests; ++c) {
    const auto& contest = style.contests()[static_cast<std::size_t>(c)];
    std::vector<int> values;
    for (int g = 1; g <= n; ++g)
      if (outcome.value(gamma[static_cast<std::size_t>(c)][static_cast<std::size_t>(g)]) > 0.5)
        values.push_back(g);
    if (static_cast<int>(values.size()) != contest.size())
      throw InternalError("distinct-votes assignment lost a candidate");
    for (int k = 0; k < contest.size(); ++k)
      votes_for[static_cast<std::size_t>(contest.candidates[static_cast<std::size_t>(k)])] =
          values[static_cast<std::size_t>(k)];
  }

  // Round-robin packing: per contest, deal each candidate's votes onto
  // consecutive ballots, wrapping modulo the deck length.
  Deck deck;
  deck.ballots.assign(static_cast<std::size_t>(length), Ballot{});
  std::vector<std::vector<int>> marks(static_cast<std::size_t>(length));
  for (int c = 0; c < num_contests; ++c) {
    const auto& contest = style.contests()[static_cast<std::size_t>(c)];
    int b = 0;
    for (int i : contest.candidates)
      for (int k = 0; k < votes_for[static_cast<std::size_t>(i)]; ++k) {
        marks[static_cast<std::size_t>(b)].push_back(i);
        b = (b + 1) % length;
      }
  }
  for (int b = 0; b < length; ++b)
    deck.ballots[static_cast<std::size_t>(b)] = Ballot(std::move(marks[static_cast<std::size_t>(b)]));
  if (!is_feasible(style, deck))
    throw InternalError("distinct-votes packing produced an overvoted ballot");
  return deck;
}

}  // namespace latdeck
