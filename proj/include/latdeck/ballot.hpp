#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "latdeck/errors.hpp"
#include "latdeck/swap.hpp"

namespace latdeck {

/// One contest on a ballot: the global candidate indices that appear in it
/// and the maximum number of them a voter may select.
struct Contest {
  std::string contest_id;
  std::vector<int> candidates;  // global 1-based indices, strictly increasing
  int max_votes = 1;

  int size() const { return static_cast<int>(candidates.size()); }

  /// A contest is noncompetitive when every candidate may legally receive a
  /// vote on the same ballot.
  bool noncompetitive() const { return max_votes == size(); }
};

/// A ballot style: the contests, their candidate sets and vote caps, with
/// candidates numbered 1..N. Every candidate belongs to exactly one contest.
class BallotStyle {
 public:
  BallotStyle(std::string style_id, std::vector<Contest> contests,
              std::vector<std::string> candidate_names = {})
      : style_id_(std::move(style_id)),
        contests_(std::move(contests)),
        candidate_names_(std::move(candidate_names)) {
    int n = 0;
    for (auto& c : contests_) {
      if (c.candidates.empty())
        throw InvalidInputError("contest '" + c.contest_id + "' has no candidates");
      std::sort(c.candidates.begin(), c.candidates.end());
      if (std::adjacent_find(c.candidates.begin(), c.candidates.end()) != c.candidates.end())
        throw InvalidInputError("contest '" + c.contest_id + "' repeats a candidate");
      if (c.max_votes < 1 || c.max_votes > c.size())
        throw InvalidInputError("contest '" + c.contest_id + "' has max_votes outside 1..|candidates|");
      n += c.size();
    }
    candidate_count_ = n;
    contest_of_.assign(static_cast<std::size_t>(n), -1);
    for (std::size_t ci = 0; ci < contests_.size(); ++ci) {
      for (int cand : contests_[ci].candidates) {
        if (cand < 1 || cand > n)
          throw InvalidInputError("candidate index " + std::to_string(cand) +
                                  " outside 1.." + std::to_string(n));
        auto& slot = contest_of_[static_cast<std::size_t>(cand - 1)];
        if (slot != -1)
          throw InvalidInputError("candidate index " + std::to_string(cand) +
                                  " appears in more than one contest");
        slot = static_cast<int>(ci);
      }
    }
    // Dense coverage of 1..N follows from the count matching and no repeats.
    if (!candidate_names_.empty() &&
        candidate_names_.size() != static_cast<std::size_t>(n))
      throw InvalidInputError("candidate name list does not match candidate count");
  }

  const std::string& style_id() const { return style_id_; }
  const std::vector<Contest>& contests() const { return contests_; }
  int contest_count() const { return static_cast<int>(contests_.size()); }
  int candidate_count() const { return candidate_count_; }

  /// Index into contests() of the contest containing candidate i (1-based i).
  int contest_of(int candidate) const {
    if (candidate < 1 || candidate > candidate_count_)
      throw InvalidInputError("candidate index out of range");
    return contest_of_[static_cast<std::size_t>(candidate - 1)];
  }

  /// Display name for candidate i; falls back to the index when unnamed.
  std::string candidate_name(int candidate) const {
    if (candidate < 1 || candidate > candidate_count_)
      throw InvalidInputError("candidate index out of range");
    if (candidate_names_.empty()) return std::to_string(candidate);
    return candidate_names_[static_cast<std::size_t>(candidate - 1)];
  }

  const std::vector<std::string>& candidate_names() const { return candidate_names_; }

  int competitive_contest_count() const {
    int k = 0;
    for (const auto& c : contests_)
      if (!c.noncompetitive()) ++k;
    return k;
  }

  /// Number of candidates sitting in noncompetitive contests.
  int noncompetitive_candidate_count() const {
    int k = 0;
    for (const auto& c : contests_)
      if (c.noncompetitive()) k += c.size();
    return k;
  }

 private:
  std::string style_id_;
  std::vector<Contest> contests_;
  std::vector<std::string> candidate_names_;
  std::vector<int> contest_of_;
  int candidate_count_ = 0;
};

/// A filled-out ballot: the set of marked targets.
struct Ballot {
  std::vector<int> marks;  // strictly increasing 1-based candidate indices

  Ballot() = default;
  Ballot(std::initializer_list<int> init) : marks(init) { normalize(); }
  explicit Ballot(std::vector<int> m) : marks(std::move(m)) { normalize(); }

  bool contains(int candidate) const {
    return std::binary_search(marks.begin(), marks.end(), candidate);
  }

  int size() const { return static_cast<int>(marks.size()); }

  friend bool operator==(const Ballot& a, const Ballot& b) { return a.marks == b.marks; }

 private:
  void normalize() {
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  }
};

/// A test deck: an ordered, possibly empty sequence of filled-out ballots.
/// Order matters only for reporting; tallies are order-invariant.
struct Deck {
  std::vector<Ballot> ballots;

  Deck() = default;
  explicit Deck(std::vector<Ballot> b) : ballots(std::move(b)) {}

  int size() const { return static_cast<int>(ballots.size()); }

  friend bool operator==(const Deck& a, const Deck& b) { return a.ballots == b.ballots; }
};

/// Per-candidate vote totals as output by a machine.
struct Tally {
  std::vector<int> totals;  // totals[i-1] is the total for candidate i

  Tally() = default;
  explicit Tally(int n) : totals(static_cast<std::size_t>(n), 0) {}

  int of(int candidate) const { return totals[static_cast<std::size_t>(candidate - 1)]; }

  friend bool operator==(const Tally& a, const Tally& b) { return a.totals == b.totals; }
  friend bool operator!=(const Tally& a, const Tally& b) { return !(a == b); }
};

namespace detail {

inline void check_ballot_indices(const BallotStyle& style, const Ballot& ballot) {
  for (int m : ballot.marks)
    if (m < 1 || m > style.candidate_count())
      throw InvalidInputError("ballot marks unknown candidate index " + std::to_string(m));
}

inline void check_deck_indices(const BallotStyle& style, const Deck& deck) {
  for (const auto& b : deck.ballots) check_ballot_indices(style, b);
}

}  // namespace detail

/// Whether the ballot overvotes no contest, i.e. belongs to the feasible set.
inline bool is_feasible(const BallotStyle& style, const Ballot& ballot) {
  detail::check_ballot_indices(style, ballot);
  std::vector<int> per_contest(static_cast<std::size_t>(style.contest_count()), 0);
  for (int m : ballot.marks) {
    const int c = style.contest_of(m);
    if (++per_contest[static_cast<std::size_t>(c)] >
        style.contests()[static_cast<std::size_t>(c)].max_votes)
      return false;
  }
  return true;
}

inline bool is_feasible(const BallotStyle& style, const Deck& deck) {
  for (const auto& b : deck.ballots)
    if (!is_feasible(style, b)) return false;
  return true;
}

/// Number of ballots in the deck marking target i.
inline int mark_count(const Deck& deck, int candidate) {
  int k = 0;
  for (const auto& b : deck.ballots)
    if (b.contains(candidate)) ++k;
  return k;
}

/// Mark counts for all candidates; result[i-1] is the count for candidate i.
inline std::vector<int> mark_counts(const BallotStyle& style, const Deck& deck) {
  detail::check_deck_indices(style, deck);
  std::vector<int> counts(static_cast<std::size_t>(style.candidate_count()), 0);
  for (const auto& b : deck.ballots)
    for (int m : b.marks) ++counts[static_cast<std::size_t>(m - 1)];
  return counts;
}

/// Output of a correctly configured machine. A contest that is overvoted on a
/// ballot contributes nothing to that contest's candidates for that ballot.
inline Tally tabulate_correct(const BallotStyle& style, const Deck& deck) {
  detail::check_deck_indices(style, deck);
  Tally tally(style.candidate_count());
  std::vector<int> per_contest(static_cast<std::size_t>(style.contest_count()));
  for (const auto& ballot : deck.ballots) {
    std::fill(per_contest.begin(), per_contest.end(), 0);
    for (int m : ballot.marks)
      ++per_contest[static_cast<std::size_t>(style.contest_of(m))];
    for (int m : ballot.marks) {
      const int c = style.contest_of(m);
      if (per_contest[static_cast<std::size_t>(c)] <=
          style.contests()[static_cast<std::size_t>(c)].max_votes)
        ++tally.totals[static_cast<std::size_t>(m - 1)];
    }
  }
  return tally;
}

/// Output of a machine whose candidate->target mapping is sigma. Candidate i
/// receives a vote from a ballot when target sigma(i) is marked and the
/// contest's image under sigma is not read as overvoted on that ballot.
inline Tally tabulate_swapped(const BallotStyle& style, const Deck& deck, const Swap& sigma) {
  detail::check_deck_indices(style, deck);
  if (sigma.size() != style.candidate_count())
    throw InvalidSwapError("swap size does not match candidate count");
  const int num_contests = style.contest_count();
  Tally tally(style.candidate_count());
  std::vector<int> read_per_contest(static_cast<std::size_t>(num_contests));
  for (const auto& ballot : deck.ballots) {
    // read_per_contest[c] = |{ sigma(j) in ballot : j in contest c }|
    std::fill(read_per_contest.begin(), read_per_contest.end(), 0);
    for (int c = 0; c < num_contests; ++c)
      for (int j : style.contests()[static_cast<std::size_t>(c)].candidates)
        if (ballot.contains(sigma.image(j)))
          ++read_per_contest[static_cast<std::size_t>(c)];
    for (int i = 1; i <= style.candidate_count(); ++i) {
      const int c = style.contest_of(i);
      if (ballot.contains(sigma.image(i)) &&
          read_per_contest[static_cast<std::size_t>(c)] <=
              style.contests()[static_cast<std::size_t>(c)].max_votes)
        ++tally.totals[static_cast<std::size_t>(i - 1)];
    }
  }
  return tally;
}

/// Whether a deck of feasible ballots exposes the misconfiguration sigma.
/// Equivalent to tabulate_swapped != tabulate_correct: the deck detects sigma
/// iff some candidate's mark count differs from its target's, or some contest
/// on some ballot is read as overvoted under sigma.
inline bool detects(const BallotStyle& style, const Deck& deck, const Swap& sigma) {
  if (sigma.size() != style.candidate_count())
    throw InvalidSwapError("swap size does not match candidate count");
  if (sigma.is_identity())
    throw InvalidSwapError("detects() requires a non-identity swap");
  for (const auto& b : deck.ballots)
    if (!is_feasible(style, b))
      throw PreconditionError("detects() requires a deck of feasible ballots");

  const auto counts = mark_counts(style, deck);
  for (int i = 1; i <= style.candidate_count(); ++i)
    if (counts[static_cast<std::size_t>(i - 1)] !=
        counts[static_cast<std::size_t>(sigma.image(i) - 1)])
      return true;

  const int num_contests = style.contest_count();
  for (const auto& ballot : deck.ballots) {
    for (int c = 0; c < num_contests; ++c) {
      int read = 0;
      for (int j : style.contests()[static_cast<std::size_t>(c)].candidates)
        if (ballot.contains(sigma.image(j))) ++read;
      if (read > style.contests()[static_cast<std::size_t>(c)].max_votes) return true;
    }
  }
  return false;
}

}  // namespace latdeck
