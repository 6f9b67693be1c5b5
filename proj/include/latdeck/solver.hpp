#pragma once

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latdeck/ballot.hpp"
#include "latdeck/cut.hpp"
#include "latdeck/errors.hpp"
#include "latdeck/master.hpp"
#include "latdeck/swap.hpp"

namespace latdeck {

/// A style together with a candidate-index translation to and from the style
/// it was derived from.
struct NormalizedStyle {
  BallotStyle style;
  std::vector<int> to_original;    // normalized index (1-based) -> original
  std::vector<int> from_original;  // original index (1-based) -> normalized
  bool has_merged_contest = false;

  Ballot ballot_to_original(const Ballot& b) const {
    std::vector<int> marks;
    marks.reserve(b.marks.size());
    for (int m : b.marks) marks.push_back(to_original[static_cast<std::size_t>(m - 1)]);
    return Ballot(std::move(marks));
  }

  Deck deck_to_original(const Deck& d) const {
    Deck out;
    out.ballots.reserve(d.ballots.size());
    for (const auto& b : d.ballots) out.ballots.push_back(ballot_to_original(b));
    return out;
  }

  Ballot ballot_from_original(const Ballot& b) const {
    std::vector<int> marks;
    marks.reserve(b.marks.size());
    for (int m : b.marks) marks.push_back(from_original[static_cast<std::size_t>(m - 1)]);
    return Ballot(std::move(marks));
  }

  Deck deck_from_original(const Deck& d) const {
    Deck out;
    out.ballots.reserve(d.ballots.size());
    for (const auto& b : d.ballots) out.ballots.push_back(ballot_from_original(b));
    return out;
  }
};

namespace detail {

inline std::vector<int> identity_mapping(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

inline std::string unused_contest_id(const BallotStyle& style, std::string base) {
  auto taken = [&](const std::string& id) {
    for (const auto& c : style.contests())
      if (c.contest_id == id) return true;
    return false;
  };
  while (taken(base)) base += "~";
  return base;
}

}  // namespace detail

/// Fuse all noncompetitive contests into one contest whose cap equals its
/// size. Tallies are unchanged for every deck and every mapping, so the
/// merged style is interchangeable with the original; candidate indices are
/// preserved.
inline NormalizedStyle merge_noncompetitive(const BallotStyle& style) {
  NormalizedStyle out{style, detail::identity_mapping(style.candidate_count()),
                      detail::identity_mapping(style.candidate_count()), false};
  std::vector<int> merged_candidates;
  std::vector<Contest> competitive;
  for (const auto& contest : style.contests()) {
    if (contest.noncompetitive())
      merged_candidates.insert(merged_candidates.end(), contest.candidates.begin(),
                               contest.candidates.end());
    else
      competitive.push_back(contest);
  }
  if (merged_candidates.empty()) return out;

  std::vector<Contest> contests;
  contests.push_back(Contest{detail::unused_contest_id(style, "noncompetitive"),
                             merged_candidates,
                             static_cast<int>(merged_candidates.size())});
  contests.insert(contests.end(), competitive.begin(), competitive.end());
  out.style = BallotStyle(style.style_id(), std::move(contests),
                          style.candidate_names());
  out.has_merged_contest = true;
  return out;
}

struct TraceEntry {
  enum class Phase { kMaster, kCut };
  Phase phase;
  int iteration = 0;
  int deck_length = 0;
  bool feasible = false;   // master: model feasible; cut: undetected swap found
  double wall_ms = 0.0;
  std::optional<Swap> cut;  // the swap added, for cut entries that found one
};

struct SolveResult {
  enum class Certificate { kCertifiedOptimal, kTimeLimitPartial };

  Deck deck;          // original candidate indices; empty on early halt
  int deck_length = 0;
  std::vector<Swap> cut_set;
  int iterations = 0;
  std::vector<TraceEntry> trace;
  Certificate certificate = Certificate::kTimeLimitPartial;
  bool early_halt = false;
  int lower_bound = 0;  // largest B proven necessary
  std::vector<Ballot> appended_ballots;  // legal-rule ballots, not part of the
                                         // security argument

  bool certified() const { return certificate == Certificate::kCertifiedOptimal; }

  /// The deck as cast, including any appended rule ballots.
  Deck full_deck() const {
    Deck d = deck;
    d.ballots.insert(d.ballots.end(), appended_ballots.begin(), appended_ballots.end());
    return d;
  }
};

struct SolveOptions {
  double time_limit_seconds = 0.0;    // 0 means unlimited
  std::optional<int> stop_at_length;  // halt once B reaches a known deck length
  int iteration_cap = 10000;
};

/// The ballot that overvotes every contest (it marks every target).
inline Ballot full_overvote_ballot(const BallotStyle& style) {
  std::vector<int> marks(static_cast<std::size_t>(style.candidate_count()));
  std::iota(marks.begin(), marks.end(), 1);
  return Ballot(std::move(marks));
}

/// The ballot that casts exactly v_c + 1 votes in every competitive contest
/// and none elsewhere.
inline Ballot exact_overvote_ballot(const BallotStyle& style) {
  std::vector<int> marks;
  for (const auto& contest : style.contests()) {
    if (contest.noncompetitive()) continue;
    for (int k = 0; k <= contest.max_votes; ++k)
      marks.push_back(contest.candidates[static_cast<std::size_t>(k)]);
  }
  return Ballot(std::move(marks));
}

/// Cutting-plane search for a minimum-length deck that detects every swap.
///
/// Starting from an empty cut set and B = 1, the loop alternates a deck
/// feasibility solve (incrementing B whenever no deck of the current length
/// can detect the cuts collected so far) with a search for a swap the
/// candidate deck misses. A deck that survives the swap search is optimal:
/// the final B carries an infeasibility proof for B - 1.
inline SolveResult solve_style(const BallotStyle& style, const RuleSet& rules,
                               const Improvements& improvements = Improvements::all(),
                               const SolveOptions& options = {}) {
  rules.validate();
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const bool limited = options.time_limit_seconds > 0.0;
  auto remaining_seconds = [&]() -> double {
    if (!limited) return 0.0;
    const double used = std::chrono::duration<double>(clock::now() - start).count();
    return options.time_limit_seconds - used;
  };
  auto out_of_time = [&]() { return limited && remaining_seconds() <= 0.0; };

  const NormalizedStyle normalized = improvements.merge_noncompetitive
                                         ? merge_noncompetitive(style)
                                         : NormalizedStyle{style,
                                                           detail::identity_mapping(
                                                               style.candidate_count()),
                                                           detail::identity_mapping(
                                                               style.candidate_count()),
                                                           false};
  const BallotStyle& working = normalized.style;

  SolveResult result;
  std::vector<Swap> cuts;
  int length = 1;

  auto finish_partial = [&]() {
    result.certificate = SolveResult::Certificate::kTimeLimitPartial;
    result.cut_set = cuts;
    result.lower_bound = length;
    return result;
  };

  auto append_rule_ballots = [&]() {
    if (rules.append_full_overvote_ballot)
      result.appended_ballots.push_back(full_overvote_ballot(style));
    if (rules.append_exact_overvote_ballot)
      result.appended_ballots.push_back(exact_overvote_ballot(style));
  };

  for (int iteration = 1;; ++iteration) {
    if (iteration > options.iteration_cap)
      throw Error("cutting-plane iteration cap (" + std::to_string(options.iteration_cap) +
                  ") exceeded");
    result.iterations = iteration;

    // Deck feasibility at the current length, growing B as needed. Each
    // infeasible length is a certified lower bound for the full problem.
    std::optional<Deck> deck;
    while (true) {
      if (options.stop_at_length && length >= *options.stop_at_length) {
        result.early_halt = true;
        result.deck_length = *options.stop_at_length;
        result.lower_bound = length;
        result.cut_set = cuts;
        result.certificate = SolveResult::Certificate::kCertifiedOptimal;
        append_rule_ballots();
        return result;
      }
      if (out_of_time()) return finish_partial();
      const auto t0 = clock::now();
      MasterModel master(working, cuts, length, rules, improvements);
      try {
        deck = solve_feasibility(master, remaining_seconds());
      } catch (const TimeoutError&) {
        return finish_partial();
      }
      TraceEntry entry;
      entry.phase = TraceEntry::Phase::kMaster;
      entry.iteration = iteration;
      entry.deck_length = length;
      entry.feasible = deck.has_value();
      entry.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      result.trace.push_back(entry);
      if (deck) break;
      ++length;
      if (length > kMaxDeckLength)
        throw CapacityError("no deck within the length cap of " +
                            std::to_string(kMaxDeckLength));
    }

    // Hunt for a swap the candidate deck fails to expose.
    if (out_of_time()) return finish_partial();
    const auto t0 = clock::now();
    CheckReport report;
    try {
      report = find_undetected_swap(working, *deck, improvements.minimal_cuts,
                                    remaining_seconds());
    } catch (const TimeoutError&) {
      return finish_partial();
    }
    TraceEntry entry;
    entry.phase = TraceEntry::Phase::kCut;
    entry.iteration = iteration;
    entry.deck_length = length;
    entry.feasible = !report.secure();
    entry.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    if (!report.secure()) entry.cut = report.witness;
    result.trace.push_back(std::move(entry));

    if (report.secure()) {
      result.deck = normalized.deck_to_original(*deck);
      result.deck_length = length;
      result.cut_set = cuts;
      result.lower_bound = length;
      result.certificate = SolveResult::Certificate::kCertifiedOptimal;
      append_rule_ballots();
      return result;
    }

    const Swap& witness = *report.witness;
    if (std::find(cuts.begin(), cuts.end(), witness) != cuts.end())
      throw InternalError("swap search repeated a cut already in the set");
    cuts.push_back(witness);
  }
}

/// Closed-form deck-length statistics: the shortest legally compliant
/// heuristic deck H, the number of candidates in noncompetitive contests NC,
/// and the prediction max(H, NC). The prediction matches real elections but
/// is not guaranteed; callers compare it against the solver, never assume it.
struct LengthFormulaReport {
  int heuristic_length = 0;          // H
  int noncompetitive_candidates = 0; // NC
  int predicted_optimum = 0;         // max(H, NC)
};

inline LengthFormulaReport optimal_length_formula_check(const BallotStyle& style) {
  LengthFormulaReport report;
  for (const auto& contest : style.contests()) {
    const int n = contest.size();
    const int v = contest.max_votes;
    const int packed = (n * (n + 1) + 2 * v - 1) / (2 * v);  // ceil(n(n+1)/2v)
    report.heuristic_length = std::max(report.heuristic_length, std::max(n, packed));
    if (contest.noncompetitive()) report.noncompetitive_candidates += n;
  }
  report.predicted_optimum =
      std::max(report.heuristic_length, report.noncompetitive_candidates);
  return report;
}

}  // namespace latdeck
