#pragma once

#include <algorithm>
#include <chrono>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "latdeck/ballot.hpp"
#include "latdeck/cut.hpp"
#include "latdeck/errors.hpp"
#include "latdeck/solver.hpp"

namespace latdeck {

/// Normal form: noncompetitive contests merged, contests sorted by
/// (size, cap) descending, candidates renumbered in the new contest order.
/// Styles with the same normal-form shape share optimal decks.
inline NormalizedStyle normalize(const BallotStyle& style) {
  const NormalizedStyle merged = merge_noncompetitive(style);

  std::vector<int> order(static_cast<std::size_t>(merged.style.contest_count()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ca = merged.style.contests()[static_cast<std::size_t>(a)];
    const auto& cb = merged.style.contests()[static_cast<std::size_t>(b)];
    if (ca.size() != cb.size()) return ca.size() > cb.size();
    return ca.max_votes > cb.max_votes;
  });

  const int n = style.candidate_count();
  std::vector<int> to_original(static_cast<std::size_t>(n));
  std::vector<int> from_original(static_cast<std::size_t>(n));
  std::vector<Contest> contests;
  std::vector<std::string> names;
  int next = 1;
  for (int pos : order) {
    const auto& contest = merged.style.contests()[static_cast<std::size_t>(pos)];
    Contest renumbered;
    renumbered.contest_id = contest.contest_id;
    renumbered.max_votes = contest.max_votes;
    for (int original : contest.candidates) {
      renumbered.candidates.push_back(next);
      to_original[static_cast<std::size_t>(next - 1)] = original;
      from_original[static_cast<std::size_t>(original - 1)] = next;
      names.push_back(style.candidate_name(original));
      ++next;
    }
    contests.push_back(std::move(renumbered));
  }
  return NormalizedStyle{BallotStyle(style.style_id(), std::move(contests), std::move(names)),
                         std::move(to_original), std::move(from_original),
                         merged.has_merged_contest};
}

/// Shape key of a normal form: the sorted (size, cap) contest multiset.
/// Equal keys mean one solved deck serves both styles after reindexing.
inline std::string normal_form_key(const NormalizedStyle& normalized) {
  std::ostringstream key;
  for (const auto& contest : normalized.style.contests())
    key << contest.size() << 'v' << contest.max_votes << ';';
  return key.str();
}

/// Drop whole contests from a style; candidates are renumbered densely in
/// the surviving contest order.
inline NormalizedStyle remove_contests(const BallotStyle& style,
                                       const std::vector<int>& removed_positions) {
  std::vector<char> removed(static_cast<std::size_t>(style.contest_count()), 0);
  for (int pos : removed_positions) {
    if (pos < 0 || pos >= style.contest_count())
      throw InvalidInputError("removed contest position out of range");
    removed[static_cast<std::size_t>(pos)] = 1;
  }
  if (std::count(removed.begin(), removed.end(), char(1)) == style.contest_count())
    throw InvalidInputError("cannot remove every contest");

  std::vector<int> to_original;
  std::vector<int> from_original(static_cast<std::size_t>(style.candidate_count()), 0);
  std::vector<Contest> contests;
  std::vector<std::string> names;
  int next = 1;
  for (int c = 0; c < style.contest_count(); ++c) {
    if (removed[static_cast<std::size_t>(c)]) continue;
    const auto& contest = style.contests()[static_cast<std::size_t>(c)];
    Contest kept;
    kept.contest_id = contest.contest_id;
    kept.max_votes = contest.max_votes;
    for (int original : contest.candidates) {
      kept.candidates.push_back(next);
      to_original.push_back(original);
      from_original[static_cast<std::size_t>(original - 1)] = next;
      names.push_back(style.candidate_name(original));
      ++next;
    }
    contests.push_back(std::move(kept));
  }
  return NormalizedStyle{
      BallotStyle(style.style_id() + "-reduced", std::move(contests), std::move(names)),
      std::move(to_original), std::move(from_original), false};
}

/// Restrict a deck for a style to the style with some contests removed. A
/// deck that detects every swap keeps that guarantee after the restriction.
/// Minimality is not preserved.
inline Deck translate_solution(const BallotStyle& source_style, const Deck& source_deck,
                               const std::vector<int>& removed_positions) {
  if (!is_feasible(source_style, source_deck))
    throw PreconditionError("source deck must consist of feasible ballots");
  const NormalizedStyle reduced = remove_contests(source_style, removed_positions);
  Deck out;
  out.ballots.reserve(source_deck.ballots.size());
  for (const auto& ballot : source_deck.ballots) {
    std::vector<int> marks;
    for (int m : ballot.marks) {
      const int mapped = reduced.from_original[static_cast<std::size_t>(m - 1)];
      if (mapped != 0) marks.push_back(mapped);
    }
    out.ballots.emplace_back(std::move(marks));
  }
  return out;
}

/// Synthetic benchmark styles.
///   family 1: contests of sizes 1..C, one vote each
///   family 2: C two-candidate contests, one vote each
///   family 3: contests of sizes 1..C, every contest noncompetitive
inline BallotStyle generate_experiment(int family, int num_contests) {
  if (family < 1 || family > 3) throw InvalidInputError("experiment family must be 1, 2, or 3");
  if (num_contests < 2 || num_contests > 12)
    throw InvalidInputError("experiment size must be between 2 and 12 contests");
  std::vector<Contest> contests;
  std::vector<std::string> names;
  int next = 1;
  for (int c = 1; c <= num_contests; ++c) {
    Contest contest;
    contest.contest_id = "contest-" + std::to_string(c);
    const int size = family == 2 ? 2 : c;
    contest.max_votes = family == 3 ? c : 1;
    for (int k = 1; k <= size; ++k) {
      contest.candidates.push_back(next++);
      names.push_back("c" + std::to_string(c) + "-" + std::to_string(k));
    }
    contests.push_back(std::move(contest));
  }
  return BallotStyle("exp" + std::to_string(family) + "-C" + std::to_string(num_contests),
                     std::move(contests), std::move(names));
}

struct BatchEntry {
  enum class Mode { kFull, kReuse, kTranslate };
  std::string style_id;
  Mode mode = Mode::kFull;
  bool ok = false;
  std::string error;
  SolveResult result;       // deck on the entry's original candidate indices
  LengthFormulaReport formula;
  double wall_ms = 0.0;
};

struct BatchResult {
  std::vector<BatchEntry> entries;  // in input order
  int full_solves = 0;
  int reused = 0;
  int translated = 0;

  bool all_certified() const {
    for (const auto& e : entries)
      if (!e.ok || !e.result.certified()) return false;
    return true;
  }

  std::string to_csv() const {
    std::ostringstream out;
    out << "style_id,B_star,H,NC,predicted,iterations,wall_ms,mode\n";
    for (const auto& e : entries) {
      out << e.style_id << ',';
      if (e.ok) out << e.result.deck_length;
      out << ',' << e.formula.heuristic_length << ',' << e.formula.noncompetitive_candidates
          << ',' << e.formula.predicted_optimum << ',';
      if (e.ok) out << e.result.iterations;
      out << ',' << static_cast<long long>(e.wall_ms) << ','
          << (e.mode == BatchEntry::Mode::kFull
                  ? "full"
                  : e.mode == BatchEntry::Mode::kReuse ? "reuse" : "translate");
      if (!e.ok) out << ",error:" << e.error;
      out << '\n';
    }
    return out.str();
  }
};

struct BatchOptions {
  int jobs = 1;
  double per_style_time_limit = 0.0;
  Improvements improvements = Improvements::all();
};

namespace detail {

struct ContestShape {
  int size;
  int cap;
  friend bool operator<(const ContestShape& a, const ContestShape& b) {
    return std::tie(a.size, a.cap) < std::tie(b.size, b.cap);
  }
  friend bool operator==(const ContestShape& a, const ContestShape& b) {
    return a.size == b.size && a.cap == b.cap;
  }
};

struct StyleShape {
  std::vector<ContestShape> competitive;  // sorted
  int noncompetitive_candidates = 0;
};

inline StyleShape shape_of(const NormalizedStyle& normalized) {
  StyleShape shape;
  for (const auto& contest : normalized.style.contests()) {
    if (contest.noncompetitive())
      shape.noncompetitive_candidates += contest.size();
    else
      shape.competitive.push_back({contest.size(), contest.max_votes});
  }
  std::sort(shape.competitive.begin(), shape.competitive.end());
  return shape;
}

/// Whether a deck for `source` translates to `target`: target's competitive
/// contests are a sub-multiset of source's, and source has at least as many
/// noncompetitive candidates.
inline bool translatable(const StyleShape& source, const StyleShape& target) {
  if (target.noncompetitive_candidates > source.noncompetitive_candidates) return false;
  return std::includes(source.competitive.begin(), source.competitive.end(),
                       target.competitive.begin(), target.competitive.end());
}

/// Build the target-normalized deck from a solved source-normalized deck by
/// matching competitive contests shape-by-shape and keeping a prefix of the
/// merged noncompetitive candidates.
inline Deck translate_normalized_deck(const NormalizedStyle& source, const Deck& source_deck,
                                      const NormalizedStyle& target) {
  // Map each source candidate to a target candidate (0 = dropped).
  std::vector<int> mapped(static_cast<std::size_t>(source.style.candidate_count()), 0);
  std::vector<char> used(static_cast<std::size_t>(source.style.contest_count()), 0);
  for (const auto& tc : target.style.contests()) {
    if (tc.noncompetitive()) continue;
    int pick = -1;
    for (int c = 0; c < source.style.contest_count(); ++c) {
      const auto& sc = source.style.contests()[static_cast<std::size_t>(c)];
      if (used[static_cast<std::size_t>(c)] || sc.noncompetitive()) continue;
      if (sc.size() == tc.size() && sc.max_votes == tc.max_votes) {
        pick = c;
        break;
      }
    }
    if (pick == -1) throw InternalError("translation source lost a competitive contest");
    used[static_cast<std::size_t>(pick)] = 1;
    const auto& sc = source.style.contests()[static_cast<std::size_t>(pick)];
    for (int k = 0; k < sc.size(); ++k)
      mapped[static_cast<std::size_t>(sc.candidates[static_cast<std::size_t>(k)] - 1)] =
          tc.candidates[static_cast<std::size_t>(k)];
  }
  // Noncompetitive prefix.
  const Contest* source_nc = nullptr;
  const Contest* target_nc = nullptr;
  for (const auto& c : source.style.contests())
    if (c.noncompetitive()) source_nc = &c;
  for (const auto& c : target.style.contests())
    if (c.noncompetitive()) target_nc = &c;
  if (target_nc) {
    if (!source_nc || source_nc->size() < target_nc->size())
      throw InternalError("translation source lost noncompetitive candidates");
    for (int k = 0; k < target_nc->size(); ++k)
      mapped[static_cast<std::size_t>(source_nc->candidates[static_cast<std::size_t>(k)] - 1)] =
          target_nc->candidates[static_cast<std::size_t>(k)];
  }

  Deck out;
  out.ballots.reserve(source_deck.ballots.size());
  for (const auto& ballot : source_deck.ballots) {
    std::vector<int> marks;
    for (int m : ballot.marks) {
      const int t = mapped[static_cast<std::size_t>(m - 1)];
      if (t != 0) marks.push_back(t);
    }
    out.ballots.emplace_back(std::move(marks));
  }
  return out;
}

}  // namespace detail

/// Solve a batch of styles with deduplication by normal form, processing
/// ordered so that harder styles come first, and early halting against the
/// best translatable deck already solved. Styles inside one wave have no
/// translation edges between them and may run concurrently.
inline BatchResult batch_solve(const std::vector<BallotStyle>& styles, const RuleSet& rules,
                               const BatchOptions& options = {}) {
  BatchResult batch;
  batch.entries.resize(styles.size());

  std::vector<NormalizedStyle> normalized;
  normalized.reserve(styles.size());
  for (std::size_t s = 0; s < styles.size(); ++s) {
    batch.entries[s].style_id = styles[s].style_id();
    batch.entries[s].formula = optimal_length_formula_check(styles[s]);
    normalized.push_back(normalize(styles[s]));
  }

  // Group duplicates by normal-form key; the first occurrence represents.
  std::map<std::string, std::vector<int>> groups;
  std::vector<int> representatives;
  for (std::size_t s = 0; s < styles.size(); ++s) {
    auto& group = groups[normal_form_key(normalized[s])];
    if (group.empty()) representatives.push_back(static_cast<int>(s));
    group.push_back(static_cast<int>(s));
  }

  // Processing order: competitive contest count, then noncompetitive
  // candidates, both descending; style id breaks the remaining ties.
  std::sort(representatives.begin(), representatives.end(), [&](int a, int b) {
    const auto& sa = styles[static_cast<std::size_t>(a)];
    const auto& sb = styles[static_cast<std::size_t>(b)];
    if (sa.competitive_contest_count() != sb.competitive_contest_count())
      return sa.competitive_contest_count() > sb.competitive_contest_count();
    if (sa.noncompetitive_candidate_count() != sb.noncompetitive_candidate_count())
      return sa.noncompetitive_candidate_count() > sb.noncompetitive_candidate_count();
    return sa.style_id() < sb.style_id();
  });

  std::vector<detail::StyleShape> shapes;
  shapes.reserve(representatives.size());
  for (int rep : representatives)
    shapes.push_back(detail::shape_of(normalized[static_cast<std::size_t>(rep)]));

  // Waves: no translation edge between members of one wave.
  std::vector<std::vector<int>> waves;  // indices into `representatives`
  for (std::size_t k = 0; k < representatives.size(); ++k) {
    bool placed = false;
    if (!waves.empty()) {
      bool conflict = false;
      for (int member : waves.back())
        if (detail::translatable(shapes[static_cast<std::size_t>(member)],
                                 shapes[static_cast<std::size_t>(k)]) ||
            detail::translatable(shapes[static_cast<std::size_t>(k)],
                                 shapes[static_cast<std::size_t>(member)])) {
          conflict = true;
          break;
        }
      if (!conflict) {
        waves.back().push_back(static_cast<int>(k));
        placed = true;
      }
    }
    if (!placed) waves.push_back({static_cast<int>(k)});
  }

  struct Solved {
    int rep_index;          // index into representatives
    int deck_length;
  };
  std::vector<std::optional<Deck>> normalized_decks(representatives.size());
  std::vector<Solved> solved;

  auto solve_one = [&](int k) -> void {
    const int rep = representatives[static_cast<std::size_t>(k)];
    auto& entry = batch.entries[static_cast<std::size_t>(rep)];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      // Best translatable deck length among already-solved styles.
      std::optional<int> stop;
      int source_k = -1;
      for (const auto& s : solved) {
        if (!detail::translatable(shapes[static_cast<std::size_t>(s.rep_index)],
                                  shapes[static_cast<std::size_t>(k)]))
          continue;
        if (!stop || s.deck_length < *stop) {
          stop = s.deck_length;
          source_k = s.rep_index;
        }
      }
      SolveOptions solve_options;
      solve_options.time_limit_seconds = options.per_style_time_limit;
      solve_options.stop_at_length = stop;
      SolveResult result =
          solve_style(styles[static_cast<std::size_t>(rep)], rules, options.improvements,
                      solve_options);
      if (result.early_halt) {
        // The proven lower bound met the translatable deck's length, so the
        // translated deck is optimal for this style.
        const int src_rep = representatives[static_cast<std::size_t>(source_k)];
        Deck translated = detail::translate_normalized_deck(
            normalized[static_cast<std::size_t>(src_rep)],
            *normalized_decks[static_cast<std::size_t>(source_k)],
            normalized[static_cast<std::size_t>(rep)]);
        result.deck = normalized[static_cast<std::size_t>(rep)].deck_to_original(translated);
        entry.mode = BatchEntry::Mode::kTranslate;
      } else {
        entry.mode = BatchEntry::Mode::kFull;
      }
      if (result.certified()) {
        const auto check =
            find_undetected_swap(styles[static_cast<std::size_t>(rep)], result.deck);
        if (!check.secure())
          throw InternalError("batch produced a deck with an undetected swap");
      }
      entry.result = std::move(result);
      entry.ok = true;
    } catch (const Error& e) {
      entry.ok = false;
      entry.error = e.what();
    }
    entry.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  for (const auto& wave : waves) {
    if (options.jobs > 1 && wave.size() > 1) {
      std::vector<std::future<void>> running;
      std::size_t next = 0;
      while (next < wave.size() || !running.empty()) {
        while (next < wave.size() && running.size() < static_cast<std::size_t>(options.jobs))
          running.push_back(std::async(std::launch::async, solve_one, wave[next++]));
        running.front().get();
        running.erase(running.begin());
      }
    } else {
      for (int k : wave) solve_one(k);
    }
    for (int k : wave) {
      const int rep = representatives[static_cast<std::size_t>(k)];
      auto& entry = batch.entries[static_cast<std::size_t>(rep)];
      if (entry.ok && entry.result.certified()) {
        normalized_decks[static_cast<std::size_t>(k)] =
            normalized[static_cast<std::size_t>(rep)].deck_from_original(entry.result.deck);
        solved.push_back({k, entry.result.deck_length});
      }
    }
  }

  // Duplicates: reindex the representative's deck and re-verify.
  for (const auto& [key, group] : groups) {
    const int rep = group.front();
    for (std::size_t g = 1; g < group.size(); ++g) {
      const int dup = group[static_cast<std::size_t>(g)];
      auto& entry = batch.entries[static_cast<std::size_t>(dup)];
      const auto& rep_entry = batch.entries[static_cast<std::size_t>(rep)];
      const auto t0 = std::chrono::steady_clock::now();
      entry.mode = BatchEntry::Mode::kReuse;
      entry.ok = rep_entry.ok;
      entry.error = rep_entry.error;
      if (rep_entry.ok) {
        try {
          SolveResult result = rep_entry.result;
          const Deck shared =
              normalized[static_cast<std::size_t>(rep)].deck_from_original(rep_entry.result.deck);
          result.deck = normalized[static_cast<std::size_t>(dup)].deck_to_original(shared);
          result.appended_ballots.clear();
          if (rep_entry.result.certified() && !result.deck.ballots.empty()) {
            const auto check =
                find_undetected_swap(styles[static_cast<std::size_t>(dup)], result.deck);
            if (!check.secure())
              throw InternalError("reused deck has an undetected swap on the duplicate style");
          }
          if (!rep_entry.result.appended_ballots.empty()) {
            const RuleSet r = rules;
            if (r.append_full_overvote_ballot)
              result.appended_ballots.push_back(
                  full_overvote_ballot(styles[static_cast<std::size_t>(dup)]));
            if (r.append_exact_overvote_ballot)
              result.appended_ballots.push_back(
                  exact_overvote_ballot(styles[static_cast<std::size_t>(dup)]));
          }
          entry.result = std::move(result);
        } catch (const Error& e) {
          entry.ok = false;
          entry.error = e.what();
        }
      }
      entry.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                t0)
                          .count();
    }
  }

  for (const auto& entry : batch.entries) {
    switch (entry.mode) {
      case BatchEntry::Mode::kFull: ++batch.full_solves; break;
      case BatchEntry::Mode::kReuse: ++batch.reused; break;
      case BatchEntry::Mode::kTranslate: ++batch.translated; break;
    }
  }
  return batch;
}

}  // namespace latdeck
