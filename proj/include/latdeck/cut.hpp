#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latdeck/ballot.hpp"
#include "latdeck/errors.hpp"
#include "latdeck/milp.hpp"
#include "latdeck/swap.hpp"
#include "latdeck/swap_graph.hpp"

namespace latdeck {

/// Verdict of checking a test deck against every possible swap.
struct CheckReport {
  enum class Verdict { kSecure, kVulnerable };
  enum class Method { kMilp, kBruteForce };

  Verdict verdict = Verdict::kSecure;
  std::optional<Swap> witness;  // an undetected swap, present iff vulnerable
  Method method = Method::kMilp;
  int moved_count = 0;  // candidates moved by the witness
  long long bijections_scanned = 0;  // brute force only
  std::string note;

  bool secure() const { return verdict == Verdict::kSecure; }
};

namespace detail {

/// Assignment model for an undetected swap: x[i][j] = 1 means candidate i's
/// votes are read from target j. Variables exist only for pairs with equal
/// mark counts; a swap moving votes between unequal counts is always caught,
/// so those columns are fixed to zero by omission.
struct CutModelVars {
  milp::Model model;
  std::vector<std::pair<int, int>> pairs;       // (i, j) per variable, 1-based
  std::vector<std::vector<int>> var_of_row;     // var indices with given i
};

inline CutModelVars build_cut_model(const BallotStyle& style, const Deck& deck,
                                    bool minimal) {
  const int n = style.candidate_count();
  const auto counts = mark_counts(style, deck);
  CutModelVars cm;
  cm.var_of_row.resize(static_cast<std::size_t>(n));

  std::vector<std::vector<int>> var_of_col(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> var_at(static_cast<std::size_t>(n),
                                       std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (counts[static_cast<std::size_t>(i - 1)] != counts[static_cast<std::size_t>(j - 1)])
        continue;
      const int var = cm.model.add_binary("x_" + std::to_string(i) + "_" + std::to_string(j));
      cm.pairs.emplace_back(i, j);
      cm.var_of_row[static_cast<std::size_t>(i - 1)].push_back(var);
      var_of_col[static_cast<std::size_t>(j - 1)].push_back(var);
      var_at[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = var;
      if (minimal && i != j) cm.model.set_objective_coefficient(var, 1.0);
    }
  }

  for (int i = 1; i <= n; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int var : cm.var_of_row[static_cast<std::size_t>(i - 1)]) terms.emplace_back(var, 1.0);
    cm.model.add_constraint(std::move(terms), milp::Relation::kEqual, 1.0,
                            "row_" + std::to_string(i));
  }
  for (int j = 1; j <= n; ++j) {
    std::vector<std::pair<int, double>> terms;
    for (int var : var_of_col[static_cast<std::size_t>(j - 1)]) terms.emplace_back(var, 1.0);
    cm.model.add_constraint(std::move(terms), milp::Relation::kEqual, 1.0,
                            "col_" + std::to_string(j));
  }
  {
    // Rule out the identity: at most N-2 fixed points.
    std::vector<std::pair<int, double>> terms;
    for (int i = 1; i <= n; ++i) {
      const int var = var_at[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)];
      terms.emplace_back(var, 1.0);  // the diagonal always exists
    }
    cm.model.add_constraint(std::move(terms), milp::Relation::kLessEqual,
                            static_cast<double>(n) - 2.0, "non_identity");
  }
  // No ballot may be read as overvoted: the undetected machine must report
  // the correct totals, so every contest stays within its cap on every ballot.
  for (int b = 0; b < deck.size(); ++b) {
    const auto& ballot = deck.ballots[static_cast<std::size_t>(b)];
    for (int c = 0; c < style.contest_count(); ++c) {
      const auto& contest = style.contests()[static_cast<std::size_t>(c)];
      std::vector<std::pair<int, double>> terms;
      for (int i : contest.candidates) {
        for (int j : ballot.marks) {
          const int var = var_at[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
          if (var >= 0) terms.emplace_back(var, 1.0);
        }
      }
      if (terms.size() > static_cast<std::size_t>(contest.max_votes))
        cm.model.add_constraint(std::move(terms), milp::Relation::kLessEqual,
                                static_cast<double>(contest.max_votes),
                                "cap_b" + std::to_string(b) + "_c" + std::to_string(c));
    }
  }
  return cm;
}

}  // namespace detail

/// Search for a swap the deck would not detect. Secure means the model is
/// infeasible: every possible swap changes some reported total or triggers an
/// overvote. With minimal mode the witness moves as few candidates as
/// possible and its contest graph is connected.
inline CheckReport find_undetected_swap(const BallotStyle& style, const Deck& deck,
                                        bool minimal = true,
                                        double time_limit_seconds = 0.0) {
  if (!is_feasible(style, deck))
    throw PreconditionError("deck must consist of feasible ballots");
  const int n = style.candidate_count();
  CheckReport report;
  report.method = CheckReport::Method::kMilp;
  if (n < 2) {
    report.verdict = CheckReport::Verdict::kSecure;
    report.note = "fewer than two candidates: no non-identity mapping exists";
    return report;
  }

  auto cm = detail::build_cut_model(style, deck, minimal);
  cm.model.params().time_limit_seconds = time_limit_seconds;
  cm.model.params().feasibility_only = !minimal;
  const auto outcome = milp::solve(cm.model);

  switch (outcome.status) {
    case milp::SolveStatus::kInfeasible:
      report.verdict = CheckReport::Verdict::kSecure;
      return report;
    case milp::SolveStatus::kTimeout:
      throw TimeoutError("deck check hit its time limit before a verdict");
    case milp::SolveStatus::kError:
      throw InternalError("deck check solver fault: " + outcome.message);
    case milp::SolveStatus::kOptimal:
      break;
  }

  std::vector<int> image(static_cast<std::size_t>(n), 0);
  for (std::size_t v = 0; v < cm.pairs.size(); ++v) {
    if (outcome.assignment[v] > 0.5) {
      const auto [i, j] = cm.pairs[v];
      image[static_cast<std::size_t>(i - 1)] = j;
    }
  }
  Swap witness{std::move(image)};
  if (witness.is_identity())
    throw InternalError("deck check produced the identity mapping");
  if (detects(style, deck, witness))
    throw InternalError("deck check witness is actually detected by the deck");
  report.verdict = CheckReport::Verdict::kVulnerable;
  report.moved_count = witness.moved_count();
  report.witness = std::move(witness);
  return report;
}

/// Oracle-grade check by enumerating all N!-1 non-identity bijections.
/// Refused above the candidate cap; factorial growth is the point.
inline CheckReport brute_force_check(const BallotStyle& style, const Deck& deck,
                                     int max_candidates = 8) {
  if (!is_feasible(style, deck))
    throw PreconditionError("deck must consist of feasible ballots");
  const int n = style.candidate_count();
  if (n > max_candidates)
    throw CapacityError("brute force refused: " + std::to_string(n) +
                        " candidates exceeds the cap of " + std::to_string(max_candidates));
  CheckReport report;
  report.method = CheckReport::Method::kBruteForce;
  if (n < 2) {
    report.verdict = CheckReport::Verdict::kSecure;
    report.note = "fewer than two candidates: no non-identity mapping exists";
    return report;
  }

  std::vector<int> image(static_cast<std::size_t>(n));
  std::iota(image.begin(), image.end(), 1);
  std::optional<Swap> first_witness;
  int best_moved = n + 1;
  while (std::next_permutation(image.begin(), image.end())) {
    ++report.bijections_scanned;
    Swap sigma{image};
    if (!detects(style, deck, sigma)) {
      if (!first_witness) first_witness = sigma;
      best_moved = std::min(best_moved, sigma.moved_count());
    }
  }
  if (first_witness) {
    report.verdict = CheckReport::Verdict::kVulnerable;
    report.witness = std::move(first_witness);
    report.moved_count = best_moved;
  }
  return report;
}

}  // namespace latdeck
