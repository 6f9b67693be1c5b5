#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latdeck/ballot.hpp"
#include "latdeck/errors.hpp"
#include "latdeck/milp.hpp"
#include "latdeck/swap.hpp"

namespace latdeck {

/// State-law constraints on test decks. The overvote-ballot rules are applied
/// by appending a ballot after optimization, never inside the model.
struct RuleSet {
  bool at_least_one_vote = false;
  bool distinct_within_contest = false;
  bool append_full_overvote_ballot = false;
  bool append_exact_overvote_ballot = false;
  // The exact-overvote ballot is only sound on machines that raise an alert
  // for overvoted ballots; callers must acknowledge that explicitly.
  bool overvote_alert_assumed = false;

  static RuleSet none() { return {}; }

  /// Distinct positive totals per candidate within each contest.
  static RuleSet michigan() {
    RuleSet r;
    r.at_least_one_vote = true;
    r.distinct_within_contest = true;
    return r;
  }

  void validate() const {
    if (append_exact_overvote_ballot && !overvote_alert_assumed)
      throw InvalidInputError(
          "exact-overvote ballots require acknowledging the overvote-alert assumption");
  }
};

/// Per-improvement switches for the cutting-plane machinery; all on by
/// default. Disabling any of them preserves the optimum.
struct Improvements {
  bool reduce_variables = true;        // 1: prune y and p variables
  bool within_contest_ordering = true; // 2: strictly increasing contest totals
  bool lexicographic_contests = true;  // 3: order equivalent contests
  bool minimal_cuts = true;            // 4: prefer connected-swap cuts
  bool merge_noncompetitive = true;    // 5: fuse noncompetitive contests

  static Improvements all() { return {}; }

  static Improvements all_except(int k) {
    Improvements imp;
    switch (k) {
      case 1: imp.reduce_variables = false; break;
      case 2: imp.within_contest_ordering = false; break;
      case 3: imp.lexicographic_contests = false; break;
      case 4: imp.minimal_cuts = false; break;
      case 5: imp.merge_noncompetitive = false; break;
      default: throw InvalidInputError("improvement index must be 1..5");
    }
    return imp;
  }
};

inline constexpr int kMaxDeckLength = 500;

/// Contests that could be read as overvoted by some feasible ballot under
/// sigma: the mapped-vote capacity exceeds the contest's cap. Overvote
/// variables are only needed for these contests.
inline std::vector<int> precompute_overvotable_contests(const BallotStyle& style,
                                                        const Swap& sigma) {
  if (sigma.size() != style.candidate_count())
    throw InvalidSwapError("swap size does not match candidate count");
  if (sigma.is_identity())
    throw InvalidSwapError("overvotable contests are defined for non-identity swaps");
  const int num_contests = style.contest_count();
  // into[c][c'] = |{ i in contest c : sigma(i) in contest c' }|
  std::vector<std::vector<int>> into(static_cast<std::size_t>(num_contests),
                                     std::vector<int>(static_cast<std::size_t>(num_contests), 0));
  for (int i = 1; i <= style.candidate_count(); ++i)
    ++into[static_cast<std::size_t>(style.contest_of(i))]
           [static_cast<std::size_t>(style.contest_of(sigma.image(i)))];
  std::vector<int> result;
  for (int c = 0; c < num_contests; ++c) {
    int capacity = 0;
    for (int c2 = 0; c2 < num_contests; ++c2)
      capacity += std::min(into[static_cast<std::size_t>(c)][static_cast<std::size_t>(c2)],
                           style.contests()[static_cast<std::size_t>(c2)].max_votes);
    if (capacity >= style.contests()[static_cast<std::size_t>(c)].max_votes + 1)
      result.push_back(c);
  }
  return result;
}

/// Pairs of contests that are equivalent (same size and cap) and adjacent in
/// contest order within their equivalence class.
inline std::vector<std::pair<int, int>> sequential_equivalent_contests(const BallotStyle& style) {
  std::map<std::pair<int, int>, std::vector<int>> classes;
  for (int c = 0; c < style.contest_count(); ++c) {
    const auto& contest = style.contests()[static_cast<std::size_t>(c)];
    classes[{contest.size(), contest.max_votes}].push_back(c);
  }
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [shape, members] : classes)
    for (std::size_t k = 0; k + 1 < members.size(); ++k)
      pairs.emplace_back(members[k], members[k + 1]);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

/// The restricted deck-design feasibility model: find B feasible ballots
/// whose tallies expose every swap in the cut set.
class MasterModel {
 public:
  MasterModel(const BallotStyle& style, std::vector<Swap> cuts, int length,
              RuleSet rules, Improvements improvements)
      : style_(style),
        cuts_(std::move(cuts)),
        length_(length),
        rules_(rules),
        improvements_(improvements) {
    rules_.validate();
    if (length_ < 1) throw InvalidInputError("deck length must be at least 1");
    if (length_ > kMaxDeckLength)
      throw CapacityError("deck length " + std::to_string(length_) + " exceeds the cap of " +
                          std::to_string(kMaxDeckLength));
    for (const auto& cut : cuts_) {
      if (cut.size() != style_.candidate_count())
        throw InvalidSwapError("cut size does not match candidate count");
      if (cut.is_identity()) throw InvalidSwapError("cuts must be non-identity swaps");
    }
    // Dedup repeated cuts by permutation equality.
    std::sort(cuts_.begin(), cuts_.end());
    cuts_.erase(std::unique(cuts_.begin(), cuts_.end()), cuts_.end());
    build();
  }

  milp::Model& model() { return model_; }
  const milp::Model& model() const { return model_; }
  const BallotStyle& style() const { return style_; }
  const std::vector<Swap>& cuts() const { return cuts_; }
  int length() const { return length_; }

  int beta_variable_count() const { return static_cast<int>(beta_.size() * beta_.front().size()); }
  int gamma_variable_count() const { return num_gamma_; }
  int y_variable_count() const { return static_cast<int>(y_.size()); }
  int p_variable_count() const { return num_p_; }
  int lambda_variable_count() const { return num_lambda_; }

  int beta_var(int ballot, int candidate) const {
    return beta_[static_cast<std::size_t>(ballot)][static_cast<std::size_t>(candidate - 1)];
  }
  int gamma_var(int candidate, int votes) const {
    return gamma_[static_cast<std::size_t>(candidate - 1)][static_cast<std::size_t>(votes)];
  }

  /// Extract the deck encoded by an optimal assignment.
  Deck extract_deck(const milp::SolveOutcome& outcome) const {
    Deck deck;
    deck.ballots.reserve(static_cast<std::size_t>(length_));
    for (int b = 0; b < length_; ++b) {
      std::vector<int> marks;
      for (int i = 1; i <= style_.candidate_count(); ++i)
        if (outcome.value(beta_var(b, i)) > 0.5) marks.push_back(i);
      deck.ballots.emplace_back(std::move(marks));
    }
    return deck;
  }

  /// Check that the assignment's vote-count encoding matches the deck.
  void verify_gamma_consistency(const milp::SolveOutcome& outcome, const Deck& deck) const {
    const auto counts = mark_counts(style_, deck);
    for (int i = 1; i <= style_.candidate_count(); ++i) {
      int encoded = -1;
      for (int g = 0; g <= length_; ++g)
        if (outcome.value(gamma_var(i, g)) > 0.5) {
          if (encoded != -1) throw InternalError("vote-count encoding selected two values");
          encoded = g;
        }
      if (encoded != counts[static_cast<std::size_t>(i - 1)])
        throw InternalError("vote-count encoding disagrees with the extracted deck");
    }
  }

 private:
  void build() {
    const int n = style_.candidate_count();
    const int num_contests = style_.contest_count();
    const int B = length_;

    // Count variables are declared before ballot cells: the solver branches
    // in declaration order, and deciding vote counts first collapses the
    // remaining per-contest packing into an integral transportation problem.
    gamma_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(B + 1)));
    for (int i = 1; i <= n; ++i)
      for (int g = 0; g <= B; ++g)
        gamma_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(g)] =
            model_.add_binary("gamma_i" + std::to_string(i) + "_g" + std::to_string(g));
    num_gamma_ = n * (B + 1);

    beta_.assign(static_cast<std::size_t>(B), std::vector<int>(static_cast<std::size_t>(n)));
    for (int b = 0; b < B; ++b)
      for (int i = 1; i <= n; ++i)
        beta_[static_cast<std::size_t>(b)][static_cast<std::size_t>(i - 1)] =
            model_.add_binary("beta_b" + std::to_string(b) + "_i" + std::to_string(i));

    // Per-ballot feasibility: no contest may be overvoted.
    for (int b = 0; b < B; ++b)
      for (int c = 0; c < num_contests; ++c) {
        const auto& contest = style_.contests()[static_cast<std::size_t>(c)];
        std::vector<std::pair<int, double>> terms;
        for (int i : contest.candidates) terms.emplace_back(beta_var(b, i), 1.0);
        model_.add_constraint(std::move(terms), milp::Relation::kLessEqual,
                              contest.max_votes,
                              "feas_b" + std::to_string(b) + "_c" + std::to_string(c));
      }

    // One vote-count value per candidate, tied to the ballot marks.
    for (int i = 1; i <= n; ++i) {
      std::vector<std::pair<int, double>> one_hot;
      for (int g = 0; g <= B; ++g) one_hot.emplace_back(gamma_var(i, g), 1.0);
      model_.add_constraint(std::move(one_hot), milp::Relation::kEqual, 1.0,
                            "gamma_one_i" + std::to_string(i));
      std::vector<std::pair<int, double>> channel;
      for (int b = 0; b < B; ++b) channel.emplace_back(beta_var(b, i), 1.0);
      for (int g = 1; g <= B; ++g) channel.emplace_back(gamma_var(i, g), -static_cast<double>(g));
      model_.add_constraint(std::move(channel), milp::Relation::kEqual, 0.0,
                            "gamma_count_i" + std::to_string(i));
      if (rules_.at_least_one_vote)
        model_.add_constraint({{gamma_var(i, 0), 1.0}}, milp::Relation::kEqual, 0.0,
                              "one_vote_i" + std::to_string(i));
    }

    // Tie variables y(i,j): forced to one when i and j have equal counts.
    // With variable reduction only the pairs some cut actually maps get one.
    std::vector<std::pair<int, int>> y_pairs;
    if (improvements_.reduce_variables) {
      for (const auto& cut : cuts_)
        for (int i = 1; i <= n; ++i)
          if (cut.image(i) != i) y_pairs.emplace_back(i, cut.image(i));
      std::sort(y_pairs.begin(), y_pairs.end());
      y_pairs.erase(std::unique(y_pairs.begin(), y_pairs.end()), y_pairs.end());
    } else {
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) y_pairs.emplace_back(i, j);
    }
    for (const auto& [i, j] : y_pairs) {
      const int var =
          model_.add_continuous("y_" + std::to_string(i) + "_" + std::to_string(j));
      y_[{i, j}] = var;
      for (int g = 0; g <= B; ++g) {
        if (i == j) {
          model_.add_constraint({{var, 1.0}, {gamma_var(i, g), -2.0}},
                                milp::Relation::kGreaterEqual, -1.0);
        } else {
          model_.add_constraint(
              {{var, 1.0}, {gamma_var(i, g), -1.0}, {gamma_var(j, g), -1.0}},
              milp::Relation::kGreaterEqual, -1.0);
        }
      }
    }

    // Overvote indicators p and the per-cut detection disjunction.
    num_p_ = 0;
    for (std::size_t s = 0; s < cuts_.size(); ++s) {
      const Swap& sigma = cuts_[s];
      std::vector<int> contests_with_p;
      if (improvements_.reduce_variables) {
        contests_with_p = precompute_overvotable_contests(style_, sigma);
      } else {
        contests_with_p.resize(static_cast<std::size_t>(num_contests));
        for (int c = 0; c < num_contests; ++c) contests_with_p[static_cast<std::size_t>(c)] = c;
      }

      std::vector<std::pair<int, double>> disjunction;
      int term_count = 0;
      if (improvements_.reduce_variables) {
        for (int i = 1; i <= n; ++i) {
          if (sigma.image(i) == i) continue;
          disjunction.emplace_back(y_.at({i, sigma.image(i)}), 1.0);
          ++term_count;
        }
      } else {
        for (int i = 1; i <= n; ++i) {
          disjunction.emplace_back(y_.at({i, sigma.image(i)}), 1.0);
          ++term_count;
        }
      }
      for (int b = 0; b < B; ++b) {
        for (int c : contests_with_p) {
          const auto& contest = style_.contests()[static_cast<std::size_t>(c)];
          const int pvar = model_.add_binary("p_s" + std::to_string(s) + "_b" +
                                             std::to_string(b) + "_c" + std::to_string(c));
          ++num_p_;
          // (v_c + 1) p + sum of mapped marks >= v_c + 1: p may be zero only
          // when the contest is read as overvoted under sigma.
          std::vector<std::pair<int, double>> terms{{pvar, contest.max_votes + 1.0}};
          for (int i : contest.candidates)
            terms.emplace_back(beta_var(b, sigma.image(i)), 1.0);
          model_.add_constraint(std::move(terms), milp::Relation::kGreaterEqual,
                                contest.max_votes + 1.0);
          disjunction.emplace_back(pvar, 1.0);
          ++term_count;
        }
      }
      // At least one tie broken or one overvote triggered.
      model_.add_constraint(std::move(disjunction), milp::Relation::kLessEqual,
                            static_cast<double>(term_count) - 1.0,
                            "detect_s" + std::to_string(s));
    }

    // Strictly increasing totals within each contest.
    if (improvements_.within_contest_ordering || rules_.distinct_within_contest) {
      for (int c = 0; c < num_contests; ++c) {
        const auto& contest = style_.contests()[static_cast<std::size_t>(c)];
        for (int k = 0; k + 1 < contest.size(); ++k) {
          std::vector<std::pair<int, double>> terms;
          for (int b = 0; b < B; ++b) {
            terms.emplace_back(beta_var(b, contest.candidates[static_cast<std::size_t>(k + 1)]), 1.0);
            terms.emplace_back(beta_var(b, contest.candidates[static_cast<std::size_t>(k)]), -1.0);
          }
          model_.add_constraint(std::move(terms), milp::Relation::kGreaterEqual, 1.0,
                                "order_c" + std::to_string(c) + "_k" + std::to_string(k));
        }
      }
    }

    // Lexicographic ordering of sequential equivalent contests.
    num_lambda_ = 0;
    if (improvements_.lexicographic_contests) {
      for (const auto& [c, c2] : sequential_equivalent_contests(style_)) {
        const auto& lo_contest = style_.contests()[static_cast<std::size_t>(c)];
        const auto& hi_contest = style_.contests()[static_cast<std::size_t>(c2)];
        const int sz = lo_contest.size();
        std::vector<int> lambda(static_cast<std::size_t>(sz));
        for (int k = 1; k <= sz; ++k) {
          lambda[static_cast<std::size_t>(k - 1)] =
              model_.add_binary("lambda_c" + std::to_string(c) + "_c" + std::to_string(c2) +
                                "_k" + std::to_string(k));
          ++num_lambda_;
        }
        auto count_diff_terms = [&](int k) {
          // totals of rank-k candidate in c2 minus in c (ranks are 1-based)
          std::vector<std::pair<int, double>> terms;
          for (int b = 0; b < B; ++b) {
            terms.emplace_back(
                beta_var(b, hi_contest.candidates[static_cast<std::size_t>(k - 1)]), 1.0);
            terms.emplace_back(
                beta_var(b, lo_contest.candidates[static_cast<std::size_t>(k - 1)]), -1.0);
          }
          return terms;
        };
        {
          auto terms = count_diff_terms(sz);
          terms.emplace_back(lambda[static_cast<std::size_t>(sz - 1)], -1.0);
          model_.add_constraint(std::move(terms), milp::Relation::kGreaterEqual, 0.0);
        }
        for (int k = 1; k < sz; ++k) {
          auto terms = count_diff_terms(k);
          terms.emplace_back(lambda[static_cast<std::size_t>(k - 1)], -1.0);
          terms.emplace_back(lambda[static_cast<std::size_t>(k)], static_cast<double>(B));
          model_.add_constraint(std::move(terms), milp::Relation::kGreaterEqual, 0.0);
        }
        model_.add_constraint({{lambda[0], 1.0}}, milp::Relation::kEqual, 1.0);
      }
    }
  }

  BallotStyle style_;
  std::vector<Swap> cuts_;
  int length_;
  RuleSet rules_;
  Improvements improvements_;
  milp::Model model_;
  std::vector<std::vector<int>> beta_;   // [ballot][candidate-1]
  std::vector<std::vector<int>> gamma_;  // [candidate-1][votes]
  std::map<std::pair<int, int>, int> y_;
  int num_gamma_ = 0;
  int num_p_ = 0;
  int num_lambda_ = 0;
};

inline MasterModel build_master(const BallotStyle& style, std::vector<Swap> cuts, int length,
                                const RuleSet& rules, const Improvements& improvements) {
  return MasterModel(style, std::move(cuts), length, rules, improvements);
}

/// Solve the restricted feasibility problem. Returns the deck on success,
/// nothing when no deck of this length can detect every cut.
inline std::optional<Deck> solve_feasibility(MasterModel& master,
                                             double time_limit_seconds = 0.0) {
  master.model().params().feasibility_only = true;
  master.model().params().time_limit_seconds = time_limit_seconds;
  const auto outcome = milp::solve(master.model());
  switch (outcome.status) {
    case milp::SolveStatus::kInfeasible:
      return std::nullopt;
    case milp::SolveStatus::kTimeout:
      throw TimeoutError("deck-design solve hit its time limit");
    case milp::SolveStatus::kError:
      throw InternalError("deck-design solver fault: " + outcome.message);
    case milp::SolveStatus::kOptimal:
      break;
  }
  Deck deck = master.extract_deck(outcome);
  if (!is_feasible(master.style(), deck))
    throw InternalError("deck-design solution contains an overvoted ballot");
  master.verify_gamma_consistency(outcome, deck);
  for (const auto& cut : master.cuts())
    if (!detects(master.style(), deck, cut))
      throw InternalError("deck-design solution fails to detect a cut it was built against");
  return deck;
}

}  // namespace latdeck
