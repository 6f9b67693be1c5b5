#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "latdeck/errors.hpp"
#include "latdeck/simplex.hpp"

namespace latdeck::milp {

enum class VarKind { kBinary, kContinuous };  // continuous variables are >= 0

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Variable {
  std::string name;
  VarKind kind;
};

struct Constraint {
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  Relation relation;
  double rhs;
  std::string name;
};

struct SolveParams {
  double time_limit_seconds = 0.0;  // 0 means no limit
  bool feasibility_only = false;    // stop at the first incumbent
};

/// A mixed-integer linear model: binary and nonnegative-continuous variables,
/// linear constraints, and a linear minimization objective.
class Model {
 public:
  int add_binary(std::string name) {
    variables_.push_back({std::move(name), VarKind::kBinary});
    objective_.push_back(0.0);
    return static_cast<int>(variables_.size()) - 1;
  }

  int add_continuous(std::string name) {
    variables_.push_back({std::move(name), VarKind::kContinuous});
    objective_.push_back(0.0);
    return static_cast<int>(variables_.size()) - 1;
  }

  void add_constraint(std::vector<std::pair<int, double>> terms, Relation relation,
                      double rhs, std::string name = {}) {
    for (const auto& [var, coef] : terms) {
      if (var < 0 || var >= variable_count())
        throw InvalidInputError("constraint references undeclared variable");
      if (!std::isfinite(coef)) throw InvalidInputError("constraint coefficient not finite");
    }
    if (!std::isfinite(rhs)) throw InvalidInputError("constraint rhs not finite");
    constraints_.push_back({std::move(terms), relation, rhs, std::move(name)});
  }

  void set_objective_coefficient(int var, double coef) {
    if (var < 0 || var >= variable_count())
      throw InvalidInputError("objective references undeclared variable");
    if (!std::isfinite(coef)) throw InvalidInputError("objective coefficient not finite");
    objective_[static_cast<std::size_t>(var)] = coef;
  }

  int variable_count() const { return static_cast<int>(variables_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<double>& objective() const { return objective_; }
  SolveParams& params() { return params_; }
  const SolveParams& params() const { return params_; }

  /// Debug export in LP text format.
  void write_lp(std::ostream& os) const {
    os << "Minimize\n obj:";
    bool any = false;
    for (int j = 0; j < variable_count(); ++j) {
      const double c = objective_[static_cast<std::size_t>(j)];
      if (c == 0.0) continue;
      os << (c < 0 ? " - " : " + ") << std::fabs(c) << " " << var_name(j);
      any = true;
    }
    if (!any) os << " 0 " << (variable_count() ? var_name(0) : "x0");
    os << "\nSubject To\n";
    int cid = 0;
    for (const auto& con : constraints_) {
      os << " " << (con.name.empty() ? "c" + std::to_string(cid) : con.name) << ":";
      if (con.terms.empty()) os << " 0 " << (variable_count() ? var_name(0) : "x0");
      for (const auto& [var, coef] : con.terms)
        os << (coef < 0 ? " - " : " + ") << std::fabs(coef) << " " << var_name(var);
      switch (con.relation) {
        case Relation::kLessEqual: os << " <= "; break;
        case Relation::kGreaterEqual: os << " >= "; break;
        case Relation::kEqual: os << " = "; break;
      }
      os << con.rhs << "\n";
      ++cid;
    }
    os << "Bounds\n";
    for (int j = 0; j < variable_count(); ++j)
      if (variables_[static_cast<std::size_t>(j)].kind == VarKind::kContinuous)
        os << " 0 <= " << var_name(j) << "\n";
    os << "Binaries\n";
    for (int j = 0; j < variable_count(); ++j)
      if (variables_[static_cast<std::size_t>(j)].kind == VarKind::kBinary)
        os << " " << var_name(j) << "\n";
    os << "End\n";
  }

  std::string var_name(int j) const {
    const auto& name = variables_[static_cast<std::size_t>(j)].name;
    return name.empty() ? "x" + std::to_string(j) : name;
  }

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<double> objective_;
  SolveParams params_;
};

enum class SolveStatus { kOptimal, kInfeasible, kTimeout, kError };

struct SolveOutcome {
  SolveStatus status = SolveStatus::kError;
  std::vector<double> assignment;  // by variable index, valid when kOptimal
  double objective = 0.0;
  std::string message;

  double value(int var) const { return assignment[static_cast<std::size_t>(var)]; }
};

using Backend = std::function<SolveOutcome(const Model&)>;

namespace detail {

// Binary values within this distance of an integer are rounded exactly;
// anything further out is a backend fault.
inline constexpr double kIntegralityTol = 1e-6;

/// Interval propagation over the rows of an LpProblem. Fixes binaries and
/// tightens continuous bounds to a fixpoint; detects boxes that cannot meet
/// some row. Everything it deduces is implied, so the LP behind it only sees
/// a smaller search box.
class Propagator {
 public:
  explicit Propagator(const LpProblem& lp) : lp_(lp) {
    rows_.resize(lp_.row_lo.size());
    var_rows_.resize(static_cast<std::size_t>(lp_.num_vars));
    for (int j = 0; j < lp_.num_vars; ++j)
      for (const auto& [r, v] : lp_.columns[static_cast<std::size_t>(j)]) {
        rows_[static_cast<std::size_t>(r)].emplace_back(j, v);
        var_rows_[static_cast<std::size_t>(j)].push_back(r);
      }
  }

  /// Tighten lo/up in place; returns false when some row is unsatisfiable.
  /// Appends every change to `undo` as (var, old_lo, old_up).
  bool run(std::vector<double>& lo, std::vector<double>& up,
           std::vector<std::tuple<int, double, double>>& undo) const {
    const int m = static_cast<int>(rows_.size());
    std::vector<char> queued(static_cast<std::size_t>(m), 1);
    std::vector<int> queue(static_cast<std::size_t>(m));
    std::iota(queue.begin(), queue.end(), 0);
    return run_queue(lo, up, undo, std::move(queued), std::move(queue));
  }

  /// As run(), but wakes only the rows touching the given variables; used
  /// for cheap probes where most of the model is unaffected.
  bool run_from(std::vector<double>& lo, std::vector<double>& up,
                std::vector<std::tuple<int, double, double>>& undo,
                std::initializer_list<int> vars) const {
    const int m = static_cast<int>(rows_.size());
    std::vector<char> queued(static_cast<std::size_t>(m), 0);
    std::vector<int> queue;
    for (int var : vars)
      for (int r : var_rows_[static_cast<std::size_t>(var)])
        if (!queued[static_cast<std::size_t>(r)]) {
          queued[static_cast<std::size_t>(r)] = 1;
          queue.push_back(r);
        }
    return run_queue(lo, up, undo, std::move(queued), std::move(queue));
  }

 private:
  bool run_queue(std::vector<double>& lo, std::vector<double>& up,
                 std::vector<std::tuple<int, double, double>>& undo,
                 std::vector<char> queued, std::vector<int> queue) const {
    std::size_t head = 0;
    auto enqueue_var = [&](int var) {
      for (int r : var_rows_[static_cast<std::size_t>(var)])
        if (!queued[static_cast<std::size_t>(r)]) {
          queued[static_cast<std::size_t>(r)] = 1;
          queue.push_back(r);
        }
    };
    long long steps = 0;
    while (head < queue.size()) {
      if (++steps > 200000) return true;  // fixpoint is taking too long; stop early
      const int r = queue[head++];
      queued[static_cast<std::size_t>(r)] = 0;
      double min_act = 0.0, max_act = 0.0;
      int min_inf = 0, max_inf = 0;  // contributors with infinite bounds
      for (const auto& [j, a] : rows_[static_cast<std::size_t>(r)]) {
        const double l = lo[static_cast<std::size_t>(j)];
        const double u = up[static_cast<std::size_t>(j)];
        if (a > 0) {
          min_act += a * l;
          if (std::isfinite(u)) max_act += a * u; else ++max_inf;
        } else {
          if (std::isfinite(u)) min_act += a * u; else ++min_inf;
          max_act += a * l;
        }
      }
      const double row_lo = lp_.row_lo[static_cast<std::size_t>(r)];
      const double row_hi = lp_.row_hi[static_cast<std::size_t>(r)];
      if (min_inf == 0 && min_act > row_hi + kFeasTol) return false;
      if (max_inf == 0 && max_act < row_lo - kFeasTol) return false;

      for (const auto& [j, a] : rows_[static_cast<std::size_t>(r)]) {
        const double l = lo[static_cast<std::size_t>(j)];
        const double u = up[static_cast<std::size_t>(j)];
        // Residual activity without variable j.
        double rest_max;
        int rest_max_inf = max_inf;
        if (a > 0) {
          rest_max = std::isfinite(u) ? max_act - a * u : max_act;
          if (!std::isfinite(u)) --rest_max_inf;
        } else {
          rest_max = max_act - a * l;
        }
        double rest_min;
        int rest_min_inf = min_inf;
        if (a > 0) {
          rest_min = min_act - a * l;
        } else {
          rest_min = std::isfinite(u) ? min_act - a * u : min_act;
          if (!std::isfinite(u)) --rest_min_inf;
        }
        double new_lo = l, new_up = u;
        if (std::isfinite(row_lo) && rest_max_inf == 0) {
          // a * x >= row_lo - rest_max
          const double bound = (row_lo - rest_max) / a;
          if (a > 0) new_lo = std::max(new_lo, bound);
          else new_up = std::min(new_up, bound);
        }
        if (std::isfinite(row_hi) && rest_min_inf == 0) {
          // a * x <= row_hi - rest_min
          const double bound = (row_hi - rest_min) / a;
          if (a > 0) new_up = std::min(new_up, bound);
          else new_lo = std::max(new_lo, bound);
        }
        // Binaries round to the nearest attainable integer bound.
        if (root_binary_[static_cast<std::size_t>(j)]) {
          if (new_lo > kFeasTol) new_lo = 1.0;
          if (new_up < 1.0 - kFeasTol) new_up = 0.0;
        }
        if (new_lo > new_up + kFeasTol) return false;
        const bool lo_moved = new_lo > l + kFeasTol;
        const bool up_moved = new_up < u - kFeasTol;
        if (!lo_moved && !up_moved) continue;
        undo.emplace_back(j, l, u);
        if (lo_moved) lo[static_cast<std::size_t>(j)] = new_lo;
        if (up_moved) up[static_cast<std::size_t>(j)] = new_up;
        enqueue_var(j);
      }
    }
    return true;
  }

 public:
  void mark_root_binaries(const std::vector<VarKind>& kinds) {
    root_binary_.assign(kinds.size(), 0);
    for (std::size_t j = 0; j < kinds.size(); ++j)
      root_binary_[j] = kinds[j] == VarKind::kBinary ? 1 : 0;
  }

 private:
  static constexpr double kFeasTol = 1e-7;
  const LpProblem& lp_;
  std::vector<std::vector<std::pair<int, double>>> rows_;
  std::vector<std::vector<int>> var_rows_;
  std::vector<char> root_binary_;
};

/// LP-relaxation branch and bound over the binary variables. Depth-first,
/// deterministic: branch on the binary closest to one half (ties to the
/// lowest index), most-fractional child first.
class BranchAndBound {
 public:
  explicit BranchAndBound(const Model& model) : model_(model) {}

  SolveOutcome run() {
    const int n = model_.variable_count();
    lp_.num_vars = n;
    lp_.lo.assign(static_cast<std::size_t>(n), 0.0);
    lp_.up.assign(static_cast<std::size_t>(n), kInf);
    for (int j = 0; j < n; ++j)
      if (model_.variables()[static_cast<std::size_t>(j)].kind == VarKind::kBinary)
        lp_.up[static_cast<std::size_t>(j)] = 1.0;
    lp_.objective = model_.objective();
    lp_.columns.assign(static_cast<std::size_t>(n), {});
    const auto& cons = model_.constraints();
    lp_.row_lo.reserve(cons.size());
    lp_.row_hi.reserve(cons.size());
    for (std::size_t r = 0; r < cons.size(); ++r) {
      // Merge duplicate variable references within one constraint.
      std::map<int, double> merged;
      for (const auto& [var, coef] : cons[r].terms) merged[var] += coef;
      for (const auto& [var, coef] : merged)
        if (coef != 0.0)
          lp_.columns[static_cast<std::size_t>(var)].emplace_back(static_cast<int>(r), coef);
      switch (cons[r].relation) {
        case Relation::kLessEqual:
          lp_.row_lo.push_back(-kInf);
          lp_.row_hi.push_back(cons[r].rhs);
          break;
        case Relation::kGreaterEqual:
          lp_.row_lo.push_back(cons[r].rhs);
          lp_.row_hi.push_back(kInf);
          break;
        case Relation::kEqual:
          lp_.row_lo.push_back(cons[r].rhs);
          lp_.row_hi.push_back(cons[r].rhs);
          break;
      }
    }

    deadline_ = std::chrono::steady_clock::time_point::max();
    if (model_.params().time_limit_seconds > 0.0)
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(model_.params().time_limit_seconds));

    objective_is_integral_ = true;
    for (int j = 0; j < n; ++j) {
      const double c = model_.objective()[static_cast<std::size_t>(j)];
      if (c == 0.0) continue;
      if (model_.variables()[static_cast<std::size_t>(j)].kind != VarKind::kBinary ||
          std::fabs(c - std::round(c)) > 1e-12)
        objective_is_integral_ = false;
    }

    // Exactly-one rows over binaries support domain splits, which beat
    // one-variable dichotomy on assignment-shaped models.
    for (const auto& con : cons) {
      if (con.relation != Relation::kEqual || con.rhs != 1.0) continue;
      if (con.terms.size() < 3) continue;
      bool clique = true;
      for (const auto& [var, coef] : con.terms)
        if (coef != 1.0 ||
            model_.variables()[static_cast<std::size_t>(var)].kind != VarKind::kBinary) {
          clique = false;
          break;
        }
      if (clique) {
        std::vector<int> members;
        for (const auto& [var, coef] : con.terms) members.push_back(var);
        one_hot_groups_.push_back(std::move(members));
      }
    }

    probe_and_add_cliques();

    solver_ = std::make_unique<latdeck::milp::detail::LpSolver>(lp_);
    propagator_ = std::make_unique<Propagator>(lp_);
    {
      std::vector<VarKind> kinds;
      kinds.reserve(static_cast<std::size_t>(n));
      for (const auto& var : model_.variables()) kinds.push_back(var.kind);
      propagator_->mark_root_binaries(kinds);
    }

    SolveOutcome out;
    try {
      dive(0);
    } catch (const TimeoutError&) {
      out.status = SolveStatus::kTimeout;
      out.message = incumbent_ ? "time limit reached (an incumbent existed)"
                               : "time limit reached";
      return out;
    } catch (const InternalError& e) {
      out.status = SolveStatus::kError;
      out.message = e.what();
      return out;
    }

    if (!incumbent_) {
      out.status = SolveStatus::kInfeasible;
      return out;
    }
    out.status = SolveStatus::kOptimal;
    out.assignment = std::move(*incumbent_);
    out.objective = incumbent_objective_;
    validate(out);
    return out;
  }

 private:
  static constexpr long long kNodeLimit = 20'000'000;

  // Root probing: pairs of binaries sharing a short row are tentatively set
  // to one together; when propagation refutes the pair, the conflict is kept.
  // Conflict edges are merged greedily into cliques and added as rows, which
  // hands the LP relaxation the pigeonhole arguments that pair disjunctions
  // alone cannot express.
  void probe_and_add_cliques() {
    const int n = model_.variable_count();
    auto is_binary = [&](int j) {
      return model_.variables()[static_cast<std::size_t>(j)].kind == VarKind::kBinary;
    };

    std::vector<std::vector<int>> row_vars(lp_.row_lo.size());
    for (int j = 0; j < n; ++j)
      for (const auto& [row, coef] : lp_.columns[static_cast<std::size_t>(j)])
        row_vars[static_cast<std::size_t>(row)].push_back(j);
    std::vector<std::pair<int, int>> candidates;
    for (const auto& members : row_vars) {
      if (members.size() > 3) continue;
      std::vector<int> binaries;
      for (int j : members)
        if (is_binary(j)) binaries.push_back(j);
      for (std::size_t a = 0; a < binaries.size(); ++a)
        for (std::size_t b = a + 1; b < binaries.size(); ++b)
          candidates.emplace_back(std::min(binaries[a], binaries[b]),
                                  std::max(binaries[a], binaries[b]));
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.size() > 20000) candidates.resize(20000);
    if (candidates.empty()) return;

    Propagator prober(lp_);
    {
      std::vector<VarKind> kinds;
      for (const auto& var : model_.variables()) kinds.push_back(var.kind);
      prober.mark_root_binaries(kinds);
    }
    std::map<int, std::vector<int>> adjacency;
    for (const auto& [u, v] : candidates) {
      if (lp_.up[static_cast<std::size_t>(u)] == 0.0 ||
          lp_.up[static_cast<std::size_t>(v)] == 0.0)
        continue;
      std::vector<std::tuple<int, double, double>> undo;
      undo.emplace_back(u, lp_.lo[static_cast<std::size_t>(u)],
                        lp_.up[static_cast<std::size_t>(u)]);
      undo.emplace_back(v, lp_.lo[static_cast<std::size_t>(v)],
                        lp_.up[static_cast<std::size_t>(v)]);
      lp_.lo[static_cast<std::size_t>(u)] = 1.0;
      lp_.lo[static_cast<std::size_t>(v)] = 1.0;
      const bool feasible = prober.run_from(lp_.lo, lp_.up, undo, {u, v});
      for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
        lp_.lo[static_cast<std::size_t>(std::get<0>(*it))] = std::get<1>(*it);
        lp_.up[static_cast<std::size_t>(std::get<0>(*it))] = std::get<2>(*it);
      }
      if (!feasible) {
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
      }
    }
    if (adjacency.empty()) return;
    for (auto& [var, neighbors] : adjacency) std::sort(neighbors.begin(), neighbors.end());

    // Greedy clique cover of the conflict edges.
    std::set<std::pair<int, int>> covered;
    for (const auto& [u, neighbors] : adjacency) {
      for (int v : neighbors) {
        if (u > v || covered.count({u, v})) continue;
        std::vector<int> clique{u, v};
        for (int w : adjacency[u]) {
          if (w == v) continue;
          bool adjacent_to_all = true;
          for (int member : clique) {
            const auto& wn = adjacency[w];
            if (!std::binary_search(wn.begin(), wn.end(), member)) {
              adjacent_to_all = false;
              break;
            }
          }
          if (adjacent_to_all) clique.push_back(w);
        }
        std::sort(clique.begin(), clique.end());
        for (std::size_t a = 0; a < clique.size(); ++a)
          for (std::size_t b = a + 1; b < clique.size(); ++b)
            covered.insert({clique[a], clique[b]});
        const int row = static_cast<int>(lp_.row_lo.size());
        lp_.row_lo.push_back(-kInf);
        lp_.row_hi.push_back(1.0);
        for (int member : clique)
          lp_.columns[static_cast<std::size_t>(member)].emplace_back(row, 1.0);
      }
    }
  }

  // Restores bounds tightened by propagation when the node is unwound.
  struct PropagationGuard {
    LpProblem& lp;
    std::vector<std::tuple<int, double, double>> undo;
    ~PropagationGuard() {
      for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
        lp.lo[static_cast<std::size_t>(std::get<0>(*it))] = std::get<1>(*it);
        lp.up[static_cast<std::size_t>(std::get<0>(*it))] = std::get<2>(*it);
      }
    }
  };

  void dive(int depth) {
    if (++nodes_ > kNodeLimit) throw InternalError("branch and bound node limit exceeded");
    if (depth > model_.variable_count() + 8)
      throw InternalError("branch and bound depth exceeded variable count");
    if (std::chrono::steady_clock::now() > deadline_) throw TimeoutError("milp time limit");

    PropagationGuard guard{lp_, {}};
    if (!propagator_->run(lp_.lo, lp_.up, guard.undo)) return;

    const auto lp_result = solver_->solve(deadline_);
    if (lp_result.status == latdeck::milp::detail::LpStatus::kIterLimit) {
      if (std::chrono::steady_clock::now() > deadline_) throw TimeoutError("milp time limit");
      throw InternalError("lp solver hit its iteration limit");
    }
    if (lp_result.status == latdeck::milp::detail::LpStatus::kUnsupported)
      throw InternalError("lp start could not be made dual feasible");
    if (lp_result.status == latdeck::milp::detail::LpStatus::kInfeasible) return;

    if (incumbent_) {
      double bound = lp_result.objective;
      if (objective_is_integral_) bound = std::ceil(bound - 1e-6);
      if (bound >= incumbent_objective_ - 1e-9) return;
    }

    // Prefer splitting a fractional exactly-one row: fix half its members to
    // zero per child. Fail-first: the fractional group with the fewest
    // remaining members goes first, which keeps refutation trees shallow.
    const std::vector<int>* chosen_group = nullptr;
    std::size_t chosen_active = 0;
    for (const auto& group : one_hot_groups_) {
      bool fractional = false;
      std::size_t active_count = 0;
      for (int var : group) {
        if (lp_.up[static_cast<std::size_t>(var)] != 0.0) ++active_count;
        const double v = lp_result.x[static_cast<std::size_t>(var)];
        if (v > kIntegralityTol && v < 1.0 - kIntegralityTol) fractional = true;
      }
      if (!fractional || active_count < 2) continue;
      if (!chosen_group || active_count < chosen_active) {
        chosen_group = &group;
        chosen_active = active_count;
      }
    }
    if (chosen_group) {
      const auto& group = *chosen_group;
      std::vector<int> active;
      for (int var : group)
        if (lp_.up[static_cast<std::size_t>(var)] != 0.0) active.push_back(var);
      // Split the active members at the weighted median of the LP mass.
      double total = 0.0;
      for (int var : active) total += lp_result.x[static_cast<std::size_t>(var)];
      double prefix = 0.0;
      std::size_t split = 0;
      for (std::size_t k = 0; k + 1 < active.size(); ++k) {
        prefix += lp_result.x[static_cast<std::size_t>(active[k])];
        split = k;
        if (prefix >= 0.5 * total) break;
      }
      std::vector<int> low(active.begin(), active.begin() + static_cast<std::ptrdiff_t>(split) + 1);
      std::vector<int> high(active.begin() + static_cast<std::ptrdiff_t>(split) + 1, active.end());
      const int first_side = prefix >= 0.5 * total ? 0 : 1;
      for (int pass = 0; pass < 2; ++pass) {
        const auto& zeroed = ((pass == 0) == (first_side == 0)) ? high : low;
        std::vector<double> saved;
        saved.reserve(zeroed.size());
        for (int var : zeroed) {
          saved.push_back(lp_.up[static_cast<std::size_t>(var)]);
          lp_.up[static_cast<std::size_t>(var)] = 0.0;
        }
        dive(depth + 1);
        for (std::size_t k = 0; k < zeroed.size(); ++k)
          lp_.up[static_cast<std::size_t>(zeroed[k])] = saved[k];
        if (found_enough_) return;
      }
      return;
    }  // chosen_group

    // Branch on the first fractional binary in declaration order, so model
    // builders control the assignment hierarchy by declaring the structural
    // variables first.
    int branch_var = -1;
    for (int j = 0; j < model_.variable_count(); ++j) {
      if (model_.variables()[static_cast<std::size_t>(j)].kind != VarKind::kBinary) continue;
      const double v = lp_result.x[static_cast<std::size_t>(j)];
      const double frac = v - std::floor(v);
      const double dist = std::min(frac, 1.0 - frac);
      if (dist <= kIntegralityTol) continue;
      branch_var = j;
      break;
    }

    if (branch_var == -1) {
      // Integral: record the incumbent.
      std::vector<double> x = lp_result.x;
      for (int j = 0; j < model_.variable_count(); ++j)
        if (model_.variables()[static_cast<std::size_t>(j)].kind == VarKind::kBinary)
          x[static_cast<std::size_t>(j)] = std::round(x[static_cast<std::size_t>(j)]);
      double obj = 0.0;
      for (int j = 0; j < model_.variable_count(); ++j)
        obj += model_.objective()[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
      if (!incumbent_ || obj < incumbent_objective_ - 1e-9) {
        incumbent_ = std::move(x);
        incumbent_objective_ = obj;
      }
      if (model_.params().feasibility_only) found_enough_ = true;
      return;
    }

    const double frac = lp_result.x[static_cast<std::size_t>(branch_var)];
    const int first = frac >= 0.5 ? 1 : 0;
    const std::size_t bv = static_cast<std::size_t>(branch_var);
    const double saved_lo = lp_.lo[bv];
    const double saved_up = lp_.up[bv];
    for (int pass = 0; pass < 2; ++pass) {
      const int value = pass == 0 ? first : 1 - first;
      lp_.lo[bv] = value;
      lp_.up[bv] = value;
      dive(depth + 1);
      lp_.lo[bv] = saved_lo;
      lp_.up[bv] = saved_up;
      if (found_enough_) return;  // feasibility-only: first incumbent suffices
    }
  }

  void validate(const SolveOutcome& out) const {
    for (int j = 0; j < model_.variable_count(); ++j) {
      const double v = out.assignment[static_cast<std::size_t>(j)];
      if (model_.variables()[static_cast<std::size_t>(j)].kind == VarKind::kBinary) {
        if (std::fabs(v) > kIntegralityTol && std::fabs(v - 1.0) > kIntegralityTol)
          throw InternalError("binary variable left fractional by backend");
      } else if (v < -1e-6) {
        throw InternalError("continuous variable went negative");
      }
    }
    for (const auto& con : model_.constraints()) {
      double lhs = 0.0;
      double scale = 1.0 + std::fabs(con.rhs);
      for (const auto& [var, coef] : con.terms) {
        lhs += coef * out.assignment[static_cast<std::size_t>(var)];
        scale += std::fabs(coef);
      }
      const double tol = 1e-6 * scale;
      switch (con.relation) {
        case Relation::kLessEqual:
          if (lhs > con.rhs + tol) throw InternalError("solution violates a <= constraint");
          break;
        case Relation::kGreaterEqual:
          if (lhs < con.rhs - tol) throw InternalError("solution violates a >= constraint");
          break;
        case Relation::kEqual:
          if (std::fabs(lhs - con.rhs) > tol)
            throw InternalError("solution violates an = constraint");
          break;
      }
    }
  }

  const Model& model_;
  latdeck::milp::detail::LpProblem lp_;
  std::unique_ptr<latdeck::milp::detail::LpSolver> solver_;
  std::unique_ptr<Propagator> propagator_;
  std::vector<std::vector<int>> one_hot_groups_;
  std::chrono::steady_clock::time_point deadline_;
  std::optional<std::vector<double>> incumbent_;
  double incumbent_objective_ = 0.0;
  bool objective_is_integral_ = false;
  bool found_enough_ = false;
  long long nodes_ = 0;
};

inline SolveOutcome native_solve(const Model& model) {
  if (model.variable_count() == 0) {
    SolveOutcome out;
    out.status = SolveStatus::kOptimal;
    out.objective = 0.0;
    return out;
  }
  return BranchAndBound(model).run();
}

inline std::map<std::string, Backend>& backend_registry() {
  static std::map<std::string, Backend> registry{{"native", Backend(&native_solve)}};
  return registry;
}

inline std::string& default_backend_name() {
  static std::string name = "native";
  return name;
}

}  // namespace detail

inline void register_backend(const std::string& name, Backend backend) {
  detail::backend_registry()[name] = std::move(backend);
}

inline void set_default_backend(const std::string& name) {
  if (detail::backend_registry().find(name) == detail::backend_registry().end())
    throw InvalidInputError("unknown milp backend '" + name + "'");
  detail::default_backend_name() = name;
}

inline std::string default_backend() { return detail::default_backend_name(); }

inline SolveOutcome solve(const Model& model, const std::string& backend_name) {
  auto& registry = detail::backend_registry();
  const auto it = registry.find(backend_name);
  if (it == registry.end())
    throw InvalidInputError("unknown milp backend '" + backend_name + "'");
  SolveOutcome out = it->second(model);
  if (out.status == SolveStatus::kOptimal) {
    // Enforce the integrality contract at the boundary.
    for (int j = 0; j < model.variable_count(); ++j) {
      if (model.variables()[static_cast<std::size_t>(j)].kind != VarKind::kBinary) continue;
      double& v = out.assignment[static_cast<std::size_t>(j)];
      if (std::fabs(v) <= detail::kIntegralityTol) {
        v = 0.0;
      } else if (std::fabs(v - 1.0) <= detail::kIntegralityTol) {
        v = 1.0;
      } else {
        out.status = SolveStatus::kError;
        out.message = "backend returned a fractional binary";
        out.assignment.clear();
        break;
      }
    }
  }
  return out;
}

inline SolveOutcome solve(const Model& model) { return solve(model, default_backend()); }

}  // namespace latdeck::milp
