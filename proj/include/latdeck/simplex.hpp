#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "latdeck/errors.hpp"

namespace latdeck::milp::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A linear program in bounded-variable form:
///   minimize c'x  s.t.  row_lo <= A x <= row_hi,  lo <= x <= up.
struct LpProblem {
  int num_vars = 0;
  std::vector<double> lo, up;      // variable bounds; up may be +inf
  std::vector<double> objective;   // minimize
  // Sparse rows: columns[j] lists (row, coefficient) pairs for variable j.
  std::vector<std::vector<std::pair<int, double>>> columns;
  std::vector<double> row_lo, row_hi;

  int num_rows() const { return static_cast<int>(row_lo.size()); }
};

enum class LpStatus { kOptimal, kInfeasible, kIterLimit, kUnsupported };

struct LpResult {
  LpStatus status = LpStatus::kIterLimit;
  std::vector<double> x;  // structural values, valid when kOptimal
  double objective = 0.0;
  long long iterations = 0;
};

/// Dual simplex over the bounded-variable form above. The slack of every row
/// is an explicit variable carrying the row's bounds, so the working system
/// is A x - s = 0 and a basis is any nonsingular selection of m columns.
///
/// The solver keeps its basis between calls: variable bound changes (the only
/// modification branch and bound makes) never disturb dual feasibility, so a
/// re-solve after tightening bounds usually takes a handful of pivots. The
/// initial all-slack basis is dual feasible whenever every variable can sit
/// at a finite bound whose sign matches its cost; models built by this
/// library always satisfy that.
class LpSolver {
 public:
  explicit LpSolver(const LpProblem& problem) : p_(problem) {
    const int n = p_.num_vars;
    const int m = p_.num_rows();
    const int nt = n + m;
    m_ = m;
    lo_.resize(static_cast<std::size_t>(nt));
    up_.resize(static_cast<std::size_t>(nt));
    cost_.assign(static_cast<std::size_t>(nt), 0.0);
    for (int j = 0; j < n; ++j) cost_[static_cast<std::size_t>(j)] = p_.objective[static_cast<std::size_t>(j)];
    status_.assign(static_cast<std::size_t>(nt), VarStatus::kAtLower);
    basis_.resize(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
      basis_[static_cast<std::size_t>(r)] = n + r;
      status_[static_cast<std::size_t>(n + r)] = VarStatus::kBasic;
    }
    binv_.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
    for (int r = 0; r < m; ++r) binv_[idx(r, r)] = -1.0;  // slack basis is -I
    xb_.resize(static_cast<std::size_t>(m));
    rho_.resize(static_cast<std::size_t>(m));
    col_.resize(static_cast<std::size_t>(m));
    q_.resize(static_cast<std::size_t>(m));
    y_.resize(static_cast<std::size_t>(m));
    dual_.resize(static_cast<std::size_t>(nt));
    first_solve_ = true;
  }

  LpResult solve(std::chrono::steady_clock::time_point deadline =
                     std::chrono::steady_clock::time_point::max()) {
    const int n = p_.num_vars;
    const int m = m_;
    const int nt = n + m;

    // Refresh bounds from the (possibly branch-modified) problem.
    for (int j = 0; j < n; ++j) {
      lo_[static_cast<std::size_t>(j)] = p_.lo[static_cast<std::size_t>(j)];
      up_[static_cast<std::size_t>(j)] = p_.up[static_cast<std::size_t>(j)];
    }
    for (int r = 0; r < m; ++r) {
      lo_[static_cast<std::size_t>(n + r)] = p_.row_lo[static_cast<std::size_t>(r)];
      up_[static_cast<std::size_t>(n + r)] = p_.row_hi[static_cast<std::size_t>(r)];
    }

    if (first_solve_) {
      first_solve_ = false;
      for (int j = 0; j < nt; ++j) {
        if (status_[static_cast<std::size_t>(j)] == VarStatus::kBasic) continue;
        const double l = lo_[static_cast<std::size_t>(j)];
        const double u = up_[static_cast<std::size_t>(j)];
        const double c = cost_[static_cast<std::size_t>(j)];
        if (std::isfinite(l)) status_[static_cast<std::size_t>(j)] = VarStatus::kAtLower;
        else if (std::isfinite(u)) status_[static_cast<std::size_t>(j)] = VarStatus::kAtUpper;
        else return {LpStatus::kUnsupported, {}, 0.0, 0};
        if (c < -kDualTol && status_[static_cast<std::size_t>(j)] == VarStatus::kAtLower) {
          if (!std::isfinite(u)) return {LpStatus::kUnsupported, {}, 0.0, 0};
          status_[static_cast<std::size_t>(j)] = VarStatus::kAtUpper;
        }
      }
    }

    LpResult result;
    const long long max_iter = 2000 + 400LL * m + 20LL * nt;
    const long long bland_after = 500 + 40LL * m;
    int verdict_refactors = 0;

    for (long long iter = 0;; ++iter) {
      if ((iter & 63) == 63 && std::chrono::steady_clock::now() > deadline) {
        result.status = LpStatus::kIterLimit;
        result.iterations = iter;
        return result;
      }
      if (iter >= max_iter) {
        result.status = LpStatus::kIterLimit;
        result.iterations = iter;
        return result;
      }
      if (pivots_since_refactor_ >= kRefactorEvery) {
        if (!refactorize()) {
          result.status = LpStatus::kIterLimit;
          result.iterations = iter;
          return result;
        }
      }
      const bool bland = iter >= bland_after;

      compute_basic_values();

      // Leaving variable: a basic value outside its bounds.
      int leave_row = -1;
      double worst = kPrimalTol;
      int dir = 0;  // +1: must increase; -1: must decrease
      for (int r = 0; r < m; ++r) {
        const int v = basis_[static_cast<std::size_t>(r)];
        const double value = xb_[static_cast<std::size_t>(r)];
        const double l = lo_[static_cast<std::size_t>(v)];
        const double u = up_[static_cast<std::size_t>(v)];
        double viol = 0.0;
        int d = 0;
        if (value < l - kPrimalTol) {
          viol = l - value;
          d = +1;
        } else if (value > u + kPrimalTol) {
          viol = value - u;
          d = -1;
        }
        if (d == 0) continue;
        if (bland) {
          if (leave_row == -1 || v < basis_[static_cast<std::size_t>(leave_row)]) {
            leave_row = r;
            dir = d;
          }
        } else if (viol > worst) {
          worst = viol;
          leave_row = r;
          dir = d;
        }
      }

      if (leave_row == -1) {
        // Primal feasible. Trust the verdict only if the factorization's
        // residual is clean; otherwise refresh it and keep going.
        if (residual_too_large() && verdict_refactors++ < 3) {
          if (!refactorize()) {
            result.status = LpStatus::kIterLimit;
            result.iterations = iter;
            return result;
          }
          continue;
        }
        // Warm starts can leave reduced costs of previously-fixed variables
        // with the wrong sign; a primal phase finishes the job from here.
        if (!dual_feasible()) {
          const LpStatus st = primal_phase(deadline, result.iterations);
          if (st != LpStatus::kOptimal) {
            result.status = st;
            return result;
          }
          compute_basic_values();
        }
        result.status = LpStatus::kOptimal;
        result.iterations += iter;
        extract_solution(result);
        return result;
      }

      // Row of the tableau for the leaving row: alpha_j = (e_r B^-1 A)_j.
      for (int r = 0; r < m; ++r) rho_[static_cast<std::size_t>(r)] = binv_[idx(leave_row, r)];
      compute_duals();

      int enter = -1;
      double best_ratio = kInf;
      double best_alpha = 0.0;
      double enter_alpha = 0.0;
      for (int j = 0; j < nt; ++j) {
        const VarStatus st = status_[static_cast<std::size_t>(j)];
        if (st == VarStatus::kBasic) continue;
        if (lo_[static_cast<std::size_t>(j)] == up_[static_cast<std::size_t>(j)]) continue;
        const double alpha = row_entry(j);
        if (std::fabs(alpha) <= kPivotTol) continue;
        // A lower-bound variable may only increase and an upper-bound one
        // only decrease; the move must push the leaving value toward its
        // violated bound.
        const bool eligible =
            st == VarStatus::kAtLower ? (alpha * dir < 0) : (alpha * dir > 0);
        if (!eligible) continue;
        if (bland) {
          if (enter == -1 || j < enter) {
            enter = j;
            enter_alpha = alpha;
          }
          continue;
        }
        const double ratio = std::fabs(dual_[static_cast<std::size_t>(j)]) / std::fabs(alpha);
        if (ratio < best_ratio - kRatioTol ||
            (ratio < best_ratio + kRatioTol && std::fabs(alpha) > std::fabs(best_alpha))) {
          best_ratio = ratio;
          best_alpha = alpha;
          enter = j;
          enter_alpha = alpha;
        }
      }

      if (enter == -1) {
        // No column can repair the violated row: primal infeasible. As with
        // the optimal verdict, insist on a reasonably fresh factorization.
        if ((residual_too_large() || pivots_since_refactor_ > 30) && verdict_refactors++ < 3) {
          if (!refactorize()) {
            result.status = LpStatus::kIterLimit;
            result.iterations = iter;
            return result;
          }
          continue;
        }
        result.status = LpStatus::kInfeasible;
        result.iterations = iter;
        return result;
      }

      // Pivot: enter replaces the leaving variable, which exits at the bound
      // it was violating.
      column_times_binv(enter);
      const double piv = col_[static_cast<std::size_t>(leave_row)];
      if (std::fabs(piv) <= kPivotTol ||
          std::fabs(piv - enter_alpha) > 1e-5 * (1.0 + std::fabs(piv))) {
        if (!refactorize()) {
          result.status = LpStatus::kIterLimit;
          result.iterations = iter;
          return result;
        }
        continue;
      }
      const int leaving_var = basis_[static_cast<std::size_t>(leave_row)];
      const double inv_piv = 1.0 / piv;
      double* prow = &binv_[idx(leave_row, 0)];
      for (int r = 0; r < m; ++r) prow[r] *= inv_piv;
      for (int k = 0; k < m; ++k) {
        if (k == leave_row) continue;
        const double f = col_[static_cast<std::size_t>(k)];
        if (std::fabs(f) < 1e-14) continue;
        double* krow = &binv_[idx(k, 0)];
        for (int r = 0; r < m; ++r) krow[r] -= f * prow[r];
      }
      basis_[static_cast<std::size_t>(leave_row)] = enter;
      status_[static_cast<std::size_t>(enter)] = VarStatus::kBasic;
      status_[static_cast<std::size_t>(leaving_var)] =
          dir > 0 ? VarStatus::kAtLower : VarStatus::kAtUpper;
      ++pivots_since_refactor_;
    }
  }

 private:
  enum class VarStatus : char { kBasic, kAtLower, kAtUpper };

  bool dual_feasible() {
    compute_duals();
    const int nt = p_.num_vars + m_;
    for (int j = 0; j < nt; ++j) {
      const VarStatus st = status_[static_cast<std::size_t>(j)];
      if (st == VarStatus::kBasic) continue;
      if (lo_[static_cast<std::size_t>(j)] == up_[static_cast<std::size_t>(j)]) continue;
      const double d = dual_[static_cast<std::size_t>(j)];
      if (st == VarStatus::kAtLower && d < -1e-7) return false;
      if (st == VarStatus::kAtUpper && d > 1e-7) return false;
    }
    return true;
  }

  // Bounded-variable primal simplex, entered with a primal feasible basis.
  LpStatus primal_phase(std::chrono::steady_clock::time_point deadline, long long& iters) {
    const int n = p_.num_vars;
    const int m = m_;
    const int nt = n + m;
    const long long max_iter = 2000 + 400LL * m + 20LL * nt;
    const long long bland_after = 500 + 40LL * m;
    for (long long iter = 0;; ++iter) {
      if ((iter & 63) == 63 && std::chrono::steady_clock::now() > deadline)
        return LpStatus::kIterLimit;
      if (iter >= max_iter) return LpStatus::kIterLimit;
      if (pivots_since_refactor_ >= kRefactorEvery && !refactorize())
        return LpStatus::kIterLimit;
      const bool bland = iter >= bland_after;
      ++iters;

      compute_basic_values();
      compute_duals();

      int enter = -1;
      double worst = 1e-9;
      int move = 0;  // +1: entering increases, -1: decreases
      for (int j = 0; j < nt; ++j) {
        const VarStatus st = status_[static_cast<std::size_t>(j)];
        if (st == VarStatus::kBasic) continue;
        if (lo_[static_cast<std::size_t>(j)] == up_[static_cast<std::size_t>(j)]) continue;
        const double d = dual_[static_cast<std::size_t>(j)];
        double gain = 0.0;
        int dir = 0;
        if (st == VarStatus::kAtLower && d < -worst) {
          gain = -d;
          dir = +1;
        } else if (st == VarStatus::kAtUpper && d > worst) {
          gain = d;
          dir = -1;
        }
        if (dir == 0) continue;
        if (bland) {
          if (enter == -1 || j < enter) {
            enter = j;
            move = dir;
          }
        } else if (gain > worst) {
          worst = gain;
          enter = j;
          move = dir;
        }
      }
      if (enter == -1) return LpStatus::kOptimal;

      column_times_binv(enter);
      // Ratio test: how far can the entering variable move before it or a
      // basic variable hits a bound? xB changes by -col * (move * step).
      double limit = up_[static_cast<std::size_t>(enter)] - lo_[static_cast<std::size_t>(enter)];
      int leave_row = -1;  // -1 with finite limit means a bound flip
      double best_alpha = 0.0;
      for (int r = 0; r < m; ++r) {
        const double w = col_[static_cast<std::size_t>(r)] * move;
        if (std::fabs(w) <= kPivotTol) continue;
        const int v = basis_[static_cast<std::size_t>(r)];
        double room;
        if (w > 0) {
          room = xb_[static_cast<std::size_t>(r)] - lo_[static_cast<std::size_t>(v)];
        } else {
          room = up_[static_cast<std::size_t>(v)] - xb_[static_cast<std::size_t>(r)];
        }
        if (!std::isfinite(room)) continue;
        const double step = std::max(room, 0.0) / std::fabs(w);
        if (step < limit - kRatioTol ||
            (step < limit + kRatioTol &&
             (leave_row == -1 || std::fabs(w) > std::fabs(best_alpha)))) {
          limit = step;
          leave_row = r;
          best_alpha = w;
        }
      }
      if (!std::isfinite(limit)) return LpStatus::kUnsupported;  // unbounded

      if (leave_row == -1) {
        // Bound flip: the entering variable crosses to its other bound.
        status_[static_cast<std::size_t>(enter)] =
            move > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
        continue;
      }

      const double piv = col_[static_cast<std::size_t>(leave_row)];
      if (std::fabs(piv) <= kPivotTol) {
        if (!refactorize()) return LpStatus::kIterLimit;
        continue;
      }
      const int leaving_var = basis_[static_cast<std::size_t>(leave_row)];
      const double w = piv * move;
      const double inv_piv = 1.0 / piv;
      double* prow = &binv_[idx(leave_row, 0)];
      for (int r = 0; r < m; ++r) prow[r] *= inv_piv;
      for (int k = 0; k < m; ++k) {
        if (k == leave_row) continue;
        const double f = col_[static_cast<std::size_t>(k)];
        if (std::fabs(f) < 1e-14) continue;
        double* krow = &binv_[idx(k, 0)];
        for (int r = 0; r < m; ++r) krow[r] -= f * prow[r];
      }
      basis_[static_cast<std::size_t>(leave_row)] = enter;
      status_[static_cast<std::size_t>(enter)] = VarStatus::kBasic;
      // The leaving basic variable exits at whichever bound limited the step.
      status_[static_cast<std::size_t>(leaving_var)] =
          w > 0 ? VarStatus::kAtLower : VarStatus::kAtUpper;
      ++pivots_since_refactor_;
    }
  }

  static constexpr double kPrimalTol = 1e-7;
  static constexpr double kDualTol = 1e-9;
  static constexpr double kPivotTol = 1e-8;
  static constexpr double kRatioTol = 1e-9;
  static constexpr int kRefactorEvery = 100;

  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(m_) +
           static_cast<std::size_t>(c);
  }

  double nonbasic_value(int j) const {
    return status_[static_cast<std::size_t>(j)] == VarStatus::kAtLower
               ? lo_[static_cast<std::size_t>(j)]
               : up_[static_cast<std::size_t>(j)];
  }

  // Column j of the working matrix [A | -I], dotted with rho_.
  double row_entry(int j) const {
    const int n = p_.num_vars;
    if (j >= n) return -rho_[static_cast<std::size_t>(j - n)];
    double acc = 0.0;
    for (const auto& [r, v] : p_.columns[static_cast<std::size_t>(j)])
      acc += rho_[static_cast<std::size_t>(r)] * v;
    return acc;
  }

  void column_times_binv(int j) {
    const int m = m_;
    std::fill(col_.begin(), col_.end(), 0.0);
    const int n = p_.num_vars;
    if (j >= n) {
      const int r = j - n;
      for (int k = 0; k < m; ++k) col_[static_cast<std::size_t>(k)] = -binv_[idx(k, r)];
      return;
    }
    for (const auto& [r, v] : p_.columns[static_cast<std::size_t>(j)])
      for (int k = 0; k < m; ++k) col_[static_cast<std::size_t>(k)] += binv_[idx(k, r)] * v;
  }

  // xB = -B^-1 (sum of nonbasic columns at their bound values).
  void compute_basic_values() {
    const int n = p_.num_vars;
    const int m = m_;
    std::fill(q_.begin(), q_.end(), 0.0);
    for (int j = 0; j < n; ++j) {
      if (status_[static_cast<std::size_t>(j)] == VarStatus::kBasic) continue;
      const double value = nonbasic_value(j);
      if (value == 0.0) continue;
      for (const auto& [r, v] : p_.columns[static_cast<std::size_t>(j)])
        q_[static_cast<std::size_t>(r)] += v * value;
    }
    for (int r0 = 0; r0 < m; ++r0) {
      const int j = n + r0;
      if (status_[static_cast<std::size_t>(j)] == VarStatus::kBasic) continue;
      const double value = nonbasic_value(j);
      if (value != 0.0) q_[static_cast<std::size_t>(r0)] -= value;
    }
    for (int k = 0; k < m; ++k) {
      double acc = 0.0;
      const double* row = &binv_[idx(k, 0)];
      for (int r = 0; r < m; ++r) acc -= row[r] * q_[static_cast<std::size_t>(r)];
      xb_[static_cast<std::size_t>(k)] = acc;
    }
  }

  void compute_duals() {
    const int n = p_.num_vars;
    const int m = m_;
    const int nt = n + m;
    std::fill(y_.begin(), y_.end(), 0.0);
    bool any_cost = false;
    for (int r = 0; r < m; ++r)
      if (cost_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])] != 0.0) {
        any_cost = true;
        break;
      }
    if (any_cost) {
      for (int r = 0; r < m; ++r) {
        const double cb = cost_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])];
        if (cb == 0.0) continue;
        const double* row = &binv_[idx(r, 0)];
        for (int k = 0; k < m; ++k) y_[static_cast<std::size_t>(k)] += cb * row[k];
      }
    }
    for (int j = 0; j < nt; ++j) {
      if (status_[static_cast<std::size_t>(j)] == VarStatus::kBasic) {
        dual_[static_cast<std::size_t>(j)] = 0.0;
        continue;
      }
      double acc = cost_[static_cast<std::size_t>(j)];
      if (any_cost) {
        if (j >= n) {
          acc += y_[static_cast<std::size_t>(j - n)];
        } else {
          for (const auto& [r, v] : p_.columns[static_cast<std::size_t>(j)])
            acc -= y_[static_cast<std::size_t>(r)] * v;
        }
      }
      dual_[static_cast<std::size_t>(j)] = acc;
    }
  }

  // || A x - s ||_inf for the current basic solution; measures factorization
  // drift, since the basic values are computed through binv_.
  bool residual_too_large() {
    const int n = p_.num_vars;
    const int m = m_;
    std::fill(q_.begin(), q_.end(), 0.0);
    double scale = 1.0;
    auto add_var = [&](int j, double value) {
      if (value == 0.0) return;
      scale = std::max(scale, std::fabs(value));
      if (j >= n) {
        q_[static_cast<std::size_t>(j - n)] -= value;
      } else {
        for (const auto& [r, v] : p_.columns[static_cast<std::size_t>(j)])
          q_[static_cast<std::size_t>(r)] += v * value;
      }
    };
    for (int j = 0; j < n + m; ++j)
      if (status_[static_cast<std::size_t>(j)] != VarStatus::kBasic)
        add_var(j, nonbasic_value(j));
    for (int r = 0; r < m; ++r)
      add_var(basis_[static_cast<std::size_t>(r)], xb_[static_cast<std::size_t>(r)]);
    double worst = 0.0;
    for (int r = 0; r < m; ++r) worst = std::max(worst, std::fabs(q_[static_cast<std::size_t>(r)]));
    return worst > 1e-7 * scale;
  }

  // Rebuild binv_ from the basis columns by Gauss-Jordan with partial
  // pivoting. Returns false when the basis matrix is numerically singular.
  bool refactorize() {
    const int n = p_.num_vars;
    const int m = m_;
    pivots_since_refactor_ = 0;
    std::vector<double> work(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
    std::vector<double> inv(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
    auto w = [&](int r, int c) -> double& {
      return work[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) +
                  static_cast<std::size_t>(c)];
    };
    auto iv = [&](int r, int c) -> double& {
      return inv[static_cast<std::size_t>(r) * static_cast<std::size_t>(m) +
                 static_cast<std::size_t>(c)];
    };
    for (int k = 0; k < m; ++k) {
      const int j = basis_[static_cast<std::size_t>(k)];
      if (j >= n) {
        w(j - n, k) = -1.0;
      } else {
        for (const auto& [r, v] : p_.columns[static_cast<std::size_t>(j)]) w(r, k) = v;
      }
      iv(k, k) = 1.0;
    }
    // Invert by column elimination; inv starts as I over basis positions, so
    // the result maps equation space to basis coordinates.
    for (int c = 0; c < m; ++c) {
      int piv_row = -1;
      double best = 1e-11;
      for (int r = c; r < m; ++r)
        if (std::fabs(w(r, c)) > best) {
          best = std::fabs(w(r, c));
          piv_row = r;
        }
      if (piv_row == -1) return false;
      if (piv_row != c) {
        for (int k = 0; k < m; ++k) {
          std::swap(w(piv_row, k), w(c, k));
          std::swap(iv(piv_row, k), iv(c, k));
        }
      }
      const double inv_piv = 1.0 / w(c, c);
      for (int k = 0; k < m; ++k) {
        w(c, k) *= inv_piv;
        iv(c, k) *= inv_piv;
      }
      for (int r = 0; r < m; ++r) {
        if (r == c) continue;
        const double f = w(r, c);
        if (std::fabs(f) < 1e-14) continue;
        for (int k = 0; k < m; ++k) {
          w(r, k) -= f * w(c, k);
          iv(r, k) -= f * iv(c, k);
        }
      }
    }
    // work held B with column k = basis_[k]'s column, so inv is B^-1 with
    // row k giving basis coordinate k; transpose is not needed because we
    // eliminated columns in basis order.
    binv_.swap(inv);
    return true;
  }

  void extract_solution(LpResult& result) {
    const int n = p_.num_vars;
    const int m = m_;
    result.x.assign(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j)
      if (status_[static_cast<std::size_t>(j)] != VarStatus::kBasic)
        result.x[static_cast<std::size_t>(j)] = nonbasic_value(j);
    for (int r = 0; r < m; ++r) {
      const int v = basis_[static_cast<std::size_t>(r)];
      if (v < n) result.x[static_cast<std::size_t>(v)] = xb_[static_cast<std::size_t>(r)];
    }
    result.objective = 0.0;
    for (int j = 0; j < n; ++j)
      result.objective += p_.objective[static_cast<std::size_t>(j)] *
                          result.x[static_cast<std::size_t>(j)];
  }

  const LpProblem& p_;
  int m_ = 0;
  std::vector<double> lo_, up_, cost_;
  std::vector<VarStatus> status_;
  std::vector<int> basis_;
  std::vector<double> binv_;
  std::vector<double> xb_, rho_, col_, q_, y_, dual_;
  bool first_solve_ = true;
  int pivots_since_refactor_ = 0;
};

}  // namespace latdeck::milp::detail
