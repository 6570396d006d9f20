#include <algorithm>
#include <set>

#include "schedgap/errors.hpp"
#include "schedgap/lp.hpp"
#include "schedgap/solvers.hpp"
#include "schedgap/validate.hpp"

namespace schedgap {

namespace {

// Dense exact phase-1 tableau over a subset of the precedence rows.
// Column layout: [vars | capacity slacks | precedence surpluses |
// completion artificials | precedence artificials]; artificials never
// re-enter the basis but their columns are kept so the dual multipliers
// can be read off the final reduced costs.
class Tableau {
 public:
  Tableau(const LpProblem& p,
          const std::vector<std::pair<int, std::int64_t>>& rows,
          const LpLimits& limits)
      : p_(p), prec_rows_(rows) {
    V_ = p.vars();
    T_ = p.T;
    U_ = static_cast<std::int64_t>(p.unit_ids.size());
    S_ = static_cast<std::int64_t>(rows.size());
    R_ = T_ + U_ + S_;
    N_ = V_ + T_ + 2 * S_ + U_;
    if (R_ * (N_ + 1) > limits.max_tableau_cells)
      throw BudgetError("LP tableau exceeds max_tableau_cells = " +
                        std::to_string(limits.max_tableau_cells));

    A_.assign(R_, std::vector<Rat>(N_ + 1, Rat(0)));
    basic_.resize(R_);
    for (std::int64_t t = 1; t <= T_; ++t) {
      auto& row = A_[t - 1];
      for (std::int64_t u = 0; u < U_; ++u) row[p.var(static_cast<int>(u), t)] = 1;
      row[slack_col(t)] = 1;
      row[N_] = Rat(p.m);
      basic_[t - 1] = slack_col(t);
    }
    for (std::int64_t u = 0; u < U_; ++u) {
      auto& row = A_[T_ + u];
      for (std::int64_t t = 1; t <= T_; ++t)
        row[p.var(static_cast<int>(u), t)] = 1;
      row[comp_art_col(u)] = 1;
      row[N_] = Rat(p.demands[u]);
      basic_[T_ + u] = comp_art_col(u);
    }
    for (std::int64_t s = 0; s < S_; ++s) {
      auto& row = A_[T_ + U_ + s];
      const auto [r, tp] = prec_rows_[s];
      const auto [j, k] = p.prec[r];
      const Rat inv_dj = Rat(1) / Rat(p.demands[j]);
      const Rat inv_dk = Rat(1) / Rat(p.demands[k]);
      for (std::int64_t t = 1; t < tp; ++t) row[p.var(j, t)] = inv_dj;
      for (std::int64_t t = tp + 1; t <= T_; ++t) row[p.var(k, t)] = inv_dk;
      row[surplus_col(s)] = -1;
      row[prec_art_col(s)] = 1;
      row[N_] = 1;
      basic_[T_ + U_ + s] = prec_art_col(s);
    }

    // price out the artificial basis: r_j = -sum of A_ij over artificial
    // rows, z = sum of their right-hand sides
    r_.assign(N_, Rat(0));
    z_ = 0;
    for (std::int64_t i = T_; i < R_; ++i) {
      for (std::int64_t j = 0; j < N_; ++j)
        if (A_[i][j] != 0) r_[j] -= A_[i][j];
      z_ += A_[i][N_];
    }
    for (std::int64_t i = T_; i < R_; ++i) r_[basic_[i]] = 0;
  }

  // Runs to optimality; returns the phase-1 objective (0 iff feasible).
  Rat optimize(std::int64_t& pivots, std::int64_t max_pivots) {
    bool bland = false;
    int degenerate_run = 0;
    for (;;) {
      std::int64_t q = pick_entering(bland);
      if (q < 0) return z_;
      std::int64_t pr = pick_leaving(q);
      if (pr < 0)
        throw std::logic_error("phase-1 simplex claims unboundedness");
      if (++pivots > max_pivots)
        throw BudgetError("simplex exceeded max_pivots = " +
                          std::to_string(max_pivots));
      if (A_[pr][N_] == 0) {
        if (++degenerate_run > 64) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(pr, q);
    }
  }

  LpSolution extract_solution() const {
    LpSolution sol;
    sol.x.resize(U_);
    std::vector<std::pair<std::int64_t, Rat>> cells;
    for (std::int64_t i = 0; i < R_; ++i)
      if (basic_[i] < V_ && A_[i][N_] != 0) cells.emplace_back(basic_[i], A_[i][N_]);
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [col, v] : cells)
      sol.x[col / T_].emplace_back(col % T_ + 1, v);
    return sol;
  }

  FarkasCertificate extract_farkas() const {
    FarkasCertificate cert;
    cert.y_cap.resize(T_);
    for (std::int64_t t = 1; t <= T_; ++t) cert.y_cap[t - 1] = -r_[slack_col(t)];
    cert.y_comp.resize(U_);
    for (std::int64_t u = 0; u < U_; ++u)
      cert.y_comp[u] = Rat(1) - r_[comp_art_col(u)];
    for (std::int64_t s = 0; s < S_; ++s) {
      const Rat y = r_[surplus_col(s)];
      if (y != 0) cert.y_prec[prec_rows_[s]] = y;
    }
    return cert;
  }

 private:
  std::int64_t slack_col(std::int64_t t) const { return V_ + t - 1; }
  std::int64_t surplus_col(std::int64_t s) const { return V_ + T_ + s; }
  std::int64_t comp_art_col(std::int64_t u) const {
    return V_ + T_ + S_ + u;
  }
  std::int64_t prec_art_col(std::int64_t s) const {
    return V_ + T_ + S_ + U_ + s;
  }

  // Dantzig by default, Bland once degeneracy persists; artificial
  // columns are never eligible.
  std::int64_t pick_entering(bool bland) const {
    const std::int64_t limit = V_ + T_ + S_;
    std::int64_t best = -1;
    for (std::int64_t j = 0; j < limit; ++j) {
      if (r_[j] >= 0) continue;
      if (bland) return j;
      if (best < 0 || r_[j] < r_[best]) best = j;
    }
    return best;
  }

  std::int64_t pick_leaving(std::int64_t q) const {
    std::int64_t best = -1;
    Rat best_ratio;
    for (std::int64_t i = 0; i < R_; ++i) {
      if (A_[i][q] <= 0) continue;
      Rat ratio = A_[i][N_] / A_[i][q];
      if (best < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basic_[i] < basic_[best])) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  void pivot(std::int64_t pr, std::int64_t q) {
    auto& prow = A_[pr];
    const Rat piv = prow[q];
    z_ += r_[q] * (prow[N_] / piv);
    if (piv != 1)
      for (auto& v : prow)
        if (v != 0) v /= piv;
    std::vector<std::int64_t> nz;
    nz.reserve(64);
    for (std::int64_t j = 0; j <= N_; ++j)
      if (prow[j] != 0) nz.push_back(j);
    for (std::int64_t i = 0; i < R_; ++i) {
      if (i == pr) continue;
      const Rat a = A_[i][q];
      if (a == 0) continue;
      auto& row = A_[i];
      for (std::int64_t j : nz) row[j] -= a * prow[j];
      row[q] = 0;  // cancel exactly
    }
    const Rat rq = r_[q];
    if (rq != 0) {
      for (std::int64_t j : nz)
        if (j < N_) r_[j] -= rq * prow[j];
      r_[q] = 0;
    }
    basic_[pr] = q;
  }

  const LpProblem& p_;
  std::vector<std::pair<int, std::int64_t>> prec_rows_;
  std::int64_t V_ = 0, T_ = 0, U_ = 0, S_ = 0, R_ = 0, N_ = 0;
  std::vector<std::vector<Rat>> A_;
  std::vector<Rat> r_;
  Rat z_;
  std::vector<std::int64_t> basic_;
};

// All precedence rows the solution violates, in scan order, up to `limit`.
std::vector<std::pair<int, std::int64_t>> violated_prec_rows(
    const LpProblem& p, const LpSolution& sol, std::size_t limit) {
  std::vector<std::vector<Rat>> prefix(p.unit_ids.size());
  for (std::size_t u = 0; u < sol.x.size(); ++u) {
    prefix[u].assign(p.T + 1, Rat(0));
    std::size_t next = 0;
    Rat acc = 0;
    for (std::int64_t t = 1; t <= p.T; ++t) {
      while (next < sol.x[u].size() && sol.x[u][next].first == t)
        acc += sol.x[u][next++].second;
      prefix[u][t] = acc;
    }
  }
  std::vector<std::pair<int, std::int64_t>> rows;
  for (int r = 0; r < static_cast<int>(p.prec.size()) &&
                  rows.size() < limit; ++r) {
    const auto [j, k] = p.prec[r];
    for (std::int64_t t = 1; t <= p.T && rows.size() < limit; ++t) {
      Rat lhs = prefix[j][t - 1] / Rat(p.demands[j]) +
                (prefix[k][p.T] - prefix[k][t]) / Rat(p.demands[k]);
      if (lhs < 1) rows.emplace_back(r, t);
    }
  }
  return rows;
}

}  // namespace

LpResult solve_lp(const LpProblem& problem, const LpLimits& limits) {
  LpResult res;
  std::set<std::pair<int, std::int64_t>> row_set;
  for (;;) {
    std::vector<std::pair<int, std::int64_t>> rows(row_set.begin(),
                                                   row_set.end());
    Tableau tab(problem, rows, limits);
    const Rat opt = tab.optimize(res.pivots, limits.max_pivots);
    res.rows_generated = static_cast<std::int64_t>(rows.size());
    if (opt > 0) {
      res.status = LpStatus::kInfeasible;
      res.farkas = tab.extract_farkas();
      if (!verify_farkas(problem, *res.farkas))
        throw std::logic_error("extracted Farkas certificate failed to verify");
      return res;
    }
    LpSolution sol = tab.extract_solution();
    auto violated = violated_prec_rows(problem, sol, 128);
    if (violated.empty()) {
      auto rep = check_solution(problem, sol);
      if (!rep.feasible)
        throw std::logic_error(std::string("simplex solution violates a ") +
                               lp_row_kind_name(rep.kind) + " row");
      res.status = LpStatus::kFeasible;
      res.solution = std::move(sol);
      return res;
    }
    const std::size_t before = row_set.size();
    row_set.insert(violated.begin(), violated.end());
    if (row_set.size() == before)
      throw std::logic_error("lazy row generation made no progress");
  }
}

MinTResult min_feasible_T(const Instance& inst, bool aggregate,
                          const LpLimits& limits) {
  Instance checked = inst;
  checked.check();

  const Rat clb = combinatorial_lower_bound(checked);
  const std::int64_t lo = std::max<std::int64_t>(
      1, ceil_rat(clb).convert_to<std::int64_t>());
  const Rat list_mk =
      schedule_makespan(Schedule{list_schedule(checked)});
  const std::int64_t hi = ceil_rat(list_mk).convert_to<std::int64_t>();

  MinTResult out;
  auto solve_at = [&](std::int64_t T) {
    ++out.solves;
    return solve_lp(build_lp(checked, T, aggregate, limits), limits);
  };

  LpResult at_lo = solve_at(lo);
  if (at_lo.status == LpStatus::kFeasible) {
    out.T = lo;
    out.solution = std::move(at_lo.solution);
    if (lo > 1) {
      LpResult below = solve_at(lo - 1);
      if (below.status != LpStatus::kInfeasible)
        throw std::logic_error(
            "LP feasible below the combinatorial lower bound");
      out.below = std::move(below.farkas);
    }
    return out;
  }

  // invariant: bad infeasible (certificate kept), good feasible
  std::int64_t bad = lo;
  std::optional<FarkasCertificate> bad_cert = std::move(at_lo.farkas);
  LpResult at_hi = solve_at(hi);
  if (at_hi.status != LpStatus::kFeasible)
    throw std::logic_error("LP infeasible at a list-schedule makespan");
  std::int64_t good = hi;
  LpSolution good_sol = std::move(at_hi.solution);

  while (good - bad > 1) {
    const std::int64_t mid = bad + (good - bad) / 2;
    LpResult at_mid = solve_at(mid);
    if (at_mid.status == LpStatus::kFeasible) {
      good = mid;
      good_sol = std::move(at_mid.solution);
    } else {
      bad = mid;
      bad_cert = std::move(at_mid.farkas);
    }
  }
  out.T = good;
  out.solution = std::move(good_sol);
  out.below = std::move(bad_cert);
  return out;
}

}  // namespace schedgap
