#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schedgap/instance.hpp"
#include "schedgap/numeric.hpp"

namespace schedgap {

// Slot-indexed feasibility program for unit jobs on m identical machines
// with group precedence.  One variable x_{u,t} per unit u and slot
// t = 1..T:
//
//   capacity     for all t:        sum_u x_{u,t} <= m
//   completion   for all u:        sum_t x_{u,t}  = d_u
//   precedence   for all (j,k), t': prefix_j(t'-1)/d_j + suffix_k(t'+1)/d_k >= 1
//   x >= 0
//
// In aggregate mode a unit is a whole job group (d_u = group count);
// otherwise units are individual members (d_u = 1) and precedence pairs
// are expanded member-by-member.
struct LpProblem {
  std::int64_t T = 0;
  Int m;
  bool aggregate = false;
  std::vector<std::string> unit_ids;
  std::vector<Int> demands;
  std::vector<std::pair<int, int>> prec;  // (pred unit, succ unit)

  std::int64_t vars() const {
    return static_cast<std::int64_t>(unit_ids.size()) * T;
  }
  std::int64_t var(int unit, std::int64_t t) const { return unit * T + t - 1; }
};

struct LpLimits {
  std::int64_t max_vars = 200'000;
  std::int64_t max_pivots = 2'000'000;
  std::int64_t max_tableau_cells = 20'000'000;
};

LpProblem build_lp(const Instance& inst, std::int64_t T, bool aggregate,
                   const LpLimits& limits = {});

// x[u] holds (t, value) entries with t in 1..T, strictly increasing in t.
struct LpSolution {
  std::vector<std::vector<std::pair<std::int64_t, Rat>>> x;
};

enum class LpRowKind { kCapacity, kCompletion, kPrecedence, kNonneg };
const char* lp_row_kind_name(LpRowKind kind);

// First violated row under the scan order capacity, completion,
// precedence, nonnegativity.
struct LpCheckReport {
  bool feasible = true;
  LpRowKind kind = LpRowKind::kCapacity;
  std::int64_t t = 0;  // slot (capacity, precedence, nonneg)
  int unit = -1;       // owning unit (completion, nonneg)
  int pair = -1;       // precedence pair index
  Rat lhs, rhs;
};

LpCheckReport check_solution(const LpProblem& problem, const LpSolution& sol);

// Infeasibility certificate: multipliers y with y_cap <= 0, y_prec >= 0,
// y_comp free, such that every variable column prices out <= 0 while
// y.b > 0.  Any feasible x would give 0 >= y.Ax >= y.b > 0.
struct FarkasCertificate {
  std::vector<Rat> y_cap;   // per slot, <= 0
  std::vector<Rat> y_comp;  // per unit
  std::map<std::pair<int, std::int64_t>, Rat> y_prec;  // (pair, t') -> >= 0
};

bool verify_farkas(const LpProblem& problem, const FarkasCertificate& cert);

enum class LpStatus { kFeasible, kInfeasible };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  LpSolution solution;                      // when feasible
  std::optional<FarkasCertificate> farkas;  // when infeasible
  std::int64_t pivots = 0;
  std::int64_t rows_generated = 0;  // precedence rows materialized
};

// Exact phase-1 simplex over rationals.  Precedence rows are generated
// lazily: solve with the current subset, re-check the full program, add
// violated rows, repeat.  Feasible results are re-validated with
// check_solution and infeasible ones with verify_farkas before returning.
LpResult solve_lp(const LpProblem& problem, const LpLimits& limits = {});

struct MinTResult {
  std::int64_t T = 0;           // least feasible horizon
  LpSolution solution;          // verified feasible at T
  std::optional<FarkasCertificate> below;  // verified infeasible at T-1
  std::int64_t solves = 0;
};

// Binary search for the least T with [LP] feasible, between the
// combinatorial lower bound and a list-schedule makespan.  The returned
// horizon carries a feasible solution and, unless T == 1, a Farkas
// certificate one slot below.
MinTResult min_feasible_T(const Instance& inst, bool aggregate,
                          const LpLimits& limits = {});

// CPLEX LP text format; precedence rows are scaled to integer
// coefficients.
std::string export_lp(const LpProblem& problem);

}  // namespace schedgap
