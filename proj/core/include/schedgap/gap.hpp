#pragma once

#include <cstdint>
#include <vector>

#include "schedgap/instance.hpp"
#include "schedgap/lp.hpp"
#include "schedgap/numeric.hpp"
#include "schedgap/solvers.hpp"

namespace schedgap {

// Gap family: k+1 big groups of l = dm-(d-1) unit jobs separated by k
// chains of d-1 singleton unit jobs, on m identical machines.  The slot
// LP finishes in (k+1)d slots while every integral schedule needs
// (k+1)*ceil(l/m) + k(d-1); with m >= d the ratio approaches 2 as k and
// d grow.
Instance gen_gap_family(std::int64_t k, std::int64_t d, const Int& m);

// The k = 1 instance.
Instance gen_gap_basic(std::int64_t d, const Int& m);

// Closed-form solution of the aggregated slot LP at horizon T = (k+1)d:
// the first big group runs m jobs in slot 1 and m-1 in slots 2..d, big
// group i >= 2 spreads l/d over slots (i-1)d+1..id, and chain job r of
// chain i runs 1/d in the d slots starting at (i-1)d+r+1.
LpSolution gap_lp_solution(const Instance& inst);

struct GapReport {
  std::int64_t k = 0, d = 0;
  Int m, ell;
  Rat lp_value;        // (k+1)d, witnessed by the verified closed form
  Rat integral_bound;  // (k+1)*ceil(l/m) + k(d-1)
  Rat analytic_bound;     // 2kd + d - k - 1
  Rat integral_opt;    // equals integral_bound, confirmed by scheduling
  Rat ratio;           // integral_opt / lp_value
  std::vector<Rat> loads;  // per-slot machine load of the LP solution
  bool exact = false;      // integral_opt also confirmed by brute force
};

// Builds and verifies the closed-form LP solution, confirms the integral
// optimum with a list schedule (and brute force when `exact`), and
// reports the gap.
GapReport gap_report(const Instance& inst, bool exact = false,
                     const SolverBudget& budget = {},
                     const LpLimits& limits = {});

}  // namespace schedgap
