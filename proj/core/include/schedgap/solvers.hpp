#pragma once

#include <cstdint>

#include "schedgap/instance.hpp"
#include "schedgap/schedule.hpp"

namespace schedgap {

struct SolverBudget {
  std::int64_t max_members = 1'000'000;  // member-expansion cap
  std::int64_t max_states = 4'000'000;   // brute-force state cap
};

enum class PriorityRule {
  kLexicographic,  // (group order, member index)
  kCriticalPath,   // longest downstream path first, lex tie-break
};

// Graham list scheduling on identical machines (non-preemptive; the result
// is also a valid preemptive schedule).  Whenever a machine is idle, the
// highest-priority member whose predecessor groups have all completed is
// started.  The 2-approximation guarantee makespan <= 2 * lower bound is
// asserted post-hoc (std::logic_error on violation — it cannot fail).
IntervalSchedule list_schedule(const Instance& inst,
                               PriorityRule rule = PriorityRule::kLexicographic,
                               const SolverBudget& budget = {});

// List scheduling on uniform machines: an available member goes to the
// fastest idle machine.  Heuristic baseline, no guarantee.  Machines beyond
// the total member count are never needed and are not instantiated, so huge
// machine parks are fine as long as the member count is desk-scale.
IntervalSchedule uniform_list_schedule(const Instance& inst,
                                       const SolverBudget& budget = {});

// McNaughton's wrap-around rule for preemptive independent jobs on identical
// machines: optimal makespan max(max proc_time, total work / m), at most
// m - 1 preemptions.  Requires empty precedence and preemptive = true.
IntervalSchedule mcnaughton(const Instance& inst,
                            const SolverBudget& budget = {});

// Exact optimum makespan for unit jobs on identical machines via BFS over
// per-group completion counts (members are interchangeable, so a state is
// the vector of completed counts; each slot completes up to m available
// members).  Requires all proc_time == 1.  Throws BudgetError when the
// visited-state cap is hit.
std::int64_t brute_force_opt(const Instance& inst,
                             const SolverBudget& budget = {});

// integral / lp, with lp > 0 required.
Rat gap_ratio(const Rat& integral, const Rat& lp);

}  // namespace schedgap
