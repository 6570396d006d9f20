#pragma once

#include <string>
#include <vector>

#include "schedgap/instance.hpp"
#include "schedgap/schedule.hpp"

namespace schedgap {

enum class ViolationKind {
  kCompletion,  // member/group work not fully (or over-) delivered
  kCapacity,    // machine or slot/window capacity exceeded
  kPrecedence,  // successor starts before a predecessor group completes
  kOverlap,     // two executions overlap on one machine, a member runs on two
                // machines at once, or block windows overlap unverifiably
  kPreemption,  // member split although the instance is non-preemptive
};

const char* violation_kind_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  bool feasible = false;
  Rat makespan;  // computed even when infeasible
  std::vector<Violation> violations;
};

// Exhaustive exact feasibility check of `sched` against `inst`.
//
// Malformed references (unknown group, member index out of range, machine
// class/index out of range, start >= end, slot < 1, negative counts) throw
// StructuralError; everything else is reported as violations.
//
// Semantics per form:
//  - IntervalSchedule: per member, delivered work sum((end-start)*speed)
//    must equal proc_time; executions on one machine must not overlap; one
//    member must not run on two machines at the same time; non-preemptive
//    instances allow exactly one interval per member.  Group-level
//    precedence: every member of the successor group starts no earlier than
//    the latest completion over all members of the predecessor group.
//  - SlotSchedule (identical machines): slots have width 1 and every listed
//    member executes wholly inside its slot, so proc_time <= 1 is required
//    (and exactly 1 when non-preemptive, where fractional packing inside a
//    slot is not expressible).  Per-slot load sum(count * proc_time) must
//    not exceed the machine count.  Precedence: the earliest slot of the
//    successor group must be strictly later than the latest slot of the
//    (fully executed) predecessor group.
//  - BlockSchedule: per (class, window), sum(count * proc_time) must not
//    exceed class_count * speed * window_length, every member must fit its
//    window (proc_time <= speed * length), and within a class any two
//    distinct windows must be disjoint or identical (otherwise the window
//    capacity rule is not checkable and an overlap violation is reported).
//    Precedence: the earliest window start of the successor group must be >=
//    the latest window end of the predecessor group.
//
// Never expands members: slot and block forms are checked with count
// arithmetic only, so huge multiplicities are fine.
ValidationReport validate_schedule(const Instance& inst, const Schedule& sched);

// max(critical path length, total work / machine count) over the group DAG,
// exact.  Valid for identical or single machine models only (uniform ->
// ParameterError).  A lower bound for preemptive and non-preemptive alike.
Rat combinatorial_lower_bound(const Instance& inst);

}  // namespace schedgap
