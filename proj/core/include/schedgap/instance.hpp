#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "schedgap/numeric.hpp"

namespace schedgap {

// A group of `count` identical jobs.  Members of a group are mutually
// independent; precedence is declared between groups and means all-to-all
// between their members (every member of the successor group waits for every
// member of the predecessor group).
struct JobGroup {
  std::string id;
  Int count;      // >= 1, may exceed 64 bits
  Rat proc_time;  // > 0
};

struct IdenticalMachines {
  Int count;  // m >= 1
};

// Uniformly related machines, grouped into speed classes.
struct UniformMachines {
  // (speed, count) per class; class index = position in this vector.
  std::vector<std::pair<Rat, Int>> classes;
};

struct SingleMachine {};

using MachineModel =
    std::variant<IdenticalMachines, UniformMachines, SingleMachine>;

// Number of speed classes (1 for identical/single).
int machine_class_count(const MachineModel& mm);
// Speed and count of a class; identical/single machines are class 0, speed 1.
Rat machine_class_speed(const MachineModel& mm, int cls);
Int machine_class_size(const MachineModel& mm, int cls);
// Total machine count across classes.
Int machine_total_count(const MachineModel& mm);

// Free-form parameter record attached by generators and reductions
// (k, n, m, Q, eps, ... plus regime flags).  Exact values only.
struct Metadata {
  std::map<std::string, Rat> params;
  std::map<std::string, bool> flags;

  std::optional<Rat> param(const std::string& key) const;
};

struct Instance {
  std::vector<JobGroup> groups;
  // Precedence pairs (pred id, succ id), set semantics, kept sorted + unique.
  std::vector<std::pair<std::string, std::string>> precedence;
  MachineModel machines = IdenticalMachines{1};
  bool preemptive = false;
  Metadata metadata;

  // Index of a group id; throws StructuralError if unknown.
  int group_index(const std::string& id) const;
  // Total member count across groups.
  Int total_members() const;
  // Total work sum(count * proc_time).
  Rat total_work() const;

  // Enforce invariants: unique non-empty ids, count >= 1, proc_time > 0,
  // precedence endpoints exist, no self-loops, the group digraph is acyclic,
  // machine counts >= 1 and speeds > 0.  Sorts + dedupes precedence.
  // Throws StructuralError / ParameterError.
  void check();

  // Group indices (into `groups`) in a fixed topological order of the
  // precedence digraph (ties by instance order).
  std::vector<int> topo_order() const;
  // Per-group adjacency over group indices: successors[i] lists groups that
  // must wait for group i.
  std::vector<std::vector<int>> successor_lists() const;
  std::vector<std::vector<int>> predecessor_lists() const;
};

// Replace every group by `count` singleton groups (ids "<id>#<i>") and
// replicate precedence all-to-all.  Throws BudgetError if the total member
// count exceeds `max_members`.
Instance expand_members(const Instance& inst, std::int64_t max_members);

}  // namespace schedgap
