#include "schedgap/validate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>

#include "schedgap/errors.hpp"

namespace schedgap {

namespace {

constexpr std::size_t kMaxReported = 64;  // cap the violation list

void report(ValidationReport& r, ViolationKind kind, std::string detail) {
  if (r.violations.size() < kMaxReported)
    r.violations.push_back({kind, std::move(detail)});
  r.feasible = false;
}

// Start/end of each group's executed region plus how much was executed,
// shared by the three forms' precedence checks.
struct GroupSpan {
  std::optional<Rat> first_start;
  std::optional<Rat> last_end;
  Int executed = 0;  // members (slot/block) — interval form tracks work
};

void check_group_precedence(const Instance& inst,
                            const std::vector<GroupSpan>& spans,
                            ValidationReport& rep) {
  for (const auto& [pid, sid] : inst.precedence) {
    const auto& pred = spans[inst.group_index(pid)];
    const auto& succ = spans[inst.group_index(sid)];
    if (!succ.first_start) continue;  // nothing of the successor ran
    if (!pred.last_end) {
      report(rep, ViolationKind::kPrecedence,
             "'" + sid + "' executes but predecessor '" + pid +
                 "' never does");
      continue;
    }
    // Slot spans are [slot-1, slot], so "strictly later slot" reduces to the
    // same comparison the interval/block forms use.
    if (*succ.first_start < *pred.last_end)
      report(rep, ViolationKind::kPrecedence,
             "'" + sid + "' starts at " + format_rat(*succ.first_start) +
                 " before '" + pid + "' completes at " +
                 format_rat(*pred.last_end));
  }
  // A successor that ran while its predecessor is incomplete is also a
  // precedence fault, even if ordering looks fine.
  for (const auto& [pid, sid] : inst.precedence) {
    const auto& pred = spans[inst.group_index(pid)];
    const auto& succ = spans[inst.group_index(sid)];
    if (succ.first_start &&
        pred.executed != inst.groups[inst.group_index(pid)].count)
      report(rep, ViolationKind::kPrecedence,
             "'" + sid + "' executes but predecessor '" + pid +
                 "' is incomplete");
  }
}

ValidationReport validate_interval(const Instance& inst,
                                   const IntervalSchedule& sched) {
  ValidationReport rep;
  rep.feasible = true;
  rep.makespan = schedule_makespan(Schedule{sched});

  struct MemberKey {
    int group;
    std::int64_t member;
    bool operator<(const MemberKey& o) const {
      return std::tie(group, member) < std::tie(o.group, o.member);
    }
  };
  std::map<MemberKey, std::vector<const IntervalEntry*>> by_member;
  std::map<std::pair<int, std::int64_t>, std::vector<const IntervalEntry*>>
      by_machine;

  for (const auto& e : sched.entries) {
    int gi = inst.group_index(e.group);
    const auto& g = inst.groups[gi];
    if (e.member < 0 || Int(e.member) >= g.count)
      throw StructuralError("member index " + std::to_string(e.member) +
                            " out of range for group '" + e.group + "'");
    if (e.machine_class < 0 ||
        e.machine_class >= machine_class_count(inst.machines))
      throw StructuralError("machine class out of range");
    if (e.machine_index < 0 ||
        Int(e.machine_index) >= machine_class_size(inst.machines,
                                                   e.machine_class))
      throw StructuralError("machine index out of range in class " +
                            std::to_string(e.machine_class));
    if (e.start >= e.end)
      throw StructuralError("zero- or negative-width interval on '" +
                            e.group + "'");
    if (e.start < 0) throw StructuralError("interval starts before time 0");
    by_member[{gi, e.member}].push_back(&e);
    by_machine[{e.machine_class, e.machine_index}].push_back(&e);
  }

  // Per-machine and per-member overlap.
  auto check_overlaps = [&](std::vector<const IntervalEntry*>& list,
                            const std::string& what) {
    std::sort(list.begin(), list.end(),
              [](const IntervalEntry* a, const IntervalEntry* b) {
                return a->start < b->start;
              });
    for (std::size_t i = 1; i < list.size(); ++i)
      if (list[i]->start < list[i - 1]->end)
        report(rep, ViolationKind::kOverlap,
               what + ": [" + format_rat(list[i - 1]->start) + "," +
                   format_rat(list[i - 1]->end) + ") overlaps [" +
                   format_rat(list[i]->start) + "," +
                   format_rat(list[i]->end) + ")");
  };
  for (auto& [key, list] : by_machine)
    check_overlaps(list, "machine (" + std::to_string(key.first) + "," +
                             std::to_string(key.second) + ")");
  for (auto& [key, list] : by_member) {
    if (list.size() > 1 && !inst.preemptive)
      report(rep, ViolationKind::kPreemption,
             "member " + std::to_string(key.member) + " of '" +
                 inst.groups[key.group].id +
                 "' is split in a non-preemptive instance");
    check_overlaps(list, "member " + std::to_string(key.member) + " of '" +
                             inst.groups[key.group].id + "'");
  }

  // Delivered work per member must equal proc_time exactly.
  std::vector<GroupSpan> spans(inst.groups.size());
  std::vector<Int> complete_members(inst.groups.size(), Int(0));
  for (auto& [key, list] : by_member) {
    Rat work = 0;
    for (const auto* e : list)
      work += (e->end - e->start) *
              machine_class_speed(inst.machines, e->machine_class);
    const auto& g = inst.groups[key.group];
    if (work != g.proc_time)
      report(rep, ViolationKind::kCompletion,
             "member " + std::to_string(key.member) + " of '" + g.id +
                 "' delivered " + format_rat(work) + ", needs " +
                 format_rat(g.proc_time));
    else
      ++complete_members[key.group];
    auto& span = spans[key.group];
    for (const auto* e : list) {
      if (!span.first_start || e->start < *span.first_start)
        span.first_start = e->start;
      if (!span.last_end || e->end > *span.last_end) span.last_end = e->end;
    }
  }
  for (std::size_t gi = 0; gi < inst.groups.size(); ++gi) {
    spans[gi].executed = complete_members[gi];
    if (complete_members[gi] != inst.groups[gi].count)
      report(rep, ViolationKind::kCompletion,
             "group '" + inst.groups[gi].id + "' has " +
                 complete_members[gi].str() + "/" +
                 inst.groups[gi].count.str() + " members completed");
  }

  check_group_precedence(inst, spans, rep);
  return rep;
}

ValidationReport validate_slots(const Instance& inst,
                                const SlotSchedule& sched) {
  if (std::holds_alternative<UniformMachines>(inst.machines))
    throw ParameterError("slot schedules require identical machines");
  ValidationReport rep;
  rep.feasible = true;
  rep.makespan = schedule_makespan(Schedule{sched});
  const Int m = machine_total_count(inst.machines);

  std::map<std::int64_t, Rat> slot_load;
  std::vector<GroupSpan> spans(inst.groups.size());
  std::vector<Int> executed(inst.groups.size(), Int(0));
  std::vector<bool> size_checked(inst.groups.size(), false);

  for (const auto& e : sched.entries) {
    int gi = inst.group_index(e.group);
    if (e.slot < 1) throw StructuralError("slot index < 1");
    if (e.count < 0) throw StructuralError("negative member count");
    if (e.count == 0) continue;
    const auto& g = inst.groups[gi];
    if (!size_checked[gi]) {
      size_checked[gi] = true;
      if (g.proc_time > 1)
        report(rep, ViolationKind::kCompletion,
               "group '" + g.id + "' has proc_time " +
                   format_rat(g.proc_time) +
                   " > 1 and cannot complete within a width-1 slot");
      else if (!inst.preemptive && g.proc_time != 1)
        report(rep, ViolationKind::kCapacity,
               "group '" + g.id +
                   "' has fractional proc_time; non-preemptive packing "
                   "inside a slot is not expressible in slot form");
    }
    slot_load[e.slot] += Rat(e.count) * g.proc_time;
    executed[gi] += e.count;
    auto& span = spans[gi];
    Rat start(e.slot - 1), end(e.slot);
    if (!span.first_start || start < *span.first_start)
      span.first_start = start;
    if (!span.last_end || end > *span.last_end) span.last_end = end;
  }

  for (const auto& [slot, load] : slot_load)
    if (load > Rat(m))
      report(rep, ViolationKind::kCapacity,
             "slot " + std::to_string(slot) + " carries load " +
                 format_rat(load) + " > " + m.str() + " machines");

  for (std::size_t gi = 0; gi < inst.groups.size(); ++gi) {
    spans[gi].executed = executed[gi];
    if (executed[gi] != inst.groups[gi].count)
      report(rep, ViolationKind::kCompletion,
             "group '" + inst.groups[gi].id + "' executed " +
                 executed[gi].str() + "/" + inst.groups[gi].count.str() +
                 " members");
  }

  check_group_precedence(inst, spans, rep);
  return rep;
}

ValidationReport validate_blocks(const Instance& inst,
                                 const BlockSchedule& sched) {
  ValidationReport rep;
  rep.feasible = true;
  rep.makespan = schedule_makespan(Schedule{sched});

  struct WindowKey {
    int cls;
    Rat start, end;
    bool operator<(const WindowKey& o) const {
      return std::tie(cls, start, end) < std::tie(o.cls, o.start, o.end);
    }
  };
  std::map<WindowKey, Rat> window_load;
  std::vector<GroupSpan> spans(inst.groups.size());
  std::vector<Int> executed(inst.groups.size(), Int(0));

  for (const auto& e : sched.entries) {
    int gi = inst.group_index(e.group);
    if (e.machine_class < 0 ||
        e.machine_class >= machine_class_count(inst.machines))
      throw StructuralError("machine class out of range");
    if (e.start >= e.end)
      throw StructuralError("zero- or negative-width window on '" + e.group +
                            "'");
    if (e.start < 0) throw StructuralError("window starts before time 0");
    if (e.count < 0) throw StructuralError("negative member count");
    if (e.count == 0) continue;
    const auto& g = inst.groups[gi];
    Rat speed = machine_class_speed(inst.machines, e.machine_class);
    if (g.proc_time > speed * (e.end - e.start))
      report(rep, ViolationKind::kCompletion,
             "a member of '" + g.id + "' (proc " + format_rat(g.proc_time) +
                 ") cannot finish within window [" + format_rat(e.start) +
                 "," + format_rat(e.end) + ") on class " +
                 std::to_string(e.machine_class));
    window_load[{e.machine_class, e.start, e.end}] +=
        Rat(e.count) * g.proc_time;
    executed[gi] += e.count;
    auto& span = spans[gi];
    if (!span.first_start || e.start < *span.first_start)
      span.first_start = e.start;
    if (!span.last_end || e.end > *span.last_end) span.last_end = e.end;
  }

  // The per-(class, window) capacity rule is only meaningful when distinct
  // windows of a class do not interleave: demand pairwise disjoint-or-equal.
  {
    const WindowKey* prev = nullptr;
    for (const auto& [key, load] : window_load) {
      if (prev && prev->cls == key.cls && key.start < prev->end &&
          !(key.start == prev->start && key.end == prev->end))
        report(rep, ViolationKind::kOverlap,
               "class " + std::to_string(key.cls) + " windows [" +
                   format_rat(prev->start) + "," + format_rat(prev->end) +
                   ") and [" + format_rat(key.start) + "," +
                   format_rat(key.end) + ") overlap without coinciding");
      prev = &key;
    }
  }

  for (const auto& [key, load] : window_load) {
    Rat cap = Rat(machine_class_size(inst.machines, key.cls)) *
              machine_class_speed(inst.machines, key.cls) *
              (key.end - key.start);
    if (load > cap)
      report(rep, ViolationKind::kCapacity,
             "class " + std::to_string(key.cls) + " window [" +
                 format_rat(key.start) + "," + format_rat(key.end) +
                 ") carries load " + format_rat(load) + " > capacity " +
                 format_rat(cap));
  }

  for (std::size_t gi = 0; gi < inst.groups.size(); ++gi) {
    spans[gi].executed = executed[gi];
    if (executed[gi] != inst.groups[gi].count)
      report(rep, ViolationKind::kCompletion,
             "group '" + inst.groups[gi].id + "' executed " +
                 executed[gi].str() + "/" + inst.groups[gi].count.str() +
                 " members");
  }

  check_group_precedence(inst, spans, rep);
  return rep;
}

}  // namespace

const char* violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::kCompletion: return "completion";
    case ViolationKind::kCapacity: return "capacity";
    case ViolationKind::kPrecedence: return "precedence";
    case ViolationKind::kOverlap: return "overlap";
    case ViolationKind::kPreemption: return "preemption";
  }
  return "?";
}

ValidationReport validate_schedule(const Instance& inst,
                                   const Schedule& sched) {
  if (const auto* iv = std::get_if<IntervalSchedule>(&sched))
    return validate_interval(inst, *iv);
  if (const auto* sl = std::get_if<SlotSchedule>(&sched))
    return validate_slots(inst, *sl);
  return validate_blocks(inst, std::get<BlockSchedule>(sched));
}

Rat combinatorial_lower_bound(const Instance& inst) {
  if (std::holds_alternative<UniformMachines>(inst.machines))
    throw ParameterError(
        "combinatorial_lower_bound supports identical/single machines only");
  Int m = machine_total_count(inst.machines);

  // Longest proc_time-weighted path through the group DAG.  One member per
  // group suffices on a path: members of a group are mutually independent.
  auto order = inst.topo_order();
  auto preds = inst.predecessor_lists();
  std::vector<Rat> path(inst.groups.size());
  Rat critical = 0;
  for (int gi : order) {
    Rat longest = 0;
    for (int p : preds[gi]) longest = std::max(longest, path[p]);
    path[gi] = longest + inst.groups[gi].proc_time;
    critical = std::max(critical, path[gi]);
  }
  return std::max(critical, inst.total_work() / Rat(m));
}

}  // namespace schedgap
