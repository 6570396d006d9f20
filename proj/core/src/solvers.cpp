#include "schedgap/solvers.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

#include "schedgap/errors.hpp"
#include "schedgap/validate.hpp"

namespace schedgap {

namespace {

struct GroupState {
  std::int64_t count = 0;
  std::int64_t remaining_preds = 0;
  std::int64_t completed = 0;
  Rat completion;  // max end so far
};

// Common simulation state for the two list schedulers.
struct ListSim {
  const Instance& inst;
  std::vector<GroupState> groups;
  std::vector<std::vector<int>> succ;
  std::vector<Rat> rank;  // priority key, larger runs first

  // ready members, ordered (rank desc, group asc, member asc)
  struct ReadyKey {
    Rat rank;
    int group;
    std::int64_t member;
    bool operator<(const ReadyKey& o) const {
      if (rank != o.rank) return rank > o.rank;
      return std::tie(group, member) < std::tie(o.group, o.member);
    }
  };
  std::set<ReadyKey> ready;

  struct Event {
    Rat end;
    int group;
    std::int64_t member;
    std::int64_t machine_slot;  // index into the simulator's machine table
    bool operator>(const Event& o) const {
      if (end != o.end) return end > o.end;
      return std::tie(group, member) > std::tie(o.group, o.member);
    }
  };
  std::priority_queue<Event, std::vector<Event>, std::greater<>> running;

  std::int64_t total_members = 0;
  std::int64_t done_members = 0;

  ListSim(const Instance& i, PriorityRule rule, const SolverBudget& budget)
      : inst(i), succ(i.successor_lists()) {
    total_members = to_i64(i.total_members(), budget.max_members,
                           "member count");
    groups.resize(i.groups.size());
    auto preds = i.predecessor_lists();
    for (std::size_t g = 0; g < i.groups.size(); ++g) {
      groups[g].count = i.groups[g].count.convert_to<std::int64_t>();
      groups[g].remaining_preds = static_cast<std::int64_t>(preds[g].size());
    }
    rank.assign(i.groups.size(), Rat(0));
    if (rule == PriorityRule::kCriticalPath) {
      auto order = i.topo_order();
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Rat longest = 0;
        for (int s : succ[*it]) longest = std::max(longest, rank[s]);
        rank[*it] = longest + i.groups[*it].proc_time;
      }
    }
  }

  void release(int g) {
    for (std::int64_t member = 0; member < groups[g].count; ++member)
      ready.insert({rank[g], g, member});
  }

  void release_sources() {
    for (std::size_t g = 0; g < groups.size(); ++g)
      if (groups[g].remaining_preds == 0) release(static_cast<int>(g));
  }

  // Completes every event scheduled for the earliest pending time; returns
  // that time.  Newly unblocked groups release their members.
  Rat complete_next(std::vector<std::int64_t>& freed) {
    const Rat t = running.top().end;
    while (!running.empty() && running.top().end == t) {
      Event e = running.top();
      running.pop();
      freed.push_back(e.machine_slot);
      ++done_members;
      auto& g = groups[e.group];
      ++g.completed;
      g.completion = std::max(g.completion, t);
      if (g.completed == g.count)
        for (int s : succ[e.group])
          if (--groups[s].remaining_preds == 0) release(s);
    }
    return t;
  }
};

void assert_graham_bound(const Instance& inst, const IntervalSchedule& sched) {
  Rat makespan = schedule_makespan(Schedule{sched});
  if (makespan > 2 * combinatorial_lower_bound(inst))
    throw std::logic_error("list schedule exceeded twice the lower bound");
}

}  // namespace

IntervalSchedule list_schedule(const Instance& inst, PriorityRule rule,
                               const SolverBudget& budget) {
  Instance checked = inst;
  checked.check();
  if (std::holds_alternative<UniformMachines>(inst.machines))
    throw ParameterError("list_schedule requires identical machines");

  ListSim sim(checked, rule, budget);
  // a machine pool larger than the member count is never exercised
  std::int64_t m = std::min(
      Int(sim.total_members),
      machine_total_count(inst.machines)).convert_to<std::int64_t>();

  IntervalSchedule sched;
  std::priority_queue<std::int64_t, std::vector<std::int64_t>,
                      std::greater<>> idle;
  for (std::int64_t i = 0; i < m; ++i) idle.push(i);
  sim.release_sources();

  Rat t = 0;
  std::vector<std::int64_t> freed;
  while (sim.done_members < sim.total_members) {
    while (!idle.empty() && !sim.ready.empty()) {
      auto key = *sim.ready.begin();
      sim.ready.erase(sim.ready.begin());
      std::int64_t machine = idle.top();
      idle.pop();
      const Rat p = checked.groups[key.group].proc_time;
      sched.entries.push_back({checked.groups[key.group].id, key.member, 0,
                               machine, t, t + p});
      sim.running.push({t + p, key.group, key.member, machine});
    }
    if (sim.running.empty())
      throw std::logic_error("list scheduler stalled");  // unreachable: DAG
    freed.clear();
    t = sim.complete_next(freed);
    for (std::int64_t machine : freed) idle.push(machine);
  }
  assert_graham_bound(checked, sched);
  return sched;
}

IntervalSchedule uniform_list_schedule(const Instance& inst,
                                       const SolverBudget& budget) {
  Instance checked = inst;
  checked.check();
  ListSim sim(checked, PriorityRule::kLexicographic, budget);

  // Instantiate at most total_members machines per class (fastest classes
  // first by the idle ordering); more can never run anything.
  struct Machine {
    Rat speed;
    int cls;
    std::int64_t index;
  };
  std::vector<Machine> machines;
  for (int c = 0; c < machine_class_count(inst.machines); ++c) {
    Int size = machine_class_size(inst.machines, c);
    std::int64_t use =
        std::min(size, Int(sim.total_members)).convert_to<std::int64_t>();
    for (std::int64_t i = 0; i < use; ++i)
      machines.push_back({machine_class_speed(inst.machines, c), c, i});
  }
  auto faster = [&](std::int64_t a, std::int64_t b) {
    const auto& ma = machines[a];
    const auto& mb = machines[b];
    if (ma.speed != mb.speed) return ma.speed > mb.speed;
    return std::tie(ma.cls, ma.index) < std::tie(mb.cls, mb.index);
  };
  std::set<std::int64_t, decltype(faster)> idle(faster);
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(machines.size()); ++i)
    idle.insert(i);
  sim.release_sources();

  IntervalSchedule sched;
  Rat t = 0;
  std::vector<std::int64_t> freed;
  while (sim.done_members < sim.total_members) {
    while (!idle.empty() && !sim.ready.empty()) {
      auto key = *sim.ready.begin();
      sim.ready.erase(sim.ready.begin());
      std::int64_t slot = *idle.begin();
      idle.erase(idle.begin());
      const auto& mach = machines[slot];
      const Rat dur = checked.groups[key.group].proc_time / mach.speed;
      sched.entries.push_back({checked.groups[key.group].id, key.member,
                               mach.cls, mach.index, t, t + dur});
      sim.running.push({t + dur, key.group, key.member, slot});
    }
    if (sim.running.empty())
      throw std::logic_error("uniform list scheduler stalled");
    freed.clear();
    t = sim.complete_next(freed);
    for (std::int64_t slot : freed) idle.insert(slot);
  }
  return sched;
}

IntervalSchedule mcnaughton(const Instance& inst, const SolverBudget& budget) {
  Instance checked = inst;
  checked.check();
  if (std::holds_alternative<UniformMachines>(inst.machines))
    throw ParameterError("mcnaughton requires identical machines");
  if (!inst.preemptive)
    throw ParameterError("mcnaughton requires a preemptive instance");
  if (!inst.precedence.empty())
    throw ParameterError("mcnaughton requires independent jobs");

  std::int64_t total = to_i64(checked.total_members(), budget.max_members,
                              "member count");
  (void)total;
  const Int m = machine_total_count(inst.machines);
  Rat cmax = checked.total_work() / Rat(m);
  for (const auto& g : checked.groups) cmax = std::max(cmax, g.proc_time);

  IntervalSchedule sched;
  std::int64_t machine = 0;
  Rat x = 0;  // filled prefix of the current machine's row [0, cmax)
  for (const auto& g : checked.groups) {
    std::int64_t count = g.count.convert_to<std::int64_t>();
    for (std::int64_t member = 0; member < count; ++member) {
      Rat rem = g.proc_time;
      while (rem > 0) {
        if (x == cmax) {
          ++machine;
          x = 0;
        }
        Rat take = std::min(rem, Rat(cmax - x));
        sched.entries.push_back({g.id, member, 0, machine, x, x + take});
        x += take;
        rem -= take;
      }
    }
  }
  return sched;
}

std::int64_t brute_force_opt(const Instance& inst, const SolverBudget& budget) {
  Instance checked = inst;
  checked.check();
  if (std::holds_alternative<UniformMachines>(inst.machines))
    throw ParameterError("brute_force_opt requires identical machines");
  for (const auto& g : checked.groups)
    if (g.proc_time != 1)
      throw ParameterError("brute_force_opt requires unit jobs");

  const int G = static_cast<int>(checked.groups.size());
  std::vector<std::int64_t> count(G);
  std::int64_t total = 0;
  for (int g = 0; g < G; ++g) {
    count[g] = to_i64(checked.groups[g].count, budget.max_members,
                      "group count");
    total += count[g];
  }
  const std::int64_t m =
      std::min(Int(total), machine_total_count(inst.machines))
          .convert_to<std::int64_t>();
  auto preds = checked.predecessor_lists();

  using State = std::vector<std::int32_t>;  // completed members per group
  struct Hash {
    std::size_t operator()(const State& s) const {
      std::size_t h = 1469598103934665603ull;
      for (auto v : s) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };

  State start(G, 0);
  std::unordered_set<State, Hash> seen{start};
  std::vector<State> frontier{start};

  auto all_done = [&](const State& s) {
    for (int g = 0; g < G; ++g)
      if (s[g] < count[g]) return false;
    return true;
  };
  if (all_done(start)) return 0;

  for (std::int64_t slot = 1;; ++slot) {
    std::vector<State> next;
    for (const State& s : frontier) {
      // groups whose predecessors are fully complete and that still have
      // members left
      std::vector<int> avail;
      std::int64_t avail_members = 0;
      for (int g = 0; g < G; ++g) {
        if (s[g] >= count[g]) continue;
        bool open = true;
        for (int p : preds[g])
          if (s[p] < count[p]) {
            open = false;
            break;
          }
        if (open) {
          avail.push_back(g);
          avail_members += count[g] - s[g];
        }
      }
      const std::int64_t cap = std::min(m, avail_members);
      // enumerate every way to split `cap` completions over `avail`
      // (completing fewer than cap is dominated and skipped)
      State work = s;
      auto recurse = [&](auto&& self, std::size_t idx,
                         std::int64_t left) -> bool {
        if (idx == avail.size()) {
          if (left != 0) return false;
          if (all_done(work)) return true;
          if (seen.insert(work).second) {
            if (static_cast<std::int64_t>(seen.size()) > budget.max_states)
              throw BudgetError("brute force exceeded max_states = " +
                                std::to_string(budget.max_states));
            next.push_back(work);
          }
          return false;
        }
        int g = avail[idx];
        std::int64_t room = count[g] - s[g];
        // remaining groups can absorb at most `tail` completions
        std::int64_t tail = 0;
        for (std::size_t j = idx + 1; j < avail.size(); ++j)
          tail += count[avail[j]] - s[avail[j]];
        std::int64_t lo = std::max<std::int64_t>(0, left - tail);
        std::int64_t hi = std::min(room, left);
        for (std::int64_t take = lo; take <= hi; ++take) {
          work[g] = static_cast<std::int32_t>(s[g] + take);
          if (self(self, idx + 1, left - take)) return true;
        }
        work[g] = s[g];
        return false;
      };
      if (recurse(recurse, 0, cap)) return slot;
    }
    frontier = std::move(next);
    if (frontier.empty())
      throw std::logic_error("brute force exhausted states without finishing");
  }
}

Rat gap_ratio(const Rat& integral, const Rat& lp) {
  if (lp <= 0) throw ParameterError("gap_ratio needs lp > 0");
  return integral / lp;
}

}  // namespace schedgap
