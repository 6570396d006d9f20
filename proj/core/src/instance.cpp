#include "schedgap/instance.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "schedgap/errors.hpp"

namespace schedgap {

int machine_class_count(const MachineModel& mm) {
  if (std::holds_alternative<UniformMachines>(mm))
    return static_cast<int>(std::get<UniformMachines>(mm).classes.size());
  return 1;
}

Rat machine_class_speed(const MachineModel& mm, int cls) {
  if (const auto* u = std::get_if<UniformMachines>(&mm)) {
    if (cls < 0 || cls >= static_cast<int>(u->classes.size()))
      throw StructuralError("machine class " + std::to_string(cls) +
                            " out of range");
    return u->classes[cls].first;
  }
  if (cls != 0)
    throw StructuralError("machine class " + std::to_string(cls) +
                          " out of range");
  return Rat(1);
}

Int machine_class_size(const MachineModel& mm, int cls) {
  if (const auto* u = std::get_if<UniformMachines>(&mm)) {
    if (cls < 0 || cls >= static_cast<int>(u->classes.size()))
      throw StructuralError("machine class " + std::to_string(cls) +
                            " out of range");
    return u->classes[cls].second;
  }
  if (cls != 0)
    throw StructuralError("machine class " + std::to_string(cls) +
                          " out of range");
  if (const auto* id = std::get_if<IdenticalMachines>(&mm)) return id->count;
  return Int(1);  // SingleMachine
}

Int machine_total_count(const MachineModel& mm) {
  Int total = 0;
  for (int c = 0; c < machine_class_count(mm); ++c)
    total += machine_class_size(mm, c);
  return total;
}

std::optional<Rat> Metadata::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

int Instance::group_index(const std::string& id) const {
  for (std::size_t i = 0; i < groups.size(); ++i)
    if (groups[i].id == id) return static_cast<int>(i);
  throw StructuralError("unknown group id '" + id + "'");
}

Int Instance::total_members() const {
  Int total = 0;
  for (const auto& g : groups) total += g.count;
  return total;
}

Rat Instance::total_work() const {
  Rat total = 0;
  for (const auto& g : groups) total += Rat(g.count) * g.proc_time;
  return total;
}

void Instance::check() {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& g = groups[i];
    if (g.id.empty()) throw StructuralError("empty group id");
    if (!index.emplace(g.id, static_cast<int>(i)).second)
      throw StructuralError("duplicate group id '" + g.id + "'");
    if (g.count < 1)
      throw StructuralError("group '" + g.id + "' has count < 1");
    if (g.proc_time <= 0)
      throw StructuralError("group '" + g.id + "' has proc_time <= 0");
  }
  for (const auto& [pred, succ] : precedence) {
    if (!index.count(pred))
      throw StructuralError("precedence references unknown id '" + pred + "'");
    if (!index.count(succ))
      throw StructuralError("precedence references unknown id '" + succ + "'");
    if (pred == succ)
      throw StructuralError("precedence self-loop on '" + pred + "'");
  }
  std::sort(precedence.begin(), precedence.end());
  precedence.erase(std::unique(precedence.begin(), precedence.end()),
                   precedence.end());

  if (const auto* u = std::get_if<UniformMachines>(&machines)) {
    if (u->classes.empty())
      throw ParameterError("uniform machine model with no classes");
    for (const auto& [speed, cnt] : u->classes) {
      if (speed <= 0) throw ParameterError("machine class with speed <= 0");
      if (cnt < 1) throw ParameterError("machine class with count < 1");
    }
  } else if (const auto* idm = std::get_if<IdenticalMachines>(&machines)) {
    if (idm->count < 1) throw ParameterError("machine count < 1");
  }

  topo_order();  // throws on cycles
}

std::vector<std::vector<int>> Instance::successor_lists() const {
  std::vector<std::vector<int>> succ(groups.size());
  for (const auto& [p, s] : precedence)
    succ[group_index(p)].push_back(group_index(s));
  return succ;
}

std::vector<std::vector<int>> Instance::predecessor_lists() const {
  std::vector<std::vector<int>> pred(groups.size());
  for (const auto& [p, s] : precedence)
    pred[group_index(s)].push_back(group_index(p));
  return pred;
}

std::vector<int> Instance::topo_order() const {
  const int n = static_cast<int>(groups.size());
  std::vector<int> indeg(n, 0);
  auto succ = successor_lists();
  for (const auto& list : succ)
    for (int v : list) ++indeg[v];
  // min-heap on group index gives a deterministic order
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    int u = ready.top();
    ready.pop();
    order.push_back(u);
    for (int v : succ[u])
      if (--indeg[v] == 0) ready.push(v);
  }
  if (static_cast<int>(order.size()) != n)
    throw StructuralError("precedence digraph has a cycle");
  return order;
}

Instance expand_members(const Instance& inst, std::int64_t max_members) {
  Int total = inst.total_members();
  std::int64_t n = to_i64(total, max_members, "expanded member count");
  (void)n;

  Instance out;
  out.machines = inst.machines;
  out.preemptive = inst.preemptive;
  out.metadata = inst.metadata;
  std::vector<std::vector<std::string>> ids(inst.groups.size());
  for (std::size_t gi = 0; gi < inst.groups.size(); ++gi) {
    const auto& g = inst.groups[gi];
    std::int64_t c = g.count.convert_to<std::int64_t>();
    for (std::int64_t i = 0; i < c; ++i) {
      std::string id = g.id + "#" + std::to_string(i);
      ids[gi].push_back(id);
      out.groups.push_back({id, Int(1), g.proc_time});
    }
  }
  for (const auto& [p, s] : inst.precedence) {
    int pi = inst.group_index(p), si = inst.group_index(s);
    for (const auto& pid : ids[pi])
      for (const auto& sid : ids[si]) out.precedence.emplace_back(pid, sid);
  }
  out.check();
  return out;
}

}  // namespace schedgap
