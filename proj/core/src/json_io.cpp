#include "schedgap/json_io.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "schedgap/errors.hpp"

namespace schedgap {

namespace {

using json = nlohmann::ordered_json;

constexpr std::int64_t kSafeInt = 9007199254740992;  // 2^53

json dump_int(const Int& v) {
  if (v >= -Int(kSafeInt) && v <= Int(kSafeInt))
    return json(v.convert_to<std::int64_t>());
  return json(v.str());
}

Int load_int(const json& j, const char* what) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_string()) return parse_int(j.get<std::string>());
  throw ParameterError(std::string(what) + ": expected integer or string");
}

json dump_rat(const Rat& v) { return json(format_rat(v)); }

Rat load_rat(const json& j, const char* what) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rat(Int(j.get<std::uint64_t>()));
  throw ParameterError(std::string(what) + ": expected rational string");
}

json parse_document(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParameterError("malformed JSON document");
  return j;
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end())
    throw ParameterError(std::string("missing field '") + name + "'");
  return *it;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int load_small_int(const json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw ParameterError(std::string(what) + ": expected integer");
  return j.get<int>();
}

std::vector<std::vector<int>> load_int_matrix(const json& j,
                                              const char* what) {
  if (!j.is_array())
    throw ParameterError(std::string(what) + ": expected array");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) {
    if (!row.is_array())
      throw ParameterError(std::string(what) + ": expected array of arrays");
    out.emplace_back();
    for (const auto& v : row) out.back().push_back(load_small_int(v, what));
  }
  return out;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json j;
  j["groups"] = json::array();
  for (const auto& g : inst.groups)
    j["groups"].push_back({{"id", g.id},
                           {"count", dump_int(g.count)},
                           {"proc_time", dump_rat(g.proc_time)}});
  j["precedence"] = json::array();
  for (const auto& [a, b] : inst.precedence)
    j["precedence"].push_back({a, b});
  if (const auto* up = std::get_if<UniformMachines>(&inst.machines)) {
    json classes = json::array();
    for (const auto& [speed, count] : up->classes)
      classes.push_back({dump_rat(speed), dump_int(count)});
    j["machines"] = {{"uniform", classes}};
  } else if (std::holds_alternative<SingleMachine>(inst.machines)) {
    j["machines"] = {{"single", true}};
  } else {
    j["machines"] = {
        {"identical", dump_int(std::get<IdenticalMachines>(inst.machines).count)}};
  }
  j["preemptive"] = inst.preemptive;
  json params = json::object(), flags = json::object();
  for (const auto& [key, v] : inst.metadata.params) params[key] = dump_rat(v);
  for (const auto& [key, v] : inst.metadata.flags) flags[key] = v;
  j["metadata"] = {{"params", params}, {"flags", flags}};
  return dump(j);
}

Instance instance_from_json(const std::string& text) {
  const json j = parse_document(text);
  Instance inst;
  for (const auto& g : field(j, "groups"))
    inst.groups.push_back({field(g, "id").get<std::string>(),
                           load_int(field(g, "count"), "count"),
                           load_rat(field(g, "proc_time"), "proc_time")});
  if (j.contains("precedence"))
    for (const auto& e : j["precedence"]) {
      if (!e.is_array() || e.size() != 2)
        throw ParameterError("precedence entries must be [pred, succ]");
      inst.precedence.emplace_back(e[0].get<std::string>(),
                                   e[1].get<std::string>());
    }
  if (j.contains("machines")) {
    const json& m = j["machines"];
    if (m.contains("identical")) {
      inst.machines =
          IdenticalMachines{load_int(m["identical"], "machine count")};
    } else if (m.contains("uniform")) {
      UniformMachines u;
      for (const auto& c : m["uniform"]) {
        if (!c.is_array() || c.size() != 2)
          throw ParameterError("uniform classes must be [speed, count]");
        u.classes.emplace_back(load_rat(c[0], "speed"),
                               load_int(c[1], "class count"));
      }
      inst.machines = std::move(u);
    } else if (m.contains("single")) {
      inst.machines = SingleMachine{};
    } else {
      throw ParameterError("unknown machine model");
    }
  }
  if (j.contains("preemptive")) inst.preemptive = j["preemptive"].get<bool>();
  if (j.contains("metadata")) {
    const json& md = j["metadata"];
    if (md.contains("params"))
      for (const auto& [key, v] : md["params"].items())
        inst.metadata.params[key] = load_rat(v, "metadata param");
    if (md.contains("flags"))
      for (const auto& [key, v] : md["flags"].items())
        inst.metadata.flags[key] = v.get<bool>();
  }
  inst.check();
  return inst;
}

std::string schedule_to_json(const Schedule& sched) {
  json j;
  if (const auto* iv = std::get_if<IntervalSchedule>(&sched)) {
    j["form"] = "interval";
    j["entries"] = json::array();
    for (const auto& e : iv->entries)
      j["entries"].push_back({{"group", e.group},
                              {"member", e.member},
                              {"machine_class", e.machine_class},
                              {"machine_index", e.machine_index},
                              {"start", dump_rat(e.start)},
                              {"end", dump_rat(e.end)}});
  } else if (const auto* sl = std::get_if<SlotSchedule>(&sched)) {
    j["form"] = "slot";
    j["entries"] = json::array();
    for (const auto& e : sl->entries)
      j["entries"].push_back({{"slot", e.slot},
                              {"group", e.group},
                              {"count", dump_int(e.count)}});
  } else {
    const auto& bl = std::get<BlockSchedule>(sched);
    j["form"] = "block";
    j["entries"] = json::array();
    for (const auto& e : bl.entries)
      j["entries"].push_back({{"machine_class", e.machine_class},
                              {"start", dump_rat(e.start)},
                              {"end", dump_rat(e.end)},
                              {"group", e.group},
                              {"count", dump_int(e.count)}});
  }
  return dump(j);
}

Schedule schedule_from_json(const std::string& text) {
  const json j = parse_document(text);
  const std::string form = field(j, "form").get<std::string>();
  const json& entries = field(j, "entries");
  if (form == "interval") {
    IntervalSchedule s;
    for (const auto& e : entries)
      s.entries.push_back(
          {field(e, "group").get<std::string>(),
           field(e, "member").get<std::int64_t>(),
           load_small_int(field(e, "machine_class"), "machine_class"),
           field(e, "machine_index").get<std::int64_t>(),
           load_rat(field(e, "start"), "start"),
           load_rat(field(e, "end"), "end")});
    return s;
  }
  if (form == "slot") {
    SlotSchedule s;
    for (const auto& e : entries)
      s.entries.push_back({field(e, "slot").get<std::int64_t>(),
                           field(e, "group").get<std::string>(),
                           load_int(field(e, "count"), "count")});
    return s;
  }
  if (form == "block") {
    BlockSchedule s;
    for (const auto& e : entries)
      s.entries.push_back(
          {load_small_int(field(e, "machine_class"), "machine_class"),
           load_rat(field(e, "start"), "start"),
           load_rat(field(e, "end"), "end"),
           field(e, "group").get<std::string>(),
           load_int(field(e, "count"), "count")});
    return s;
  }
  throw ParameterError("unknown schedule form '" + form + "'");
}

std::string graph_to_json(const KPartiteGraph& g) {
  json j;
  j["k"] = g.k;
  j["n"] = g.n;
  j["edges"] = json::array();
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (const auto& [u, v] : g.edges[i])
      j["edges"].push_back({static_cast<int>(i) + 1, u, v});
  return dump(j);
}

KPartiteGraph graph_from_json(const std::string& text) {
  const json j = parse_document(text);
  KPartiteGraph g;
  g.k = load_small_int(field(j, "k"), "k");
  g.n = load_small_int(field(j, "n"), "n");
  if (g.k < 1) throw ParameterError("graph needs k >= 1");
  g.edges.assign(std::max(0, g.k - 1), {});
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 3)
      throw ParameterError("graph edges must be [layer, u, v]");
    const int layer = load_small_int(e[0], "edge layer");
    if (layer < 1 || layer > g.k - 1)
      throw ParameterError("edge layer out of range");
    g.edges[layer - 1].emplace_back(load_small_int(e[1], "edge endpoint"),
                                    load_small_int(e[2], "edge endpoint"));
  }
  for (auto& layer : g.edges) {
    std::sort(layer.begin(), layer.end());
    layer.erase(std::unique(layer.begin(), layer.end()), layer.end());
  }
  g.check();
  return g;
}

std::string witness_to_json(const PartitionWitness& w) {
  json j;
  j["Q"] = w.Q;
  j["eps"] = dump_rat(w.eps);
  j["blocks"] = w.blocks;
  return dump(j);
}

PartitionWitness witness_from_json(const std::string& text) {
  const json j = parse_document(text);
  PartitionWitness w;
  w.Q = load_small_int(field(j, "Q"), "Q");
  w.eps = load_rat(field(j, "eps"), "eps");
  w.blocks = load_int_matrix(field(j, "blocks"), "blocks");
  if (j.contains("err_blocks")) {
    const auto err = load_int_matrix(j["err_blocks"], "err_blocks");
    if (err.size() != w.blocks.size())
      throw ParameterError("err_blocks must list one array per layer");
    for (std::size_t i = 0; i < err.size(); ++i)
      for (int v : err[i]) {
        if (v < 0 || v >= static_cast<int>(w.blocks[i].size()))
          throw ParameterError("err_blocks vertex out of range");
        w.blocks[i][v] = -1;
      }
  }
  return w;
}

std::string bipartite_to_json(const BipartiteGraph& b) {
  json j;
  j["n"] = b.n;
  j["edges"] = b.edges;
  return dump(j);
}

BipartiteGraph bipartite_from_json(const std::string& text) {
  const json j = parse_document(text);
  BipartiteGraph b;
  b.n = load_small_int(field(j, "n"), "n");
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2)
      throw ParameterError("bipartite edges must be [v, w]");
    b.edges.emplace_back(load_small_int(e[0], "edge endpoint"),
                         load_small_int(e[1], "edge endpoint"));
  }
  std::sort(b.edges.begin(), b.edges.end());
  b.edges.erase(std::unique(b.edges.begin(), b.edges.end()), b.edges.end());
  b.check();
  return b;
}

std::string bipartition_to_json(const BipartitePartition& p) {
  json j;
  j["Q"] = p.Q;
  j["eps"] = dump_rat(p.eps);
  j["v_blocks"] = p.v_blocks;
  j["w_blocks"] = p.w_blocks;
  return dump(j);
}

BipartitePartition bipartition_from_json(const std::string& text) {
  const json j = parse_document(text);
  BipartitePartition p;
  p.Q = load_small_int(field(j, "Q"), "Q");
  p.eps = load_rat(field(j, "eps"), "eps");
  for (const auto& v : field(j, "v_blocks"))
    p.v_blocks.push_back(load_small_int(v, "v_blocks"));
  for (const auto& v : field(j, "w_blocks"))
    p.w_blocks.push_back(load_small_int(v, "w_blocks"));
  return p;
}

std::string lp_solution_to_json(const LpSolution& sol) {
  json j;
  j["x"] = json::array();
  for (const auto& unit : sol.x) {
    json row = json::array();
    for (const auto& [t, v] : unit) row.push_back({t, dump_rat(v)});
    j["x"].push_back(std::move(row));
  }
  return dump(j);
}

LpSolution lp_solution_from_json(const std::string& text) {
  const json j = parse_document(text);
  LpSolution sol;
  for (const auto& unit : field(j, "x")) {
    sol.x.emplace_back();
    if (!unit.is_array())
      throw ParameterError("lp solution rows must be arrays");
    for (const auto& cell : unit) {
      if (!cell.is_array() || cell.size() != 2)
        throw ParameterError("lp solution cells must be [t, value]");
      sol.x.back().emplace_back(cell[0].get<std::int64_t>(),
                                load_rat(cell[1], "lp value"));
    }
  }
  return sol;
}

std::string farkas_to_json(const FarkasCertificate& cert) {
  json j;
  j["y_cap"] = json::array();
  for (const auto& y : cert.y_cap) j["y_cap"].push_back(dump_rat(y));
  j["y_comp"] = json::array();
  for (const auto& y : cert.y_comp) j["y_comp"].push_back(dump_rat(y));
  j["y_prec"] = json::array();
  for (const auto& [key, y] : cert.y_prec)
    j["y_prec"].push_back({key.first, key.second, dump_rat(y)});
  return dump(j);
}

FarkasCertificate farkas_from_json(const std::string& text) {
  const json j = parse_document(text);
  FarkasCertificate cert;
  for (const auto& y : field(j, "y_cap"))
    cert.y_cap.push_back(load_rat(y, "y_cap"));
  for (const auto& y : field(j, "y_comp"))
    cert.y_comp.push_back(load_rat(y, "y_comp"));
  for (const auto& row : field(j, "y_prec")) {
    if (!row.is_array() || row.size() != 3)
      throw ParameterError("y_prec entries must be [pair, t, value]");
    cert.y_prec[{load_small_int(row[0], "y_prec pair"),
                 row[1].get<std::int64_t>()}] = load_rat(row[2], "y_prec");
  }
  return cert;
}

std::string validation_report_to_json(const ValidationReport& report) {
  json j;
  j["feasible"] = report.feasible;
  j["makespan"] = dump_rat(report.makespan);
  j["violations"] = json::array();
  for (const auto& v : report.violations)
    j["violations"].push_back(
        {{"kind", violation_kind_name(v.kind)}, {"detail", v.detail}});
  return dump(j);
}

std::string lp_check_report_to_json(const LpProblem& problem,
                                    const LpCheckReport& report) {
  json j;
  j["feasible"] = report.feasible;
  if (!report.feasible) {
    j["kind"] = lp_row_kind_name(report.kind);
    if (report.t > 0) j["t"] = report.t;
    if (report.unit >= 0) {
      j["unit"] = report.unit;
      j["unit_id"] = problem.unit_ids[report.unit];
    }
    if (report.pair >= 0) {
      j["pair"] = report.pair;
      j["pred"] = problem.unit_ids[problem.prec[report.pair].first];
      j["succ"] = problem.unit_ids[problem.prec[report.pair].second];
    }
    j["lhs"] = dump_rat(report.lhs);
    j["rhs"] = dump_rat(report.rhs);
  }
  return dump(j);
}

std::string lp_result_to_json(const LpResult& result) {
  json j;
  j["status"] =
      result.status == LpStatus::kFeasible ? "feasible" : "infeasible";
  j["pivots"] = result.pivots;
  j["rows_generated"] = result.rows_generated;
  if (result.status == LpStatus::kFeasible)
    j["solution"] = json::parse(lp_solution_to_json(result.solution));
  else if (result.farkas)
    j["farkas"] = json::parse(farkas_to_json(*result.farkas));
  return dump(j);
}

std::string min_t_result_to_json(const MinTResult& result) {
  json j;
  j["min_T"] = result.T;
  j["solves"] = result.solves;
  j["solution"] = json::parse(lp_solution_to_json(result.solution));
  if (result.below) j["below"] = json::parse(farkas_to_json(*result.below));
  return dump(j);
}

std::string gap_report_to_json(const GapReport& report) {
  json j;
  j["k"] = report.k;
  j["d"] = report.d;
  j["m"] = dump_int(report.m);
  j["ell"] = dump_int(report.ell);
  j["lp_value"] = dump_rat(report.lp_value);
  j["integral_bound"] = dump_rat(report.integral_bound);
  j["analytic_bound"] = dump_rat(report.analytic_bound);
  j["integral_opt"] = dump_rat(report.integral_opt);
  j["ratio"] = dump_rat(report.ratio);
  j["exact"] = report.exact;
  j["loads"] = json::array();
  for (const auto& load : report.loads) j["loads"].push_back(dump_rat(load));
  return dump(j);
}

std::string gap_reports_to_csv(const std::vector<GapReport>& reports) {
  std::ostringstream out;
  out << "k,d,m,lp,bound,opt,ratio\n";
  for (const auto& r : reports)
    out << r.k << "," << r.d << "," << r.m << "," << format_rat(r.lp_value)
        << "," << format_rat(r.integral_bound) << ","
        << format_rat(r.integral_opt) << "," << format_rat(r.ratio) << "\n";
  return out.str();
}

}  // namespace schedgap
