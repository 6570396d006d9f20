// schedgap: generators, reductions, schedulers, LP machinery, and verifiers
// for layered-graph scheduling constructions, with JSON files as the
// interchange format.
//
// Every output is a plain document (graph, witness, instance, schedule, LP
// result, ...) so anything written to a file or stdout can be fed straight
// back into another subcommand.  Side artifacts (witnesses, completeness
// schedules) are only written when an explicit path is given.
//
// Exit codes: 0 success, 2 bad usage or malformed input, 3 a verification
// or witness precondition failed, 4 a resource budget or retry budget was
// exhausted.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "schedgap/errors.hpp"
#include "schedgap/gap.hpp"
#include "schedgap/json_io.hpp"
#include "schedgap/kpartite.hpp"
#include "schedgap/matching.hpp"
#include "schedgap/reductions.hpp"
#include "schedgap/solvers.hpp"
#include "schedgap/validate.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace schedgap;

int g_exit = 0;  // callbacks set 3 on failed verification

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  ss << in.rdbuf();
  return ss.str();
}

// empty path or "-" = stdout
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write '" + path + "'");
  out << text;
}

std::int64_t env_i64(const char* name, std::int64_t fallback) {
  const char* v = std::getenv(name);
  if (!v) return fallback;
  try {
    return std::stoll(v);
  } catch (...) {
    throw ParameterError(std::string(name) + ": not an integer");
  }
}

// "a" or "a:b", inclusive
std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) {
    std::int64_t v = to_i64(parse_int(s), 1'000'000, "range value");
    return {v, v};
  }
  std::int64_t a =
      to_i64(parse_int(s.substr(0, colon)), 1'000'000, "range start");
  std::int64_t b =
      to_i64(parse_int(s.substr(colon + 1)), 1'000'000, "range end");
  if (b < a) throw ParameterError("empty range '" + s + "'");
  return {a, b};
}

struct Budgets {
  std::int64_t enum_budget;
  SolverBudget solver;
  LpLimits lp;

  Budgets() {
    enum_budget = env_i64("SCHEDGAP_ENUM_BUDGET", kDefaultEnumBudget);
    solver.max_members = env_i64("SCHEDGAP_MAX_MEMBERS", solver.max_members);
    solver.max_states = env_i64("SCHEDGAP_MAX_STATES", solver.max_states);
    lp.max_vars = env_i64("SCHEDGAP_MAX_VARS", lp.max_vars);
    lp.max_pivots = env_i64("SCHEDGAP_MAX_PIVOTS", lp.max_pivots);
    lp.max_tableau_cells =
        env_i64("SCHEDGAP_MAX_TABLEAU", lp.max_tableau_cells);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "layered-graph scheduling constructions: generators, reductions, "
      "schedulers, slot-LP machinery, and verifiers"};
  app.require_subcommand(1);
  Budgets budgets;

  // ---- gen-graph ---------------------------------------------------------
  auto* gen = app.add_subcommand("gen-graph", "generate layered graphs");
  gen->require_subcommand(1);

  struct {
    int k = 2, n = 4, Q = 1;
    std::string p_dense = "1", p_sparse = "1/2", eps = "0", delta;
    std::uint64_t seed = 1;
    int retries = 64;
    bool no_matching = false;
    std::string out, side_out;
  } gg;

  auto* gg_yes = gen->add_subcommand(
      "yes", "planted YES instance with a block-partition witness");
  gg_yes->add_option("--k", gg.k, "layers")->required();
  gg_yes->add_option("--n", gg.n, "vertices per layer")->required();
  gg_yes->add_option("--Q", gg.Q, "blocks per layer (Q | n)")->required();
  gg_yes->add_option("-p,--edge-prob", gg.p_dense,
                     "edge probability (rational, default 1)");
  gg_yes->add_option("--seed", gg.seed, "PRNG seed");
  gg_yes->add_option("-o,--out", gg.out, "graph output file");
  gg_yes->add_option("--witness-out", gg.side_out,
                     "witness output file (witness not emitted otherwise)");
  gg_yes->callback([&] {
    auto [g, w] =
        gen_yes_kpartite(gg.k, gg.n, gg.Q, parse_rat(gg.p_dense), gg.seed);
    write_output(gg.out, graph_to_json(g));
    if (!gg.side_out.empty()) write_output(gg.side_out, witness_to_json(w));
  });

  auto* gg_no = gen->add_subcommand(
      "no", "rejection-sampled NO instance (expansion-certified)");
  gg_no->add_option("--k", gg.k, "layers")->required();
  gg_no->add_option("--n", gg.n, "vertices per layer")->required();
  gg_no->add_option("--delta", gg.delta, "subset fraction (rational)")
      ->required();
  gg_no->add_option("-p,--edge-prob", gg.p_sparse,
                    "edge probability (rational, default 1/2)");
  gg_no->add_option("--seed", gg.seed, "PRNG seed");
  gg_no->add_option("--retries", gg.retries, "resampling attempts");
  gg_no->add_option("--budget", budgets.enum_budget,
                    "subset enumeration budget");
  gg_no->add_option("-o,--out", gg.out, "graph output file");
  gg_no->callback([&] {
    KPartiteGraph g =
        gen_no_kpartite(gg.k, gg.n, parse_rat(gg.delta),
                        parse_rat(gg.p_sparse), gg.seed, gg.retries,
                        budgets.enum_budget);
    write_output(gg.out, graph_to_json(g));
  });

  auto* gg_byes = gen->add_subcommand(
      "bipartite-yes", "planted YES bipartite instance (BK88 shape)");
  gg_byes->add_option("--n", gg.n, "vertices per side")->required();
  gg_byes->add_option("--Q", gg.Q, "blocks per side")->required();
  gg_byes->add_option("--eps", gg.eps, "err-block fraction (rational)");
  gg_byes->add_option("-p,--edge-prob", gg.p_dense,
                      "edge probability (rational, default 1)");
  gg_byes->add_option("--seed", gg.seed, "PRNG seed");
  gg_byes->add_flag("--no-matching", gg.no_matching,
                    "do not plant a perfect matching");
  gg_byes->add_option("-o,--out", gg.out, "graph output file");
  gg_byes->add_option("--partition-out", gg.side_out,
                      "partition output file (not emitted otherwise)");
  gg_byes->callback([&] {
    auto [b, p] =
        gen_yes_bipartite(gg.n, gg.Q, parse_rat(gg.eps),
                          parse_rat(gg.p_dense), gg.seed, !gg.no_matching);
    write_output(gg.out, bipartite_to_json(b));
    if (!gg.side_out.empty())
      write_output(gg.side_out, bipartition_to_json(p));
  });

  auto* gg_bno = gen->add_subcommand(
      "bipartite-no", "rejection-sampled NO bipartite instance");
  gg_bno->add_option("--n", gg.n, "vertices per side")->required();
  gg_bno->add_option("--delta", gg.delta, "subset fraction")->required();
  gg_bno->add_option("-p,--edge-prob", gg.p_sparse,
                     "edge probability (rational, default 1/2)");
  gg_bno->add_option("--seed", gg.seed, "PRNG seed");
  gg_bno->add_option("--retries", gg.retries, "resampling attempts");
  gg_bno->add_option("--budget", budgets.enum_budget,
                     "subset enumeration budget");
  gg_bno->add_option("-o,--out", gg.out, "graph output file");
  gg_bno->callback([&] {
    BipartiteGraph b =
        gen_no_bipartite(gg.n, parse_rat(gg.delta), parse_rat(gg.p_sparse),
                         gg.seed, gg.retries, budgets.enum_budget);
    write_output(gg.out, bipartite_to_json(b));
  });

  struct {
    std::string graph, partition, out, witness_out;
    int k = 2;
  } lift;
  auto* gg_lift = gen->add_subcommand(
      "lift", "matching-lift a bipartite graph to k layers");
  gg_lift->add_option("--graph", lift.graph, "bipartite graph file")
      ->required();
  gg_lift->add_option("--k", lift.k, "target layer count")->required();
  gg_lift->add_option("--partition", lift.partition,
                      "YES-shape partition to lift into a witness");
  gg_lift->add_option("-o,--out", lift.out, "graph output file");
  gg_lift->add_option("--witness-out", lift.witness_out,
                      "lifted witness output file (required with "
                      "--partition)");
  gg_lift->callback([&] {
    BipartiteGraph b = bipartite_from_json(read_input(lift.graph));
    std::optional<BipartitePartition> part;
    if (!lift.partition.empty()) {
      if (lift.witness_out.empty())
        throw ParameterError("--witness-out is required with --partition");
      part = bipartition_from_json(read_input(lift.partition));
    }
    LiftResult res = matching_lift(b, lift.k, part);
    write_output(lift.out, graph_to_json(res.graph));
    if (res.witness && !lift.witness_out.empty())
      write_output(lift.witness_out, witness_to_json(*res.witness));
  });

  // ---- reduce ------------------------------------------------------------
  auto* reduce =
      app.add_subcommand("reduce", "graph -> scheduling instance reductions");
  reduce->require_subcommand(1);

  struct {
    std::string graph, witness, out, schedule_out;
    std::string m = "2", eps = "0";
    int Q = 2;
    int regime_factor = 10;
  } rd;

  auto check_witness_paths = [&rd] {
    if (!rd.witness.empty() && rd.schedule_out.empty())
      throw ParameterError("--schedule-out is required with --witness");
  };

  auto* rd_q = reduce->add_subcommand(
      "qprec", "uniform-machine reduction (one speed class per layer)");
  rd_q->add_option("--graph", rd.graph, "k-partite graph file")->required();
  rd_q->add_option("--m", rd.m, "speed base m >= 2")->required();
  rd_q->add_option("--regime-factor", rd.regime_factor,
                   "threshold factor for the regime flag");
  rd_q->add_option("--witness", rd.witness,
                   "YES witness; emit the completeness schedule");
  rd_q->add_option("-o,--out", rd.out, "instance output file");
  rd_q->add_option("--schedule-out", rd.schedule_out,
                   "completeness schedule output file");
  rd_q->callback([&] {
    check_witness_paths();
    KPartiteGraph g = graph_from_json(read_input(rd.graph));
    const Int m = parse_int(rd.m);
    Instance inst = reduce_qprec(g, m, rd.regime_factor);
    write_output(rd.out, instance_to_json(inst));
    if (!rd.witness.empty()) {
      PartitionWitness w = witness_from_json(read_input(rd.witness));
      write_output(rd.schedule_out,
                   schedule_to_json(Schedule{qprec_witness(g, w, m)}));
    }
  });

  auto* rd_p = reduce->add_subcommand(
      "pmtn", "identical-machine preemptive reduction (k odd)");
  rd_p->add_option("--graph", rd.graph, "k-partite graph file")->required();
  rd_p->add_option("--Q", rd.Q, "blocks per layer")->required();
  rd_p->add_option("--eps", rd.eps, "machine slack (rational)");
  rd_p->add_option("--regime-factor", rd.regime_factor,
                   "threshold factor for the regime flag");
  rd_p->add_option("--witness", rd.witness,
                   "YES witness; emit the completeness schedule");
  rd_p->add_option("-o,--out", rd.out, "instance output file");
  rd_p->add_option("--schedule-out", rd.schedule_out,
                   "completeness schedule output file");
  rd_p->callback([&] {
    check_witness_paths();
    KPartiteGraph g = graph_from_json(read_input(rd.graph));
    const Rat eps = parse_rat(rd.eps);
    Instance inst = reduce_pmtn(g, rd.Q, eps, rd.regime_factor);
    write_output(rd.out, instance_to_json(inst));
    if (!rd.witness.empty()) {
      PartitionWitness w = witness_from_json(read_input(rd.witness));
      write_output(rd.schedule_out,
                   schedule_to_json(Schedule{pmtn_witness(g, w, rd.Q, eps)}));
    }
  });

  auto* rd_b = reduce->add_subcommand(
      "bipartite", "bipartite preemptive reduction (3/2-barrier shape)");
  rd_b->add_option("--graph", rd.graph, "bipartite graph file")->required();
  rd_b->add_option("--Q", rd.Q, "chain length parameter")->required();
  rd_b->add_option("--partition", rd.witness,
                   "YES-shape partition; emit the completeness schedule");
  rd_b->add_option("-o,--out", rd.out, "instance output file");
  rd_b->add_option("--schedule-out", rd.schedule_out,
                   "completeness schedule output file");
  rd_b->callback([&] {
    if (!rd.witness.empty() && rd.schedule_out.empty())
      throw ParameterError("--schedule-out is required with --partition");
    BipartiteGraph b = bipartite_from_json(read_input(rd.graph));
    Instance inst = reduce_bipartite_pmtn(b, rd.Q);
    write_output(rd.out, instance_to_json(inst));
    if (!rd.witness.empty()) {
      BipartitePartition p = bipartition_from_json(read_input(rd.witness));
      write_output(rd.schedule_out,
                   schedule_to_json(Schedule{bipartite_witness(b, p, rd.Q)}));
    }
  });

  struct {
    std::string instance, budget;
  } lm;
  auto* rd_l = reduce->add_subcommand(
      "retention", "cross-class work accounting for a qprec instance");
  rd_l->add_option("--instance", lm.instance, "qprec instance file")
      ->required();
  rd_l->add_option("--budget", lm.budget, "makespan budget (rational)")
      ->required();
  rd_l->callback([&] {
    Instance inst = instance_from_json(read_input(lm.instance));
    RetentionReport rep = retention_accounting(inst, parse_rat(lm.budget));
    json j;
    j["budget"] = format_rat(rep.budget);
    j["aggregate_retention"] = format_rat(rep.aggregate_retention);
    j["analytic_bound"] = format_rat(rep.analytic_bound);
    j["retention_per_layer"] = json::array();
    for (const auto& r : rep.retention_per_layer)
      j["retention_per_layer"].push_back(format_rat(r));
    j["fractions"] = json::array();
    for (const auto& [i, cls, frac] : rep.fractions)
      j["fractions"].push_back({i, cls, format_rat(frac)});
    std::cout << j.dump(2) << "\n";
  });

  // ---- solve -------------------------------------------------------------
  struct {
    std::string instance, method = "list", out;
  } so;
  auto* solve = app.add_subcommand("solve", "baseline schedulers");
  solve->add_option("--instance", so.instance, "instance file")->required();
  solve
      ->add_option("--method", so.method,
                   "list | cp-list | uniform-list | mcnaughton | brute")
      ->check(CLI::IsMember(
          {"list", "cp-list", "uniform-list", "mcnaughton", "brute"}));
  solve->add_option("--max-members", budgets.solver.max_members,
                    "member expansion cap");
  solve->add_option("--max-states", budgets.solver.max_states,
                    "brute-force state cap");
  solve->add_option("-o,--out", so.out, "output file");
  solve->callback([&] {
    Instance inst = instance_from_json(read_input(so.instance));
    if (so.method == "brute") {
      json j;
      j["opt"] = brute_force_opt(inst, budgets.solver);
      write_output(so.out, j.dump(2) + "\n");
      return;
    }
    IntervalSchedule sched;
    if (so.method == "list")
      sched =
          list_schedule(inst, PriorityRule::kLexicographic, budgets.solver);
    else if (so.method == "cp-list")
      sched =
          list_schedule(inst, PriorityRule::kCriticalPath, budgets.solver);
    else if (so.method == "uniform-list")
      sched = uniform_list_schedule(inst, budgets.solver);
    else
      sched = mcnaughton(inst, budgets.solver);
    write_output(so.out, schedule_to_json(Schedule{std::move(sched)}));
  });

  // ---- lp ----------------------------------------------------------------
  struct {
    std::string instance, export_path, out;
    std::int64_t T = 0;
    bool per_member = false, do_solve = false, min_t = false;
  } lp;
  auto* lpc = app.add_subcommand("lp", "slot-LP build, solve, export");
  lpc->add_option("--instance", lp.instance, "instance file")->required();
  lpc->add_option("--T", lp.T, "horizon (slots)");
  lpc->add_flag("--per-member", lp.per_member,
                "member-level variables instead of aggregated groups");
  lpc->add_flag("--solve", lp.do_solve, "solve at --T");
  lpc->add_flag("--min-T", lp.min_t,
                "binary-search the least feasible horizon");
  lpc->add_option("--export", lp.export_path,
                  "write the LP in CPLEX text format");
  lpc->add_option("--max-vars", budgets.lp.max_vars, "variable cap");
  lpc->add_option("--max-pivots", budgets.lp.max_pivots, "pivot cap");
  lpc->add_option("-o,--out", lp.out, "result output file");
  lpc->callback([&] {
    Instance inst = instance_from_json(read_input(lp.instance));
    const bool aggregate = !lp.per_member;
    if (lp.min_t) {
      MinTResult res = min_feasible_T(inst, aggregate, budgets.lp);
      write_output(lp.out, min_t_result_to_json(res));
      return;
    }
    if (!lp.do_solve && lp.export_path.empty())
      throw ParameterError("pick an action: --solve, --min-T or --export");
    if (lp.T < 1)
      throw ParameterError("--T is required for --solve / --export");
    LpProblem problem = build_lp(inst, lp.T, aggregate, budgets.lp);
    if (!lp.export_path.empty())
      write_output(lp.export_path, export_lp(problem));
    if (lp.do_solve) {
      LpResult res = solve_lp(problem, budgets.lp);
      write_output(lp.out, lp_result_to_json(res));
      if (res.status == LpStatus::kInfeasible) g_exit = 3;
    }
  });

  // ---- gap ---------------------------------------------------------------
  struct {
    std::string k = "1", d, m, out;
    bool exact = false, as_json = false, as_csv = false;
  } gp;
  auto* gap = app.add_subcommand("gap", "integrality-gap family reports");
  gap->add_option("--k", gp.k, "chain count or range a:b");
  gap->add_option("--d", gp.d, "depth or range a:b")->required();
  gap->add_option("--m", gp.m, "machine count (default: m = d per row)");
  gap->add_flag("--exact", gp.exact, "confirm the optimum by brute force");
  gap->add_flag("--json", gp.as_json, "emit JSON reports");
  gap->add_flag("--csv", gp.as_csv, "emit a CSV table (default)");
  gap->add_option("--max-states", budgets.solver.max_states,
                  "brute-force state cap");
  gap->add_option("-o,--out", gp.out, "output file");
  gap->callback([&] {
    if (gp.as_json && gp.as_csv)
      throw ParameterError("pick one of --json / --csv");
    const auto [k_lo, k_hi] = parse_range(gp.k);
    const auto [d_lo, d_hi] = parse_range(gp.d);
    struct Row {
      std::int64_t k, d;
      Int m;
    };
    std::vector<Row> rows;
    for (std::int64_t k = k_lo; k <= k_hi; ++k)
      for (std::int64_t d = d_lo; d <= d_hi; ++d)
        rows.push_back({k, d, gp.m.empty() ? Int(d) : parse_int(gp.m)});
    // rows are independent; run them concurrently, collect in order
    std::vector<std::future<GapReport>> futures;
    futures.reserve(rows.size());
    for (const Row& row : rows)
      futures.push_back(std::async(std::launch::async, [row, &gp, &budgets] {
        return gap_report(gen_gap_family(row.k, row.d, row.m), gp.exact,
                          budgets.solver, budgets.lp);
      }));
    std::vector<GapReport> reports;
    reports.reserve(rows.size());
    for (auto& f : futures) reports.push_back(f.get());
    if (gp.as_json) {
      json arr = json::array();
      for (const auto& r : reports)
        arr.push_back(json::parse(gap_report_to_json(r)));
      write_output(gp.out, arr.dump(2) + "\n");
    } else {
      write_output(gp.out, gap_reports_to_csv(reports));
    }
  });

  // ---- verify ------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "check claims against data");
  verify->require_subcommand(1);

  struct {
    std::string instance, schedule, graph, witness, solution, certificate;
    std::string delta;
    std::int64_t T = 0;
    bool per_member = false;
    int samples = 0;
    std::uint64_t seed = 1;
  } vf;

  auto* vf_s = verify->add_subcommand("schedule",
                                      "schedule feasibility for an instance");
  vf_s->add_option("--instance", vf.instance, "instance file")->required();
  vf_s->add_option("--schedule", vf.schedule, "schedule file")->required();
  vf_s->callback([&] {
    Instance inst = instance_from_json(read_input(vf.instance));
    Schedule sched = schedule_from_json(read_input(vf.schedule));
    ValidationReport rep = validate_schedule(inst, sched);
    std::cout << validation_report_to_json(rep);
    if (!rep.feasible) g_exit = 3;
  });

  auto* vf_y = verify->add_subcommand("yes", "YES-case partition witness");
  vf_y->add_option("--graph", vf.graph, "k-partite graph file")->required();
  vf_y->add_option("--witness", vf.witness, "witness file")->required();
  vf_y->callback([&] {
    KPartiteGraph g = graph_from_json(read_input(vf.graph));
    PartitionWitness w = witness_from_json(read_input(vf.witness));
    const bool ok = check_yes_partition(g, w);
    std::cout << json{{"ok", ok}}.dump(2) << "\n";
    if (!ok) g_exit = 3;
  });

  auto* vf_by =
      verify->add_subcommand("bipartite-yes", "YES-shape bipartite partition");
  vf_by->add_option("--graph", vf.graph, "bipartite graph file")->required();
  vf_by->add_option("--partition", vf.witness, "partition file")->required();
  vf_by->callback([&] {
    BipartiteGraph b = bipartite_from_json(read_input(vf.graph));
    BipartitePartition p = bipartition_from_json(read_input(vf.witness));
    const bool ok = check_bipartite_yes(b, p);
    std::cout << json{{"ok", ok}}.dump(2) << "\n";
    if (!ok) g_exit = 3;
  });

  auto* vf_e = verify->add_subcommand(
      "expansion", "NO-case subset expansion (exhaustive or sampled)");
  vf_e->add_option("--graph", vf.graph, "k-partite graph file")->required();
  vf_e->add_option("--delta", vf.delta, "subset fraction")->required();
  vf_e->add_option("--budget", budgets.enum_budget, "enumeration budget");
  vf_e->add_option("--sampled", vf.samples,
                   "sample this many subset pairs instead of enumerating");
  vf_e->add_option("--seed", vf.seed, "PRNG seed for --sampled");
  vf_e->callback([&] {
    KPartiteGraph g = graph_from_json(read_input(vf.graph));
    const Rat delta = parse_rat(vf.delta);
    bool ok, certified;
    if (vf.samples > 0) {
      ok = sampled_expansion_check(g, delta, vf.samples, vf.seed);
      certified = false;  // sampling can only certify failure
    } else {
      ok = check_expansion(g, delta, budgets.enum_budget);
      certified = true;
    }
    std::cout << json{{"ok", ok}, {"certified", certified}}.dump(2) << "\n";
    if (!ok) g_exit = 3;
  });

  auto* vf_l = verify->add_subcommand("lp", "slot-LP solution feasibility");
  vf_l->add_option("--instance", vf.instance, "instance file")->required();
  vf_l->add_option("--T", vf.T, "horizon")->required();
  vf_l->add_flag("--per-member", vf.per_member, "member-level variables");
  vf_l->add_option("--solution", vf.solution, "solution file")->required();
  vf_l->callback([&] {
    Instance inst = instance_from_json(read_input(vf.instance));
    LpProblem problem = build_lp(inst, vf.T, !vf.per_member, budgets.lp);
    LpSolution sol = lp_solution_from_json(read_input(vf.solution));
    LpCheckReport rep = check_solution(problem, sol);
    std::cout << lp_check_report_to_json(problem, rep);
    if (!rep.feasible) g_exit = 3;
  });

  auto* vf_f =
      verify->add_subcommand("farkas", "slot-LP infeasibility certificate");
  vf_f->add_option("--instance", vf.instance, "instance file")->required();
  vf_f->add_option("--T", vf.T, "horizon")->required();
  vf_f->add_flag("--per-member", vf.per_member, "member-level variables");
  vf_f->add_option("--certificate", vf.certificate, "certificate file")
      ->required();
  vf_f->callback([&] {
    Instance inst = instance_from_json(read_input(vf.instance));
    LpProblem problem = build_lp(inst, vf.T, !vf.per_member, budgets.lp);
    FarkasCertificate cert = farkas_from_json(read_input(vf.certificate));
    const bool ok = verify_farkas(problem, cert);
    std::cout << json{{"ok", ok}}.dump(2) << "\n";
    if (!ok) g_exit = 3;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return g_exit;
}
