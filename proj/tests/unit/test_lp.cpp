#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <string>

#include "schedgap/errors.hpp"
#include "schedgap/gap.hpp"
#include "schedgap/json_io.hpp"
#include "schedgap/lp.hpp"
#include "schedgap/solvers.hpp"

using namespace schedgap;

namespace {

Instance unit_chain(std::vector<std::pair<std::string, Int>> groups, Int m) {
  Instance inst;
  for (auto& [id, count] : groups)
    inst.groups.push_back({id, count, Rat(1)});
  for (std::size_t i = 0; i + 1 < inst.groups.size(); ++i)
    inst.precedence.push_back({inst.groups[i].id, inst.groups[i + 1].id});
  inst.machines = IdenticalMachines{std::move(m)};
  inst.check();
  return inst;
}

}  // namespace

TEST_CASE("lp builder dimensions") {
  Instance inst = gen_gap_basic(2, Int(2));  // big(3) -> ch(1) -> big(3)

  LpProblem agg = build_lp(inst, 4, true);
  CHECK(agg.T == 4);
  CHECK(agg.unit_ids.size() == 3);
  CHECK(agg.vars() == 12);
  CHECK(agg.demands[0] == 3);
  CHECK(agg.prec.size() == 2);

  LpProblem per = build_lp(inst, 4, false);
  CHECK(per.unit_ids.size() == 7);
  CHECK(per.vars() == 28);
  for (const Int& d : per.demands) CHECK(d == 1);
  CHECK(per.prec.size() == 6);  // 3x1 + 1x3, expanded all-to-all
}

TEST_CASE("lp builder rejections") {
  Instance long_jobs;
  long_jobs.groups = {{"a", Int(1), Rat(2)}};
  long_jobs.machines = IdenticalMachines{Int(1)};
  long_jobs.check();
  CHECK_THROWS_AS(build_lp(long_jobs, 2, true), ParameterError);

  Instance uniform;
  uniform.groups = {{"a", Int(1), Rat(1)}};
  uniform.machines = UniformMachines{{{Rat(2), Int(1)}}};
  uniform.check();
  CHECK_THROWS_AS(build_lp(uniform, 2, true), ParameterError);

  Instance ok = unit_chain({{"a", Int(1)}}, Int(1));
  CHECK_THROWS_AS(build_lp(ok, 0, true), ParameterError);
  LpLimits tiny;
  tiny.max_vars = 1;
  CHECK_THROWS_AS(build_lp(ok, 2, true, tiny), BudgetError);
}

TEST_CASE("check_solution reports the first violation in scan order") {
  SUBCASE("capacity before anything else") {
    Instance inst = unit_chain({{"g", Int(1)}}, Int(1));
    LpProblem p = build_lp(inst, 2, true);
    LpSolution sol;
    sol.x = {{{1, Rat(3, 2)}, {2, Rat(-1, 2)}}};
    auto rep = check_solution(p, sol);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.kind == LpRowKind::kCapacity);
    CHECK(rep.t == 1);
  }
  SUBCASE("negativity surfaces once loads fit") {
    Instance inst = unit_chain({{"g", Int(1)}}, Int(2));
    LpProblem p = build_lp(inst, 2, true);
    LpSolution sol;
    sol.x = {{{1, Rat(3, 2)}, {2, Rat(-1, 2)}}};
    auto rep = check_solution(p, sol);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.kind == LpRowKind::kNonneg);
    CHECK(rep.unit == 0);
    CHECK(rep.t == 2);
  }
  SUBCASE("missing mass is a completion violation") {
    Instance inst = unit_chain({{"g", Int(1)}}, Int(2));
    LpProblem p = build_lp(inst, 2, true);
    LpSolution sol;
    sol.x = {{{1, Rat(1, 2)}}};
    auto rep = check_solution(p, sol);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.kind == LpRowKind::kCompletion);
    CHECK(rep.unit == 0);
  }
  SUBCASE("swapped chain order violates a precedence row") {
    Instance inst = unit_chain({{"a", Int(1)}, {"b", Int(1)}}, Int(2));
    LpProblem p = build_lp(inst, 2, true);
    LpSolution sol;
    sol.x = {{{2, Rat(1)}}, {{1, Rat(1)}}};
    auto rep = check_solution(p, sol);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.kind == LpRowKind::kPrecedence);
    CHECK(rep.pair == 0);
    CHECK(rep.t == 1);
    CHECK(rep.lhs < rep.rhs);
  }
  SUBCASE("malformed solutions are structural") {
    Instance inst = unit_chain({{"g", Int(1)}}, Int(1));
    LpProblem p = build_lp(inst, 2, true);
    LpSolution wrong_units;
    wrong_units.x = {};
    CHECK_THROWS_AS(check_solution(p, wrong_units), StructuralError);
    LpSolution bad_t;
    bad_t.x = {{{3, Rat(1)}}};
    CHECK_THROWS_AS(check_solution(p, bad_t), StructuralError);
  }
}

TEST_CASE("simplex solves and certifies tiny chains") {
  Instance inst = unit_chain({{"a", Int(1)}, {"b", Int(1)}}, Int(1));

  SUBCASE("feasible at T = 2") {
    LpProblem p = build_lp(inst, 2, true);
    LpResult res = solve_lp(p);
    REQUIRE(res.status == LpStatus::kFeasible);
    CHECK(check_solution(p, res.solution).feasible);
    CHECK_FALSE(res.farkas.has_value());
  }
  SUBCASE("infeasible at T = 1 with a verified certificate") {
    LpProblem p = build_lp(inst, 1, true);
    LpResult res = solve_lp(p);
    REQUIRE(res.status == LpStatus::kInfeasible);
    REQUIRE(res.farkas.has_value());
    CHECK(verify_farkas(p, *res.farkas));
    CHECK(res.solution.x.empty());

    // a corrupted certificate must not verify
    FarkasCertificate bad = *res.farkas;
    for (Rat& y : bad.y_cap) y = -y;
    for (Rat& y : bad.y_comp) y = -y;
    for (auto& [key, y] : bad.y_prec) y = -y;
    CHECK_FALSE(verify_farkas(p, bad));
  }
}

TEST_CASE("simplex agrees with the closed form on the basic gap instance") {
  Instance inst = gen_gap_basic(2, Int(2));
  LpProblem at4 = build_lp(inst, 4, true);
  LpResult res4 = solve_lp(at4);
  REQUIRE(res4.status == LpStatus::kFeasible);
  CHECK(check_solution(at4, res4.solution).feasible);

  LpProblem at3 = build_lp(inst, 3, true);
  LpResult res3 = solve_lp(at3);
  REQUIRE(res3.status == LpStatus::kInfeasible);
  CHECK(verify_farkas(at3, *res3.farkas));
}

TEST_CASE("min_feasible_T binary search") {
  SUBCASE("independent jobs hit the work bound") {
    Instance inst;
    inst.groups = {{"a", Int(4), Rat(1)}};
    inst.machines = IdenticalMachines{Int(2)};
    inst.check();
    MinTResult res = min_feasible_T(inst, true);
    CHECK(res.T == 2);
    REQUIRE(res.below.has_value());  // T = 1 refuted
    CHECK(res.solves >= 2);
  }
  SUBCASE("chains hit the path bound") {
    Instance inst = unit_chain({{"a", Int(2)}, {"b", Int(2)}, {"c", Int(2)}},
                               Int(2));
    MinTResult res = min_feasible_T(inst, true);
    CHECK(res.T == 3);
  }
  SUBCASE("the basic gap instance is feasible exactly at 2d") {
    MinTResult res = min_feasible_T(gen_gap_basic(2, Int(2)), true);
    CHECK(res.T == 4);
    REQUIRE(res.below.has_value());
    CHECK(check_solution(build_lp(gen_gap_basic(2, Int(2)), 4, true),
                         res.solution)
              .feasible);
  }
}

TEST_CASE("aggregated and per-member relaxations agree") {
  Instance inst = gen_gap_basic(2, Int(2));
  MinTResult agg = min_feasible_T(inst, true);
  MinTResult per = min_feasible_T(inst, false);
  CHECK(agg.T == 4);
  CHECK(per.T == agg.T);

  Instance pair_chain = unit_chain({{"a", Int(2)}, {"b", Int(2)}}, Int(2));
  CHECK(min_feasible_T(pair_chain, true).T ==
        min_feasible_T(pair_chain, false).T);
}

TEST_CASE("pivot and tableau budgets are enforced") {
  Instance inst = gen_gap_family(2, 3, Int(3));
  LpProblem p = build_lp(inst, 9, true);
  LpLimits one_pivot;
  one_pivot.max_pivots = 1;
  CHECK_THROWS_AS(solve_lp(p, one_pivot), BudgetError);
  LpLimits no_cells;
  no_cells.max_tableau_cells = 100;
  CHECK_THROWS_AS(solve_lp(p, no_cells), BudgetError);
}

TEST_CASE("lp export is deterministic cplex text") {
  Instance inst = unit_chain({{"a", Int(1)}, {"b", Int(1)}}, Int(1));
  LpProblem p = build_lp(inst, 2, true);
  std::string text = export_lp(p);
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("cap_1") != std::string::npos);
  CHECK(text.find("x0_1") != std::string::npos);
  CHECK(export_lp(p) == text);
}

TEST_CASE("lp json round trips") {
  Instance inst = gen_gap_basic(2, Int(2));
  LpSolution sol = gap_lp_solution(inst);
  std::string st = lp_solution_to_json(sol);
  CHECK(lp_solution_to_json(lp_solution_from_json(st)) == st);

  LpProblem p1 = build_lp(unit_chain({{"a", Int(1)}, {"b", Int(1)}}, Int(1)),
                          1, true);
  LpResult infeasible = solve_lp(p1);
  REQUIRE(infeasible.farkas.has_value());
  std::string ft = farkas_to_json(*infeasible.farkas);
  FarkasCertificate back = farkas_from_json(ft);
  CHECK(farkas_to_json(back) == ft);
  CHECK(verify_farkas(p1, back));

  CHECK_FALSE(lp_result_to_json(infeasible).empty());
  MinTResult mt = min_feasible_T(gen_gap_basic(2, Int(2)), true);
  CHECK_FALSE(min_t_result_to_json(mt).empty());
}

TEST_CASE("gap family construction") {
  Instance inst = gen_gap_family(2, 3, Int(3));
  CHECK(inst.groups.size() == 7);  // 3 big + 2 chains of 2
  CHECK(inst.metadata.param("ell") == Rat(7));  // dm - (d-1)
  CHECK(inst.metadata.flags.at("gap_family"));
  CHECK(inst.total_members() == 3 * 7 + 2 * 2);
  CHECK(machine_total_count(inst.machines) == 3);

  CHECK_THROWS_AS(gen_gap_family(0, 3, Int(3)), ParameterError);
  CHECK_THROWS_AS(gen_gap_family(1, 0, Int(3)), ParameterError);
  CHECK_THROWS_AS(gen_gap_family(1, 3, Int(1)), ParameterError);
}

TEST_CASE("gap closed form verifies and reports the exact ratio") {
  Instance inst = gen_gap_family(2, 3, Int(3));
  LpProblem p = build_lp(inst, 9, true);
  CHECK(check_solution(p, gap_lp_solution(inst)).feasible);

  GapReport rep = gap_report(inst);
  CHECK(rep.lp_value == Rat(9));
  CHECK(rep.integral_bound == Rat(13));  // 3*ceil(7/3) + 2*2
  CHECK(rep.integral_opt == Rat(13));
  CHECK(rep.analytic_bound == Rat(12));  // 2kd + d - k - 1
  CHECK(rep.ratio == Rat(13, 9));
  REQUIRE(rep.loads.size() == 9);
  CHECK(rep.loads[0] == Rat(3));
  CHECK_FALSE(rep.exact);

  GapReport exact = gap_report(gen_gap_basic(2, Int(2)), true);
  CHECK(exact.exact);
  CHECK(exact.integral_opt == Rat(5));
  CHECK(exact.ratio == Rat(5, 4));
}

TEST_CASE("degenerate depth-1 family has no gap") {
  GapReport rep = gap_report(gen_gap_family(1, 1, Int(5)), true);
  CHECK(rep.lp_value == Rat(2));
  CHECK(rep.integral_opt == Rat(2));
  CHECK(rep.ratio == Rat(1));
  REQUIRE(rep.loads.size() == 2);
  CHECK(rep.loads[0] == Rat(5));
  CHECK(rep.loads[1] == Rat(5));
}

TEST_CASE("gap report json and csv are stable") {
  GapReport rep = gap_report(gen_gap_basic(2, Int(2)), true);
  std::string jt = gap_report_to_json(rep);
  CHECK(jt.find("\"ratio\"") != std::string::npos);
  CHECK(gap_report_to_json(rep) == jt);
  std::string csv = gap_reports_to_csv({rep, rep});
  CHECK(csv.find("k,d,m,lp,bound,opt,ratio") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
