// End-to-end acceptance gate.  Each criterion prints exactly one PASS/FAIL
// line; the exit code is the number of failed criteria.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "schedgap/errors.hpp"
#include "schedgap/gap.hpp"
#include "schedgap/json_io.hpp"
#include "schedgap/kpartite.hpp"
#include "schedgap/lp.hpp"
#include "schedgap/matching.hpp"
#include "schedgap/reductions.hpp"
#include "schedgap/solvers.hpp"
#include "schedgap/validate.hpp"

using namespace schedgap;

#define REQUIRE(cond)                                                     \
  do {                                                                    \
    if (!(cond))                                                          \
      throw std::runtime_error(std::string("requirement failed: " #cond  \
                                           " at line ") +                 \
                               std::to_string(__LINE__));                 \
  } while (0)

namespace {

int g_failures = 0;

void criterion(int num, const std::string& what, double budget_s,
               const std::function<void()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string error;
  try {
    body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (error.empty() && budget_s > 0 && secs > budget_s) {
    std::ostringstream ss;
    ss << "runtime " << secs << "s exceeded the " << budget_s << "s budget";
    error = ss.str();
  }
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << "criterion " << num << ": " << (error.empty() ? "PASS" : "FAIL")
       << " (" << secs << "s) - " << what;
  if (!error.empty()) {
    line << "\n  " << error;
    ++g_failures;
  }
  std::cout << line.str() << std::endl;
}

std::vector<Rat> slot_loads(const LpProblem& p, const LpSolution& sol) {
  std::vector<Rat> loads(std::size_t(p.T), Rat(0));
  for (const auto& unit : sol.x)
    for (const auto& [t, v] : unit) loads[std::size_t(t - 1)] += v;
  return loads;
}

std::uint64_t splitmix(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// strip the edges of the first floor(delta * n) V-vertices
BipartiteGraph delete_fraction(const BipartiteGraph& b, const Rat& delta) {
  int cut = int(floor_rat(delta * b.n));
  BipartiteGraph out;
  out.n = b.n;
  for (auto [v, w] : b.edges)
    if (v >= cut) out.edges.push_back({v, w});
  out.check();
  return out;
}

void c1_closed_form_feasibility() {
  for (std::int64_t d = 2; d <= 6; ++d)
    for (int m = 2; m <= 4; ++m) {
      Instance inst = gen_gap_basic(d, Int(m));
      LpProblem p = build_lp(inst, 2 * d, true);
      LpSolution sol = gap_lp_solution(inst);
      LpCheckReport rep = check_solution(p, sol);
      REQUIRE(rep.feasible);
      std::vector<Rat> loads = slot_loads(p, sol);
      REQUIRE(loads[0] == Rat(m));
      for (std::int64_t l = 0; l < d; ++l)
        REQUIRE(loads[std::size_t(d + l)] == Rat(m) - Rat(l, d));
    }
}

void c2_gap_three_halves_trend() {
  Rat prev(0);
  for (std::int64_t d = 2; d <= 10; ++d) {
    GapReport rep = gap_report(gen_gap_family(1, d, Int(100)));
    REQUIRE(rep.lp_value == Rat(2 * d));
    // ell = 100d - (d-1), ceil(ell/100) = d, so the bound is 3d - 1
    REQUIRE(rep.integral_opt == Rat(3 * d - 1));
    REQUIRE(rep.integral_bound == rep.integral_opt);
    REQUIRE(rep.ratio >= prev);
    prev = rep.ratio;
    if (d == 10) REQUIRE(rep.ratio == Rat(29, 20));
  }
  // brute force confirms the small corner of the family
  for (std::int64_t d = 2; d <= 3; ++d) {
    GapReport rep = gap_report(gen_gap_basic(d, Int(2)), true);
    REQUIRE(rep.exact);
  }
}

void c3_gap_two_trend() {
  Rat prev(0);
  for (std::int64_t k = 1; k <= 5; ++k) {
    GapReport rep = gap_report(gen_gap_family(k, 10, Int(100)));
    REQUIRE(rep.lp_value == Rat((k + 1) * 10));
    REQUIRE(rep.integral_opt == Rat((k + 1) * 10 + 9 * k));
    REQUIRE(rep.analytic_bound == Rat(2 * k * 10 + 10 - k - 1));
    REQUIRE(rep.integral_opt >= rep.analytic_bound);
    REQUIRE(rep.ratio > prev);
    prev = rep.ratio;
    if (k == 5) REQUIRE(rep.ratio == Rat(7, 4));
  }
}

void c4_pmtn_witness() {
  auto [g, w] = gen_yes_kpartite(3, 8, 8, Rat(1, 2), 42);
  Instance inst = reduce_pmtn(g, 8, Rat(1, 4));
  REQUIRE(machine_total_count(inst.machines) == 192);  // (1 + Q eps) n^2
  SlotSchedule sched = pmtn_witness(g, w, 8, Rat(1, 4));
  ValidationReport rep = validate_schedule(inst, Schedule{sched});
  REQUIRE(rep.feasible);
  REQUIRE(rep.makespan == Rat(16));  // (k+1)Q/2
  std::vector<Rat> loads(16, Rat(0));
  for (const auto& e : sched.entries)
    loads[std::size_t(e.slot - 1)] += Rat(e.count);
  for (const Rat& load : loads) REQUIRE(load <= Rat(192));
}

void c5_qprec_witness_and_retention() {
  auto [g, w] = gen_yes_kpartite(3, 24, 12, Rat(1, 2), 7);
  Instance inst = reduce_qprec(g, Int(1000));
  BlockSchedule sched = qprec_witness(g, w, Int(1000));
  ValidationReport rep = validate_schedule(inst, Schedule{sched});
  REQUIRE(rep.feasible);
  REQUIRE(rep.makespan == Rat(30));  // (k+Q) n/Q with eps_eff = 0

  RetentionReport acc = retention_accounting(inst, Rat(30));
  REQUIRE(acc.analytic_bound == Rat(991, 1000));  // 1 - k^2/m
  REQUIRE(acc.aggregate_retention >= acc.analytic_bound);
}

void c6_no_case_gap() {
  // YES side: the witness finishes in (k+1)Q/2 = 8 slots, and the integral
  // optimum confirms 8 is exact at these parameters
  {
    auto [g, w] = gen_yes_kpartite(3, 4, 4, Rat(1, 2), 1);
    Instance inst = reduce_pmtn(g, 4, Rat(0));
    ValidationReport rep =
        validate_schedule(inst, Schedule{pmtn_witness(g, w, 4, Rat(0))});
    REQUIRE(rep.feasible);
    REQUIRE(rep.makespan == Rat(8));
    REQUIRE(brute_force_opt(inst) == 8);
  }
  // NO side: expansion-certified graphs push the exact integral optimum
  // strictly past 8.  The fractional relaxation cannot see this: the family
  // has integrality gap 2, and at this scale [min_feasible_T] sits at the
  // capacity bound ceil(116/16) = 8 for every graph, so the brute-force
  // optimum is the oracle that carries the hardness signal.
  bool found = false;
  std::vector<std::string> ratios;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    KPartiteGraph g = gen_no_kpartite(3, 4, Rat(1, 2), Rat(1, 2), seed);
    REQUIRE(check_expansion(g, Rat(1, 2)));
    Instance inst = reduce_pmtn(g, 4, Rat(0));
    REQUIRE(min_feasible_T(inst, true).T == 8);
    std::int64_t opt = brute_force_opt(inst);
    REQUIRE(opt > 8);
    Rat ratio = Rat(opt, 8);
    ratios.push_back(format_rat(ratio));
    if (ratio > Rat(23, 20)) found = true;
  }
  std::cout << "  [c6] no-case integral/witness ratios:";
  for (const auto& r : ratios) std::cout << " " << r;
  std::cout << "\n";
  REQUIRE(found);
}

void c7_oracle_consistency() {
  std::uint64_t state = 0x5eedull;
  for (int trial = 0; trial < 200; ++trial) {
    Instance inst;
    int n_groups = 1 + int(splitmix(state) % 3);
    for (int i = 0; i < n_groups; ++i)
      inst.groups.push_back({"g" + std::to_string(i),
                             Int(1 + splitmix(state) % 3), Rat(1)});
    for (int i = 0; i < n_groups; ++i)
      for (int j = i + 1; j < n_groups; ++j)
        if (splitmix(state) % 3 == 0)
          inst.precedence.push_back({inst.groups[i].id, inst.groups[j].id});
    inst.machines = IdenticalMachines{Int(1 + splitmix(state) % 3)};
    inst.check();

    std::int64_t min_t = min_feasible_T(inst, true).T;
    std::int64_t brute = brute_force_opt(inst);
    ValidationReport rep =
        validate_schedule(inst, Schedule{list_schedule(inst)});
    REQUIRE(rep.feasible);
    Rat clb = combinatorial_lower_bound(inst);
    REQUIRE(Rat(min_t) <= Rat(brute));
    REQUIRE(Rat(brute) <= rep.makespan);
    REQUIRE(rep.makespan <= 2 * clb);
  }
}

void c8_bipartite_witness_trend() {
  const int Q = 2;
  Rat prev(10);
  for (int n : {4, 8, 16}) {
    auto [b, p] = gen_yes_bipartite(n, Q, Rat(0), Rat(1, 2), 3);
    Instance inst = reduce_bipartite_pmtn(b, Q);
    IntervalSchedule sched = bipartite_witness(b, p, Q);
    ValidationReport rep = validate_schedule(inst, Schedule{sched});
    REQUIRE(rep.feasible);
    REQUIRE(rep.makespan == Rat(2 * Q) + Rat(Q - 1, n));
    REQUIRE(rep.makespan <= Rat(2 * Q) + Rat(2 * Q, n));  // eps = 0
    Rat ratio = rep.makespan / Rat(2 * Q);
    REQUIRE(ratio < prev);
    REQUIRE(ratio > Rat(1));
    prev = ratio;
  }
}

void c9_lift() {
  // YES: delta-fraction deletions survive the lift with err blocks
  const Rat delta(1, 8), eps(1, 8);
  for (int Q : {1, 2}) {
    auto [b, p] = gen_yes_bipartite(16, Q, eps, Rat(1), 5);
    BipartiteGraph cut = delete_fraction(b, delta);
    LiftResult res = matching_lift(cut, 3, p);
    REQUIRE(res.witness.has_value());
    REQUIRE(check_yes_partition(res.graph, *res.witness));
    REQUIRE(res.witness->has_err());
    std::vector<int> sizes(std::size_t(Q), 0);
    for (int blk : res.witness->blocks[0])
      if (blk >= 0) ++sizes[std::size_t(blk)];
    // (1 - delta - 2 eps) n vertices survive outside err, split over Q blocks
    Rat bound = (Rat(1) - delta - 2 * eps) * 16 / Q;
    for (int s : sizes) REQUIRE(Rat(s) >= bound);
  }

  // NO: expansion survives the lift on every layer pair
  bool lifted_no = false;
  for (std::uint64_t seed = 1; seed <= 10 && !lifted_no; ++seed) {
    BipartiteGraph b;
    try {
      b = gen_no_bipartite(8, Rat(1, 2), Rat(1, 2), seed);
    } catch (const GenerationError&) {
      continue;
    }
    if (int(max_matching(b).pairs.size()) < 8) continue;  // keep n intact
    LiftResult res = matching_lift(b, 4);
    REQUIRE(res.graph.k == 4);
    REQUIRE(check_expansion(res.graph, Rat(1, 2)));
    lifted_no = true;
  }
  REQUIRE(lifted_no);
}

}  // namespace

int main() {
  criterion(1, "closed-form LP solution exact at T = 2d, slot loads match",
            1.0, c1_closed_form_feasibility);
  criterion(2, "I(d) ratio climbs to 29/20 at d = 10, brute-confirmed corner",
            10.0, c2_gap_three_halves_trend);
  criterion(3, "I(k,10) ratio climbs to 7/4 at k = 5, above the analytic bound",
            30.0, c3_gap_two_trend);
  criterion(4, "pmtn witness: 16 slots, loads within (1+Q eps) n^2 = 192",
            0.0, c4_pmtn_witness);
  criterion(5, "qprec witness: 30 time units; retention above 1 - k^2/m",
            0.0, c5_qprec_witness_and_retention);
  criterion(6, "expander reductions push the integral optimum past the YES witness",
            0.0, c6_no_case_gap);
  criterion(7, "min-T <= brute <= list <= 2 clb on 200 random instances",
            60.0, c7_oracle_consistency);
  criterion(8, "bipartite witness slot count tends to 2Q from above",
            0.0, c8_bipartite_witness_trend);
  criterion(9, "matching lift preserves yes witnesses and expansion",
            0.0, c9_lift);
  if (g_failures == 0) std::cout << "all criteria passed" << std::endl;
  return g_failures;
}
