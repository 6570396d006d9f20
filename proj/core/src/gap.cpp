#include "schedgap/gap.hpp"

#include <string>

#include "schedgap/errors.hpp"
#include "schedgap/schedule.hpp"
#include "schedgap/validate.hpp"

namespace schedgap {

namespace {

std::string big_id(std::int64_t i) { return "big" + std::to_string(i); }

std::string chain_id(std::int64_t i, std::int64_t r) {
  return "ch" + std::to_string(i) + "_" + std::to_string(r);
}

struct GapParams {
  std::int64_t k, d;
  Int m, ell;
};

Int integral_param(const Instance& inst, const std::string& key) {
  const auto v = inst.metadata.param(key);
  if (!v || denominator(*v) != 1)
    throw ParameterError("instance does not carry gap-family metadata (" +
                         key + ")");
  return numerator(*v);
}

GapParams read_params(const Instance& inst) {
  return {integral_param(inst, "k").convert_to<std::int64_t>(),
          integral_param(inst, "d").convert_to<std::int64_t>(),
          integral_param(inst, "m"), integral_param(inst, "ell")};
}

}  // namespace

Instance gen_gap_family(std::int64_t k, std::int64_t d, const Int& m) {
  if (k < 1) throw ParameterError("gap family needs k >= 1");
  if (d < 1) throw ParameterError("gap family needs d >= 1");
  if (m < 2) throw ParameterError("gap family needs m >= 2");
  const Int ell = Int(d) * m - Int(d - 1);

  Instance inst;
  inst.machines = IdenticalMachines{m};
  for (std::int64_t i = 1; i <= k + 1; ++i) {
    inst.groups.push_back({big_id(i), ell, Rat(1)});
    if (i > k) break;
    std::string prev = big_id(i);
    for (std::int64_t r = 1; r < d; ++r) {
      inst.groups.push_back({chain_id(i, r), Int(1), Rat(1)});
      inst.precedence.emplace_back(prev, chain_id(i, r));
      prev = chain_id(i, r);
    }
    inst.precedence.emplace_back(prev, big_id(i + 1));
  }
  inst.metadata.params["k"] = Rat(k);
  inst.metadata.params["d"] = Rat(d);
  inst.metadata.params["m"] = Rat(m);
  inst.metadata.params["ell"] = Rat(ell);
  inst.metadata.flags["gap_family"] = true;
  inst.check();
  return inst;
}

Instance gen_gap_basic(std::int64_t d, const Int& m) {
  return gen_gap_family(1, d, m);
}

LpSolution gap_lp_solution(const Instance& inst) {
  const auto [k, d, m, ell] = read_params(inst);
  const Rat spread = Rat(ell) / d;  // big-group rate for layers 2..k+1
  const Rat trickle = Rat(1) / d;   // chain-job rate

  LpSolution sol;
  sol.x.resize(inst.groups.size());
  auto row = [&](const std::string& id)
      -> std::vector<std::pair<std::int64_t, Rat>>& {
    return sol.x[inst.group_index(id)];
  };

  auto& first = row(big_id(1));
  first.emplace_back(1, Rat(m));
  for (std::int64_t t = 2; t <= d; ++t) first.emplace_back(t, Rat(m) - 1);
  for (std::int64_t i = 2; i <= k + 1; ++i) {
    auto& big = row(big_id(i));
    for (std::int64_t t = (i - 1) * d + 1; t <= i * d; ++t)
      big.emplace_back(t, spread);
  }
  for (std::int64_t i = 1; i <= k; ++i)
    for (std::int64_t r = 1; r < d; ++r) {
      auto& ch = row(chain_id(i, r));
      const std::int64_t start = (i - 1) * d + r + 1;
      for (std::int64_t t = start; t < start + d; ++t)
        ch.emplace_back(t, trickle);
    }
  return sol;
}

GapReport gap_report(const Instance& inst, bool exact,
                     const SolverBudget& budget, const LpLimits& limits) {
  const auto [k, d, m, ell] = read_params(inst);
  GapReport rep;
  rep.k = k;
  rep.d = d;
  rep.m = m;
  rep.ell = ell;
  rep.exact = exact;

  const std::int64_t T = (k + 1) * d;
  const LpProblem problem = build_lp(inst, T, /*aggregate=*/true, limits);
  const LpSolution sol = gap_lp_solution(inst);
  if (!check_solution(problem, sol).feasible)
    throw std::logic_error("closed-form gap LP solution failed verification");
  rep.lp_value = Rat(T);
  rep.loads.assign(T, Rat(0));
  for (const auto& unit : sol.x)
    for (const auto& [t, v] : unit) rep.loads[t - 1] += v;

  rep.integral_bound =
      Rat(k + 1) * Rat(ceil_rat(Rat(ell) / Rat(m))) + Rat(k) * Rat(d - 1);
  rep.analytic_bound = Rat(2 * k * d + d - k - 1);

  const Rat list_mk = schedule_makespan(Schedule{list_schedule(inst,
      PriorityRule::kLexicographic, budget)});
  if (list_mk != rep.integral_bound)
    throw std::logic_error("list schedule missed the analytic gap optimum");
  if (exact) {
    const std::int64_t opt = brute_force_opt(inst, budget);
    if (Rat(opt) != rep.integral_bound)
      throw std::logic_error("brute force disagrees with the analytic "
                             "gap optimum");
  }
  rep.integral_opt = rep.integral_bound;
  rep.ratio = gap_ratio(rep.integral_opt, rep.lp_value);
  return rep;
}

}  // namespace schedgap
