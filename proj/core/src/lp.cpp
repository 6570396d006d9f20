#include "schedgap/lp.hpp"

#include <sstream>

#include "schedgap/errors.hpp"

namespace schedgap {

namespace {

void require_unit_identical(const Instance& inst) {
  if (std::holds_alternative<UniformMachines>(inst.machines))
    throw ParameterError("the slot LP requires identical machines");
  for (const auto& g : inst.groups)
    if (g.proc_time != 1)
      throw ParameterError("the slot LP requires unit processing times");
}

// Dense per-unit prefix sums: prefix[u][t] = sum of x_{u,t'} for t' <= t,
// with t running 0..T.  Throws on malformed solutions; negative values are
// left for the nonneg scan.
std::vector<std::vector<Rat>> prefix_sums(const LpProblem& p,
                                          const LpSolution& sol) {
  if (sol.x.size() != p.unit_ids.size())
    throw StructuralError("solution has " + std::to_string(sol.x.size()) +
                          " units, problem has " +
                          std::to_string(p.unit_ids.size()));
  std::vector<std::vector<Rat>> prefix(sol.x.size());
  for (std::size_t u = 0; u < sol.x.size(); ++u) {
    std::int64_t last = 0;
    for (const auto& [t, v] : sol.x[u]) {
      if (t < 1 || t > p.T)
        throw StructuralError("solution slot out of range for unit " +
                              p.unit_ids[u]);
      if (t <= last)
        throw StructuralError("solution slots not strictly increasing for " +
                              p.unit_ids[u]);
      last = t;
    }
    auto& row = prefix[u];
    row.assign(p.T + 1, Rat(0));
    std::size_t next = 0;
    Rat acc = 0;
    for (std::int64_t t = 1; t <= p.T; ++t) {
      if (next < sol.x[u].size() && sol.x[u][next].first == t)
        acc += sol.x[u][next++].second;
      row[t] = acc;
    }
  }
  return prefix;
}

}  // namespace

const char* lp_row_kind_name(LpRowKind kind) {
  switch (kind) {
    case LpRowKind::kCapacity: return "capacity";
    case LpRowKind::kCompletion: return "completion";
    case LpRowKind::kPrecedence: return "precedence";
    case LpRowKind::kNonneg: return "nonneg";
  }
  return "?";
}

LpProblem build_lp(const Instance& inst, std::int64_t T, bool aggregate,
                   const LpLimits& limits) {
  Instance checked = inst;
  checked.check();
  require_unit_identical(checked);
  if (T < 1) throw ParameterError("LP horizon must be at least 1");

  LpProblem p;
  p.T = T;
  p.m = machine_total_count(checked.machines);
  p.aggregate = aggregate;

  if (aggregate) {
    for (const auto& g : checked.groups) {
      p.unit_ids.push_back(g.id);
      p.demands.push_back(g.count);
    }
    for (const auto& [a, b] : checked.precedence)
      p.prec.emplace_back(checked.group_index(a), checked.group_index(b));
  } else {
    std::vector<int> first_member(checked.groups.size());
    Int total = checked.total_members();
    to_i64(total, limits.max_vars, "member count");
    for (std::size_t g = 0; g < checked.groups.size(); ++g) {
      first_member[g] = static_cast<int>(p.unit_ids.size());
      std::int64_t c = checked.groups[g].count.convert_to<std::int64_t>();
      for (std::int64_t i = 0; i < c; ++i) {
        p.unit_ids.push_back(checked.groups[g].id + "#" + std::to_string(i));
        p.demands.push_back(1);
      }
    }
    for (const auto& [a, b] : checked.precedence) {
      int ga = checked.group_index(a);
      int gb = checked.group_index(b);
      std::int64_t ca = checked.groups[ga].count.convert_to<std::int64_t>();
      std::int64_t cb = checked.groups[gb].count.convert_to<std::int64_t>();
      if (static_cast<std::int64_t>(p.prec.size()) + ca * cb >
          limits.max_vars)
        throw BudgetError("member-level precedence expansion too large");
      for (std::int64_t i = 0; i < ca; ++i)
        for (std::int64_t j = 0; j < cb; ++j)
          p.prec.emplace_back(first_member[ga] + i, first_member[gb] + j);
    }
  }
  if (p.vars() > limits.max_vars)
    throw BudgetError("LP exceeds max_vars = " +
                      std::to_string(limits.max_vars));
  return p;
}

LpCheckReport check_solution(const LpProblem& p, const LpSolution& sol) {
  auto prefix = prefix_sums(p, sol);
  const int U = static_cast<int>(p.unit_ids.size());
  LpCheckReport rep;

  for (std::int64_t t = 1; t <= p.T; ++t) {
    Rat load = 0;
    for (int u = 0; u < U; ++u) load += prefix[u][t] - prefix[u][t - 1];
    if (load > Rat(p.m)) {
      rep.feasible = false;
      rep.kind = LpRowKind::kCapacity;
      rep.t = t;
      rep.lhs = load;
      rep.rhs = Rat(p.m);
      return rep;
    }
  }
  for (int u = 0; u < U; ++u) {
    if (prefix[u][p.T] != Rat(p.demands[u])) {
      rep.feasible = false;
      rep.kind = LpRowKind::kCompletion;
      rep.unit = u;
      rep.lhs = prefix[u][p.T];
      rep.rhs = Rat(p.demands[u]);
      return rep;
    }
  }
  for (int r = 0; r < static_cast<int>(p.prec.size()); ++r) {
    const auto [j, k] = p.prec[r];
    for (std::int64_t t = 1; t <= p.T; ++t) {
      Rat lhs = prefix[j][t - 1] / Rat(p.demands[j]) +
                (prefix[k][p.T] - prefix[k][t]) / Rat(p.demands[k]);
      if (lhs < 1) {
        rep.feasible = false;
        rep.kind = LpRowKind::kPrecedence;
        rep.pair = r;
        rep.t = t;
        rep.lhs = lhs;
        rep.rhs = 1;
        return rep;
      }
    }
  }
  for (int u = 0; u < U; ++u)
    for (const auto& [t, v] : sol.x[u])
      if (v < 0) {
        rep.feasible = false;
        rep.kind = LpRowKind::kNonneg;
        rep.unit = u;
        rep.t = t;
        rep.lhs = v;
        rep.rhs = 0;
        return rep;
      }
  return rep;
}

bool verify_farkas(const LpProblem& p, const FarkasCertificate& cert) {
  const int U = static_cast<int>(p.unit_ids.size());
  const int P = static_cast<int>(p.prec.size());
  if (static_cast<std::int64_t>(cert.y_cap.size()) != p.T) return false;
  if (static_cast<int>(cert.y_comp.size()) != U) return false;
  for (const Rat& y : cert.y_cap)
    if (y > 0) return false;

  // per-pair prefix/suffix sums of the (sparse) precedence multipliers
  std::map<int, std::vector<Rat>> dense;
  for (const auto& [key, y] : cert.y_prec) {
    const auto [r, t] = key;
    if (r < 0 || r >= P || t < 1 || t > p.T) return false;
    if (y < 0) return false;
    auto [it, fresh] = dense.try_emplace(r);
    if (fresh) it->second.assign(p.T + 2, Rat(0));
    it->second[t] = y;
  }
  std::map<int, std::vector<Rat>> suf, pre;
  for (const auto& [r, row] : dense) {
    std::vector<Rat> s(p.T + 2, Rat(0)), q(p.T + 2, Rat(0));
    for (std::int64_t t = p.T; t >= 0; --t) s[t] = s[t + 1] + row[t + 1];
    for (std::int64_t t = 1; t <= p.T + 1; ++t) q[t] = q[t - 1] + row[t - 1];
    suf.emplace(r, std::move(s));
    pre.emplace(r, std::move(q));
  }
  std::vector<std::vector<int>> as_pred(U), as_succ(U);
  for (const auto& [r, row] : dense) {
    as_pred[p.prec[r].first].push_back(r);
    as_succ[p.prec[r].second].push_back(r);
  }

  // y.b must be strictly positive
  Rat yb = 0;
  for (const Rat& y : cert.y_cap) yb += y * Rat(p.m);
  for (int u = 0; u < U; ++u) yb += cert.y_comp[u] * Rat(p.demands[u]);
  for (const auto& [key, y] : cert.y_prec) yb += y;
  if (yb <= 0) return false;

  // every variable column must price out <= 0
  for (int u = 0; u < U; ++u) {
    const Rat inv_d = Rat(1) / Rat(p.demands[u]);
    for (std::int64_t t = 1; t <= p.T; ++t) {
      Rat dot = cert.y_cap[t - 1] + cert.y_comp[u];
      for (int r : as_pred[u]) dot += suf.at(r)[t] * inv_d;
      for (int r : as_succ[u]) dot += pre.at(r)[t] * inv_d;
      if (dot > 0) return false;
    }
  }
  return true;
}

std::string export_lp(const LpProblem& p) {
  const int U = static_cast<int>(p.unit_ids.size());
  std::ostringstream out;
  out << "\\ unit-job slot LP: " << U << " units, T = " << p.T << ", m = "
      << p.m << (p.aggregate ? ", aggregated" : "") << "\n";
  for (int u = 0; u < U; ++u)
    out << "\\ x" << u << " = " << p.unit_ids[u] << " (demand "
        << p.demands[u] << ")\n";
  out << "Minimize\n obj: 0 x0_1\nSubject To\n";
  for (std::int64_t t = 1; t <= p.T; ++t) {
    out << " cap_" << t << ":";
    for (int u = 0; u < U; ++u)
      out << (u ? " + " : " ") << "x" << u << "_" << t;
    out << " <= " << p.m << "\n";
  }
  for (int u = 0; u < U; ++u) {
    out << " done_" << u << ":";
    for (std::int64_t t = 1; t <= p.T; ++t)
      out << (t > 1 ? " + " : " ") << "x" << u << "_" << t;
    out << " = " << p.demands[u] << "\n";
  }
  for (int r = 0; r < static_cast<int>(p.prec.size()); ++r) {
    const auto [j, k] = p.prec[r];
    const Int L = lcm(p.demands[j], p.demands[k]);
    const Int cj = L / p.demands[j];
    const Int ck = L / p.demands[k];
    for (std::int64_t t = 1; t <= p.T; ++t) {
      out << " prec_" << r << "_" << t << ":";
      bool any = false;
      for (std::int64_t s = 1; s < t; ++s) {
        out << (any ? " + " : " ") << cj << " x" << j << "_" << s;
        any = true;
      }
      for (std::int64_t s = t + 1; s <= p.T; ++s) {
        out << (any ? " + " : " ") << ck << " x" << k << "_" << s;
        any = true;
      }
      if (!any) out << " 0 x" << j << "_1";
      out << " >= " << L << "\n";
    }
  }
  out << "End\n";
  return out.str();
}

}  // namespace schedgap
