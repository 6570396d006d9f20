#include "schedgap/reductions.hpp"

#include <algorithm>
#include <map>

#include "schedgap/errors.hpp"

namespace schedgap {

namespace {

std::string big_id(int layer, int v) {
  return "b" + std::to_string(layer) + "_" + std::to_string(v);
}
std::string chain_id(int layer, int v, int l) {
  return "c" + std::to_string(layer) + "_" + std::to_string(v) + "_l" +
         std::to_string(l);
}
std::string qprec_id(int layer, int v) {
  return "v" + std::to_string(layer) + "_" + std::to_string(v);
}

void require_yes_witness(const KPartiteGraph& g, const PartitionWitness& w,
                         const char* who) {
  if (!check_yes_partition(g, w))
    throw PreconditionError(std::string(who) +
                            ": witness fails the YES-case check");
  if (w.has_err())
    throw PreconditionError(std::string(who) +
                            ": completeness construction needs a total "
                            "partition (no err blocks)");
}

}  // namespace

Instance reduce_qprec(const KPartiteGraph& g, const Int& m,
                      int regime_factor) {
  g.check();
  if (m < 2) throw ParameterError("reduce_qprec needs m >= 2");

  Instance inst;
  inst.preemptive = false;
  for (int layer = 1; layer <= g.k; ++layer) {
    Int count = pow_int(m, 2 * static_cast<unsigned>(g.k - layer));
    Rat proc = Rat(pow_int(m, static_cast<unsigned>(layer - 1)));
    for (int v = 0; v < g.n; ++v)
      inst.groups.push_back({qprec_id(layer, v), count, proc});
  }
  for (int i = 0; i + 1 < g.k; ++i)
    for (const auto& [u, v] : g.edges[i])
      inst.precedence.emplace_back(qprec_id(i + 1, u), qprec_id(i + 2, v));

  UniformMachines machines;
  for (int layer = 1; layer <= g.k; ++layer)
    machines.classes.emplace_back(
        Rat(pow_int(m, static_cast<unsigned>(layer - 1))),
        pow_int(m, 2 * static_cast<unsigned>(g.k - layer)));
  inst.machines = std::move(machines);

  ReductionParams params{g.k, g.n, 0, m, Rat(0), regime_factor};
  inst.metadata.params["k"] = Rat(g.k);
  inst.metadata.params["n"] = Rat(g.n);
  inst.metadata.params["m"] = Rat(m);
  inst.metadata.params["nk"] = Rat(Int(g.n) * g.k);
  inst.metadata.flags["in_regime_m"] = params.in_regime_m();
  inst.check();
  return inst;
}

BlockSchedule qprec_witness(const KPartiteGraph& g, const PartitionWitness& w,
                            const Int& m) {
  require_yes_witness(g, w, "qprec_witness");
  if (m < 2) throw ParameterError("qprec_witness needs m >= 2");

  // Window width B = (1 + eps_eff) n/Q with the smallest eps_eff >= 0 that
  // fits the largest planted block; each block occupies exactly one window.
  Int max_block = 0;
  for (int layer = 0; layer < g.k; ++layer) {
    std::vector<Int> sizes(w.Q, Int(0));
    for (int v = 0; v < g.n; ++v) ++sizes[w.blocks[layer][v]];
    for (const auto& s : sizes) max_block = std::max(max_block, s);
  }
  const Rat B = std::max(Rat(g.n) / w.Q, Rat(max_block));

  BlockSchedule sched;
  for (int layer = 1; layer <= g.k; ++layer) {
    Int count = pow_int(m, 2 * static_cast<unsigned>(g.k - layer));
    for (int v = 0; v < g.n; ++v) {
      int j = w.blocks[layer - 1][v] + 1;  // windows are 1-based; [0, B) stays idle
      Rat start = Rat(layer + j - 1) * B;
      sched.entries.push_back(
          {layer - 1, start, start + B, qprec_id(layer, v), count});
    }
  }
  return sched;
}

RetentionReport retention_accounting(const Instance& inst, const Rat& budget) {
  auto k_p = inst.metadata.param("k");
  auto n_p = inst.metadata.param("n");
  auto m_p = inst.metadata.param("m");
  if (!k_p || !n_p || !m_p)
    throw ParameterError(
        "retention_accounting needs an instance produced by reduce_qprec "
        "(metadata k, n, m)");
  if (budget <= 0) throw ParameterError("budget must be positive");
  const int k = static_cast<int>(numerator(*k_p));
  const Int n = numerator(*n_p);
  const Int m = numerator(*m_p);

  RetentionReport rep;
  rep.budget = budget;
  rep.analytic_bound = Rat(1) - Rat(Int(k) * k, m);
  rep.aggregate_retention = Rat(1);
  for (int i = 1; i <= k; ++i) {
    Rat foreign = 0;
    for (int j = 1; j <= k; ++j) {
      if (j == i) continue;
      // members of layer i one class-j machine finishes within the budget:
      // T * m^{j-i}; layer i holds n * m^{2(k-i)} members split over
      // m^{2(k-j)} class-j machines.
      Rat frac;
      if (j < i) {
        // speed deficit m^{i-j}: zero whole jobs unless T >= m^{i-j}
        Rat per_machine = budget / Rat(pow_int(m, unsigned(i - j)));
        Int whole = per_machine < 1 ? Int(0) : floor_rat(per_machine);
        frac = Rat(whole * pow_int(m, 2 * unsigned(k - j)),
                   n * pow_int(m, 2 * unsigned(k - i)));
      } else {
        // speed surplus: bounded by the fractional work argument
        frac = budget * Rat(pow_int(m, unsigned(j - i)), 1) *
               Rat(pow_int(m, 2 * unsigned(k - j)),
                   n * pow_int(m, 2 * unsigned(k - i)));
      }
      rep.fractions.emplace_back(i, j, frac);
      foreign += frac;
    }
    rep.retention_per_layer.push_back(Rat(1) - foreign);
    rep.aggregate_retention =
        std::min(rep.aggregate_retention, rep.retention_per_layer.back());
  }
  return rep;
}

Instance reduce_pmtn(const KPartiteGraph& g, int Q, const Rat& eps,
                     int regime_factor) {
  g.check();
  if (g.k % 2 == 0) throw ParameterError("reduce_pmtn needs odd k");
  if (Q < 2) throw ParameterError("reduce_pmtn needs Q >= 2");
  if (eps < 0) throw ParameterError("eps must be >= 0");

  const Int big_count = Int(Q) * g.n - (Q - 1);
  Instance inst;
  inst.preemptive = true;
  for (int layer = 1; layer <= g.k; ++layer) {
    if (layer % 2 == 1) {
      for (int v = 0; v < g.n; ++v)
        inst.groups.push_back({big_id(layer, v), big_count, Rat(1)});
    } else {
      for (int v = 0; v < g.n; ++v)
        for (int l = 1; l <= Q - 1; ++l) {
          inst.groups.push_back({chain_id(layer, v, l), Int(1), Rat(1)});
          if (l > 1)
            inst.precedence.emplace_back(chain_id(layer, v, l - 1),
                                         chain_id(layer, v, l));
        }
    }
  }
  for (int i = 0; i + 1 < g.k; ++i) {
    int lower = i + 1;
    for (const auto& [u, v] : g.edges[i]) {
      if (lower % 2 == 1)  // big group -> chain head
        inst.precedence.emplace_back(big_id(lower, u),
                                     chain_id(lower + 1, v, 1));
      else  // chain tail -> big group
        inst.precedence.emplace_back(chain_id(lower, u, Q - 1),
                                     big_id(lower + 1, v));
    }
  }
  const Int machines = ceil_rat((Rat(1) + Rat(Q) * eps) * g.n * g.n);
  inst.machines = IdenticalMachines{machines};

  ReductionParams params{g.k, g.n, Q, machines, eps, regime_factor};
  inst.metadata.params["k"] = Rat(g.k);
  inst.metadata.params["n"] = Rat(g.n);
  inst.metadata.params["Q"] = Rat(Q);
  inst.metadata.params["eps"] = eps;
  inst.metadata.params["machines"] = Rat(machines);
  inst.metadata.flags["in_regime_Q"] = params.in_regime_Q();
  inst.check();
  return inst;
}

SlotSchedule pmtn_witness(const KPartiteGraph& g, const PartitionWitness& w,
                          int Q, const Rat& eps) {
  require_yes_witness(g, w, "pmtn_witness");
  if (g.k % 2 == 0) throw ParameterError("pmtn_witness needs odd k");
  if (w.Q != Q)
    throw PreconditionError("witness Q does not match the reduction Q");
  if (eps < 0) throw ParameterError("eps must be >= 0");

  const Int big_count = Int(Q) * g.n - (Q - 1);
  SlotSchedule sched;
  // Big sets: whole odd-layer groups of block j land in slot Q(i-1)+1+j.
  for (int i = 1; 2 * i - 1 <= g.k; ++i) {
    int layer = 2 * i - 1;
    std::int64_t base = std::int64_t(Q) * (i - 1) + 1;
    for (int v = 0; v < g.n; ++v) {
      int j = w.blocks[layer - 1][v];
      sched.entries.push_back({base + j, big_id(layer, v), big_count});
    }
  }
  // Small sets: chain level l of even layer 2i, block j, in slot
  // Q(i-1)+1+l+j — one level deeper each slot, one block later each block.
  for (int i = 1; 2 * i <= g.k; ++i) {
    int layer = 2 * i;
    for (int l = 1; l <= Q - 1; ++l) {
      std::int64_t base = std::int64_t(Q) * (i - 1) + 1 + l;
      for (int v = 0; v < g.n; ++v) {
        int j = w.blocks[layer - 1][v];
        sched.entries.push_back({base + j, chain_id(layer, v, l), Int(1)});
      }
    }
  }

  const Int machines = ceil_rat((Rat(1) + Rat(Q) * eps) * g.n * g.n);
  std::map<std::int64_t, Int> load;
  for (const auto& e : sched.entries) load[e.slot] += e.count;
  for (const auto& [slot, total] : load)
    if (total > machines)
      throw CapacityError("slot " + std::to_string(slot) + " needs " +
                          total.str() + " machines but only " +
                          machines.str() +
                          " exist; eps is too small for the planted blocks");
  return sched;
}

Instance reduce_bipartite_pmtn(const BipartiteGraph& b, int Q) {
  b.check();
  if (Q < 2) throw ParameterError("reduce_bipartite_pmtn needs Q >= 2");
  if (b.n % Q != 0)
    throw ParameterError("Q = " + std::to_string(Q) + " must divide n = " +
                         std::to_string(b.n));

  const Int qn = Int(Q) * b.n;
  Instance inst;
  inst.preemptive = true;
  for (int v = 0; v < b.n; ++v)
    inst.groups.push_back({"v" + std::to_string(v), qn, Rat(1)});
  for (int w = 0; w < b.n; ++w) {
    std::string prev;
    for (int l = 1; l <= Q - 1; ++l) {
      std::string id = "w" + std::to_string(w) + "_l" + std::to_string(l);
      inst.groups.push_back({id, Int(1), Rat(1)});
      if (!prev.empty()) inst.precedence.emplace_back(prev, id);
      prev = id;
    }
    std::string tail = "w" + std::to_string(w) + "_tail";
    inst.groups.push_back({tail, qn, Rat(1)});
    inst.precedence.emplace_back(prev, tail);
  }
  for (const auto& [v, w] : b.edges)
    inst.precedence.emplace_back("v" + std::to_string(v),
                                 "w" + std::to_string(w) + "_l1");

  inst.machines = IdenticalMachines{Int(b.n) * b.n};
  inst.metadata.params["n"] = Rat(b.n);
  inst.metadata.params["Q"] = Rat(Q);
  inst.metadata.params["machines"] = Rat(Int(b.n) * b.n);
  inst.metadata.params["total_jobs"] =
      Rat(2 * qn * b.n + qn - b.n);  // 2Qn^2 + Qn - n
  inst.check();
  return inst;
}

IntervalSchedule bipartite_witness(const BipartiteGraph& b,
                                   const BipartitePartition& p, int Q) {
  if (!check_bipartite_yes(b, p))
    throw PreconditionError(
        "bipartite_witness: partition fails the YES-shape check");
  if (p.Q != Q)
    throw PreconditionError("partition Q does not match the reduction Q");
  if (Q < 2) throw ParameterError("bipartite_witness needs Q >= 2");

  const int n = b.n;
  // Merge the err blocks: V_err joins the first block, W_err the last, so
  // every edge (v, w) still satisfies block(v) + 1 <= block(w) + 1, i.e. the
  // v-group finishes no later than the window before w's chain head.
  std::vector<int> vb(n), wb(n);
  for (int v = 0; v < n; ++v) vb[v] = p.v_blocks[v] < 0 ? 0 : p.v_blocks[v];
  for (int w = 0; w < n; ++w)
    wb[w] = p.w_blocks[w] < 0 ? Q - 1 : p.w_blocks[w];

  const Int n2 = Int(n) * n;
  const std::int64_t qn = std::int64_t(Q) * n;

  IntervalSchedule sched;
  Rat t0 = 0;
  for (int i = 1; i <= 2 * Q; ++i) {
    // jobs of T_i, in a fixed order: big/tail groups first, then chain sets
    std::vector<std::pair<std::string, std::int64_t>> jobs;  // (group, members)
    if (i <= Q) {
      for (int v = 0; v < n; ++v)
        if (vb[v] == i - 1) jobs.emplace_back("v" + std::to_string(v), qn);
    } else {
      for (int w = 0; w < n; ++w)
        if (wb[w] == i - Q - 1)
          jobs.emplace_back("w" + std::to_string(w) + "_tail", qn);
    }
    for (int c = 1; c <= Q; ++c) {
      int l = i - c;
      if (l < 1 || l > Q - 1) continue;
      for (int w = 0; w < n; ++w)
        if (wb[w] == c - 1)
          jobs.emplace_back(
              "w" + std::to_string(w) + "_l" + std::to_string(l), 1);
    }
    Int size = 0;
    for (const auto& [id, cnt] : jobs) size += cnt;
    if (size == 0) continue;
    const Rat len = std::max(Rat(1), Rat(size) / Rat(n2));

    // McNaughton wrap inside [t0, t0+len): unit jobs fill machines row by
    // row; a job cut at the row boundary runs its head at the start of the
    // next machine's row, which cannot overlap its tail since len >= 1.
    std::int64_t machine = 0;
    Rat x = 0;  // filled prefix of the current machine's row
    for (const auto& [id, cnt] : jobs)
      for (std::int64_t member = 0; member < cnt; ++member) {
        if (x + 1 <= len) {
          sched.entries.push_back({id, member, 0, machine, t0 + x, t0 + x + 1});
          x += 1;
        } else {
          Rat head = x + 1 - len;  // overflow past the row end
          sched.entries.push_back({id, member, 0, machine, t0 + x, t0 + len});
          sched.entries.push_back({id, member, 0, machine + 1, t0, t0 + head});
          ++machine;
          x = head;
        }
        if (x == len) {
          ++machine;
          x = 0;
        }
      }
    t0 += len;
  }
  return sched;
}

}  // namespace schedgap
