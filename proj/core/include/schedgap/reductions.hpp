#pragma once

#include <vector>

#include "schedgap/instance.hpp"
#include "schedgap/kpartite.hpp"
#include "schedgap/schedule.hpp"

namespace schedgap {

// Parameter record for a reduction, with the soft asymptotic-regime flags
// the constructions assume (m large against nk; Q large against k).  The
// thresholds are desk-scale stand-ins for "sufficiently large" and only
// drive metadata flags, never correctness.
struct ReductionParams {
  int k = 0;
  int n = 0;
  int Q = 0;
  Int m;
  Rat eps;
  int regime_factor = 10;

  bool in_regime_m() const { return m >= Int(regime_factor) * n * k; }
  bool in_regime_Q() const { return Q >= regime_factor * k; }
};

// ---- uniform-machines reduction (Q|prec|Cmax hardness shape) ------------
//
// Vertex v in layer i becomes a group of m^{2(k-i)} jobs of processing time
// m^{i-1}; the machine park has one class per layer: m^{2(k-i)} machines of
// speed m^{i-1}.  Edges become group precedences along the layers.
// Non-preemptive.  Requires m >= 2.
Instance reduce_qprec(const KPartiteGraph& g, const Int& m,
                      int regime_factor = 10);

// Completeness schedule from a YES witness (no err blocks): block j of layer
// i runs on machine class i within the window [(i+j-1)B, (i+j)B] where
// B = (1+eps_eff) * n / Q and eps_eff is the smallest rational for which the
// largest block fits, i.e. B = max(n/Q, max block size).  Every window of
// every class carries work at most its capacity, and the edge rule
// block(v) >= block(u) makes all precedences window-ordered.  Makespan is
// exactly (k+Q) * B.  Throws PreconditionError if the witness fails
// check_yes_partition or carries err blocks.
BlockSchedule qprec_witness(const KPartiteGraph& g, const PartitionWitness& w,
                            const Int& m);

// Work accounting for the cross-class argument: within a makespan budget T,
// machine class j can complete at most floor(T * speed_j / p_i) members of a
// layer-i group per machine (zero when T < m^{i-j} for j < i), and for j > i
// at most a T * m^{i-j} / n fraction of layer i in aggregate.
struct RetentionReport {
  Rat budget;
  // (i, j, fraction of layer i's members that class j can process)
  std::vector<std::tuple<int, int, Rat>> fractions;
  std::vector<Rat> retention_per_layer;  // 1 - sum of foreign fractions
  Rat aggregate_retention;               // min over layers
  Rat analytic_bound;                       // 1 - k^2 / m
};
RetentionReport retention_accounting(const Instance& inst, const Rat& budget);

// ---- identical-machines preemptive reduction (k odd) --------------------
//
// Odd-layer vertices become groups of Q*n - (Q-1) unit jobs; even-layer
// vertices become chains of Q-1 singleton unit groups; edges connect groups
// to chain heads and chain tails to groups.  ceil((1+Q*eps)*n^2) identical
// machines, preemptive.  Requires k odd (>= 1), Q >= 2.
Instance reduce_pmtn(const KPartiteGraph& g, int Q, const Rat& eps,
                     int regime_factor = 10);

// Completeness slot schedule from a YES witness (no err blocks): the
// classic staircase of big sets S_{Q(i-1)+1, j} (odd layers, whole groups)
// and small sets S_{Q(i-1)+1+l, j} (chain level l of even layers), where
// set (idx, j) lands in slot idx + j; slots run 1..(k+1)Q/2.  Throws
// CapacityError if some slot exceeds the machine count (eps too small for
// the planted block sizes) and PreconditionError on a non-YES witness.
SlotSchedule pmtn_witness(const KPartiteGraph& g, const PartitionWitness& w,
                          int Q, const Rat& eps);

// ---- bipartite preemptive reduction ("3/2 barrier" shape) ---------------
//
// v in V becomes a group of Q*n unit jobs; w in W becomes a chain
// J^1..J^{Q-1} of singletons followed by a tail group J^Q of Q*n unit jobs;
// edges connect v-groups to chain heads.  n^2 identical machines,
// preemptive.  Requires Q >= 2 and Q | n.
Instance reduce_bipartite_pmtn(const BipartiteGraph& b, int Q);

// Completeness schedule from a YES-shape bipartite partition: after merging
// V_err into V_0 and W_err into W_{Q-1}, the job sets
//   T_i = J(V_{i-1}) u S_i            (1 <= i <= Q)
//   T_i = J^Q(W_{i-Q-1}) u S_i        (Q < i <= 2Q)
//   S_i = { J^l(W_{c-1}) : c + l = i, 1 <= c <= Q, 1 <= l < Q }
// are packed in order into consecutive fractional windows of length
// max(1, |T_i| / n^2) (unit jobs wrap across machines inside a window but
// never run in parallel with themselves).  The resulting makespan
// sum_i max(1, |T_i|/n^2) is reported exactly by the schedule; for planted
// equal blocks it equals 2Q + (Q-1)/n and tends to 2Q from above.
IntervalSchedule bipartite_witness(const BipartiteGraph& b,
                                   const BipartitePartition& p, int Q);

}  // namespace schedgap
