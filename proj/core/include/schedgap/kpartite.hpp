#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "schedgap/numeric.hpp"

namespace schedgap {

// Layered k-partite graph: k layers of n vertices each (vertices are
// 0..n-1 within a layer), with edge sets E_1..E_{k-1} where E_i joins layer
// i to layer i+1 (layers are 1-based to match the usual statement of the
// structural problem).
struct KPartiteGraph {
  int k = 0;
  int n = 0;
  // edges[i] = E_{i+1}: pairs (u in layer i+1, v in layer i+2), kept sorted
  // and unique.
  std::vector<std::vector<std::pair<int, int>>> edges;

  void check() const;  // throws StructuralError on bad shape / indices
  std::size_t edge_count() const;

  // Forward adjacency of layer pair i (0-based into `edges`): for each u,
  // a sorted neighbor list and a bitset row over the next layer, giving O(1)
  // edge membership and fast neighborhood unions.
  struct AdjacencyView {
    std::vector<std::vector<int>> lists;
    std::vector<std::vector<std::uint64_t>> rows;  // n x ceil(n/64) bits
    int words = 0;
    bool has_edge(int u, int v) const {
      return (rows[u][v >> 6] >> (v & 63)) & 1u;
    }
  };
  AdjacencyView adjacency(int pair_index) const;
};

// Assignment of every vertex of every layer to a block in [0, Q) or to the
// optional error block (index -1).  In a YES witness each non-err block has
// size >= (1 - eps) * n / Q and every edge (u in layer i, v in layer i+1)
// with both endpoints non-err satisfies block(v) >= block(u).
struct PartitionWitness {
  int Q = 0;
  Rat eps;
  std::vector<std::vector<int>> blocks;  // [layer][vertex] -> block or -1

  bool has_err() const;
  void check_shape(const KPartiteGraph& g) const;  // throws StructuralError
};

// Bipartite graph on V (n vertices) x W (n vertices).
struct BipartiteGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // (v, w), sorted + unique

  void check() const;
  // The equivalent 2-layer k-partite view (V = layer 1, W = layer 2).
  KPartiteGraph as_kpartite() const;
};

// Block assignment for both sides of a bipartite graph; -1 marks the err
// block.  The YES-case structure ("BK88 shape") is: every edge (v, w) with
// w in a non-err block W_c has v in V_c or in the V err block.
struct BipartitePartition {
  int Q = 0;
  Rat eps;
  std::vector<int> v_blocks;
  std::vector<int> w_blocks;

  void check_shape(const BipartiteGraph& b) const;
};

// ---- checkers ----------------------------------------------------------

// YES-case check: block indices well-formed, every non-err block of every
// layer has size >= (1 - eps) * n / Q (exact rational compare), and no edge
// goes from a higher block to a strictly lower block (edges touching the err
// block are unconstrained).
bool check_yes_partition(const KPartiteGraph& g, const PartitionWitness& w);

// Same structure check for a bipartite partition (no size bound: used as a
// reduction precondition, where only the edge pattern matters).
bool check_bipartite_yes(const BipartiteGraph& b, const BipartitePartition& p);

// NO-case check: with s = floor(delta * n) (>= 1 required, else
// ParameterError), every pair of s-subsets (S in layer i, T in layer i+1)
// spans at least one edge, for every consecutive layer pair.  Enumerates
// s-subsets S of the lower layer only: a violating T exists iff the
// complement of N(S) still holds s vertices.  Throws BudgetError if
// C(n, s) exceeds `budget` for some layer pair.
inline constexpr std::int64_t kDefaultEnumBudget = 20'000'000;
bool check_expansion(const KPartiteGraph& g, const Rat& delta,
                     std::int64_t budget = kDefaultEnumBudget);

// Monte-Carlo variant: samples `samples` random (S, T) pairs per layer pair.
// A 'false' is a certified counterexample; 'true' is NOT a certificate.
bool sampled_expansion_check(const KPartiteGraph& g, const Rat& delta,
                             int samples, std::uint64_t seed);

// ---- generators --------------------------------------------------------

// Planted YES instance: contiguous equal blocks of size n/Q (Q must divide
// n), plus each allowed edge (block(u) <= block(v)) independently with
// probability edge_prob (exact Bernoulli; 0 and 1 are handled exactly).
// Returns the graph and its witness (eps = 0).  Deterministic given seed.
std::pair<KPartiteGraph, PartitionWitness> gen_yes_kpartite(
    int k, int n, int Q, const Rat& edge_prob, std::uint64_t seed);

// Rejection-sampled NO instance: draws each edge with probability edge_prob
// and retries until check_expansion(delta) certifies every layer pair, up to
// max_retries attempts (then GenerationError carrying the failing pair).
KPartiteGraph gen_no_kpartite(int k, int n, const Rat& delta,
                              const Rat& edge_prob, std::uint64_t seed,
                              int max_retries = 64,
                              std::int64_t budget = kDefaultEnumBudget);

// Planted YES bipartite instance in BK88 shape: V and W split into Q blocks
// of size (1 - eps) * n / Q (must be a positive integer) plus err blocks
// holding the remainder; w in W_c draws edges into V_c and V_err, w in W_err
// draws edges into all of V.  When plant_matching is set, the i-th vertices
// of V_c and W_c (and of the err blocks) are joined so a perfect matching
// exists by construction.  Deterministic given seed.
std::pair<BipartiteGraph, BipartitePartition> gen_yes_bipartite(
    int n, int Q, const Rat& eps, const Rat& edge_prob, std::uint64_t seed,
    bool plant_matching = true);

// Rejection-sampled NO bipartite instance (expansion on the 2-layer view).
BipartiteGraph gen_no_bipartite(int n, const Rat& delta, const Rat& edge_prob,
                                std::uint64_t seed, int max_retries = 64,
                                std::int64_t budget = kDefaultEnumBudget);

}  // namespace schedgap
