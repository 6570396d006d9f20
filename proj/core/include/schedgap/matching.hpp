#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "schedgap/kpartite.hpp"

namespace schedgap {

// Maximum matching plus a Koenig vertex cover of equal size, which certifies
// maximality (every edge is covered, and no matching can exceed any cover).
struct Matching {
  std::vector<std::pair<int, int>> pairs;  // (v, w), sorted by v
  std::vector<int> cover_v;                // cover vertices on the V side
  std::vector<int> cover_w;                // cover vertices on the W side
};

// Augmenting-path maximum matching.  The returned cover is re-verified
// internally (covers every edge, size equals |pairs|) before returning.
Matching max_matching(const BipartiteGraph& b);

// True iff cover_v/cover_w touch every edge and |cover| == |pairs|.
bool verify_matching_certificate(const BipartiteGraph& b, const Matching& m);

struct LiftResult {
  KPartiteGraph graph;
  std::optional<PartitionWitness> witness;
  Matching matching;
  // lifted index i corresponds to the matched pair (v_of[i], w_of[i])
  std::vector<int> v_of;
  std::vector<int> w_of;
};

// Matching lift of a bipartite graph to k layers: take a maximum matching
// (v_1,w_1),...,(v_0,w_0) of size n', restrict edges to matched vertices,
// and replicate the resulting pattern between every pair of consecutive
// layers of a k-layer graph on n' vertices per layer (edge (i, j) in every
// E_l iff (v_i, w_j) is an edge).
//
// When a YES-shape bipartite partition is supplied, the witness is lifted
// with it: index i goes to the err block iff v_i or w_i was in an err block
// (the matching edge (v_i, w_i) forces equal blocks otherwise), and every
// layer uses that per-index assignment.  The lifted eps is the smallest
// rational for which the block size invariant holds.  Expansion of the
// original graph is preserved per layer pair because each E_l is a
// subgraph-restriction of the original edge set on matched vertices.
LiftResult matching_lift(const BipartiteGraph& b, int k,
                         const std::optional<BipartitePartition>& partition =
                             std::nullopt);

}  // namespace schedgap
