#include "schedgap/matching.hpp"

#include <algorithm>

#include "schedgap/errors.hpp"

namespace schedgap {

namespace {

struct Kuhn {
  int n;
  std::vector<std::vector<int>> adj;  // v -> neighbors w
  std::vector<int> match_v, match_w;  // partner or -1
  std::vector<bool> used;

  explicit Kuhn(const BipartiteGraph& b) : n(b.n), adj(b.n) {
    for (const auto& [v, w] : b.edges) adj[v].push_back(w);
    for (auto& list : adj) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    match_v.assign(n, -1);
    match_w.assign(n, -1);
  }

  bool augment(int v) {
    for (int w : adj[v]) {
      if (used[w]) continue;
      used[w] = true;
      if (match_w[w] < 0 || augment(match_w[w])) {
        match_v[v] = w;
        match_w[w] = v;
        return true;
      }
    }
    return false;
  }

  void run() {
    for (int v = 0; v < n; ++v) {
      used.assign(n, false);
      augment(v);
    }
  }
};

}  // namespace

bool verify_matching_certificate(const BipartiteGraph& b, const Matching& m) {
  std::vector<bool> cv(b.n, false), cw(b.n, false);
  for (int v : m.cover_v) cv[v] = true;
  for (int w : m.cover_w) cw[w] = true;
  for (const auto& [v, w] : b.edges)
    if (!cv[v] && !cw[w]) return false;
  return m.cover_v.size() + m.cover_w.size() == m.pairs.size();
}

Matching max_matching(const BipartiteGraph& b) {
  b.check();
  Kuhn kuhn(b);
  kuhn.run();

  Matching m;
  for (int v = 0; v < b.n; ++v)
    if (kuhn.match_v[v] >= 0) m.pairs.emplace_back(v, kuhn.match_v[v]);

  // Koenig: alternating-path reachability from unmatched V vertices; the
  // cover is (V \ Z) on the left plus (W cap Z) on the right.
  std::vector<bool> zv(b.n, false), zw(b.n, false);
  std::vector<int> stack;
  for (int v = 0; v < b.n; ++v)
    if (kuhn.match_v[v] < 0) {
      zv[v] = true;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : kuhn.adj[v]) {
      if (zw[w]) continue;
      zw[w] = true;
      int v2 = kuhn.match_w[w];
      if (v2 >= 0 && !zv[v2]) {
        zv[v2] = true;
        stack.push_back(v2);
      }
    }
  }
  for (int v = 0; v < b.n; ++v)
    if (kuhn.match_v[v] >= 0 && !zv[v]) m.cover_v.push_back(v);
  for (int w = 0; w < b.n; ++w)
    if (zw[w]) m.cover_w.push_back(w);

  if (!verify_matching_certificate(b, m))
    throw StructuralError("internal: Koenig cover failed to certify");
  return m;
}

LiftResult matching_lift(const BipartiteGraph& b, int k,
                         const std::optional<BipartitePartition>& partition) {
  b.check();
  if (k < 2) throw ParameterError("matching_lift needs k >= 2 layers");
  if (partition) partition->check_shape(b);

  LiftResult out;
  out.matching = max_matching(b);
  const int np = static_cast<int>(out.matching.pairs.size());
  if (np == 0) throw ParameterError("graph has an empty maximum matching");

  std::vector<int> v_index(b.n, -1), w_index(b.n, -1);
  for (int i = 0; i < np; ++i) {
    out.v_of.push_back(out.matching.pairs[i].first);
    out.w_of.push_back(out.matching.pairs[i].second);
    v_index[out.v_of[i]] = i;
    w_index[out.w_of[i]] = i;
  }

  // Edge pattern restricted to matched vertices, re-indexed by pair.
  std::vector<std::pair<int, int>> pattern;
  for (const auto& [v, w] : b.edges)
    if (v_index[v] >= 0 && w_index[w] >= 0)
      pattern.emplace_back(v_index[v], w_index[w]);
  std::sort(pattern.begin(), pattern.end());
  pattern.erase(std::unique(pattern.begin(), pattern.end()), pattern.end());

  out.graph.k = k;
  out.graph.n = np;
  out.graph.edges.assign(k - 1, pattern);

  if (partition) {
    // Index i is err iff either endpoint of its matching edge was err; the
    // matching edge (v_i, w_i) forces equal non-err blocks otherwise.
    std::vector<int> block_of(np);
    for (int i = 0; i < np; ++i) {
      int cv = partition->v_blocks[out.v_of[i]];
      int cw = partition->w_blocks[out.w_of[i]];
      if (cv < 0 || cw < 0) {
        block_of[i] = -1;
      } else {
        if (cv != cw)
          throw PreconditionError(
              "matched pair (" + std::to_string(out.v_of[i]) + "," +
              std::to_string(out.w_of[i]) +
              ") crosses blocks; the partition is not YES-shaped");
        block_of[i] = cv;
      }
    }
    PartitionWitness w;
    w.Q = partition->Q;
    w.blocks.assign(k, block_of);
    // Smallest eps for which every non-err block meets (1-eps)*n'/Q.
    std::vector<int> sizes(partition->Q, 0);
    for (int blk : block_of)
      if (blk >= 0) ++sizes[blk];
    int min_size = *std::min_element(sizes.begin(), sizes.end());
    Rat bound = Rat(1) - Rat(min_size) * w.Q / np;
    w.eps = std::max(Rat(0), bound);
    if (w.eps >= 1)
      throw PreconditionError("an empty lifted block: partition unusable");
    out.witness = std::move(w);
  }
  return out;
}

}  // namespace schedgap
