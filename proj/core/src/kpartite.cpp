#include "schedgap/kpartite.hpp"

#include <algorithm>
#include <random>

#include "schedgap/errors.hpp"

namespace schedgap {

namespace {

// Uniform draw in [0, r) from raw 64-bit output (Lemire's method), so results
// do not depend on the standard library's distribution implementation.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t r) {
  while (true) {
    std::uint64_t x = rng();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * r;
    std::uint64_t low = static_cast<std::uint64_t>(m);
    if (low >= (-r) % r) return static_cast<std::uint64_t>(m >> 64);
  }
}

// Exact Bernoulli(p) for rational p in [0, 1]: accept iff x / 2^64 < p.
struct ExactBernoulli {
  Int num_shifted;  // numerator(p) << 64
  Int den;
  bool always = false, never = false;

  explicit ExactBernoulli(const Rat& p) {
    if (p < 0 || p > 1)
      throw ParameterError("probability " + format_rat(p) + " not in [0,1]");
    if (p == 0) never = true;
    else if (p == 1) always = true;
    else {
      num_shifted = numerator(p) << 64;
      den = denominator(p);
    }
  }
  bool operator()(std::mt19937_64& rng) {
    if (never) return false;
    if (always) return true;
    return Int(rng()) * den < num_shifted;
  }
};

Int binom(int n, int s) {
  Int c = 1;
  for (int i = 0; i < s; ++i) c = c * (n - i) / (i + 1);
  return c;
}

// Expansion check of a single layer pair; returns true iff every pair of
// s-subsets spans an edge.  Enumerates s-subsets S of the lower layer and
// asks whether the complement of N(S) still holds s vertices.
bool pair_expands(const KPartiteGraph::AdjacencyView& adj, int n, int s) {
  std::vector<int> comb(s);
  for (int i = 0; i < s; ++i) comb[i] = i;
  const int words = adj.words;
  std::vector<std::uint64_t> uni(words);
  while (true) {
    std::fill(uni.begin(), uni.end(), 0);
    for (int i = 0; i < s; ++i)
      for (int w = 0; w < words; ++w) uni[w] |= adj.rows[comb[i]][w];
    int covered = 0;
    for (int w = 0; w < words; ++w)
      covered += __builtin_popcountll(uni[w]);
    if (n - covered >= s) return false;  // an s-subset T avoids N(S)
    // next combination
    int i = s - 1;
    while (i >= 0 && comb[i] == n - s + i) --i;
    if (i < 0) return true;
    ++comb[i];
    for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
  }
}

// Shared core for the certified check: returns the index of the first layer
// pair that fails to expand, or -1 if all pairs expand.
int first_non_expanding_pair(const KPartiteGraph& g, const Rat& delta,
                             std::int64_t budget) {
  g.check();
  if (delta <= 0 || delta > 1)
    throw ParameterError("delta " + format_rat(delta) + " not in (0,1]");
  Int s_big = floor_rat(delta * g.n);
  if (s_big < 1)
    throw ParameterError("floor(delta*n) = " + s_big.str() +
                         "; need at least 1");
  int s = static_cast<int>(s_big);
  if (binom(g.n, s) > budget)
    throw BudgetError("C(" + std::to_string(g.n) + "," + std::to_string(s) +
                      ") = " + binom(g.n, s).str() +
                      " subsets exceed enumeration budget " +
                      std::to_string(budget));
  for (int i = 0; i + 1 < g.k; ++i)
    if (!pair_expands(g.adjacency(i), g.n, s)) return i;
  return -1;
}

KPartiteGraph sample_kpartite(int k, int n, ExactBernoulli& coin,
                              std::mt19937_64& rng) {
  KPartiteGraph g;
  g.k = k;
  g.n = n;
  g.edges.resize(k - 1);
  for (int i = 0; i + 1 < k; ++i)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (coin(rng)) g.edges[i].emplace_back(u, v);
  return g;
}

}  // namespace

void KPartiteGraph::check() const {
  if (k < 1 || n < 1) throw StructuralError("k-partite graph needs k,n >= 1");
  if (static_cast<int>(edges.size()) != k - 1)
    throw StructuralError("expected " + std::to_string(k - 1) +
                          " edge layers, got " + std::to_string(edges.size()));
  for (const auto& layer : edges)
    for (const auto& [u, v] : layer)
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw StructuralError("edge endpoint out of range");
}

std::size_t KPartiteGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& layer : edges) total += layer.size();
  return total;
}

KPartiteGraph::AdjacencyView KPartiteGraph::adjacency(int pair_index) const {
  if (pair_index < 0 || pair_index >= k - 1)
    throw StructuralError("layer pair index out of range");
  AdjacencyView adj;
  adj.words = (n + 63) / 64;
  adj.lists.resize(n);
  adj.rows.assign(n, std::vector<std::uint64_t>(adj.words, 0));
  for (const auto& [u, v] : edges[pair_index]) {
    adj.lists[u].push_back(v);
    adj.rows[u][v >> 6] |= 1ull << (v & 63);
  }
  for (auto& list : adj.lists) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

bool PartitionWitness::has_err() const {
  for (const auto& layer : blocks)
    for (int b : layer)
      if (b < 0) return true;
  return false;
}

void PartitionWitness::check_shape(const KPartiteGraph& g) const {
  if (Q < 1) throw StructuralError("witness needs Q >= 1");
  if (eps < 0 || eps >= 1)
    throw StructuralError("witness eps must lie in [0,1)");
  if (static_cast<int>(blocks.size()) != g.k)
    throw StructuralError("witness layer count mismatch");
  for (const auto& layer : blocks) {
    if (static_cast<int>(layer.size()) != g.n)
      throw StructuralError("witness layer size mismatch");
    for (int b : layer)
      if (b < -1 || b >= Q)
        throw StructuralError("block index " + std::to_string(b) +
                              " out of range");
  }
}

void BipartiteGraph::check() const {
  if (n < 1) throw StructuralError("bipartite graph needs n >= 1");
  for (const auto& [v, w] : edges)
    if (v < 0 || v >= n || w < 0 || w >= n)
      throw StructuralError("edge endpoint out of range");
}

KPartiteGraph BipartiteGraph::as_kpartite() const {
  check();
  KPartiteGraph g;
  g.k = 2;
  g.n = n;
  g.edges = {edges};
  std::sort(g.edges[0].begin(), g.edges[0].end());
  g.edges[0].erase(std::unique(g.edges[0].begin(), g.edges[0].end()),
                   g.edges[0].end());
  return g;
}

void BipartitePartition::check_shape(const BipartiteGraph& b) const {
  if (Q < 1) throw StructuralError("partition needs Q >= 1");
  if (static_cast<int>(v_blocks.size()) != b.n ||
      static_cast<int>(w_blocks.size()) != b.n)
    throw StructuralError("partition size mismatch");
  for (int blk : v_blocks)
    if (blk < -1 || blk >= Q) throw StructuralError("block index out of range");
  for (int blk : w_blocks)
    if (blk < -1 || blk >= Q) throw StructuralError("block index out of range");
}

bool check_yes_partition(const KPartiteGraph& g, const PartitionWitness& w) {
  g.check();
  w.check_shape(g);
  // Size bound: every non-err block holds at least (1 - eps) * n / Q.
  const Rat min_size = (Rat(1) - w.eps) * g.n / w.Q;
  for (int layer = 0; layer < g.k; ++layer) {
    std::vector<Int> sizes(w.Q, Int(0));
    for (int v = 0; v < g.n; ++v)
      if (w.blocks[layer][v] >= 0) ++sizes[w.blocks[layer][v]];
    for (int b = 0; b < w.Q; ++b)
      if (Rat(sizes[b]) < min_size) return false;
  }
  // Edge rule: along an edge the block index must not decrease.
  for (int i = 0; i + 1 < g.k; ++i)
    for (const auto& [u, v] : g.edges[i]) {
      int bu = w.blocks[i][u], bv = w.blocks[i + 1][v];
      if (bu >= 0 && bv >= 0 && bv < bu) return false;
    }
  return true;
}

bool check_bipartite_yes(const BipartiteGraph& b,
                         const BipartitePartition& p) {
  b.check();
  p.check_shape(b);
  for (const auto& [v, w] : b.edges) {
    int cw = p.w_blocks[w];
    if (cw < 0) continue;  // err-side w is unconstrained
    int cv = p.v_blocks[v];
    if (cv >= 0 && cv != cw) return false;
  }
  return true;
}

bool check_expansion(const KPartiteGraph& g, const Rat& delta,
                     std::int64_t budget) {
  return first_non_expanding_pair(g, delta, budget) < 0;
}

bool sampled_expansion_check(const KPartiteGraph& g, const Rat& delta,
                             int samples, std::uint64_t seed) {
  g.check();
  Int s_big = floor_rat(delta * g.n);
  if (s_big < 1 || s_big > g.n)
    throw ParameterError("floor(delta*n) out of range");
  int s = static_cast<int>(s_big);
  std::mt19937_64 rng(seed);
  std::vector<int> pool(g.n);
  for (int i = 0; i + 1 < g.k; ++i) {
    auto adj = g.adjacency(i);
    for (int it = 0; it < samples; ++it) {
      // random s-subset S of the lower layer (partial Fisher-Yates)
      for (int j = 0; j < g.n; ++j) pool[j] = j;
      std::vector<std::uint64_t> uni(adj.words, 0);
      for (int j = 0; j < s; ++j) {
        std::uint64_t pick = j + bounded(rng, g.n - j);
        std::swap(pool[j], pool[pick]);
        for (int w = 0; w < adj.words; ++w) uni[w] |= adj.rows[pool[j]][w];
      }
      int covered = 0;
      for (int w = 0; w < adj.words; ++w)
        covered += __builtin_popcountll(uni[w]);
      if (g.n - covered >= s) return false;
    }
  }
  return true;
}

std::pair<KPartiteGraph, PartitionWitness> gen_yes_kpartite(
    int k, int n, int Q, const Rat& edge_prob, std::uint64_t seed) {
  if (k < 1 || n < 1 || Q < 1)
    throw ParameterError("gen_yes_kpartite needs k,n,Q >= 1");
  if (n % Q != 0)
    throw ParameterError("Q = " + std::to_string(Q) + " must divide n = " +
                         std::to_string(n));
  const int bs = n / Q;
  ExactBernoulli coin(edge_prob);
  std::mt19937_64 rng(seed);

  KPartiteGraph g;
  g.k = k;
  g.n = n;
  g.edges.resize(k - 1);
  for (int i = 0; i + 1 < k; ++i)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u / bs <= v / bs && coin(rng)) g.edges[i].emplace_back(u, v);

  PartitionWitness w;
  w.Q = Q;
  w.eps = 0;
  w.blocks.assign(k, std::vector<int>(n));
  for (auto& layer : w.blocks)
    for (int v = 0; v < n; ++v) layer[v] = v / bs;
  return {std::move(g), std::move(w)};
}

KPartiteGraph gen_no_kpartite(int k, int n, const Rat& delta,
                              const Rat& edge_prob, std::uint64_t seed,
                              int max_retries, std::int64_t budget) {
  if (k < 2 || n < 1) throw ParameterError("gen_no_kpartite needs k >= 2");
  ExactBernoulli coin(edge_prob);
  std::mt19937_64 rng(seed);
  int last_fail = -1;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    KPartiteGraph g = sample_kpartite(k, n, coin, rng);
    last_fail = first_non_expanding_pair(g, delta, budget);
    if (last_fail < 0) return g;
  }
  throw GenerationError(
      "no expander found in " + std::to_string(max_retries) +
          " attempts (last failure: layer pair E_" +
          std::to_string(last_fail + 1) + ")",
      last_fail);
}

std::pair<BipartiteGraph, BipartitePartition> gen_yes_bipartite(
    int n, int Q, const Rat& eps, const Rat& edge_prob, std::uint64_t seed,
    bool plant_matching) {
  if (n < 1 || Q < 1) throw ParameterError("gen_yes_bipartite needs n,Q >= 1");
  Rat bs_rat = (Rat(1) - eps) * n / Q;
  if (denominator(bs_rat) != 1 || bs_rat < 1)
    throw ParameterError("(1-eps)*n/Q = " + format_rat(bs_rat) +
                         " must be a positive integer");
  const int bs = static_cast<int>(numerator(bs_rat));
  if (Q * bs > n) throw ParameterError("blocks larger than the vertex set");

  BipartitePartition p;
  p.Q = Q;
  p.eps = eps;
  p.v_blocks.assign(n, -1);
  p.w_blocks.assign(n, -1);
  for (int c = 0; c < Q; ++c)
    for (int i = c * bs; i < (c + 1) * bs; ++i)
      p.v_blocks[i] = p.w_blocks[i] = c;  // tail [Q*bs, n) stays err

  ExactBernoulli coin(edge_prob);
  std::mt19937_64 rng(seed);
  BipartiteGraph b;
  b.n = n;
  for (int w = 0; w < n; ++w) {
    int cw = p.w_blocks[w];
    for (int v = 0; v < n; ++v) {
      bool allowed = cw < 0 || p.v_blocks[v] == cw || p.v_blocks[v] < 0;
      if (allowed && coin(rng)) b.edges.emplace_back(v, w);
    }
  }
  if (plant_matching)
    for (int i = 0; i < n; ++i) b.edges.emplace_back(i, i);
  std::sort(b.edges.begin(), b.edges.end());
  b.edges.erase(std::unique(b.edges.begin(), b.edges.end()), b.edges.end());
  return {std::move(b), std::move(p)};
}

BipartiteGraph gen_no_bipartite(int n, const Rat& delta, const Rat& edge_prob,
                                std::uint64_t seed, int max_retries,
                                std::int64_t budget) {
  ExactBernoulli coin(edge_prob);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    BipartiteGraph b;
    b.n = n;
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        if (coin(rng)) b.edges.emplace_back(v, w);
    if (check_expansion(b.as_kpartite(), delta, budget)) return b;
  }
  throw GenerationError("no bipartite expander found in " +
                            std::to_string(max_retries) + " attempts",
                        0);
}

}  // namespace schedgap
