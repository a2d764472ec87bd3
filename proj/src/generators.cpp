#include "meeksep/generators.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "meeksep/rng.hpp"

namespace meeksep {

namespace {

std::vector<std::pair<int, int>> er_edges(int n, double density, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(density)) edges.emplace_back(u, v);
  return edges;
}

// Uniform labeled tree via Pruefer decoding.
std::vector<std::pair<int, int>> tree_edges(int n, Rng& rng) {
  if (n <= 1) return {};
  if (n == 2) return {{0, 1}};
  std::vector<int> pruefer(n - 2);
  for (int& x : pruefer) x = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
  std::vector<int> degree(n, 1);
  for (int x : pruefer) ++degree[x];
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(v);
  std::vector<std::pair<int, int>> edges;
  for (int x : pruefer) {
    const int leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
    if (--degree[x] == 1) leaves.push(x);
  }
  const int a = leaves.top();
  leaves.pop();
  const int b = leaves.top();
  edges.emplace_back(std::min(a, b), std::max(a, b));
  return edges;
}

Dag orient_by_label(int n, std::vector<std::pair<int, int>> und_edges) {
  std::sort(und_edges.begin(), und_edges.end());
  und_edges.erase(std::unique(und_edges.begin(), und_edges.end()), und_edges.end());
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(und_edges.size());
  for (const auto& [u, v] : und_edges) arcs.emplace_back(std::min(u, v), std::max(u, v));
  return Dag(n, arcs);
}

// Label-ordered fill: for every v-structure u -> c <- w (u < w), connect
// u -> w; repeated until no v-structure remains. One pass can create new
// v-structures, hence the fixed point.
Dag moralize_fill(Dag g) {
  for (;;) {
    const auto vs = v_structures(g);
    if (vs.empty()) return g;
    auto arcs = g.arcs();
    for (const auto& [u, c, w] : vs) {
      (void)c;
      if (!g.adjacent(u, w)) arcs.emplace_back(std::min(u, w), std::max(u, w));
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    g = Dag(g.vertex_count(), arcs);
  }
}

}  // namespace

Dag er_dag(int n, double density, std::uint64_t seed) {
  if (n < 0) throw InputError("er_dag: negative vertex count");
  if (density < 0.0 || density > 1.0) throw InputError("er_dag: density must be in [0, 1]");
  Rng rng(seed);
  return orient_by_label(n, er_edges(n, density, rng));
}

Dag tree_dag(int n, std::uint64_t seed) {
  if (n < 0) throw InputError("tree_dag: negative vertex count");
  Rng rng(seed);
  return orient_by_label(n, tree_edges(n, rng));
}

Dag ba_dag(int n, int m_attach, std::uint64_t seed) {
  if (n < 1) throw InputError("ba_dag: need at least one vertex");
  if (m_attach < 1 || m_attach >= n) throw InputError("ba_dag: need 1 <= m_attach < n");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  std::vector<int> repeated;  // one entry per edge endpoint, drives preferential attachment
  std::vector<int> targets(m_attach);
  for (int i = 0; i < m_attach; ++i) targets[i] = i;
  for (int v = m_attach; v < n; ++v) {
    for (int t : targets) {
      edges.emplace_back(t, v);
      repeated.push_back(t);
      repeated.push_back(v);
    }
    // Sample m_attach distinct endpoints weighted by degree.
    std::vector<int> next;
    std::vector<char> chosen(n, 0);
    while (static_cast<int>(next.size()) < m_attach) {
      const int c = repeated[rng.next_below(repeated.size())];
      if (!chosen[c]) {
        chosen[c] = 1;
        next.push_back(c);
      }
    }
    targets = std::move(next);
  }
  return orient_by_label(n, std::move(edges));
}

SubsetInstance r_hop_instance(int n, int r, double density, std::uint64_t seed) {
  if (n < 2) throw InputError("r_hop_instance: need n >= 2");
  if (r < 1) throw InputError("r_hop_instance: need r >= 1");
  if (density < 0.0 || density > 1.0) throw InputError("r_hop_instance: bad density");

  Rng base(seed);
  Rng rng_er = base.split(1), rng_tree = base.split(2), rng_center = base.split(3);

  auto edges = er_edges(n, density, rng_er);
  const auto tree = tree_edges(n, rng_tree);
  edges.insert(edges.end(), tree.begin(), tree.end());
  Dag hidden = moralize_fill(orient_by_label(n, std::move(edges)));

  const int center = static_cast<int>(rng_center.next_below(static_cast<std::uint64_t>(n)));

  // Undirected BFS distances from the center over the skeleton.
  std::vector<int> dist(n, -1);
  std::queue<int> q;
  dist[center] = 0;
  q.push(center);
  while (!q.empty()) {
    const int x = q.front();
    q.pop();
    for (int y : hidden.children(x)) {
      if (dist[y] == -1) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
    for (int y : hidden.parents(x)) {
      if (dist[y] == -1) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    }
  }

  EdgeSet targets;
  for (const auto& [u, v] : hidden.arcs()) {
    if (dist[u] != -1 && dist[u] <= r && dist[v] != -1 && dist[v] <= r) targets.insert(u, v);
  }

  SubsetInstance inst;
  inst.hidden = std::move(hidden);
  inst.targets = std::move(targets);
  inst.hop_center = center;
  inst.n = n;
  inst.r = r;
  inst.density = density;
  inst.seed = seed;
  inst.meta["model"] = "rhop";
  inst.meta["n"] = std::to_string(n);
  inst.meta["r"] = std::to_string(r);
  inst.meta["density"] = std::to_string(density);
  inst.meta["seed"] = std::to_string(seed);
  inst.meta["center"] = std::to_string(center);
  inst.meta["hop_metric"] = "skeleton";  // undirected distance
  return inst;
}

MatchingInstance matching_instance(const Dag& g, int k, std::uint64_t seed,
                                   const MatchingParams& params) {
  const int n = g.vertex_count();
  if (k < 0 || k > n) throw InputError("matching_instance: need 0 <= k <= n");

  Rng base(seed);
  Rng rng_w = base.split(11), rng_t = base.split(12), rng_s = base.split(13);

  std::vector<std::tuple<int, int, double>> weights;
  for (const auto& [u, v] : g.arcs()) {
    double w;
    do {
      w = rng_w.uniform_real(params.weight_lo, params.weight_hi);
    } while (std::abs(w) < params.weight_min_abs);
    weights.emplace_back(u, v, w);
  }
  ShiftSem sem(g, weights, std::vector<double>(n, 0.0));

  // k distinct uniform targets via partial Fisher-Yates.
  std::vector<int> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i;
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng_t.next_below(static_cast<std::uint64_t>(n - i)));
    std::swap(ids[i], ids[j]);
  }
  std::vector<int> chosen(ids.begin(), ids.begin() + k);
  std::sort(chosen.begin(), chosen.end());

  ShiftAssignment hidden;
  for (int v : chosen) hidden.set(v, rng_s.uniform_real(params.shift_lo, params.shift_hi));

  MatchingInstance inst;
  inst.target_mean = mean_vector(sem, hidden);
  inst.sem = std::move(sem);
  inst.hidden_targets = std::move(hidden);
  inst.seed = seed;
  inst.meta["k"] = std::to_string(k);
  inst.meta["n"] = std::to_string(n);
  inst.meta["seed"] = std::to_string(seed);
  inst.meta["weight_range"] =
      std::to_string(params.weight_lo) + ".." + std::to_string(params.weight_hi);
  inst.meta["shift_range"] =
      std::to_string(params.shift_lo) + ".." + std::to_string(params.shift_hi);
  return inst;
}

}  // namespace meeksep
