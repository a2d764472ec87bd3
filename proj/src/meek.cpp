#include "meeksep/meek.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_set>

namespace meeksep {

void InterventionSet::add(std::vector<int> targets) {
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (int v : targets)
    if (v < 0) throw InputError("InterventionSet: negative vertex id");
  entries_.push_back(std::move(targets));
}

namespace {

// Dense working state for the closure. status[u][v]: 0 none, 1 arc u->v,
// 2 undirected (mirrored in both cells). Adjacency is status != 0.
struct Closure {
  int n;
  std::vector<std::int8_t> st;
  std::vector<std::vector<int>> adj;  // all neighbors regardless of kind

  explicit Closure(const Pdag& g) : n(g.vertex_count()), st(static_cast<std::size_t>(n) * n, 0), adj(n) {
    for (const auto& [u, v] : g.arcs()) {
      at(u, v) = 1;
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (const auto& [u, v] : g.undirected_edges()) {
      at(u, v) = 2;
      at(v, u) = 2;
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (auto& l : adj) std::sort(l.begin(), l.end());
  }

  std::int8_t& at(int u, int v) { return st[static_cast<std::size_t>(u) * n + v]; }
  std::int8_t get(int u, int v) const { return st[static_cast<std::size_t>(u) * n + v]; }
  bool arc(int u, int v) const { return get(u, v) == 1; }
  bool und(int u, int v) const { return get(u, v) == 2; }
  bool adjacent(int u, int v) const { return get(u, v) != 0 || get(v, u) != 0; }

  // True when some rule orients a -> b. The side edges a~c and a~d in R3 and
  // R4 must be undirected, as in the standard rule patterns; treating them as
  // mere adjacency is unsound (an already-oriented c -> a can coexist with
  // b -> a).
  bool fires(int a, int b) const {
    // R1: c -> a, c not adjacent to b.
    for (int c : adj[a])
      if (arc(c, a) && !adjacent(c, b)) return true;
    // R2: a -> c -> b.
    for (int c : adj[a])
      if (arc(a, c) && arc(c, b)) return true;
    // R3: a ~ c, a ~ d undirected, c -> b, d -> b, c not adjacent to d.
    // R4: a ~ c, a ~ d undirected, d -> c -> b, b not adjacent to d.
    std::vector<int> side;
    for (int c : adj[a])
      if (und(a, c)) side.push_back(c);
    for (std::size_t i = 0; i < side.size(); ++i) {
      for (std::size_t j = i + 1; j < side.size(); ++j) {
        const int c = side[i], d = side[j];
        if (arc(c, b) && arc(d, b) && !adjacent(c, d)) return true;
        if (arc(d, c) && arc(c, b) && !adjacent(b, d)) return true;
        if (arc(c, d) && arc(d, b) && !adjacent(b, c)) return true;
      }
    }
    return false;
  }
};

Pdag run_closure(Closure& cl) {
  const int n = cl.n;
  std::deque<std::pair<int, int>> work;  // canonical undirected pairs
  std::unordered_set<std::uint64_t> queued;
  auto enqueue = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    if (!cl.und(u, v)) return;
    if (queued.insert(detail::pair_key(u, v)).second) work.emplace_back(u, v);
  };
  for (int u = 0; u < n; ++u)
    for (int v : cl.adj[u])
      if (u < v && cl.und(u, v)) enqueue(u, v);

  auto orient = [&](int a, int b) {
    cl.at(a, b) = 1;
    cl.at(b, a) = 0;
    // Re-examine undirected edges around the closed neighborhoods of a and b;
    // every rule triggered by the new arc has its candidate edge there.
    auto touch = [&](int z) {
      for (int y : cl.adj[z]) enqueue(z, y);
    };
    touch(a);
    touch(b);
    for (int z : cl.adj[a]) touch(z);
    for (int z : cl.adj[b]) touch(z);
  };

  while (!work.empty()) {
    auto [u, v] = work.front();
    work.pop_front();
    queued.erase(detail::pair_key(u, v));
    if (!cl.und(u, v)) continue;
    if (cl.fires(u, v)) {
      orient(u, v);
    } else if (cl.fires(v, u)) {
      orient(v, u);
    }
  }

  std::vector<std::pair<int, int>> arcs, und;
  for (int u = 0; u < n; ++u) {
    for (int v : cl.adj[u]) {
      if (cl.arc(u, v)) arcs.emplace_back(u, v);
      if (u < v && cl.und(u, v)) und.emplace_back(u, v);
    }
  }
  return Pdag(n, arcs, und);
}

// Skeleton plus v-structure arcs plus one oriented arc per edge cut by an
// intervention entry, closed under the rules.
Pdag closed_from(const Dag& g, const InterventionSet& iset) {
  const int n = g.vertex_count();
  std::vector<std::pair<int, int>> arcs;
  for (const auto& [u, c, w] : v_structures(g)) {
    arcs.emplace_back(u, c);
    arcs.emplace_back(w, c);
  }
  std::vector<char> in_i(n, 0);
  for (const auto& entry : iset.entries()) {
    std::fill(in_i.begin(), in_i.end(), 0);
    for (int v : entry) {
      if (v >= n) throw InputError("intervention target out of range");
      in_i[v] = 1;
    }
    for (const auto& [u, v] : g.arcs())
      if (in_i[u] != in_i[v]) arcs.emplace_back(u, v);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  std::unordered_set<std::uint64_t> oriented;
  for (const auto& [u, v] : arcs) oriented.insert(detail::pair_key(u, v));
  std::vector<std::pair<int, int>> und;
  for (const auto& [u, v] : g.arcs()) {
    if (oriented.count(detail::pair_key(u, v)) == 0)
      und.emplace_back(std::min(u, v), std::max(u, v));
  }
  Pdag start(n, arcs, und);
  Closure cl(start);
  return run_closure(cl);
}

}  // namespace

Pdag meek_closure(const Pdag& g) {
  Closure cl(g);
  return run_closure(cl);
}

Pdag essential_graph(const Dag& g) { return closed_from(g, InterventionSet()); }

Pdag interventional_essential_graph(const Dag& g, const InterventionSet& iset) {
  return closed_from(g, iset);
}

std::vector<int> recovered_parents(const Dag& g, const InterventionSet& iset, int u) {
  if (u < 0 || u >= g.vertex_count()) throw InputError("recovered_parents: vertex out of range");
  return interventional_essential_graph(g, iset).parents(u);
}

std::vector<int> orienting_interventions(const Dag& g, int u, int v) {
  if (!g.has_arc(u, v))
    throw InputError("orienting_interventions: arc " + std::to_string(u) + "->" +
                     std::to_string(v) + " not in graph");
  if (!is_moral(g)) throw InputError("orienting_interventions: graph must be moral");
  std::vector<int> out;
  for (int w = 0; w < g.vertex_count(); ++w) {
    InterventionSet iset;
    iset.add_atomic(w);
    if (interventional_essential_graph(g, iset).has_arc(u, v)) out.push_back(w);
  }
  return out;
}

}  // namespace meeksep
