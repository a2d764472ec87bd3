#include "meeksep/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

namespace meeksep {

namespace {

void check_vertex(int v, int n, const char* what) {
  if (v < 0 || v >= n) {
    throw InputError(std::string(what) + ": vertex " + std::to_string(v) +
                     " out of range [0, " + std::to_string(n) + ")");
  }
}

void sort_all(std::vector<std::vector<int>>& lists) {
  for (auto& l : lists) std::sort(l.begin(), l.end());
}

}  // namespace

Dag::Dag(int n, const std::vector<std::pair<int, int>>& arcs) : n_(n) {
  if (n < 0) throw InputError("Dag: negative vertex count");
  parents_.resize(n);
  children_.resize(n);
  for (const auto& [u, v] : arcs) {
    check_vertex(u, n, "Dag arc");
    check_vertex(v, n, "Dag arc");
    if (u == v) throw GraphError("Dag: self-loop at " + std::to_string(u));
    if (arc_keys_.count(detail::pair_key(u, v)) != 0) continue;  // duplicate arc
    if (arc_keys_.count(detail::pair_key(v, u)) != 0) {
      throw GraphError("Dag: both orientations of {" + std::to_string(u) + "," +
                       std::to_string(v) + "} present");
    }
    arc_keys_.insert(detail::pair_key(u, v));
    children_[u].push_back(v);
    parents_[v].push_back(u);
    ++m_;
  }
  sort_all(parents_);
  sort_all(children_);
  topological_order(*this);  // throws GraphError on a cycle
}

std::vector<std::pair<int, int>> Dag::arcs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : children_[u]) out.emplace_back(u, v);
  return out;
}

Pdag::Pdag(int n, const std::vector<std::pair<int, int>>& arcs,
           const std::vector<std::pair<int, int>>& undirected)
    : n_(n) {
  if (n < 0) throw InputError("Pdag: negative vertex count");
  parents_.resize(n);
  children_.resize(n);
  neighbors_.resize(n);
  for (const auto& [u, v] : arcs) {
    check_vertex(u, n, "Pdag arc");
    check_vertex(v, n, "Pdag arc");
    if (u == v) throw GraphError("Pdag: self-loop at " + std::to_string(u));
    if (arc_keys_.count(detail::pair_key(u, v)) != 0) continue;
    if (arc_keys_.count(detail::pair_key(v, u)) != 0) {
      throw GraphError("Pdag: both orientations of {" + std::to_string(u) + "," +
                       std::to_string(v) + "} present");
    }
    arc_keys_.insert(detail::pair_key(u, v));
    children_[u].push_back(v);
    parents_[v].push_back(u);
    ++a_;
  }
  for (const auto& [a, b] : undirected) {
    check_vertex(a, n, "Pdag edge");
    check_vertex(b, n, "Pdag edge");
    if (a == b) throw GraphError("Pdag: self-loop at " + std::to_string(a));
    const int u = std::min(a, b), v = std::max(a, b);
    if (und_keys_.count(detail::pair_key(u, v)) != 0) continue;
    if (arc_keys_.count(detail::pair_key(u, v)) != 0 ||
        arc_keys_.count(detail::pair_key(v, u)) != 0) {
      throw GraphError("Pdag: {" + std::to_string(u) + "," + std::to_string(v) +
                       "} is both oriented and undirected");
    }
    und_keys_.insert(detail::pair_key(u, v));
    neighbors_[u].push_back(v);
    neighbors_[v].push_back(u);
    ++u_;
  }
  sort_all(parents_);
  sort_all(children_);
  sort_all(neighbors_);
}

Pdag Pdag::from_dag(const Dag& g) { return Pdag(g.vertex_count(), g.arcs(), {}); }

Pdag Pdag::skeleton_of(const Dag& g) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.arcs()) edges.emplace_back(std::min(u, v), std::max(u, v));
  return Pdag(g.vertex_count(), {}, edges);
}

std::vector<std::pair<int, int>> Pdag::arcs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(a_);
  for (int u = 0; u < n_; ++u)
    for (int v : children_[u]) out.emplace_back(u, v);
  return out;
}

std::vector<std::pair<int, int>> Pdag::undirected_edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(u_);
  for (int u = 0; u < n_; ++u)
    for (int v : neighbors_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

EdgeSet::EdgeSet(const std::vector<std::pair<int, int>>& pairs) {
  for (const auto& [u, v] : pairs) insert(u, v);
}

void EdgeSet::insert(int a, int b) {
  if (a == b) throw GraphError("EdgeSet: self-loop at " + std::to_string(a));
  if (a < 0 || b < 0) throw InputError("EdgeSet: negative vertex id");
  const int u = std::min(a, b), v = std::max(a, b);
  if (!keys_.insert(detail::pair_key(u, v)).second) return;
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(u, v));
  pairs_.insert(it, {u, v});
}

std::vector<int> topological_order(const Dag& g) {
  const int n = g.vertex_count();
  std::vector<int> indeg(n);
  for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(g.parents(v).size());
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int c : g.children(v))
      if (--indeg[c] == 0) ready.push(c);
  }
  if (static_cast<int>(order.size()) != n) throw GraphError("topological_order: directed cycle");
  return order;
}

namespace {

std::vector<int> reach(const Dag& g, int v, bool forward) {
  check_vertex(v, g.vertex_count(), "reach");
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> stack = {v}, out;
  seen[v] = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y : forward ? g.children(x) : g.parents(x)) {
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
        stack.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<int> descendants(const Dag& g, int v) { return reach(g, v, true); }
std::vector<int> ancestors(const Dag& g, int v) { return reach(g, v, false); }

std::vector<std::vector<int>> chain_components(const Pdag& g) {
  const int n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp, stack = {s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (int y : g.neighbors(x)) {
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;  // ordered by minimum vertex id because s ascends
}

std::vector<std::array<int, 3>> v_structures(const Dag& g) {
  std::vector<std::array<int, 3>> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& pa = g.parents(v);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      for (std::size_t j = i + 1; j < pa.size(); ++j) {
        if (!g.adjacent(pa[i], pa[j])) out.push_back({pa[i], v, pa[j]});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

EdgeSet covered_edges(const Dag& g) {
  EdgeSet out;
  for (const auto& [u, v] : g.arcs()) {
    // Pa(u) \ {v} vs Pa(v) \ {u}; v cannot be a parent of u here.
    const auto& pu = g.parents(u);
    std::vector<int> pv;
    pv.reserve(g.parents(v).size());
    for (int x : g.parents(v))
      if (x != u) pv.push_back(x);
    if (pu == pv) out.insert(u, v);
  }
  return out;
}

bool is_moral(const Dag& g) { return v_structures(g).empty(); }

bool is_chain_graph(const Pdag& g) {
  const auto comps = chain_components(g);
  std::vector<int> comp_of(g.vertex_count(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
  // Quotient over chain components must be a DAG with no internal arcs.
  std::vector<std::vector<int>> quot(comps.size());
  std::vector<int> indeg(comps.size(), 0);
  for (const auto& [u, v] : g.arcs()) {
    if (comp_of[u] == comp_of[v]) return false;
    quot[comp_of[u]].push_back(comp_of[v]);
    ++indeg[comp_of[v]];
  }
  std::vector<int> stack;
  for (std::size_t c = 0; c < comps.size(); ++c)
    if (indeg[c] == 0) stack.push_back(static_cast<int>(c));
  std::size_t done = 0;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    ++done;
    for (int d : quot[c])
      if (--indeg[d] == 0) stack.push_back(d);
  }
  return done == comps.size();
}

namespace {

std::vector<int> local_index(int n, const std::vector<int>& s, const char* what) {
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    check_vertex(s[i], n, what);
    if (pos[s[i]] != -1) throw InputError(std::string(what) + ": duplicate vertex in subset");
    pos[s[i]] = static_cast<int>(i);
  }
  return pos;
}

}  // namespace

InducedDag induced_subgraph(const Dag& g, const std::vector<int>& s) {
  std::vector<int> ids(s);
  std::sort(ids.begin(), ids.end());
  const auto pos = local_index(g.vertex_count(), ids, "induced_subgraph");
  std::vector<std::pair<int, int>> arcs;
  for (int u : ids)
    for (int v : g.children(u))
      if (pos[v] != -1) arcs.emplace_back(pos[u], pos[v]);
  return {Dag(static_cast<int>(ids.size()), arcs), std::move(ids)};
}

InducedPdag induced_subgraph(const Pdag& g, const std::vector<int>& s) {
  std::vector<int> ids(s);
  std::sort(ids.begin(), ids.end());
  const auto pos = local_index(g.vertex_count(), ids, "induced_subgraph");
  std::vector<std::pair<int, int>> arcs, und;
  for (int u : ids) {
    for (int v : g.children(u))
      if (pos[v] != -1) arcs.emplace_back(pos[u], pos[v]);
    for (int v : g.neighbors(u))
      if (u < v && pos[v] != -1) und.emplace_back(pos[u], pos[v]);
  }
  return {Pdag(static_cast<int>(ids.size()), arcs, und), std::move(ids)};
}

}  // namespace meeksep
