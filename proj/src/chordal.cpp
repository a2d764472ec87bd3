#include "meeksep/chordal.hpp"

#include <algorithm>
#include <string>

namespace meeksep {

UndirectedGraph::UndirectedGraph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
  if (n < 0) throw InputError("UndirectedGraph: negative vertex count");
  adj_.resize(n);
  adj_mask_.assign(n, std::vector<char>(n, 0));
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw InputError("UndirectedGraph: vertex out of range");
    if (a == b) throw GraphError("UndirectedGraph: self-loop at " + std::to_string(a));
    if (adj_mask_[a][b]) continue;
    adj_mask_[a][b] = adj_mask_[b][a] = 1;
    adj_[a].push_back(b);
    adj_[b].push_back(a);
    ++m_;
  }
  for (auto& l : adj_) std::sort(l.begin(), l.end());
}

bool UndirectedGraph::adjacent(int u, int v) const { return adj_mask_.at(u).at(v) != 0; }

std::vector<std::pair<int, int>> UndirectedGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool UndirectedGraph::connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y : adj_[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == n_;
}

std::vector<int> mcs_order(const UndirectedGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> weight(n, 0), order;
  std::vector<char> numbered(n, 0);
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (!numbered[v] && (best == -1 || weight[v] > weight[best])) best = v;
    }
    numbered[best] = 1;
    order.push_back(best);
    for (int y : g.neighbors(best))
      if (!numbered[y]) ++weight[y];
  }
  return order;
}

namespace {

// Predecessors of each vertex in MCS order: numbered neighbors seen earlier.
struct PeoData {
  std::vector<int> order;
  std::vector<int> rank;                    // rank[v] = position of v in order
  std::vector<std::vector<int>> preds;      // preds[v], each sorted by rank
};

PeoData peo_data(const UndirectedGraph& g) {
  PeoData d;
  d.order = mcs_order(g);
  const int n = g.vertex_count();
  d.rank.assign(n, -1);
  for (int i = 0; i < n; ++i) d.rank[d.order[i]] = i;
  d.preds.resize(n);
  for (int v = 0; v < n; ++v) {
    for (int y : g.neighbors(v))
      if (d.rank[y] < d.rank[v]) d.preds[v].push_back(y);
    std::sort(d.preds[v].begin(), d.preds[v].end(),
              [&](int a, int b) { return d.rank[a] < d.rank[b]; });
  }
  return d;
}

bool peo_valid(const UndirectedGraph& g, const PeoData& d) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (d.preds[v].empty()) continue;
    const int u = d.preds[v].back();  // latest-ranked predecessor
    for (int w : d.preds[v]) {
      if (w != u && !g.adjacent(u, w)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_chordal(const UndirectedGraph& g) { return peo_valid(g, peo_data(g)); }

int max_clique_size(const UndirectedGraph& g) {
  const auto d = peo_data(g);
  if (!peo_valid(g, d)) throw InputError("max_clique_size: graph is not chordal");
  int best = g.vertex_count() > 0 ? 1 : 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    best = std::max(best, static_cast<int>(d.preds[v].size()) + 1);
  return best;
}

std::vector<std::vector<int>> maximal_cliques(const UndirectedGraph& g) {
  const auto d = peo_data(g);
  if (!peo_valid(g, d)) throw InputError("maximal_cliques: graph is not chordal");
  const int n = g.vertex_count();
  std::vector<std::vector<int>> cands;
  cands.reserve(n);
  for (int v : d.order) {
    std::vector<int> c = d.preds[v];
    c.push_back(v);
    std::sort(c.begin(), c.end());
    cands.push_back(std::move(c));
  }
  // In a chordal graph {v} + preds(v) is a clique; keep the inclusion-maximal
  // ones, preserving discovery order. Two candidates are never equal as sets,
  // so strict size comparison suffices.
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cands.size() && maximal; ++j) {
      if (i == j || cands[j].size() <= cands[i].size()) continue;
      maximal = !std::includes(cands[j].begin(), cands[j].end(),
                               cands[i].begin(), cands[i].end());
    }
    if (maximal) out.push_back(cands[i]);
  }
  return out;
}

CliqueSeparator clique_separator(const UndirectedGraph& g, double alpha) {
  const int n = g.vertex_count();
  if (n < 1) throw InputError("clique_separator: empty graph");
  if (!g.connected()) throw InputError("clique_separator: graph is disconnected");
  const auto cliques = maximal_cliques(g);  // throws on non-chordal input

  for (const auto& clique : cliques) {
    std::vector<char> removed(n, 0), seen(n, 0);
    for (int v : clique) removed[v] = 1;
    std::vector<std::vector<int>> comps;
    bool ok = true;
    for (int s = 0; s < n && ok; ++s) {
      if (removed[s] || seen[s]) continue;
      std::vector<int> comp, stack = {s};
      seen[s] = 1;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        comp.push_back(x);
        for (int y : g.neighbors(x)) {
          if (!removed[y] && !seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
        }
      }
      if (static_cast<double>(comp.size()) > alpha * static_cast<double>(n)) {
        ok = false;
        break;
      }
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
    if (ok) return {clique, std::move(comps)};
  }
  // Cannot happen for a connected chordal graph.
  throw GraphError("clique_separator: no maximal clique satisfies the size bound");
}

}  // namespace meeksep
