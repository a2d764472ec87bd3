#include "meeksep/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "meeksep/chordal.hpp"
#include "meeksep/meek.hpp"
#include "meeksep/rng.hpp"

namespace meeksep {

std::string SearchTranscript::dump() const {
  std::ostringstream os;
  for (const auto& s : steps)
    os << s.step << " " << s.vertex << " |" << s.largest_component << "| " << s.branch << "\n";
  os << "total=" << total << "\n";
  return os.str();
}

PickFn uniform_pick(std::uint64_t seed) {
  auto rng = std::make_shared<Rng>(seed);
  return [rng](const std::vector<int>& k) -> int {
    return k.at(rng->next_below(k.size()));
  };
}

namespace {

bool is_chain_component_of(const Pdag& g, const std::vector<int>& comp) {
  for (const auto& c : chain_components(g))
    if (c == comp) return true;
  return false;
}

// The input component treated as a standalone graph: its full skeleton (edges
// oriented by other interventions are restored to undirected) plus the
// revealed orientations of edges incident to `oriented_at`. Closing this
// under the Meek rules yields the interventional essential graph of the
// component's hidden DAG under exactly those atomic interventions.
Pdag component_closure(const Pdag& revealed, const std::vector<int>& comp,
                       const std::vector<int>& pos, const std::vector<int>& oriented_at) {
  std::vector<char> marked(pos.size(), 0);
  for (int v : oriented_at) marked[v] = 1;
  std::vector<std::pair<int, int>> arcs, und;
  for (int u : comp) {
    for (int v : revealed.neighbors(u))
      if (u < v && pos[v] != -1) und.emplace_back(pos[u], pos[v]);
    for (int v : revealed.children(u)) {
      if (pos[v] == -1) continue;
      if (marked[u] || marked[v]) {
        arcs.emplace_back(pos[u], pos[v]);
      } else {
        und.emplace_back(std::min(pos[u], pos[v]), std::max(pos[u], pos[v]));
      }
    }
  }
  Pdag start(static_cast<int>(comp.size()), arcs, und);
  return meek_closure(start);
}

std::vector<int> largest_component(const std::vector<std::vector<int>>& comps) {
  std::vector<int> best;
  for (const auto& c : comps)
    if (c.size() > best.size()) best = c;  // first of equal sizes has smallest min id
  return best;
}

bool reaches_set(const Pdag& g, int from, const std::vector<char>& target) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<int> stack = {from};
  seen[from] = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    if (target[x] && x != from) return true;
    for (int y : g.children(x)) {
      if (!seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return false;
}

}  // namespace

MeekSeparatorResult meek_separator(InterventionOracle& o, const std::vector<int>& component,
                                   std::uint64_t seed) {
  return meek_separator(o, component, uniform_pick(seed));
}

MeekSeparatorResult meek_separator(InterventionOracle& o, const std::vector<int>& component,
                                   const PickFn& pick, SearchTranscript* transcript,
                                   const StopFn& stop) {
  std::vector<int> comp(component);
  std::sort(comp.begin(), comp.end());
  if (comp.size() < 2) throw InputError("meek_separator: component must have >= 2 vertices");
  if (!is_chain_component_of(o.revealed(), comp))
    throw InputError("meek_separator: not a chain component of the revealed graph");

  const int n = o.vertex_count();
  const int nc = static_cast<int>(comp.size());
  std::vector<int> pos(n, -1);
  for (int i = 0; i < nc; ++i) pos[comp[i]] = i;

  // 1/2-clique separator of the component skeleton.
  std::vector<std::pair<int, int>> skel;
  for (int u : comp)
    for (int v : o.revealed().neighbors(u))
      if (u < v) skel.emplace_back(pos[u], pos[v]);
  UndirectedGraph ug(nc, skel);
  std::vector<int> k_cur;
  for (int local : clique_separator(ug, 0.5).clique) k_cur.push_back(comp[local]);
  std::sort(k_cur.begin(), k_cur.end());

  MeekSeparatorResult res;
  int u_best = -1, x_best = -1;
  int step = 0;

  auto finish = [&](std::vector<int> separator) {
    std::sort(separator.begin(), separator.end());
    res.separator = std::move(separator);
    Pdag closed = component_closure(o.revealed(), comp, pos, res.separator);
    for (const auto& c : chain_components(closed))
      res.component_sizes.push_back(static_cast<int>(c.size()));
    if (transcript) transcript->total = static_cast<int>(res.intervened.size());
    return res;
  };

  while (!k_cur.empty()) {
    const int u = pick(k_cur);
    if (std::find(k_cur.begin(), k_cur.end(), u) == k_cur.end())
      throw InputError("meek_separator: pick outside the candidate clique");
    o.intervene(u);
    res.intervened.push_back(u);

    const Pdag e_u = component_closure(o.revealed(), comp, pos, {u});
    const auto comps_u = chain_components(e_u);
    const auto h = largest_component(comps_u);
    const int largest = static_cast<int>(h.size());

    auto note = [&](const char* branch) {
      if (transcript) transcript->steps.push_back({step, u, largest, branch});
      ++step;
    };

    if (stop && stop()) {
      note("stop");
      if (transcript) transcript->total = static_cast<int>(res.intervened.size());
      res.completed = false;
      return res;
    }

    if (2 * largest <= nc) {
      note("done");
      return finish({u});
    }

    // Does a directed path lead from u into the largest component? Oriented
    // reachability in E_u decides containment in Des(u) vs its complement.
    std::vector<char> target(nc, 0);
    for (int local : h) target[local] = 1;
    const bool towards = reaches_set(e_u, pos[u], target);
    std::vector<int> next;
    if (towards) {
      u_best = u;
      for (int v : k_cur)
        if (o.revealed().has_arc(u, v)) next.push_back(v);
      note("desc");
    } else {
      x_best = u;
      for (int v : k_cur)
        if (o.revealed().has_arc(v, u)) next.push_back(v);
      note("anc");
    }
    k_cur = std::move(next);
  }

  if (u_best == -1)
    throw GraphError("meek_separator: search exhausted the clique without a candidate");
  std::vector<int> sep = {u_best};
  if (x_best != -1) sep.push_back(x_best);
  return finish(std::move(sep));
}

namespace {

// Chain components of the revealed graph that still contain an unoriented
// target edge (both endpoints of an unoriented target share a component).
std::vector<std::vector<int>> active_components(const Pdag& revealed, const EdgeSet& targets) {
  std::vector<std::vector<int>> out;
  for (const auto& c : chain_components(revealed)) {
    if (c.size() < 2) continue;
    bool active = false;
    for (int u : c) {
      for (int v : revealed.neighbors(u)) {
        if (u < v && targets.contains(u, v)) {
          active = true;
          break;
        }
      }
      if (active) break;
    }
    if (active) out.push_back(c);
  }
  return out;
}

void validate_targets(const Pdag& revealed, const EdgeSet& targets) {
  for (const auto& [u, v] : targets.pairs()) {
    if (v >= revealed.vertex_count() || !revealed.adjacent(u, v))
      throw InputError("target edge {" + std::to_string(u) + "," + std::to_string(v) +
                       "} is not in the skeleton");
  }
}

bool all_oriented(const Pdag& revealed, const EdgeSet& targets) {
  for (const auto& [u, v] : targets.pairs())
    if (revealed.has_undirected(u, v)) return false;
  return true;
}

}  // namespace

InterventionSet subset_search(InterventionOracle& o, const EdgeSet& targets, std::uint64_t seed,
                              const SubsetSearchOptions& opts) {
  validate_targets(o.revealed(), targets);
  Rng rng(seed);
  InterventionSet used;
  int rounds = 0;
  while (!all_oriented(o.revealed(), targets)) {
    if (++rounds > 2 * o.vertex_count() + 2)
      throw GraphError("subset_search: failed to make progress");
    const auto work = active_components(o.revealed(), targets);
    for (const auto& comp : work) {
      if (opts.early_exit && all_oriented(o.revealed(), targets)) break;
      StopFn stop;
      if (opts.early_exit)
        stop = [&]() { return all_oriented(o.revealed(), targets); };
      const auto res = meek_separator(o, comp, uniform_pick(rng.next_u64()), opts.transcript, stop);
      for (int v : res.intervened) used.add_atomic(v);
      if (!res.completed) break;
    }
  }
  if (opts.transcript) opts.transcript->total = static_cast<int>(used.size());
  return used;
}

namespace {

// Chain components intersecting u_set (restricted to `within` when given),
// minus any reachable from another candidate in the component condensation
// of the revealed graph. Returns sorted vertex sets, smallest min id first.
std::vector<std::vector<int>> source_candidates(const Pdag& revealed,
                                                const std::vector<char>& in_u,
                                                const std::vector<char>* within) {
  const auto comps = chain_components(revealed);
  const int n = revealed.vertex_count();
  std::vector<int> comp_of(n, -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[v] = static_cast<int>(c);

  std::vector<std::vector<int>> quot(comps.size());
  for (const auto& [u, v] : revealed.arcs())
    if (comp_of[u] != comp_of[v]) quot[comp_of[u]].push_back(comp_of[v]);

  std::vector<int> cand;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    bool touches_u = false, inside = true;
    for (int v : comps[c]) {
      touches_u = touches_u || in_u[v];
      inside = inside && (within == nullptr || (*within)[v]);
    }
    if (touches_u && inside) cand.push_back(static_cast<int>(c));
  }

  std::vector<char> reached(comps.size(), 0);
  for (int c : cand) {
    // Mark everything reachable from candidate c (beyond c itself).
    std::vector<char> seen(comps.size(), 0);
    std::vector<int> stack = {c};
    seen[c] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : quot[x]) {
        if (!seen[y]) {
          seen[y] = 1;
          reached[y] = 1;
          stack.push_back(y);
        }
      }
    }
  }
  std::vector<std::vector<int>> out;
  for (int c : cand)
    if (!reached[c]) out.push_back(comps[c]);
  return out;
}

}  // namespace

FindSourceResult find_source(InterventionOracle& o, const std::vector<int>& u_set,
                             std::uint64_t seed, const FindSourceOptions& opts) {
  if (u_set.empty()) throw InputError("find_source: empty vertex set");
  const int n = o.vertex_count();
  std::vector<char> in_u(n, 0);
  for (int v : u_set) {
    if (v < 0 || v >= n) throw InputError("find_source: vertex out of range");
    in_u[v] = 1;
  }

  Rng rng(seed);
  FindSourceResult res;

  auto pick_candidate = [&](const std::vector<char>* within) -> std::vector<int> {
    const auto cands = source_candidates(o.revealed(), in_u, within);
    if (cands.empty()) throw GraphError("find_source: no candidate component");
    return cands.front();  // smallest min vertex id
  };

  auto u_members = [&](const std::vector<int>& comp) {
    std::vector<int> out;
    for (int v : comp)
      if (in_u[v]) out.push_back(v);
    return out;
  };

  std::vector<int> h = pick_candidate(nullptr);
  int rounds = 0;
  while (true) {
    const auto members = u_members(h);
    if (members.size() == 1) {
      res.source = members.front();
      return res;
    }
    if (opts.stop && opts.stop()) {
      res.completed = false;
      return res;
    }
    if (++rounds > 2 * n + 2) throw GraphError("find_source: failed to make progress");

    std::vector<char> within(n, 0);
    for (int v : h) within[v] = 1;

    StopFn stop;
    if (opts.early_exit) {
      stop = [&]() {
        if (opts.stop && opts.stop()) return true;
        const auto cands = source_candidates(o.revealed(), in_u, &within);
        return !cands.empty() && u_members(cands.front()).size() == 1;
      };
    } else if (opts.stop) {
      stop = opts.stop;
    }
    const auto sep = meek_separator(o, h, uniform_pick(rng.next_u64()), nullptr, stop);
    for (int v : sep.intervened) res.used.add_atomic(v);
    h = pick_candidate(&within);
  }
}

std::vector<int> identified_sources(const Pdag& revealed, const std::vector<int>& t_set) {
  std::vector<int> out;
  for (int v : t_set) {
    bool ok = true;
    for (int t : t_set) {
      if (t == v) continue;
      if (revealed.has_undirected(v, t) || revealed.has_arc(t, v)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Chain components of the revealed graph induced on t_set, by minimum id.
std::vector<std::vector<int>> induced_components(const Pdag& revealed,
                                                 const std::vector<int>& t_set) {
  const int n = revealed.vertex_count();
  std::vector<char> in_t(n, 0);
  for (int v : t_set) in_t[v] = 1;
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> comps;
  std::vector<int> sorted_t(t_set);
  std::sort(sorted_t.begin(), sorted_t.end());
  for (int s : sorted_t) {
    if (seen[s]) continue;
    std::vector<int> comp, stack = {s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (int y : revealed.neighbors(x)) {
        if (in_t[y] && !seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

// First induced component with no oriented arc arriving from the rest of
// t_set. One always exists: the induced quotient inherits chain-graph
// acyclicity from the revealed graph.
std::vector<int> frontier_component(const Pdag& revealed, const std::vector<int>& t_set) {
  const auto comps = induced_components(revealed, t_set);
  const int n = revealed.vertex_count();
  std::vector<int> comp_of(n, -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
  for (const auto& comp : comps) {
    bool incoming = false;
    for (int v : comp) {
      for (int p : revealed.parents(v)) {
        if (comp_of[p] != -1 && comp_of[p] != comp_of[v]) {
          incoming = true;
          break;
        }
      }
      if (incoming) break;
    }
    if (!incoming) return comp;
  }
  throw GraphError("frontier_component: no component without incoming arcs");
}

template <typename ExposeSources>
ShiftAssignment mean_match_loop(InterventionOracle& o, const MeanQuery& observe,
                                const std::vector<double>& target_mean, double tol,
                                ExposeSources&& expose) {
  const int n = o.vertex_count();
  if (static_cast<int>(target_mean.size()) != n)
    throw InputError("causal_mean_match: target mean length does not match vertex count");

  ShiftAssignment cur;
  int outer = 0;
  while (true) {
    const auto means = observe(cur);
    std::vector<int> t_set;
    for (int v = 0; v < n; ++v)
      if (std::abs(means[v] - target_mean[v]) > tol) t_set.push_back(v);
    if (t_set.empty()) return cur;
    if (++outer > n + 2)
      throw InputError("causal_mean_match: mismatch persists; target may be unrealizable");

    std::vector<int> sources = identified_sources(o.revealed(), t_set);
    int inner = 0;
    while (sources.empty()) {
      if (++inner > n + 2)
        throw InputError("causal_mean_match: mismatch persists with empty frontier");
      const auto comp = frontier_component(o.revealed(), t_set);
      expose(comp, t_set);
      sources = identified_sources(o.revealed(), t_set);
    }
    for (int v : sources) cur.set(v, cur.value_or(v, 0.0) + (target_mean[v] - means[v]));
  }
}

}  // namespace

ShiftAssignment causal_mean_match(InterventionOracle& o, const MeanQuery& observe,
                                  const std::vector<double>& target_mean, std::uint64_t seed,
                                  const MeanMatchOptions& opts) {
  Rng rng(seed);
  auto expose = [&](const std::vector<int>& comp, const std::vector<int>& t_set) {
    FindSourceOptions fopts;
    fopts.early_exit = opts.early_exit;
    if (opts.early_exit) {
      fopts.stop = [&o, &t_set]() { return !identified_sources(o.revealed(), t_set).empty(); };
    }
    find_source(o, comp, rng.next_u64(), fopts);
  };
  return mean_match_loop(o, observe, target_mean, opts.tol, expose);
}

ShiftAssignment random_mean_match(InterventionOracle& o, const MeanQuery& observe,
                                  const std::vector<double>& target_mean, std::uint64_t seed,
                                  double tol) {
  Rng rng(seed);
  auto expose = [&](const std::vector<int>& comp, const std::vector<int>& t_set) {
    (void)t_set;
    // One random probe per round; the outer loop re-evaluates the frontier.
    const int v = comp[rng.next_below(comp.size())];
    o.intervene(v);
  };
  return mean_match_loop(o, observe, target_mean, tol, expose);
}

int subset_lower_bound(const Dag& g, const EdgeSet& targets) {
  const int n = g.vertex_count();
  int best = 0;
  for (int w = -1; w < n; ++w) {
    InterventionSet iset;
    if (w >= 0) iset.add_atomic(w);
    const Pdag e = interventional_essential_graph(g, iset);
    const auto comps = chain_components(e);
    std::vector<int> comp_of(n, -1);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
    std::vector<char> hit(comps.size(), 0);
    int count = 0;
    for (const auto& [a, b] : targets.pairs()) {
      if (e.has_undirected(a, b) && !hit[comp_of[a]]) {
        hit[comp_of[a]] = 1;
        ++count;
      }
    }
    best = std::max(best, count);
  }
  return best;
}

namespace {

int mvc_branch(std::vector<std::vector<char>>& adj, std::vector<int>& deg, int taken, int best) {
  if (taken >= best) return best;
  int u = -1;
  for (std::size_t v = 0; v < deg.size(); ++v)
    if (deg[v] > 0 && (u == -1 || deg[v] > deg[u])) u = static_cast<int>(v);
  if (u == -1) return taken;  // no edges left

  auto remove_vertex = [&](int v, std::vector<int>& removed_edges) {
    for (std::size_t w = 0; w < deg.size(); ++w) {
      if (adj[v][w]) {
        adj[v][w] = adj[w][v] = 0;
        --deg[v];
        --deg[w];
        removed_edges.push_back(static_cast<int>(w));
      }
    }
  };
  auto restore_vertex = [&](int v, const std::vector<int>& removed_edges) {
    for (int w : removed_edges) {
      adj[v][w] = adj[w][v] = 1;
      ++deg[v];
      ++deg[w];
    }
  };

  // Branch 1: u joins the cover.
  std::vector<int> r1;
  remove_vertex(u, r1);
  best = mvc_branch(adj, deg, taken + 1, best);
  restore_vertex(u, r1);

  // Branch 2: u stays out, so all its neighbors join.
  std::vector<int> nbrs;
  for (std::size_t w = 0; w < deg.size(); ++w)
    if (adj[u][w]) nbrs.push_back(static_cast<int>(w));
  std::vector<std::vector<int>> removed(nbrs.size());
  for (std::size_t i = 0; i < nbrs.size(); ++i) remove_vertex(nbrs[i], removed[i]);
  best = mvc_branch(adj, deg, taken + static_cast<int>(nbrs.size()), best);
  for (std::size_t i = nbrs.size(); i-- > 0;) restore_vertex(nbrs[i], removed[i]);
  return best;
}

int minimum_vertex_cover(int n, const std::vector<std::pair<int, int>>& edges) {
  if (edges.empty()) return 0;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<int> deg(n, 0);
  for (const auto& [u, v] : edges) {
    if (!adj[u][v]) {
      adj[u][v] = adj[v][u] = 1;
      ++deg[u];
      ++deg[v];
    }
  }
  return mvc_branch(adj, deg, 0, n);
}

}  // namespace

int full_verification_number(const Dag& g) {
  return minimum_vertex_cover(g.vertex_count(), covered_edges(g).pairs());
}

int subset_verification_bruteforce(const Dag& g, const EdgeSet& targets, int k_max) {
  const int n = g.vertex_count();
  if (n > 12) throw InputError("subset_verification_bruteforce: guarded to n <= 12");
  validate_targets(Pdag::skeleton_of(g), targets);
  if (k_max < 0) throw InputError("subset_verification_bruteforce: negative budget");

  auto oriented_all = [&](const InterventionSet& iset) {
    const Pdag e = interventional_essential_graph(g, iset);
    for (const auto& [u, v] : targets.pairs())
      if (!e.has_arc(u, v) && !e.has_arc(v, u)) return false;
    return true;
  };

  std::vector<int> choice;
  // Enumerate k-subsets in lexicographic order.
  std::function<bool(int, int, int)> search = [&](int k, int start, int depth) -> bool {
    if (depth == k) {
      InterventionSet iset;
      for (int v : choice) iset.add_atomic(v);
      return oriented_all(iset);
    }
    for (int v = start; v <= n - (k - depth); ++v) {
      choice.push_back(v);
      if (search(k, v + 1, depth + 1)) return true;
      choice.pop_back();
    }
    return false;
  };

  for (int k = 0; k <= std::min(k_max, n); ++k) {
    choice.clear();
    if (search(k, 0, 0)) return k;
  }
  throw BoundError("subset_verification_bruteforce: no verifying set within budget " +
                   std::to_string(k_max));
}

InterventionSet random_baseline(InterventionOracle& o, const EdgeSet& targets,
                                std::uint64_t seed) {
  validate_targets(o.revealed(), targets);
  Rng rng(seed);
  InterventionSet used;
  while (!all_oriented(o.revealed(), targets)) {
    std::vector<int> pool;
    for (const auto& comp : active_components(o.revealed(), targets))
      pool.insert(pool.end(), comp.begin(), comp.end());
    const int v = pool.at(rng.next_below(pool.size()));
    o.intervene(v);
    used.add_atomic(v);
  }
  return used;
}

}  // namespace meeksep
