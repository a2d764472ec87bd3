#pragma once

#include <array>
#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "meeksep/errors.hpp"

namespace meeksep {

/// Vertices are dense integers 0..n-1. External labels (e.g. 1-based ids in
/// input files) are handled by the I/O layer's relabeling maps.
using VertexId = int;

namespace detail {
inline std::uint64_t pair_key(int u, int v) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
         static_cast<std::uint32_t>(v);
}
}  // namespace detail

/// Immutable directed acyclic graph. Construction validates: ids in range,
/// no self-loops, at most one arc per unordered pair, no directed cycle.
class Dag {
 public:
  Dag() = default;
  Dag(int n, const std::vector<std::pair<int, int>>& arcs);

  int vertex_count() const { return n_; }
  int arc_count() const { return m_; }

  bool has_arc(int u, int v) const { return arc_keys_.count(detail::pair_key(u, v)) != 0; }
  bool adjacent(int u, int v) const { return has_arc(u, v) || has_arc(v, u); }

  const std::vector<int>& parents(int v) const { return parents_.at(v); }
  const std::vector<int>& children(int v) const { return children_.at(v); }

  /// All arcs as (from, to), sorted lexicographically.
  std::vector<std::pair<int, int>> arcs() const;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<int>> parents_;   // sorted
  std::vector<std::vector<int>> children_;  // sorted
  std::unordered_set<std::uint64_t> arc_keys_;
};

/// Immutable partially directed graph: a set of oriented arcs plus a set of
/// undirected edges, disjoint as unordered pairs. Essential graphs and
/// interventional essential graphs live here.
class Pdag {
 public:
  Pdag() = default;
  Pdag(int n, const std::vector<std::pair<int, int>>& arcs,
       const std::vector<std::pair<int, int>>& undirected);

  static Pdag from_dag(const Dag& g);      // fully oriented copy
  static Pdag skeleton_of(const Dag& g);   // fully undirected copy

  int vertex_count() const { return n_; }
  int arc_count() const { return a_; }
  int undirected_count() const { return u_; }
  bool fully_oriented() const { return u_ == 0; }

  bool has_arc(int u, int v) const { return arc_keys_.count(detail::pair_key(u, v)) != 0; }
  bool has_undirected(int u, int v) const {
    return u < v ? und_keys_.count(detail::pair_key(u, v)) != 0
                 : und_keys_.count(detail::pair_key(v, u)) != 0;
  }
  bool adjacent(int u, int v) const {
    return has_arc(u, v) || has_arc(v, u) || has_undirected(u, v);
  }

  const std::vector<int>& parents(int v) const { return parents_.at(v); }
  const std::vector<int>& children(int v) const { return children_.at(v); }
  /// Undirected neighbors only.
  const std::vector<int>& neighbors(int v) const { return neighbors_.at(v); }

  std::vector<std::pair<int, int>> arcs() const;
  /// Canonical (u < v) pairs, sorted.
  std::vector<std::pair<int, int>> undirected_edges() const;

 private:
  int n_ = 0;
  int a_ = 0;
  int u_ = 0;
  std::vector<std::vector<int>> parents_, children_, neighbors_;
  std::unordered_set<std::uint64_t> arc_keys_;
  std::unordered_set<std::uint64_t> und_keys_;  // canonical u < v
};

/// Set of unordered vertex pairs: target edge sets, covered edges, skeletons.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(const std::vector<std::pair<int, int>>& pairs);

  void insert(int u, int v);
  bool contains(int u, int v) const {
    return u < v ? keys_.count(detail::pair_key(u, v)) != 0
                 : keys_.count(detail::pair_key(v, u)) != 0;
  }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  /// Canonical (u < v) pairs in sorted order.
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

 private:
  std::vector<std::pair<int, int>> pairs_;  // kept sorted
  std::unordered_set<std::uint64_t> keys_;
};

// ---- queries ---------------------------------------------------------------

/// Topological order with ties broken by ascending vertex id.
/// Throws GraphError if the arc set has a directed cycle.
std::vector<int> topological_order(const Dag& g);

/// Strict descendants of v (v excluded), sorted.
std::vector<int> descendants(const Dag& g, int v);
/// Strict ancestors of v (v excluded), sorted.
std::vector<int> ancestors(const Dag& g, int v);

/// Connected components of the undirected part, singletons included.
/// Components ordered by minimum vertex id; each component sorted.
std::vector<std::vector<int>> chain_components(const Pdag& g);

/// All triples u -> v <- w with u and w non-adjacent, canonicalized u < w,
/// sorted lexicographically.
std::vector<std::array<int, 3>> v_structures(const Dag& g);

/// Edges u~v with Pa(u) \ {v} == Pa(v) \ {u}.
EdgeSet covered_edges(const Dag& g);

bool is_moral(const Dag& g);

/// True iff there is no partially directed cycle: no arc joins two vertices
/// of one chain component, and the component condensation is acyclic.
bool is_chain_graph(const Pdag& g);

struct InducedDag {
  Dag graph;
  std::vector<int> original_ids;  // original_ids[local] = id in the host graph
};
struct InducedPdag {
  Pdag graph;
  std::vector<int> original_ids;
};

InducedDag induced_subgraph(const Dag& g, const std::vector<int>& s);
InducedPdag induced_subgraph(const Pdag& g, const std::vector<int>& s);

}  // namespace meeksep
