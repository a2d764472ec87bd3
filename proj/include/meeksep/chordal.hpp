#pragma once

#include <utility>
#include <vector>

#include "meeksep/errors.hpp"

namespace meeksep {

/// Plain undirected graph; hosts the chordality and clique machinery applied
/// to chain components.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  UndirectedGraph(int n, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return m_; }
  bool adjacent(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
  std::vector<std::pair<int, int>> edges() const;
  bool connected() const;

 private:
  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<int>> adj_;        // sorted
  std::vector<std::vector<char>> adj_mask_;  // dense adjacency for O(1) tests
};

/// Maximum cardinality search order, ties broken by smallest vertex id.
std::vector<int> mcs_order(const UndirectedGraph& g);

/// True iff the reverse MCS order is a perfect elimination ordering.
bool is_chordal(const UndirectedGraph& g);

/// Size of the largest clique. Requires a chordal input (throws otherwise).
int max_clique_size(const UndirectedGraph& g);

/// Maximal cliques of a chordal graph, read off the perfect elimination
/// ordering, listed in MCS discovery order of their representative vertex.
std::vector<std::vector<int>> maximal_cliques(const UndirectedGraph& g);

struct CliqueSeparator {
  std::vector<int> clique;                   // sorted
  std::vector<std::vector<int>> components;  // of g minus clique, by min id
};

/// Clique C of a connected chordal graph whose removal leaves connected
/// components of size <= alpha * n. For a complete graph C is the whole
/// vertex set. Deterministic: first qualifying maximal clique in the
/// enumeration order of maximal_cliques().
CliqueSeparator clique_separator(const UndirectedGraph& g, double alpha = 0.5);

}  // namespace meeksep
