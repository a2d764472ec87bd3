#pragma once

#include <vector>

#include "meeksep/graph.hpp"

namespace meeksep {

/// Ordered list of interventions. This project only ever constructs atomic
/// entries and the empty observational entry; duplicates are allowed and
/// collapse semantically (they reveal nothing new).
class InterventionSet {
 public:
  InterventionSet() = default;

  void add(std::vector<int> targets);
  void add_atomic(int v) { add({v}); }

  static InterventionSet atomic(const std::vector<int>& vs) {
    InterventionSet s;
    for (int v : vs) s.add_atomic(v);
    return s;
  }

  const std::vector<std::vector<int>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  bool is_atomic(std::size_t i) const { return entries_.at(i).size() == 1; }

 private:
  std::vector<std::vector<int>> entries_;  // each sorted
};

/// Closure of the input under orientation rules R1-R4. The skeleton is
/// unchanged, the oriented arcs only grow, and the result is a fixed point
/// (idempotent). The caller guarantees a consistent DAG extension exists.
Pdag meek_closure(const Pdag& g);

/// CPDAG of [g]: skeleton plus v-structure arcs, closed under R1-R4.
Pdag essential_graph(const Dag& g);

/// E_I(g): essential graph refined by orienting, for each entry I, every edge
/// with exactly one endpoint in I according to g, then closing under R1-R4.
Pdag interventional_essential_graph(const Dag& g, const InterventionSet& iset);

/// Parents of u whose arcs are oriented in E_I(g).
std::vector<int> recovered_parents(const Dag& g, const InterventionSet& iset, int u);

/// All w such that the arc u -> v is oriented in E_{{w}}(g), by direct
/// evaluation over every atomic intervention. Requires a moral g containing
/// the arc.
std::vector<int> orienting_interventions(const Dag& g, int u, int v);

}  // namespace meeksep
