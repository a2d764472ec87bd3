#pragma once

#include <functional>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "meeksep/graph.hpp"
#include "meeksep/meek.hpp"

namespace meeksep {

/// Simulated adaptive-intervention environment. Holds a hidden ground-truth
/// DAG, answers atomic interventions with the updated interventional
/// essential graph, and counts queries. Algorithms see only revealed(),
/// count() and intervene(); the hidden DAG is never exposed.
///
/// Repeat interventions reveal nothing new but still cost: count() is the
/// budget the algorithms are charged against.
///
/// Single-owner mutable state; not safe for concurrent mutation.
class InterventionOracle {
 public:
  explicit InterventionOracle(Dag hidden);

  int vertex_count() const { return hidden_.vertex_count(); }
  const Pdag& revealed() const { return revealed_; }
  int count() const { return count_; }
  const InterventionSet& performed() const { return performed_; }

  /// Performs the atomic intervention {v}, recomputes the revealed graph and
  /// returns it.
  const Pdag& intervene(int v);

  /// Test hook: called with the revealed graph after every intervention.
  void set_reveal_observer(std::function<void(const Pdag&)> obs) { observer_ = std::move(obs); }

 private:
  Dag hidden_;
  InterventionSet performed_;
  Pdag revealed_;
  int count_ = 0;
  std::function<void(const Pdag&)> observer_;
};

/// Assignment of shift values to target vertices, kept sorted by vertex.
class ShiftAssignment {
 public:
  ShiftAssignment() = default;

  void set(int v, double a);
  bool has(int v) const;
  double value_or(int v, double fallback) const;
  std::vector<int> targets() const;
  std::size_t size() const { return shifts_.size(); }
  bool empty() const { return shifts_.empty(); }
  const std::vector<std::pair<int, double>>& entries() const { return shifts_; }

 private:
  std::vector<std::pair<int, double>> shifts_;
};

/// Linear structural-equation mean model: one weight per arc, one intercept
/// per vertex. Means are exact (noiseless) and evaluated in topological order.
class ShiftSem {
 public:
  ShiftSem() = default;
  ShiftSem(Dag g, const std::vector<std::tuple<int, int, double>>& weights,
           std::vector<double> intercepts);

  const Dag& graph() const { return g_; }
  double weight(int u, int v) const;
  const std::vector<double>& intercepts() const { return intercepts_; }
  const std::vector<int>& topo() const { return topo_; }

 private:
  Dag g_;
  std::unordered_map<std::uint64_t, double> w_;
  std::vector<double> intercepts_;
  std::vector<int> topo_;
};

/// mu_v = intercept_v + shift_v + sum over arcs u->v of weight(u,v) * mu_u.
std::vector<double> mean_vector(const ShiftSem& sem, const ShiftAssignment& shifts);

/// Coordinates where |mean(current) - target| > tol, sorted.
std::vector<int> mismatch_set(const ShiftSem& sem, const ShiftAssignment& current,
                              const std::vector<double>& target_mean, double tol = 1e-9);

}  // namespace meeksep
