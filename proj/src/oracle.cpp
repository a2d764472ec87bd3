#include "meeksep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace meeksep {

InterventionOracle::InterventionOracle(Dag hidden) : hidden_(std::move(hidden)) {
  revealed_ = essential_graph(hidden_);
}

const Pdag& InterventionOracle::intervene(int v) {
  if (v < 0 || v >= hidden_.vertex_count())
    throw InputError("intervene: vertex " + std::to_string(v) + " out of range");
  performed_.add_atomic(v);
  ++count_;
  revealed_ = interventional_essential_graph(hidden_, performed_);
  if (observer_) observer_(revealed_);
  return revealed_;
}

void ShiftAssignment::set(int v, double a) {
  if (v < 0) throw InputError("ShiftAssignment: negative vertex id");
  if (!std::isfinite(a)) throw InputError("ShiftAssignment: shift value must be finite");
  auto it = std::lower_bound(shifts_.begin(), shifts_.end(), v,
                             [](const auto& p, int x) { return p.first < x; });
  if (it != shifts_.end() && it->first == v) {
    it->second = a;
  } else {
    shifts_.insert(it, {v, a});
  }
}

bool ShiftAssignment::has(int v) const {
  auto it = std::lower_bound(shifts_.begin(), shifts_.end(), v,
                             [](const auto& p, int x) { return p.first < x; });
  return it != shifts_.end() && it->first == v;
}

double ShiftAssignment::value_or(int v, double fallback) const {
  auto it = std::lower_bound(shifts_.begin(), shifts_.end(), v,
                             [](const auto& p, int x) { return p.first < x; });
  return (it != shifts_.end() && it->first == v) ? it->second : fallback;
}

std::vector<int> ShiftAssignment::targets() const {
  std::vector<int> out;
  out.reserve(shifts_.size());
  for (const auto& [v, a] : shifts_) out.push_back(v);
  return out;
}

ShiftSem::ShiftSem(Dag g, const std::vector<std::tuple<int, int, double>>& weights,
                   std::vector<double> intercepts)
    : g_(std::move(g)), intercepts_(std::move(intercepts)) {
  const int n = g_.vertex_count();
  if (static_cast<int>(intercepts_.size()) != n)
    throw InputError("ShiftSem: intercept count does not match vertex count");
  for (double c : intercepts_)
    if (!std::isfinite(c)) throw InputError("ShiftSem: intercepts must be finite");
  for (const auto& [u, v, w] : weights) {
    if (!g_.has_arc(u, v))
      throw InputError("ShiftSem: weight on missing arc " + std::to_string(u) + "->" +
                       std::to_string(v));
    if (!std::isfinite(w)) throw InputError("ShiftSem: weights must be finite");
    w_[detail::pair_key(u, v)] = w;
  }
  if (w_.size() != static_cast<std::size_t>(g_.arc_count()))
    throw InputError("ShiftSem: every arc needs exactly one weight");
  topo_ = topological_order(g_);
}

double ShiftSem::weight(int u, int v) const {
  auto it = w_.find(detail::pair_key(u, v));
  if (it == w_.end())
    throw InputError("ShiftSem: no arc " + std::to_string(u) + "->" + std::to_string(v));
  return it->second;
}

std::vector<double> mean_vector(const ShiftSem& sem, const ShiftAssignment& shifts) {
  const int n = sem.graph().vertex_count();
  std::vector<double> mu(n, 0.0);
  for (int v : sem.topo()) {
    double x = sem.intercepts()[v] + shifts.value_or(v, 0.0);
    for (int u : sem.graph().parents(v)) x += sem.weight(u, v) * mu[u];
    mu[v] = x;
  }
  return mu;
}

std::vector<int> mismatch_set(const ShiftSem& sem, const ShiftAssignment& current,
                              const std::vector<double>& target_mean, double tol) {
  const int n = sem.graph().vertex_count();
  if (static_cast<int>(target_mean.size()) != n)
    throw InputError("mismatch_set: target mean length does not match vertex count");
  const auto mu = mean_vector(sem, current);
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (std::fabs(mu[v] - target_mean[v]) > tol) out.push_back(v);
  return out;
}

}  // namespace meeksep
