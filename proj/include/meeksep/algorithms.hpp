#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "meeksep/graph.hpp"
#include "meeksep/oracle.hpp"

namespace meeksep {

/// Outcome of the Meek-separator search on one chain component.
///
/// `separator` is the one- or two-vertex 1/2-Meek separator; `intervened` is
/// every vertex actually queried, in order (the separator vertices are among
/// them). `component_sizes` are the chain-component sizes of the input
/// component after intervening on the separator alone, listed by minimum
/// vertex id. When an early-stop callback fired mid-search, `completed` is
/// false and only `intervened` is meaningful.
struct MeekSeparatorResult {
  std::vector<int> separator;
  std::vector<int> intervened;
  std::vector<int> component_sizes;
  bool completed = true;
};

/// Per-query record: which vertex was intervened, the largest chain-component
/// size observed afterwards, and the branch the search took.
struct SearchStep {
  int step;
  int vertex;
  int largest_component;
  std::string branch;  // "done", "desc", "anc" or "stop"
};

/// Replayable log of one search. dump() emits one line per oracle query,
/// "step vertex |largest_component| branch", then "total=N".
struct SearchTranscript {
  std::vector<SearchStep> steps;
  int total = 0;
  std::string dump() const;
};

/// Chooses the next probe from the surviving clique vertices (sorted).
/// The default is a uniform draw; tests inject scripted sequences.
using PickFn = std::function<int(const std::vector<int>&)>;

/// Early-stop predicate, checked after every intervention.
using StopFn = std::function<bool()>;

PickFn uniform_pick(std::uint64_t seed);

/// Binary search for a 1/2-Meek separator of `component`, which must be a
/// chain component of o.revealed() with at least 2 vertices. Expected number
/// of interventions is logarithmic in the clique-separator size.
MeekSeparatorResult meek_separator(InterventionOracle& o, const std::vector<int>& component,
                                   std::uint64_t seed);
MeekSeparatorResult meek_separator(InterventionOracle& o, const std::vector<int>& component,
                                   const PickFn& pick, SearchTranscript* transcript = nullptr,
                                   const StopFn& stop = {});

struct SubsetSearchOptions {
  bool early_exit = false;  // stop as soon as every target is oriented
  SearchTranscript* transcript = nullptr;
};

/// Adaptive subset search: intervenes until every target edge is oriented in
/// o.revealed(). Returns the atomic interventions performed, in order.
InterventionSet subset_search(InterventionOracle& o, const EdgeSet& targets, std::uint64_t seed,
                              const SubsetSearchOptions& opts = {});

struct FindSourceOptions {
  bool early_exit = false;
  StopFn stop;  // external stop; implies an incomplete result when it fires
};

struct FindSourceResult {
  int source = -1;  // valid iff completed
  InterventionSet used;
  bool completed = true;
};

/// Locates a vertex of u_set with no ancestor in u_set (in the hidden DAG),
/// narrowing candidate chain components with Meek separators.
FindSourceResult find_source(InterventionOracle& o, const std::vector<int>& u_set,
                             std::uint64_t seed, const FindSourceOptions& opts = {});

/// Analytic mean access for the current shift assignment. The matching
/// algorithm sees means only through this; model parameters stay hidden.
using MeanQuery = std::function<std::vector<double>(const ShiftAssignment&)>;

struct MeanMatchOptions {
  bool early_exit = false;
  double tol = 1e-9;
};

/// Recovers the unique shift intervention set reproducing target_mean.
/// Structural interventions are charged through the oracle counter.
ShiftAssignment causal_mean_match(InterventionOracle& o, const MeanQuery& observe,
                                  const std::vector<double>& target_mean, std::uint64_t seed,
                                  const MeanMatchOptions& opts = {});

/// Random-search variant of mean matching: same outer loop, but sources are
/// exposed by intervening on uniformly sampled vertices of the frontier
/// component instead of running the separator search.
ShiftAssignment random_mean_match(InterventionOracle& o, const MeanQuery& observe,
                                  const std::vector<double>& target_mean, std::uint64_t seed,
                                  double tol = 1e-9);

/// Members of `t_set` with every revealed edge towards the rest of t_set
/// oriented outwards (no undirected edge, no incoming arc from t_set).
std::vector<int> identified_sources(const Pdag& revealed, const std::vector<int>& t_set);

/// max over I in {empty} union {{v}} of the number of chain components of
/// E_I(g) containing an unoriented target edge. Valid lower bound on the
/// subset verification number.
int subset_lower_bound(const Dag& g, const EdgeSet& targets);

/// Exact minimum vertex cover size of covered_edges(g), via branch and bound.
int full_verification_number(const Dag& g);

/// Least k <= k_max such that some k atomic interventions orient all targets.
/// Exhaustive; guarded to n <= 12. Throws BoundError when k_max is exceeded.
int subset_verification_bruteforce(const Dag& g, const EdgeSet& targets, int k_max);

/// Baseline: repeatedly intervenes on a uniform vertex of the components that
/// still contain unoriented targets, until all targets are oriented.
InterventionSet random_baseline(InterventionOracle& o, const EdgeSet& targets,
                                std::uint64_t seed);

}  // namespace meeksep
