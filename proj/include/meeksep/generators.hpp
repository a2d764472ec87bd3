#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "meeksep/graph.hpp"
#include "meeksep/oracle.hpp"

namespace meeksep {

/// Subset-search benchmark instance: a hidden moral DAG and the target edges
/// within hop radius r (skeleton distance) of a random center.
struct SubsetInstance {
  Dag hidden;
  EdgeSet targets;
  int hop_center = -1;
  int n = 0;
  int r = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> meta;
};

/// Mean-matching benchmark instance. target_mean is always the analytic mean
/// under hidden_targets, so exact recovery is well defined.
struct MatchingInstance {
  ShiftSem sem;
  ShiftAssignment hidden_targets;
  std::vector<double> target_mean;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> meta;
};

/// Erdos-Renyi overlay on a random tree, oriented by vertex label, then
/// moralized by label-ordered fill until no v-structures remain. Targets are
/// the skeleton edges whose endpoints both lie within undirected distance r
/// of a uniformly chosen center.
SubsetInstance r_hop_instance(int n, int r, double density, std::uint64_t seed);

/// Undirected G(n, p) sampled per pair, oriented low label -> high label.
Dag er_dag(int n, double density, std::uint64_t seed);

/// Preferential-attachment graph (m_attach edges per arriving vertex),
/// oriented low label -> high label. Arc count is m_attach * (n - m_attach).
Dag ba_dag(int n, int m_attach, std::uint64_t seed);

/// Uniform random labeled tree, oriented low label -> high label.
Dag tree_dag(int n, std::uint64_t seed);

struct MatchingParams {
  double weight_lo = -1.0;
  double weight_hi = 1.0;
  double weight_min_abs = 1e-3;  // rejection threshold around zero
  double shift_lo = 0.5;
  double shift_hi = 2.0;
};

/// SEM over g with uniform nonzero weights and zero intercepts; k uniformly
/// chosen hidden targets with uniform shifts; analytic target mean.
MatchingInstance matching_instance(const Dag& g, int k, std::uint64_t seed,
                                   const MatchingParams& params = {});

}  // namespace meeksep
