// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Sample sizes and tolerances are fixed here, not configurable.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "meeksep/algorithms.hpp"
#include "meeksep/chordal.hpp"
#include "meeksep/generators.hpp"
#include "meeksep/meek.hpp"
#include "meeksep/oracle.hpp"
#include "meeksep/rng.hpp"
#include "oracles.hpp"

using namespace meeksep;
namespace tt = meeksep::testing;

namespace {

struct Gate {
  bool all_ok = true;
  std::chrono::steady_clock::time_point t0;

  void start() { t0 = std::chrono::steady_clock::now(); }
  void finish(int index, const char* name, bool ok, const std::string& detail) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  [%d] %-34s %s  (%.1fs)\n", ok ? "PASS" : "FAIL", index, name,
                detail.c_str(), secs);
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
};

// Chordality tally across every revealed graph produced in criteria 1-5.
struct ChordalityTally {
  long long components = 0;
  long long violations = 0;

  void check(const Pdag& g) {
    for (const auto& comp : chain_components(g)) {
      ++components;
      if (comp.size() < 3) continue;
      const auto sub = induced_subgraph(g, comp);
      if (!is_chordal(
              UndirectedGraph(sub.graph.vertex_count(), sub.graph.undirected_edges())))
        ++violations;
    }
  }
};

ChordalityTally tally;

InterventionOracle make_checked_oracle(const Dag& hidden) {
  InterventionOracle o(hidden);
  tally.check(o.revealed());
  o.set_reveal_observer([](const Pdag& rev) { tally.check(rev); });
  return o;
}

Dag complete_dag(int n) {
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) arcs.emplace_back(i, j);
  return Dag(n, arcs);
}

bool same_pdag(const Pdag& a, const Pdag& b) {
  return a.arcs() == b.arcs() && a.undirected_edges() == b.undirected_edges();
}

int omega_of_components(const Dag& g) {
  int omega = 1;
  const Pdag e = essential_graph(g);
  for (const auto& comp : chain_components(e)) {
    if (comp.size() < 2) continue;
    const auto sub = induced_subgraph(e, comp);
    omega = std::max(omega, max_clique_size(UndirectedGraph(sub.graph.vertex_count(),
                                                            sub.graph.undirected_edges())));
  }
  return omega;
}

// 1. Essential-graph equivalence against the enumeration oracle: >= 200
// random DAGs with n <= 5, all intervention sets of <= 2 atomic entries.
bool criterion1() {
  Rng rng(0xACCE0001);
  int graphs = 0, mismatches = 0;
  while (graphs < 200) {
    const int n = 2 + static_cast<int>(rng.next_below(4));  // 2..5
    const Dag g = tt::random_dag(n, 0.55, rng);
    ++graphs;
    if (!same_pdag(essential_graph(g), tt::enumerate_essential(g, {}))) ++mismatches;
    tally.check(essential_graph(g));
    std::vector<InterventionSet> isets;
    for (int a = 0; a < n; ++a) {
      InterventionSet s;
      s.add_atomic(a);
      isets.push_back(s);
      for (int b = a + 1; b < n; ++b) {
        InterventionSet s2;
        s2.add_atomic(a);
        s2.add_atomic(b);
        isets.push_back(s2);
      }
    }
    for (const auto& iset : isets) {
      const Pdag ours = interventional_essential_graph(g, iset);
      if (!same_pdag(ours, tt::enumerate_essential(g, iset))) ++mismatches;
      tally.check(ours);
    }
  }
  return mismatches == 0;
}

// 2. Meek separator guarantee over 1000 random moral DAGs, n in {8, 16, 32}.
bool criterion2(std::string& detail) {
  Rng rng(0xACCE0002);
  bool ok = true;
  detail.clear();
  for (const int n : {8, 16, 32}) {
    const int runs = n == 8 ? 334 : 333;
    long long interventions = 0;
    double omega_bound = 0.0;
    for (int t = 0; t < runs; ++t) {
      const Dag hidden = tt::random_moral_dag(n, 2.5 / n, rng);
      auto oracle = make_checked_oracle(hidden);
      const auto comp = chain_components(oracle.revealed()).front();
      const auto res = meek_separator(oracle, comp, rng.next_u64());
      interventions += oracle.count();

      if (res.separator.size() > 2) ok = false;
      // Definitional recheck on the hidden component.
      const auto sub = induced_subgraph(hidden, comp);
      InterventionSet sep;
      for (int v : res.separator) {
        const auto it = std::lower_bound(sub.original_ids.begin(), sub.original_ids.end(), v);
        sep.add_atomic(static_cast<int>(it - sub.original_ids.begin()));
      }
      for (const auto& c : chain_components(interventional_essential_graph(sub.graph, sep)))
        if (2 * c.size() > comp.size() + 1) ok = false;

      const int omega = omega_of_components(hidden);
      omega_bound += 2.0 * std::log2(std::max(2, omega)) + 3.0;
    }
    const double mean = static_cast<double>(interventions) / runs;
    if (mean > omega_bound / runs) ok = false;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "n=%d mean=%.2f ", n, mean);
    detail += buf;
  }
  return ok;
}

// 3. Components of a single-vertex interventional essential graph are {v},
// inside Des(v), or inside V \ Des[v]. 1000 pairs.
bool criterion3() {
  Rng rng(0xACCE0003);
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 6 + static_cast<int>(rng.next_below(7));
    const Dag g = tt::random_moral_dag(n, 0.2, rng);
    const int v = static_cast<int>(rng.next_below(n));
    InterventionSet iset;
    iset.add_atomic(v);
    const Pdag e = interventional_essential_graph(g, iset);
    tally.check(e);
    std::vector<char> in_des(n, 0);
    for (int d : descendants(g, v)) in_des[d] = 1;
    for (const auto& comp : chain_components(e)) {
      const bool is_v = comp.size() == 1 && comp[0] == v;
      bool all_des = true, all_anti = true;
      for (int x : comp) {
        all_des = all_des && in_des[x];
        all_anti = all_anti && !in_des[x] && x != v;
      }
      if (!(is_v || all_des || all_anti)) ++violations;
    }
  }
  return violations == 0;
}

// 4. Sandwich on r-hop instances with n <= 10 plus the search-cost bound.
bool criterion4(std::string& detail) {
  Rng rng(0xACCE0004);
  int instances = 0, violations = 0;
  while (instances < 50) {
    const int n = 8 + static_cast<int>(rng.next_below(3));  // 8..10
    const auto inst = r_hop_instance(n, 2, 0.15, rng.next_u64());
    ++instances;
    const int lb = subset_lower_bound(inst.hidden, inst.targets);
    const int nu = subset_verification_bruteforce(inst.hidden, inst.targets, n);
    if (lb > nu) ++violations;

    const int omega = omega_of_components(inst.hidden);
    const double bound = 2.0 * std::ceil(std::log2(n)) *
                             std::ceil(std::log2(std::max(2, omega))) * nu +
                         2.0;
    long long total = 0;
    const int runs = 5;
    for (int run = 0; run < runs; ++run) {
      auto oracle = make_checked_oracle(inst.hidden);
      subset_search(oracle, inst.targets, rng.next_u64());
      for (const auto& [u, v] : inst.targets.pairs())
        if (oracle.revealed().has_undirected(u, v)) ++violations;
      if (oracle.count() < nu) ++violations;
      total += oracle.count();
    }
    if (static_cast<double>(total) / runs > bound) ++violations;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%d instances", instances);
  detail = buf;
  return violations == 0;
}

// 5. Qualitative ordering on 20 r-hop instances, n = 100, r = 3:
// lb <= MeekSep-1 <= MeekSep (means) and MeekSep-1 < Random (means).
bool criterion5(std::string& detail) {
  Rng rng(0xACCE0005);
  double lb_sum = 0, ms_sum = 0, ms1_sum = 0, rnd_sum = 0;
  int violations = 0;
  for (int t = 0; t < 20; ++t) {
    const auto inst = r_hop_instance(100, 3, 0.001, rng.next_u64());
    lb_sum += subset_lower_bound(inst.hidden, inst.targets);
    const std::uint64_t seed = rng.next_u64();

    auto o_full = make_checked_oracle(inst.hidden);
    subset_search(o_full, inst.targets, seed);
    ms_sum += o_full.count();

    auto o_early = make_checked_oracle(inst.hidden);
    SubsetSearchOptions opts;
    opts.early_exit = true;
    subset_search(o_early, inst.targets, seed, opts);
    ms1_sum += o_early.count();
    if (o_early.count() > o_full.count()) ++violations;

    auto o_rand = make_checked_oracle(inst.hidden);
    random_baseline(o_rand, inst.targets, rng.next_u64());
    rnd_sum += o_rand.count();
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "lb=%.2f ms1=%.2f ms=%.2f rnd=%.2f", lb_sum / 20,
                ms1_sum / 20, ms_sum / 20, rnd_sum / 20);
  detail = buf;
  if (!(lb_sum <= ms1_sum && ms1_sum <= ms_sum)) ++violations;
  if (!(ms1_sum < rnd_sum)) ++violations;
  return violations == 0;
}

// 6. Golden trace: forced picks (1, 4, 2) on the complete four-vertex DAG
// (0-based: 0, 3, 1) return separator {2} with that exact intervened list.
bool criterion6() {
  InterventionOracle o(complete_dag(4));
  std::vector<int> picks = {0, 3, 1};
  std::size_t next = 0;
  const PickFn pick = [&](const std::vector<int>&) { return picks.at(next++); };
  const auto res = meek_separator(o, {0, 1, 2, 3}, pick);
  return res.separator == std::vector<int>{1} && res.intervened == std::vector<int>{0, 3, 1} &&
         res.completed;
}

// 7. Mean matching exactness on ER instances, n = 50, |I*| in {5, 10, 25}.
bool criterion7(std::string& detail) {
  Rng rng(0xACCE0007);
  bool ok = true;
  detail.clear();
  for (const int k : {5, 10, 25}) {
    long long structural = 0;
    double bound_sum = 0;
    for (int t = 0; t < 10; ++t) {
      const Dag g = er_dag(50, 0.2, rng.next_u64());
      const auto inst = matching_instance(g, k, rng.next_u64());
      InterventionOracle oracle(g);
      const MeanQuery observe = [&](const ShiftAssignment& a) {
        return mean_vector(inst.sem, a);
      };
      const auto got = causal_mean_match(oracle, observe, inst.target_mean, rng.next_u64());
      structural += oracle.count();

      if (got.targets() != inst.hidden_targets.targets()) ok = false;
      for (const auto& [v, a] : got.entries())
        if (std::fabs(a - inst.hidden_targets.value_or(v, 0.0)) > 1e-9) ok = false;

      const int omega = omega_of_components(g);
      bound_sum += 2.0 * std::ceil(std::log2(50)) *
                   std::ceil(std::log2(std::max(2, omega))) * k;
    }
    const double mean = static_cast<double>(structural) / 10;
    if (mean > bound_sum / 10) ok = false;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "k=%d mean=%.1f ", k, mean);
    detail += buf;
  }
  return ok;
}

// 8. Chordality tally accumulated by the oracles of criteria 1-5.
bool criterion8(std::string& detail) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%lld components, %lld violations", tally.components,
                tally.violations);
  detail = buf;
  return tally.violations == 0 && tally.components > 0;
}

// 9. Decomposition identities (200 triples) and the interval form of the
// orienting-intervention sets (100 pairs).
bool criterion9() {
  Rng rng(0xACCE0009);
  int violations = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 4 + static_cast<int>(rng.next_below(5));  // 4..8
    const Dag g = tt::random_dag(n, 0.45, rng);
    InterventionSet i1, i2, both;
    const int a = static_cast<int>(rng.next_below(n));
    const int b = static_cast<int>(rng.next_below(n));
    i1.add_atomic(a);
    i2.add_atomic(b);
    both.add_atomic(a);
    both.add_atomic(b);
    const auto arcs_of = [](const Pdag& e) {
      auto v = e.arcs();
      std::sort(v.begin(), v.end());
      return v;
    };
    const auto r_i = arcs_of(interventional_essential_graph(g, i1));
    const auto r_j = arcs_of(interventional_essential_graph(g, i2));
    const auto r_ij = arcs_of(interventional_essential_graph(g, both));
    const auto r_gi_j =
        arcs_of(interventional_essential_graph(tt::unoriented_subgraph(g, i1), i2));

    std::vector<std::pair<int, int>> diff, uni, inter;
    std::set_difference(r_j.begin(), r_j.end(), r_i.begin(), r_i.end(),
                        std::back_inserter(diff));
    std::set_union(r_gi_j.begin(), r_gi_j.end(), r_i.begin(), r_i.end(),
                   std::back_inserter(uni));
    std::set_intersection(r_gi_j.begin(), r_gi_j.end(), r_i.begin(), r_i.end(),
                          std::back_inserter(inter));
    if (r_gi_j != diff || uni != r_ij || !inter.empty()) ++violations;
  }

  int pairs = 0;
  while (pairs < 100) {
    const int n = 5 + static_cast<int>(rng.next_below(4));
    const Dag g = tt::random_moral_dag(n, 0.25, rng);
    const auto arcs = g.arcs();
    if (arcs.empty()) continue;
    const auto [u, v] = arcs[rng.next_below(arcs.size())];
    ++pairs;
    const auto got = orienting_interventions(g, u, v);
    auto anc_u = ancestors(g, u);
    anc_u.push_back(u);
    bool found = false;
    for (int w : anc_u) {
      auto des = descendants(g, w);
      des.push_back(w);
      std::sort(des.begin(), des.end());
      auto anc_v = ancestors(g, v);
      anc_v.push_back(v);
      std::sort(anc_v.begin(), anc_v.end());
      std::vector<int> interval;
      std::set_intersection(des.begin(), des.end(), anc_v.begin(), anc_v.end(),
                            std::back_inserter(interval));
      if (interval == got) {
        found = true;
        break;
      }
    }
    if (!found) ++violations;
  }
  return violations == 0;
}

}  // namespace

int main() {
  Gate gate;
  std::string detail;

  gate.start();
  gate.finish(1, "essential-graph oracle equivalence", criterion1(), "200 DAGs, all <=2-sets");

  gate.start();
  detail.clear();
  {
    const bool ok = criterion2(detail);
    gate.finish(2, "meek separator guarantee", ok, detail);
  }

  gate.start();
  gate.finish(3, "single-intervention component split", criterion3(), "1000 pairs");

  gate.start();
  detail.clear();
  {
    const bool ok = criterion4(detail);
    gate.finish(4, "subset-search sandwich", ok, detail);
  }

  gate.start();
  detail.clear();
  {
    const bool ok = criterion5(detail);
    gate.finish(5, "qualitative ordering n=100 r=3", ok, detail);
  }

  gate.start();
  gate.finish(6, "golden separator trace", criterion6(), "picks (1,4,2) -> {2}");

  gate.start();
  detail.clear();
  {
    const bool ok = criterion7(detail);
    gate.finish(7, "mean matching exactness", ok, detail);
  }

  gate.start();
  detail.clear();
  {
    const bool ok = criterion8(detail);
    gate.finish(8, "chain-component chordality", ok, detail);
  }

  gate.start();
  gate.finish(9, "decomposition and interval identities", criterion9(),
              "200 triples, 100 pairs");

  return gate.all_ok ? 0 : 1;
}
