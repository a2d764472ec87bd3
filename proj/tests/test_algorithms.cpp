#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "meeksep/algorithms.hpp"
#include "meeksep/chordal.hpp"
#include "meeksep/generators.hpp"
#include "meeksep/meek.hpp"
#include "meeksep/rng.hpp"
#include "oracles.hpp"

using namespace meeksep;
namespace tt = meeksep::testing;

namespace {

Dag complete_dag(int n) {
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) arcs.emplace_back(i, j);
  return Dag(n, arcs);
}

PickFn scripted(std::vector<int> picks) {
  auto remaining = std::make_shared<std::vector<int>>(std::move(picks));
  return [remaining](const std::vector<int>&) {
    REQUIRE_FALSE(remaining->empty());
    const int v = remaining->front();
    remaining->erase(remaining->begin());
    return v;
  };
}

// Definitional check: intervening on the separator alone leaves every chain
// component of the input component at no more than half its size.
void check_separator_definition(const Dag& hidden, const std::vector<int>& comp,
                                const MeekSeparatorResult& res) {
  REQUIRE(res.completed);
  REQUIRE(res.separator.size() <= 2);
  const auto sub = induced_subgraph(hidden, comp);
  InterventionSet sep;
  for (int v : res.separator) {
    const auto it = std::lower_bound(sub.original_ids.begin(), sub.original_ids.end(), v);
    REQUIRE(it != sub.original_ids.end());
    REQUIRE(*it == v);
    sep.add_atomic(static_cast<int>(it - sub.original_ids.begin()));
  }
  const Pdag closed = interventional_essential_graph(sub.graph, sep);
  for (const auto& c : chain_components(closed))
    CHECK(2 * c.size() <= comp.size() + 1);  // <= ceil(|comp| / 2)
}

EdgeSet all_skeleton_edges(const Dag& g) {
  EdgeSet out;
  for (const auto& [u, v] : g.arcs()) out.insert(u, v);
  return out;
}

}  // namespace

TEST_CASE("meek separator reproduces the forced trace") {
  // Complete DAG on four vertices, picks 0, 3, 1 (1, 4, 2 in 1-based labels):
  // the search must return separator {1} having intervened (0, 3, 1).
  InterventionOracle o(complete_dag(4));
  SearchTranscript tr;
  const auto res = meek_separator(o, {0, 1, 2, 3}, scripted({0, 3, 1}), &tr);
  CHECK(res.separator == std::vector<int>{1});
  CHECK(res.intervened == std::vector<int>{0, 3, 1});
  CHECK(res.completed);
  CHECK(o.count() == 3);
  CHECK(res.component_sizes == std::vector<int>{1, 1, 2});
  CHECK(tr.steps.size() == 3);
  CHECK(tr.steps[0].branch == "desc");
  CHECK(tr.steps[1].branch == "anc");
  CHECK(tr.steps[2].branch == "done");
  CHECK(tr.dump() ==
        "0 0 |3| desc\n1 3 |3| anc\n2 1 |2| done\ntotal=3\n");
}

TEST_CASE("meek separator on a two-vertex component") {
  InterventionOracle o(Dag(2, {{0, 1}}));
  const auto res = meek_separator(o, {0, 1}, 99);
  CHECK(res.separator.size() == 1);
  CHECK(res.intervened.size() == 1);
  CHECK(o.count() == 1);
  CHECK(res.component_sizes == std::vector<int>{1, 1});
}

TEST_CASE("meek separator rejects bad components") {
  InterventionOracle o(complete_dag(4));
  CHECK_THROWS_AS(meek_separator(o, {0, 1}, 1), InputError);     // not a chain component
  CHECK_THROWS_AS(meek_separator(o, {2}, 1), InputError);        // too small
  InterventionOracle o2(Dag(3, {{0, 2}, {1, 2}}));               // fully oriented
  CHECK_THROWS_AS(meek_separator(o2, {0, 1, 2}, 1), InputError);
}

TEST_CASE("meek separator definitional check on random moral dags") {
  Rng rng(101);
  for (int t = 0; t < 100; ++t) {
    const Dag hidden = tt::random_moral_dag(16, 0.12, rng);
    InterventionOracle o(hidden);
    const auto comp = chain_components(o.revealed()).front();
    REQUIRE(comp.size() == 16);  // connected moral graph: one component
    const auto res = meek_separator(o, comp, rng.next_u64());
    check_separator_definition(hidden, comp, res);
    // All queried vertices are distinct (the search never repeats).
    auto iv = res.intervened;
    std::sort(iv.begin(), iv.end());
    CHECK(std::adjacent_find(iv.begin(), iv.end()) == iv.end());
    CHECK(o.count() == static_cast<int>(res.intervened.size()));
  }
}

TEST_CASE("separator search replays deterministically") {
  Rng seed_rng(7);
  const Dag hidden = tt::random_moral_dag(20, 0.15, seed_rng);
  SearchTranscript t1, t2;
  InterventionOracle o1(hidden), o2(hidden);
  const auto comp = chain_components(o1.revealed()).front();
  const auto r1 = meek_separator(o1, comp, uniform_pick(424242), &t1);
  const auto r2 = meek_separator(o2, comp, uniform_pick(424242), &t2);
  CHECK(r1.separator == r2.separator);
  CHECK(r1.intervened == r2.intervened);
  CHECK(t1.dump() == t2.dump());
}

TEST_CASE("lemma: components after one intervention sit inside A_v or B_v") {
  Rng rng(103);
  for (int t = 0; t < 60; ++t) {
    const Dag g = tt::random_moral_dag(10, 0.2, rng);
    const int v = static_cast<int>(rng.next_below(10));
    InterventionSet iset;
    iset.add_atomic(v);
    const Pdag e = interventional_essential_graph(g, iset);
    const auto des = descendants(g, v);
    std::vector<char> in_b(10, 0), in_a(10, 1);
    for (int d : des) in_b[d] = 1;
    in_a[v] = 0;
    for (int d : des) in_a[d] = 0;
    for (const auto& comp : chain_components(e)) {
      const bool is_v = comp.size() == 1 && comp[0] == v;
      bool all_b = true, all_a = true;
      for (int x : comp) {
        all_b = all_b && in_b[x];
        all_a = all_a && in_a[x];
      }
      CHECK((is_v || all_b || all_a));
    }
  }
}

TEST_CASE("lemma: clique order makes |A_v| monotone") {
  Rng rng(107);
  for (int t = 0; t < 30; ++t) {
    const Dag g = tt::random_moral_dag(12, 0.25, rng);
    std::vector<std::pair<int, int>> skel;
    for (const auto& [u, v] : g.arcs()) skel.emplace_back(std::min(u, v), std::max(u, v));
    const UndirectedGraph ug(12, skel);
    const auto cs = clique_separator(ug);
    // Hidden order within the clique; |A_v| = n - 1 - |Des(v)| must ascend.
    std::vector<int> clique = cs.clique;
    std::sort(clique.begin(), clique.end(), [&](int a, int b) {
      return g.has_arc(a, b);  // clique members are totally ordered by arcs
    });
    int prev = -1;
    for (int v : clique) {
      const int a_v = 12 - 1 - static_cast<int>(descendants(g, v).size());
      CHECK(a_v >= prev);
      prev = a_v;
    }
    // The clique source satisfies |A| <= n/2.
    const int first = clique.front();
    CHECK(2 * (12 - 1 - static_cast<int>(descendants(g, first).size())) <= 12);
  }
}

TEST_CASE("subset search fixtures") {
  // Targets already oriented: no interventions at all.
  InterventionOracle pre(Dag(3, {{0, 2}, {1, 2}}));
  const auto used = subset_search(pre, EdgeSet({{0, 2}}), 1);
  CHECK(used.empty());
  CHECK(pre.count() == 0);

  // Single target inside the clique: at least one intervention, target ends
  // oriented in every run.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    InterventionOracle o(complete_dag(4));
    subset_search(o, EdgeSet({{0, 1}}), seed);
    CHECK(o.revealed().has_arc(0, 1));
    CHECK(o.count() >= 1);
  }

  InterventionOracle bad(complete_dag(4));
  CHECK_THROWS_AS(subset_search(bad, EdgeSet({{0, 5}}), 1), InputError);
}

TEST_CASE("subset search orients every target on random instances") {
  Rng rng(109);
  for (int t = 0; t < 30; ++t) {
    const auto inst = r_hop_instance(14, 2, 0.15, rng.next_u64());
    InterventionOracle o(inst.hidden);
    const auto used = subset_search(o, inst.targets, rng.next_u64());
    for (const auto& [u, v] : inst.targets.pairs()) {
      CHECK((o.revealed().has_arc(u, v) || o.revealed().has_arc(v, u)));
    }
    CHECK(o.count() == static_cast<int>(used.size()));
    CHECK(o.count() >= subset_lower_bound(inst.hidden, inst.targets));
  }
}

TEST_CASE("subset search replays bit-identically") {
  const auto inst = r_hop_instance(40, 3, 0.02, 2024);
  SearchTranscript t1, t2;
  InterventionOracle o1(inst.hidden), o2(inst.hidden);
  SubsetSearchOptions opts1, opts2;
  opts1.transcript = &t1;
  opts2.transcript = &t2;
  subset_search(o1, inst.targets, 555, opts1);
  subset_search(o2, inst.targets, 555, opts2);
  CHECK(t1.dump() == t2.dump());
  CHECK(o1.count() == o2.count());
}

TEST_CASE("early exit never costs more") {
  Rng rng(113);
  for (int t = 0; t < 15; ++t) {
    const auto inst = r_hop_instance(16, 2, 0.1, rng.next_u64());
    const std::uint64_t seed = rng.next_u64();
    InterventionOracle full(inst.hidden), early(inst.hidden);
    subset_search(full, inst.targets, seed);
    SubsetSearchOptions opts;
    opts.early_exit = true;
    subset_search(early, inst.targets, seed, opts);
    CHECK(early.count() <= full.count());
    for (const auto& [u, v] : inst.targets.pairs())
      CHECK_FALSE(early.revealed().has_undirected(u, v));
  }
}

TEST_CASE("find source fixtures") {
  // Singleton set: no interventions.
  InterventionOracle o1(complete_dag(4));
  const auto r1 = find_source(o1, {2}, 1);
  CHECK(r1.source == 2);
  CHECK(o1.count() == 0);

  // Complete DAG, u_set = {1, 2, 3}: the earliest of them.
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    InterventionOracle o(complete_dag(4));
    const auto r = find_source(o, {1, 2, 3}, seed);
    CHECK(r.source == 1);
  }

  InterventionOracle o2(complete_dag(4));
  CHECK_THROWS_AS(find_source(o2, {}, 1), InputError);
}

TEST_CASE("find source returns a vertex with no ancestor in the set") {
  Rng rng(127);
  for (int t = 0; t < 25; ++t) {
    const Dag g = tt::random_moral_dag(24, 0.08, rng);
    std::vector<int> u_set;
    for (int v = 0; v < 24; ++v)
      if (rng.bernoulli(0.4)) u_set.push_back(v);
    if (u_set.empty()) u_set.push_back(0);
    InterventionOracle o(g);
    const auto res = find_source(o, u_set, rng.next_u64());
    REQUIRE(res.completed);
    const auto anc = ancestors(g, res.source);
    for (int a : anc) CHECK(!std::binary_search(u_set.begin(), u_set.end(), a));
    CHECK(std::binary_search(u_set.begin(), u_set.end(), res.source));
  }

  // u_set = V on a moral DAG: the unique global source (in-degree zero).
  Rng seed_rng(129);
  const Dag g = tt::random_moral_dag(32, 0.1, seed_rng);
  std::vector<int> all(32);
  for (int i = 0; i < 32; ++i) all[i] = i;
  InterventionOracle o(g);
  const auto res = find_source(o, all, 5);
  CHECK(g.parents(res.source).empty());
}

TEST_CASE("identified sources") {
  // 0 -> 1 oriented, 1 ~ 2 undirected.
  const Pdag rev(3, {{0, 1}}, {{1, 2}});
  CHECK(identified_sources(rev, {0, 1, 2}) == std::vector<int>{0});
  CHECK(identified_sources(rev, {1, 2}) == std::vector<int>{});  // 1~2 blocks both
  CHECK(identified_sources(rev, {0, 2}) == std::vector<int>{0, 2});
}

TEST_CASE("causal mean match fixtures") {
  const Dag chain(3, {{0, 1}, {1, 2}});
  const ShiftSem sem(chain, {{0, 1, 1.0}, {1, 2, 1.0}}, {0.0, 0.0, 0.0});
  const MeanQuery observe = [&](const ShiftAssignment& a) { return mean_vector(sem, a); };

  // Observational target: nothing to do.
  InterventionOracle o0(chain);
  const auto r0 = causal_mean_match(o0, observe, mean_vector(sem, {}), 1);
  CHECK(r0.empty());
  CHECK(o0.count() == 0);

  // Hidden shift at the head of the chain.
  ShiftAssignment hidden;
  hidden.set(0, 1.0);
  InterventionOracle o1(chain);
  const auto r1 = causal_mean_match(o1, observe, mean_vector(sem, hidden), 2);
  CHECK(r1.targets() == std::vector<int>{0});
  CHECK(r1.value_or(0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

  // Every finite vector is realizable by some shift assignment, so the
  // diagnostic path guards non-finite targets where the mismatch persists.
  InterventionOracle o2(chain);
  std::vector<double> impossible = {0.0, std::numeric_limits<double>::infinity(), 0.0};
  CHECK_THROWS_AS(causal_mean_match(o2, observe, impossible, 3), InputError);
}

TEST_CASE("causal mean match needs structure search on moral graphs") {
  // Trees have fully undirected essential graphs, so sources must be exposed
  // by actual interventions; recovery stays exact.
  Rng rng(313);
  for (int t = 0; t < 10; ++t) {
    const Dag g = tree_dag(25, rng.next_u64());
    const auto inst = matching_instance(g, 4, rng.next_u64());
    InterventionOracle o(g);
    const MeanQuery observe = [&](const ShiftAssignment& a) { return mean_vector(inst.sem, a); };
    const auto got = causal_mean_match(o, observe, inst.target_mean, rng.next_u64());
    CHECK(got.targets() == inst.hidden_targets.targets());
  }
}

TEST_CASE("causal mean match recovers random instances exactly") {
  Rng rng(131);
  for (int t = 0; t < 15; ++t) {
    const Dag g = er_dag(20, 0.25, rng.next_u64());
    const auto inst = matching_instance(g, 4, rng.next_u64());
    InterventionOracle o(g);
    const MeanQuery observe = [&](const ShiftAssignment& a) { return mean_vector(inst.sem, a); };
    const auto got = causal_mean_match(o, observe, inst.target_mean, rng.next_u64());
    REQUIRE(got.targets() == inst.hidden_targets.targets());
    for (const auto& [v, a] : got.entries())
      CHECK(std::fabs(a - inst.hidden_targets.value_or(v, 0.0)) <= 1e-9);
    // Reproduces the target mean.
    const auto mu = mean_vector(inst.sem, got);
    for (int v = 0; v < 20; ++v) CHECK(std::fabs(mu[v] - inst.target_mean[v]) <= 1e-9);
  }
}

TEST_CASE("random mean match also recovers, at higher cost") {
  Rng rng(137);
  const Dag g = er_dag(16, 0.3, rng.next_u64());
  const auto inst = matching_instance(g, 3, rng.next_u64());
  InterventionOracle o(g);
  const MeanQuery observe = [&](const ShiftAssignment& a) { return mean_vector(inst.sem, a); };
  const auto got = random_mean_match(o, observe, inst.target_mean, rng.next_u64());
  CHECK(got.targets() == inst.hidden_targets.targets());
}

TEST_CASE("subset lower bound") {
  const Dag d4 = complete_dag(4);
  CHECK(subset_lower_bound(d4, EdgeSet({{0, 1}})) == 1);
  CHECK(subset_lower_bound(d4, EdgeSet()) == 0);
  // All targets oriented observationally: bound is zero.
  const Dag vs(3, {{0, 2}, {1, 2}});
  CHECK(subset_lower_bound(vs, EdgeSet({{0, 2}, {1, 2}})) == 0);
}

TEST_CASE("full verification number") {
  CHECK(full_verification_number(complete_dag(4)) == 2);
  CHECK(full_verification_number(Dag(2, {{0, 1}})) == 1);
  CHECK(full_verification_number(Dag(3, {{0, 2}, {1, 2}})) == 0);

  // Branch and bound agrees with exhaustive vertex-cover search.
  Rng rng(139);
  for (int t = 0; t < 25; ++t) {
    const Dag g = tt::random_dag(8, 0.45, rng);
    const auto cov = covered_edges(g).pairs();
    CHECK(full_verification_number(g) == tt::brute_min_vertex_cover(8, cov));
  }
}

TEST_CASE("subset verification brute force") {
  const Dag d4 = complete_dag(4);
  CHECK(subset_verification_bruteforce(d4, EdgeSet({{0, 1}}), 4) == 1);
  CHECK(subset_verification_bruteforce(d4, all_skeleton_edges(d4), 4) == 2);
  CHECK(subset_verification_bruteforce(d4, EdgeSet(), 4) == 0);
  CHECK_THROWS_AS(subset_verification_bruteforce(d4, all_skeleton_edges(d4), 1), BoundError);
  CHECK_THROWS_AS(subset_verification_bruteforce(complete_dag(13), EdgeSet(), 1), InputError);

  // Full-edge subset verification equals the covered-edge vertex cover.
  Rng rng(149);
  for (int t = 0; t < 15; ++t) {
    const Dag g = tt::random_dag(7, 0.4, rng);
    CHECK(subset_verification_bruteforce(g, all_skeleton_edges(g), 7) ==
          full_verification_number(g));
  }
}

TEST_CASE("random baseline") {
  InterventionOracle pre(Dag(3, {{0, 2}, {1, 2}}));
  CHECK(random_baseline(pre, EdgeSet({{0, 2}}), 1).empty());

  // Single undirected edge: at most both endpoints get probed.
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    InterventionOracle o(Dag(2, {{0, 1}}));
    const auto used = random_baseline(o, EdgeSet({{0, 1}}), seed);
    CHECK(used.size() <= 2);
    CHECK(o.revealed().fully_oriented());
  }

  // Deterministic replay.
  const auto inst = r_hop_instance(20, 2, 0.05, 99);
  InterventionOracle o1(inst.hidden), o2(inst.hidden);
  const auto u1 = random_baseline(o1, inst.targets, 321);
  const auto u2 = random_baseline(o2, inst.targets, 321);
  CHECK(u1.entries() == u2.entries());
  for (const auto& [u, v] : inst.targets.pairs())
    CHECK_FALSE(o1.revealed().has_undirected(u, v));
}

TEST_CASE("sandwich on small instances") {
  Rng rng(151);
  for (int t = 0; t < 12; ++t) {
    const auto inst = r_hop_instance(8 + t % 3, 2, 0.15, rng.next_u64());
    const int lb = subset_lower_bound(inst.hidden, inst.targets);
    const int nu = subset_verification_bruteforce(inst.hidden, inst.targets,
                                                  inst.hidden.vertex_count());
    InterventionOracle o(inst.hidden);
    subset_search(o, inst.targets, rng.next_u64());
    CHECK(lb <= nu);
    CHECK(nu <= o.count());
  }
}
