#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "meeksep/algorithms.hpp"
#include "meeksep/chordal.hpp"
#include "meeksep/generators.hpp"
#include "meeksep/graph.hpp"
#include "meeksep/meek.hpp"
#include "meeksep/oracle.hpp"

namespace py = pybind11;
using namespace meeksep;

namespace {

InterventionSet iset_from_lists(const std::vector<std::vector<int>>& entries) {
  InterventionSet s;
  for (const auto& e : entries) s.add(e);
  return s;
}

ShiftAssignment assignment_from_dict(const std::map<int, double>& shifts) {
  ShiftAssignment a;
  for (const auto& [v, x] : shifts) a.set(v, x);
  return a;
}

std::map<int, double> assignment_to_dict(const ShiftAssignment& a) {
  std::map<int, double> out;
  for (const auto& [v, x] : a.entries()) out[v] = x;
  return out;
}

}  // namespace

PYBIND11_MODULE(_meeksep, m) {
  m.doc() = "Meek separators, adaptive subset search and causal mean matching";

  py::register_exception<GraphError>(m, "GraphError");
  py::register_exception<InputError>(m, "InputError");
  py::register_exception<BoundError>(m, "BoundError");

  py::class_<Dag>(m, "Dag")
      .def(py::init<int, const std::vector<std::pair<int, int>>&>(), py::arg("n"),
           py::arg("arcs"))
      .def_property_readonly("n", &Dag::vertex_count)
      .def("arcs", &Dag::arcs)
      .def("has_arc", &Dag::has_arc)
      .def("parents", [](const Dag& g, int v) { return g.parents(v); })
      .def("children", [](const Dag& g, int v) { return g.children(v); })
      .def("__repr__", [](const Dag& g) {
        return "<Dag n=" + std::to_string(g.vertex_count()) + " arcs=" +
               std::to_string(g.arc_count()) + ">";
      });

  py::class_<Pdag>(m, "Pdag")
      .def(py::init<int, const std::vector<std::pair<int, int>>&,
                    const std::vector<std::pair<int, int>>&>(),
           py::arg("n"), py::arg("arcs"), py::arg("undirected"))
      .def_property_readonly("n", &Pdag::vertex_count)
      .def("arcs", &Pdag::arcs)
      .def("undirected_edges", &Pdag::undirected_edges)
      .def("has_arc", &Pdag::has_arc)
      .def("has_undirected", &Pdag::has_undirected)
      .def("fully_oriented", &Pdag::fully_oriented)
      .def("__repr__", [](const Pdag& g) {
        return "<Pdag n=" + std::to_string(g.vertex_count()) + " arcs=" +
               std::to_string(g.arc_count()) + " undirected=" +
               std::to_string(g.undirected_count()) + ">";
      });

  m.def("topological_order", &topological_order);
  m.def("descendants", &descendants);
  m.def("ancestors", &ancestors);
  m.def("chain_components", &chain_components);
  m.def("v_structures", &v_structures);
  m.def("covered_edges", [](const Dag& g) { return covered_edges(g).pairs(); });
  m.def("is_moral", &is_moral);
  m.def("is_chain_graph", &is_chain_graph);

  m.def("meek_closure", &meek_closure);
  m.def("essential_graph", &essential_graph);
  m.def(
      "interventional_essential_graph",
      [](const Dag& g, const std::vector<std::vector<int>>& iset) {
        return interventional_essential_graph(g, iset_from_lists(iset));
      },
      py::arg("g"), py::arg("interventions"));
  m.def("recovered_parents", [](const Dag& g, const std::vector<std::vector<int>>& iset, int u) {
    return recovered_parents(g, iset_from_lists(iset), u);
  });
  m.def("orienting_interventions", &orienting_interventions);

  m.def("is_chordal", [](int n, const std::vector<std::pair<int, int>>& edges) {
    return is_chordal(UndirectedGraph(n, edges));
  });
  m.def("max_clique_size", [](int n, const std::vector<std::pair<int, int>>& edges) {
    return max_clique_size(UndirectedGraph(n, edges));
  });
  m.def("mcs_order", [](int n, const std::vector<std::pair<int, int>>& edges) {
    return mcs_order(UndirectedGraph(n, edges));
  });
  m.def(
      "clique_separator",
      [](int n, const std::vector<std::pair<int, int>>& edges, double alpha) {
        const auto cs = clique_separator(UndirectedGraph(n, edges), alpha);
        return py::make_tuple(cs.clique, cs.components);
      },
      py::arg("n"), py::arg("edges"), py::arg("alpha") = 0.5);

  py::class_<InterventionOracle>(m, "InterventionOracle")
      .def(py::init<Dag>(), py::arg("hidden"))
      .def_property_readonly("n", &InterventionOracle::vertex_count)
      .def_property_readonly("count", &InterventionOracle::count)
      .def("revealed", &InterventionOracle::revealed, py::return_value_policy::copy)
      .def("intervene", &InterventionOracle::intervene, py::return_value_policy::copy);

  py::class_<ShiftSem>(m, "ShiftSem")
      .def(py::init<Dag, const std::vector<std::tuple<int, int, double>>&, std::vector<double>>(),
           py::arg("g"), py::arg("weights"), py::arg("intercepts"))
      .def_property_readonly("graph", &ShiftSem::graph)
      .def("weight", &ShiftSem::weight);

  m.def(
      "mean_vector",
      [](const ShiftSem& sem, const std::map<int, double>& shifts) {
        return mean_vector(sem, assignment_from_dict(shifts));
      },
      py::arg("sem"), py::arg("shifts"));

  m.def(
      "meek_separator",
      [](InterventionOracle& o, const std::vector<int>& component, std::uint64_t seed) {
        const auto r = meek_separator(o, component, seed);
        return py::make_tuple(r.separator, r.intervened, r.component_sizes);
      },
      py::arg("oracle"), py::arg("component"), py::arg("seed"));

  m.def(
      "subset_search",
      [](InterventionOracle& o, const std::vector<std::pair<int, int>>& targets,
         std::uint64_t seed, bool early_exit) {
        SubsetSearchOptions opts;
        opts.early_exit = early_exit;
        const auto used = subset_search(o, EdgeSet(targets), seed, opts);
        std::vector<int> out;
        for (const auto& e : used.entries()) out.push_back(e.front());
        return out;
      },
      py::arg("oracle"), py::arg("targets"), py::arg("seed"), py::arg("early_exit") = false);

  m.def(
      "find_source",
      [](InterventionOracle& o, const std::vector<int>& u_set, std::uint64_t seed) {
        const auto r = find_source(o, u_set, seed);
        std::vector<int> used;
        for (const auto& e : r.used.entries()) used.push_back(e.front());
        return py::make_tuple(r.source, used);
      },
      py::arg("oracle"), py::arg("u_set"), py::arg("seed"));

  m.def(
      "causal_mean_match",
      [](InterventionOracle& o, const ShiftSem& sem, const std::vector<double>& target_mean,
         std::uint64_t seed, bool early_exit, double tol) {
        MeanMatchOptions opts;
        opts.early_exit = early_exit;
        opts.tol = tol;
        const MeanQuery observe = [&sem](const ShiftAssignment& a) { return mean_vector(sem, a); };
        return assignment_to_dict(causal_mean_match(o, observe, target_mean, seed, opts));
      },
      py::arg("oracle"), py::arg("sem"), py::arg("target_mean"), py::arg("seed"),
      py::arg("early_exit") = false, py::arg("tol") = 1e-9);

  m.def(
      "random_baseline",
      [](InterventionOracle& o, const std::vector<std::pair<int, int>>& targets,
         std::uint64_t seed) {
        const auto used = random_baseline(o, EdgeSet(targets), seed);
        std::vector<int> out;
        for (const auto& e : used.entries()) out.push_back(e.front());
        return out;
      },
      py::arg("oracle"), py::arg("targets"), py::arg("seed"));

  m.def("subset_lower_bound", [](const Dag& g, const std::vector<std::pair<int, int>>& targets) {
    return subset_lower_bound(g, EdgeSet(targets));
  });
  m.def("full_verification_number", &full_verification_number);
  m.def(
      "subset_verification_bruteforce",
      [](const Dag& g, const std::vector<std::pair<int, int>>& targets, int k_max) {
        return subset_verification_bruteforce(g, EdgeSet(targets), k_max);
      },
      py::arg("g"), py::arg("targets"), py::arg("k_max"));

  m.def("er_dag", &er_dag, py::arg("n"), py::arg("density"), py::arg("seed"));
  m.def("ba_dag", &ba_dag, py::arg("n"), py::arg("m_attach"), py::arg("seed"));
  m.def("tree_dag", &tree_dag, py::arg("n"), py::arg("seed"));
  m.def(
      "r_hop_instance",
      [](int n, int r, double density, std::uint64_t seed) {
        const auto inst = r_hop_instance(n, r, density, seed);
        return py::make_tuple(inst.hidden, inst.targets.pairs(), inst.hop_center);
      },
      py::arg("n"), py::arg("r"), py::arg("density"), py::arg("seed"));
  m.def(
      "matching_instance",
      [](const Dag& g, int k, std::uint64_t seed) {
        const auto inst = matching_instance(g, k, seed);
        return py::make_tuple(inst.sem, assignment_to_dict(inst.hidden_targets),
                              inst.target_mean);
      },
      py::arg("g"), py::arg("k"), py::arg("seed"));
}
