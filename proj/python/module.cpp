#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "souvlaki/assembly.hpp"
#include "souvlaki/census.hpp"
#include "souvlaki/diagnostics.hpp"
#include "souvlaki/electrical.hpp"
#include "souvlaki/errors.hpp"
#include "souvlaki/flow.hpp"
#include "souvlaki/topology.hpp"
#include "souvlaki/walk.hpp"

namespace py = pybind11;
using namespace souvlaki;

namespace {

py::object to_py(const Rational& x) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_fraction(x));
}

py::object to_py(const BigInt& x) { return py::int_(py::str(x.str())); }

electrical::SolverOptions solver(double tol) {
  electrical::SolverOptions o;
  o.tolerance = tol;
  return o;
}

py::dict energy_dict(const flow::EnergyReport& r) {
  py::dict d;
  d["k"] = r.k;
  d["ascent"] = to_py(r.ascent);
  d["horizontal"] = to_py(r.horizontal);
  d["descent"] = to_py(r.descent);
  d["redistribution"] = to_py(r.redistribution);
  d["total"] = to_py(r.total);
  d["k2_total"] = to_py(r.k2_total);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Canopy tree souvlaki graphs: construction, census, flows, resistances, walks and diagnostics.";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<CoordinateError>(m, "CoordinateError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_MemoryError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_ArithmeticError);

  py::class_<Graph>(m, "Graph")
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("degree", &Graph::degree)
      .def("neighbors", [](const Graph& g, VertexId v) {
        const auto n = g.neighbors(v);
        return std::vector<VertexId>(n.begin(), n.end());
      })
      .def("edges", &Graph::edge_list)
      .def("max_degree", &Graph::max_degree)
      .def("name", &Graph::name)
      .def("is_spine", [](const Graph& g, VertexId v) { return g.label(v).spine; })
      .def("__len__", &Graph::num_vertices);

  py::class_<assembly::Assembled>(m, "Assembled")
      .def_readonly("graph", &assembly::Assembled::graph)
      .def_readonly("components", &assembly::Assembled::components)
      .def_property_readonly("source", &assembly::Assembled::source)
      .def("frontier", &assembly::Assembled::frontier)
      .def("junction", &assembly::Assembled::junction)
      .def("spine_vertices", &assembly::Assembled::spine_vertices)
      .def("header", [](const assembly::Assembled& a) { return a.souvlaki->header(); });

  m.def("meatball", [](int k, bool left_only) {
    return topology::materialize_meatball(topology::MeatballSpec(k), left_only ? topology::Part::LeftOnly
                                                                             : topology::Part::Full);
  }, py::arg("k"), py::arg("left_only") = false, "Materialized M_k, or its left piece.");
  m.def("tree", [](int n, int d) { return assembly::assemble_Tn(n, d); }, py::arg("n"), py::arg("d") = 7,
        py::call_guard<py::gil_scoped_release>());
  m.def("spine", [](int K, int d) { return assembly::spine_truncation(K, d); }, py::arg("K"), py::arg("d") = 7,
        py::call_guard<py::gil_scoped_release>());

  m.def("volume", [](int k) { return to_py(census::volume_vk(k)); }, py::arg("k"));
  m.def("level_count", [](int k, int row) { return to_py(census::level_count(k, row)); });
  m.def("root_level_prob", [](int k, int n, int d) { return to_py(census::root_level_prob(k, n, d)); },
        py::arg("k"), py::arg("n"), py::arg("d") = 7);
  m.def("limit_level_prob", [](int k, int d, double tol) {
    const auto i = census::limit_level_prob(k, d, Rational(tol));
    return py::make_tuple(to_py(i.lo), to_py(i.hi));
  }, py::arg("k"), py::arg("d") = 7, py::arg("tol") = 1e-10);

  m.def("energy_analytic", [](int k) { return energy_dict(flow::energy_analytic(k)); });
  m.def("energy_exact", [](int k) {
    const auto f = flow::build_flow_gk(k);
    return energy_dict(flow::energy_exact(f.flow, f.graph, k));
  });
  m.def("concatenated_energy", [](int K) { return to_py(flow::concatenated_energy_analytic(K)); });

  m.def("effective_resistance", [](const Graph& g, std::vector<VertexId> a, std::vector<VertexId> b, double tol) {
    const auto r = electrical::effective_resistance(g, a, b, solver(tol));
    return py::make_tuple(r.value, r.residual, r.iterations);
  }, py::arg("graph"), py::arg("a"), py::arg("b"), py::arg("tol") = 1e-10);
  m.def("exact_effective_resistance", [](const Graph& g, std::vector<VertexId> a, std::vector<VertexId> b) {
    return to_py(electrical::exact_effective_resistance(g, a, b));
  });
  m.def("junction_profile", [](const assembly::Assembled& spine, double tol) {
    std::vector<std::tuple<int, double, int>> rows;
    for (const auto& r : electrical::junction_resistance_profile(spine, solver(tol))) {
      rows.emplace_back(r.k, r.resistance.value, r.degree);
    }
    return rows;
  }, py::arg("spine"), py::arg("tol") = 1e-10);
  m.def("tree_resistance", [](const assembly::Assembled& spine, const std::string& strategy, std::uint64_t seed) {
    const auto c = electrical::subtree_resistance_contrast(spine, electrical::parse_tree_strategy(strategy), seed);
    return py::make_tuple(c.tree, c.graph);
  }, py::arg("spine"), py::arg("strategy") = "bfs", py::arg("seed") = 0);

  m.def("spine_hitting", [](const Graph& g, VertexId start, std::int64_t runs, std::int64_t horizon,
                            std::uint64_t seed) {
    const auto s = walk::simulate_spine_hitting(g, start, runs, horizon, seed);
    py::dict d;
    d["runs"] = s.runs;
    d["hits"] = s.hits;
    d["frequency"] = s.frequency();
    d["quantiles"] = s.quantiles;
    return d;
  }, py::arg("graph"), py::arg("start"), py::arg("runs"), py::arg("horizon"), py::arg("seed"));
  m.def("bush_starts", &walk::bush_starts, py::arg("graph"), py::arg("count"), py::arg("seed"));
  m.def("escape_probability", [](const assembly::Assembled& spine) {
    const auto e = walk::escape_probability(spine);
    return py::make_tuple(e.probability, e.via_resistance);
  });
  m.def("radial_symmetry_deviation", [](int k) { return walk::radial_symmetry_check(k).max_deviation; });

  m.def("mtp_random", [](int n, int d, int radius, std::uint64_t seed) {
    const auto r = diagnostics::mtp_check(n, d, diagnostics::TransportFunction::random(radius, seed));
    return py::make_tuple(to_py(r.lhs), to_py(r.rhs));
  }, py::arg("n"), py::arg("d"), py::arg("radius"), py::arg("seed"));
  m.def("gromov_delta", [](const Graph& g, const std::string& mode, std::uint64_t quadruples, std::uint64_t seed) {
    const auto s = diagnostics::gromov_delta(g, diagnostics::parse_delta_mode(mode), quadruples, seed);
    return to_py(s.delta());
  }, py::arg("graph"), py::arg("mode") = "exact", py::arg("quadruples") = 0, py::arg("seed") = 0);

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs one command line of the tool; returns (exit code, stdout, stderr).");
}
