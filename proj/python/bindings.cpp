#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smartroute/engine.hpp"
#include "smartroute/failmodel.hpp"
#include "smartroute/spf.hpp"

namespace py = pybind11;
using namespace smartroute;

namespace {

std::vector<std::uint32_t> ids(const std::vector<NodeId>& nodes) {
  std::vector<std::uint32_t> out;
  out.reserve(nodes.size());
  for (NodeId n : nodes) out.push_back(n.value);
  return out;
}

std::vector<std::uint32_t> ids(const std::vector<LinkId>& links) {
  std::vector<std::uint32_t> out;
  out.reserve(links.size());
  for (LinkId l : links) out.push_back(l.value);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "smartroute simulator core";

  py::register_exception<TopologyError>(m, "TopologyError", PyExc_ValueError);
  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);

  py::enum_<Mode>(m, "Mode").value("SDN", Mode::Sdn).value("SR", Mode::Sr);

  py::class_<Topology, std::shared_ptr<Topology>>(m, "Topology")
      .def_property_readonly("name", &Topology::name)
      .def_property_readonly("node_count", &Topology::node_count)
      .def_property_readonly("link_count", &Topology::link_count)
      .def("links",
           [](const Topology& t) {
             std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, double>> out;
             for (const Link& l : t.links()) out.emplace_back(l.id.value, l.a.value, l.b.value, l.length_km);
             return out;
           })
      .def("to_json", &serialize_topology)
      .def("__repr__", [](const Topology& t) {
        return "<Topology " + t.name() + " nodes=" + std::to_string(t.node_count()) +
               " links=" + std::to_string(t.link_count()) + ">";
      });

  m.def("load_topology", [](const std::string& path) { return std::make_shared<Topology>(load_topology(path)); },
        py::arg("path"));
  m.def("parse_topology", [](const std::string& text) { return std::make_shared<Topology>(parse_topology(text)); },
        py::arg("text"));
  m.def(
      "generate_waxman",
      [](std::size_t nodes, double alpha, double beta, std::uint64_t seed, double plane_km, std::string name) {
        return std::make_shared<Topology>(generate_waxman({nodes, alpha, beta, plane_km, seed, std::move(name)}));
      },
      py::arg("nodes"), py::arg("alpha"), py::arg("beta"), py::arg("seed"), py::arg("plane_km") = 1000.0,
      py::arg("name") = "waxman");

  py::class_<Path>(m, "Path")
      .def_property_readonly("nodes", [](const Path& p) { return ids(p.nodes); })
      .def_property_readonly("links", [](const Path& p) { return ids(p.links); })
      .def_property_readonly("hops", &Path::hops);

  m.def(
      "shortest_path",
      [](const Topology& t, std::uint32_t src, std::uint32_t dst) {
        return shortest_path(t, NodeId{src}, NodeId{dst});
      },
      py::arg("topology"), py::arg("src"), py::arg("dst"));
  m.def(
      "edge_disjoint_pair",
      [](const Topology& t, std::uint32_t src, std::uint32_t dst) {
        const DisjointPair p = edge_disjoint_pair(t, NodeId{src}, NodeId{dst});
        return std::make_pair(p.primary, p.secondary);
      },
      py::arg("topology"), py::arg("src"), py::arg("dst"));
  m.def(
      "edge_betweenness",
      [](const Topology& t) {
        const EbcTable e = edge_betweenness(t);
        return std::make_pair(e.raw, e.normalized);
      },
      py::arg("topology"), "(raw, normalized) lists indexed like Topology.links()");

  m.def("mtbf_hours", &mtbf_hours, py::arg("cc_km"), py::arg("length_km"));
  m.def("u_sr", &u_sr, py::arg("recall"), py::arg("u_sdn"));
  m.def("availability", &availability, py::arg("u"));

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("name", &Scenario::name)
      .def_readwrite("mode", &Scenario::mode)
      .def_readwrite("seed", &Scenario::seed)
      .def_readwrite("sim_hours", &Scenario::sim_hours)
      .def_property(
          "predictor_enabled", [](const Scenario& s) { return s.predictor.enabled; },
          [](Scenario& s, bool on) { s.predictor.enabled = on; })
      .def_property_readonly("topology", [](const Scenario& s) { return s.topology->name(); })
      .def("to_json", &scenario_json);

  m.def("load_scenario", [](const std::string& path) { return load_scenario(path); }, py::arg("path"));

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("run_id", &RunReport::run_id)
      .def_readonly("seed", &RunReport::seed)
      .def_readonly("topology", &RunReport::topology)
      .def_readonly("mode", &RunReport::mode)
      .def_readonly("events", &RunReport::events)
      .def_readonly("flows", &RunReport::flows)
      .def_readonly("availability", &RunReport::availability)
      .def_readonly("unavailability", &RunReport::unavailability)
      .def_readonly("flaps_total", &RunReport::flaps_total)
      .def_readonly("flaps_useless", &RunReport::flaps_useless)
      .def_readonly("tp", &RunReport::tp)
      .def_readonly("fp", &RunReport::fp)
      .def_readonly("fn", &RunReport::fn)
      .def_readonly("recall", &RunReport::recall)
      .def_readonly("precision", &RunReport::precision)
      .def("csv_row", &summary_row);

  m.def(
      "run",
      [](const Scenario& s) {
        py::gil_scoped_release release;
        return run(s).report;
      },
      py::arg("scenario"));
}
