#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdcolor/config.hpp"
#include "qdcolor/energy.hpp"
#include "qdcolor/gradient.hpp"
#include "qdcolor/graph.hpp"
#include "qdcolor/harness.hpp"
#include "qdcolor/qudit_state.hpp"
#include "qdcolor/solver.hpp"

namespace py = pybind11;
using namespace qdcolor;

namespace {

py::dict record_to_dict(const RunRecord& r) {
    py::list trajectory;
    for (const auto& p : r.trajectory) trajectory.append(py::make_tuple(p.step, p.t, p.e_total, p.e_potts));
    py::dict d;
    d["run"] = r.run_index;
    d["seed"] = r.seed;
    d["best_energy"] = r.best_energy;
    d["best_coloring"] = r.best_coloring;
    d["steps"] = r.steps_executed;
    d["trajectory"] = trajectory;
    d["wall_ms"] = r.wall_ms;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Native core of qdcolor";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def_static("from_pairs", &Graph::from_pairs, py::arg("pairs"))
        .def_property_readonly("num_nodes", &Graph::num_nodes)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def_property_readonly("edges",
                               [](const Graph& g) {
                                   std::vector<std::pair<NodeId, NodeId>> out;
                                   for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
                                   return out;
                               })
        .def_property_readonly("degrees", &Graph::degrees)
        .def_property_readonly("original_ids", &Graph::original_ids)
        .def_property_readonly("max_degree", &Graph::max_degree)
        .def_property_readonly("density", &Graph::density)
        .def("j_max", &Graph::j_max)
        .def("__repr__", [](const Graph& g) {
            return "<Graph " + std::to_string(g.num_nodes()) + " nodes, " + std::to_string(g.num_edges()) +
                   " edges>";
        });

    m.def("load_graph", [](const std::string& path, const std::string& format) {
        return load_graph(path, parse_format(format));
    }, py::arg("path"), py::arg("format") = "auto");
    m.def("parse_dimacs", &parse_dimacs_string, py::arg("text"));
    m.def("parse_edge_list", &parse_edge_list_string, py::arg("text"));

    py::enum_<Method>(m, "Method").value("QdLQA", Method::QdLQA).value("QdGD", Method::QdGD);

    py::class_<Hyperparameters>(m, "Hyperparameters")
        .def(py::init<>())
        .def_readwrite("method", &Hyperparameters::method)
        .def_readwrite("num_colors", &Hyperparameters::num_colors)
        .def_readwrite("num_steps", &Hyperparameters::num_steps)
        .def_readwrite("gamma", &Hyperparameters::gamma)
        .def_property(
            "alpha", [](const Hyperparameters& hp) { return to_string(hp.alpha); },
            [](Hyperparameters& hp, const std::string& text) { hp.alpha = parse_alpha_schedule(text); })
        .def_readwrite("eta", &Hyperparameters::eta)
        .def_readwrite("f", &Hyperparameters::f)
        .def_readwrite("f_tilde", &Hyperparameters::f_tilde)
        .def_readwrite("h", &Hyperparameters::h)
        .def_readwrite("num_runs", &Hyperparameters::num_runs)
        .def_readwrite("patience", &Hyperparameters::patience)
        .def_property(
            "fix", [](const Hyperparameters& hp) { return to_string(hp.fix); },
            [](Hyperparameters& hp, const std::string& text) { hp.fix = parse_fix_strategy(text); })
        .def_readwrite("master_seed", &Hyperparameters::master_seed)
        .def_readwrite("inclusive_endpoint", &Hyperparameters::inclusive_endpoint)
        .def("validate", &Hyperparameters::validate);

    m.def("potts_energy", &potts_energy, py::arg("graph"), py::arg("coloring"));
    m.def("lx_ground_state", &lx_ground_state, py::arg("num_colors"));
    m.def("spherical_to_amplitudes",
          [](const std::vector<double>& angles) { return spherical_to_amplitudes(angles); }, py::arg("angles"));
    m.def("amplitudes_to_angles", [](const std::vector<double>& psi) { return amplitudes_to_angles(psi); },
          py::arg("psi"));

    m.def(
        "run_single",
        [](const Graph& g, const Hyperparameters& hp, std::size_t run_index, bool trajectory) {
            RunRecord r;
            {
                py::gil_scoped_release release;
                r = run_single(g, hp, run_index, trajectory);
            }
            return record_to_dict(r);
        },
        py::arg("graph"), py::arg("hp"), py::arg("run_index") = 0, py::arg("trajectory") = false);

    m.def(
        "run_batch_json",
        [](const Graph& g, const Hyperparameters& hp, std::size_t workers, bool timing) {
            BatchStats stats;
            {
                py::gil_scoped_release release;
                stats = run_batch(g, hp, {workers, false});
            }
            return to_json(stats, timing).dump();
        },
        py::arg("graph"), py::arg("hp"), py::arg("workers") = 1, py::arg("timing") = true);

    m.def(
        "check_gradient",
        [](const Graph& g, int num_colors, double t, double gamma, double h, std::uint64_t seed, double step,
           double tol) {
            Rng rng(seed);
            AngleState state(g.num_nodes(), num_colors, g.j_max());
            std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
            for (double& x : state.params()) x = angle(rng);
            const auto report =
                check_gradient(state, g, build_ops(num_colors), CostParams{gamma, h, t}, step, tol, rng);
            py::dict d;
            d["max_rel_error"] = report.max_rel_error;
            d["num_clamp_affected"] = report.num_clamp_affected;
            d["passed"] = report.passed;
            return d;
        },
        py::arg("graph"), py::arg("num_colors"), py::arg("t"), py::arg("gamma") = 1.0, py::arg("h") = 3.0,
        py::arg("seed") = 0, py::arg("step") = 1e-6, py::arg("tol") = 1e-4);
}
