#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "cuckoo/degree_spec.hpp"
#include "cuckoo/errors.hpp"
#include "cuckoo/experiments.hpp"
#include "cuckoo/hypergraph.hpp"
#include "cuckoo/orientation.hpp"
#include "cuckoo/peeling.hpp"
#include "cuckoo/sigmoid_fit.hpp"
#include "cuckoo/thresholds.hpp"
#include "cuckoo/xorsat.hpp"

namespace py = pybind11;
using namespace cuckoo;

namespace {

py::dict threshold_dict(const ThresholdResult& r) {
    py::dict d;
    d["c_star"] = r.c_star;
    d["beta_star"] = r.beta_star;
    d["c_threshold"] = r.c_threshold;
    d["beta_threshold"] = r.beta_threshold;
    return d;
}

py::dict prediction_dict(const CorePrediction& p) {
    py::dict d;
    d["beta"] = p.beta;
    d["node_fraction"] = p.node_fraction;
    d["edge_fraction"] = p.edge_fraction;
    d["edge_density"] = p.edge_density;
    return d;
}

py::dict orientation_dict(const Orientation& o) {
    py::dict d;
    d["success"] = o.success;
    d["failed_at_step"] = o.failed_at_step;
    d["steps"] = o.steps;
    d["target"] = o.target;
    return d;
}

nlohmann::json to_json(const py::handle& obj) {
    const auto text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
    return nlohmann::json::parse(text);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Load thresholds, cores and orientations of random hypergraphs";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<UnsupportedCase>(m, "UnsupportedCase", PyExc_ValueError);
    py::register_exception<NoSupercriticalSolution>(m, "NoSupercriticalSolution", PyExc_ValueError);
    py::register_exception<DegenerateFit>(m, "DegenerateFit", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("poisson_tail", &poisson_tail, py::arg("beta"), py::arg("j"));
    m.def("load_of_beta", &load_of_beta, py::arg("k"), py::arg("ell"), py::arg("beta"));
    m.def(
        "core_appearance",
        [](int k, int ell) {
            const auto a = core_appearance(k, ell);
            return py::make_tuple(a.c_star, a.beta_star);
        },
        py::arg("k"), py::arg("ell"), "(c_star, beta_star) where the ell-core appears.");
    m.def(
        "predict_core", [](int k, int ell, double c) { return prediction_dict(predict_core(k, ell, c)); },
        py::arg("k"), py::arg("ell"), py::arg("c"));
    m.def(
        "orientation_threshold", [](int k, int ell) { return threshold_dict(orientation_threshold(k, ell)); },
        py::arg("k"), py::arg("ell"));
    m.def(
        "mixed_threshold",
        [](const std::map<int, double>& weights, int ell) {
            return threshold_dict(mixed_threshold(DegreeSpec(weights), ell));
        },
        py::arg("weights"), py::arg("ell"), "Threshold for a distribution {edge size: probability}.");
    m.def("optimal_distribution", [](double kappa) { return optimal_distribution(kappa).weights(); },
          py::arg("kappa"));

    py::class_<Hypergraph>(m, "Hypergraph")
        .def(py::init<std::size_t, const std::vector<std::vector<NodeId>>&>(), py::arg("node_count"),
             py::arg("edges"))
        .def_property_readonly("node_count", &Hypergraph::node_count)
        .def_property_readonly("edge_count", &Hypergraph::edge_count)
        .def("degree", &Hypergraph::degree, py::arg("v"))
        .def("edges", &Hypergraph::edge_lists)
        .def("to_text", &Hypergraph::to_text)
        .def_static("from_text", [](const std::string& text) { return Hypergraph::from_text(text); })
        .def("__eq__", [](const Hypergraph& a, const Hypergraph& b) { return a == b; })
        .def("__repr__", [](const Hypergraph& g) {
            return "<Hypergraph m=" + std::to_string(g.node_count()) + " n=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("sample_regular", &sample_regular, py::arg("m"), py::arg("n"), py::arg("k"), py::arg("seed"));
    m.def(
        "sample_mixed",
        [](std::size_t nodes, std::size_t edges, const std::map<int, double>& weights, std::uint64_t seed) {
            return sample_mixed(nodes, edges, DegreeSpec(weights), seed);
        },
        py::arg("m"), py::arg("n"), py::arg("weights"), py::arg("seed"));

    m.def(
        "peel",
        [](const Hypergraph& g, int ell) {
            auto r = peel(g, ell);
            py::dict d;
            d["core_nodes"] = r.stats.core_nodes;
            d["core_edges"] = r.stats.core_edges;
            d["edge_density"] = r.stats.edge_density;
            d["rounds"] = r.stats.rounds;
            d["edge_ids"] = r.edge_ids;
            d["core"] = std::move(r.core);
            return d;
        },
        py::arg("g"), py::arg("ell"));

    m.def(
        "selfless_orient",
        [](const Hypergraph& g, int ell, std::uint64_t seed) { return orientation_dict(selfless_orient(g, ell, seed)); },
        py::arg("g"), py::arg("ell"), py::arg("seed"));
    m.def(
        "matching_orient", [](const Hypergraph& g, int ell) { return orientation_dict(matching_orient(g, ell)); },
        py::arg("g"), py::arg("ell"));

    m.def(
        "solve_xorsat",
        [](const Hypergraph& g, std::uint64_t seed) {
            const auto s = rank_and_solve(from_hypergraph(g, seed));
            py::dict d;
            d["rank"] = s.rank;
            d["satisfiable"] = s.satisfiable;
            d["witness"] = s.witness;
            return d;
        },
        py::arg("g"), py::arg("seed"), "Random right-hand sides drawn from seed.");

    m.def("sigmoid", &sigmoid, py::arg("c"), py::arg("a"), py::arg("b"));
    m.def(
        "fit_sigmoid",
        [](const std::vector<std::pair<double, double>>& points) {
            std::vector<RatePoint> pts;
            for (const auto& [c, rate] : points) pts.push_back({c, rate});
            const auto f = fit_sigmoid(pts);
            py::dict d;
            d["a"] = f.a;
            d["b"] = f.b;
            d["sum_res"] = f.sum_res;
            d["iterations"] = f.iterations;
            d["converged"] = f.converged;
            return d;
        },
        py::arg("points"), "Least-squares fit of rate = 1 / (1 + exp(-(c - a) / b)) to (c, rate) pairs.");

    m.def(
        "run_sweep",
        [](const py::dict& config) {
            const auto cfg = SweepConfig::from_json(to_json(config));
            std::vector<SweepRecord> records;
            {
                py::gil_scoped_release release;
                records = run_sweep(cfg);
            }
            py::list rows;
            for (const auto& r : records) {
                for (const auto& o : r.outcomes) {
                    py::dict row;
                    row["c"] = r.c;
                    row["n"] = r.n;
                    row["method"] = std::string(method_name(o.method));
                    row["trials"] = o.trials;
                    row["failures"] = o.failures;
                    row["rate"] = o.rate();
                    rows.append(row);
                }
            }
            return rows;
        },
        py::arg("config"), "Sweep with the same keys as the CLI JSON config; one row per density and method.");
}
