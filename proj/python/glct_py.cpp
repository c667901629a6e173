#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "glct/bench.hpp"
#include "glct/errors.hpp"
#include "glct/generators.hpp"
#include "glct/transforms.hpp"

namespace py = pybind11;
using namespace glct;

namespace {

// Round-trip through the json module; the decomposition records are small.
py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_py(const py::object& o) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

ChirpStrategy strategy_arg(const std::string& s) { return chirp_strategy_from_string(s); }

CmccmOptions options(bool dispatch, const std::string& b0_form) {
    CmccmOptions o;
    o.dispatch = dispatch;
    if (b0_form == "mu") o.b0_form = B0Kind::Mu;
    else if (b0_form != "eta") throw Error(ErrorKind::InvalidSpec, "b0_form must be eta or mu");
    return o;
}

// pybind11 holders cannot be pointer-to-const; the graph is never mutated.
using SG = std::shared_ptr<SpectralGraph>;

SG held(std::shared_ptr<const SpectralGraph> g) { return std::const_pointer_cast<SpectralGraph>(std::move(g)); }

}  // namespace

PYBIND11_MODULE(_glct, m) {
    m.doc() = "Graph linear canonical transforms";
    m.attr("__version__") = GLCT_VERSION;

    static py::exception<Error> exc(m, "GlctError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = py::reinterpret_borrow<py::object>(exc.ptr())(e.what());
            inst.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(exc.ptr(), inst.ptr());
        }
    });

    py::class_<ParamMatrix>(m, "ParamMatrix")
        .def(py::init(&ParamMatrix::make), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
        .def_property_readonly("a", &ParamMatrix::a)
        .def_property_readonly("b", &ParamMatrix::b)
        .def_property_readonly("c", &ParamMatrix::c)
        .def_property_readonly("d", &ParamMatrix::d)
        .def("det", &ParamMatrix::det)
        .def("inverse", [](const ParamMatrix& p) { return inverse(p); })
        .def("__matmul__", [](const ParamMatrix& l, const ParamMatrix& r) { return multiply(l, r); })
        .def("__eq__", [](const ParamMatrix& l, const ParamMatrix& r) { return l == r; })
        .def("__repr__", [](const ParamMatrix& p) {
            return "ParamMatrix(" + std::to_string(p.a()) + ", " + std::to_string(p.b()) + ", " +
                   std::to_string(p.c()) + ", " + std::to_string(p.d()) + ")";
        });

    m.def("identity", &ParamMatrix::identity);
    m.def("rotation", &rotation, py::arg("angle"));
    m.def("decompose_iwasawa", [](const ParamMatrix& p) { return to_py(decompose_iwasawa(p)); });
    m.def("decompose_cmccm", [](const ParamMatrix& p) { return to_py(decompose_cmccm(p)); });
    m.def("decompose_b0", [](const ParamMatrix& p, const std::string& form) {
        return to_py(decompose_b0(p, options(true, form).b0_form));
    }, py::arg("m"), py::arg("form") = "eta");
    m.def("chirp_exponent_sum", &chirp_exponent_sum);

    py::class_<SpectralGraph, SG>(m, "SpectralGraph")
        .def_property_readonly("n", &SpectralGraph::n)
        .def_property_readonly("adjacency", [](const SpectralGraph& g) { return g.graph.adjacency(); })
        .def_property_readonly("eigenvalues", [](const SpectralGraph& g) { return g.adjacency.eigenvalues; })
        .def_property_readonly("eigenvectors", [](const SpectralGraph& g) { return g.adjacency.eigenvectors; })
        .def_property_readonly("gft", [](const SpectralGraph& g) { return g.gft.f(); })
        .def_property_readonly("nonzeros", [](const SpectralGraph& g) { return g.graph.nonzeros(); })
        .def_property_readonly("coords", [](const SpectralGraph& g) { return g.graph.coords(); })
        .def("gft_power", [](const SpectralGraph& g, double p) { return gft_power(g.gft, p); });

    m.def("analyze", [](const RealMatrix& a) { return held(analyze(Graph(a))); }, py::arg("adjacency"),
          "Validate an adjacency matrix and compute its spectra.");
    m.def("generate", [](const std::string& kind, int n, std::optional<std::uint64_t> seed, int k,
                         int star_degree) {
        GeneratorSpec s = default_spec(generator_kind_from_string(kind));
        if (n) s.n = n;
        if (seed) s.seed = *seed;
        if (k) s.k = k;
        if (star_degree) s.star_degree = star_degree;
        return held(analyze(generate(s)));
    }, py::arg("kind"), py::arg("n") = 0, py::arg("seed") = py::none(), py::arg("k") = 0,
          py::arg("star_degree") = 0);
    m.def("corpus_graph", [](const std::string& id) {
        const auto e = find_corpus_entry(id);
        if (!e) throw Error(ErrorKind::InvalidSpec, "unknown corpus graph " + id);
        return held(analyze(generate(e->spec)));
    });
    m.def("bipolar_signal", [](const SpectralGraph& g) { return bipolar_rectangular(g.graph); });

    py::class_<GlctOperator>(m, "Operator")
        .def_property_readonly("recipe", [](const GlctOperator& o) { return to_string(o.recipe()); })
        .def_property_readonly("phase", &GlctOperator::phase)
        .def_property_readonly("params", &GlctOperator::params)
        .def_property_readonly("factors", [](const GlctOperator& o) {
            py::list out;
            for (const Factor& f : o.factors()) out.append(py::make_tuple(to_string(f.kind), f.value));
            return out;
        })
        .def("matrix", [](const GlctOperator& o) { return ComplexMatrix(o.matrix()); })
        .def("metadata", [](const GlctOperator& o) { return to_py(o.metadata()); })
        .def("__call__", [](const GlctOperator& o, const ComplexVector& x) { return glct::apply(o, x); });

    m.def("cmccm", [](SG g, const ParamMatrix& p, const std::string& strategy, bool dispatch,
                      const std::string& b0_form) {
        return build_cmccm(std::move(g), p, strategy_arg(strategy), options(dispatch, b0_form));
    }, py::arg("graph"), py::arg("m"), py::arg("strategy") = "spectral-power-of-f", py::arg("dispatch") = true,
          py::arg("b0_form") = "eta");
    m.def("cddhfs", [](SG g, const ParamMatrix& p, const std::string& strategy) {
        return build_cddhfs(std::move(g), p, strategy_arg(strategy));
    }, py::arg("graph"), py::arg("m"), py::arg("strategy") = "spectral-power-of-f");
    m.def("inverse_by_negation", &inverse_by_negation);
    m.def("inverse_by_params", [](SG g, const ParamMatrix& p, const std::string& strategy) {
        return inverse_by_params(std::move(g), p, strategy_arg(strategy));
    }, py::arg("graph"), py::arg("m"), py::arg("strategy") = "spectral-power-of-f");

    m.def("nmse", &nmse, py::arg("reference"), py::arg("approx"));
    m.def("opcount", [](const std::string& method, std::int64_t n) {
        for (auto k : {OpCountMethod::CDDHFs, OpCountMethod::CMCCM_bnz, OpCountMethod::CMCCM_b0}) {
            if (to_string(k) == method) return opcount(k, n);
        }
        throw Error(ErrorKind::InvalidSpec, "unknown method " + method);
    });

    m.def("run_experiment", [](const py::object& config) {
        const BenchConfig cfg = bench_config_from_json(from_py(config));
        BenchReport rep;
        {
            py::gil_scoped_release release;
            rep = run_experiment(cfg);
        }
        py::list out;
        for (const BenchResult& r : rep.results) {
            py::dict d;
            d["graph"] = r.graph_id;
            d["method"] = to_string(r.method);
            d["mean"] = r.mean;
            d["nmse"] = r.nmse;
            out.append(d);
        }
        return out;
    }, py::arg("config"), "Run a bench configuration given as a dict; returns per-graph results.");
}
