#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "simplets/analysis.hpp"
#include "simplets/catalog.hpp"
#include "simplets/colorcoding.hpp"
#include "simplets/exact.hpp"
#include "simplets/io.hpp"

namespace py = pybind11;
using namespace simplets;

namespace {

// catalog + match table bundled; the table is built lazily on first use
struct PyCatalog {
    SimpletCatalog catalog;
    std::unique_ptr<MatchTable> table;

    const MatchTable& match_table() {
        if (!table) table = std::make_unique<MatchTable>(build_match_table(catalog));
        return *table;
    }
};

py::dict report_to_dict(const CountReport& r) {
    py::dict d;
    d["k"] = r.k;
    d["method"] = r.method;
    d["dataset"] = r.dataset;
    d["samples"] = r.samples;
    d["seed"] = r.seed;
    d["elapsed_sec"] = r.elapsed_sec;
    d["counts"] = r.counts;
    d["codes"] = r.codes_hex;
    d["total"] = r.total();
    return d;
}

}  // namespace

PYBIND11_MODULE(_simplets, m) {
    m.doc() = "simplet counting and characterization of simplicial complexes";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);
    py::register_exception<ComputeError>(m, "ComputeError", PyExc_RuntimeError);

    py::class_<SimplicialComplex>(m, "SimplicialComplex")
        .def(py::init([](Node num_nodes, const SimplexFamily& maximal) {
                 return SimplicialComplex(num_nodes, maximal);
             }),
             py::arg("num_nodes"), py::arg("maximal_simplices"))
        .def_static("from_simplices", &SimplicialComplex::from_simplices, py::arg("num_nodes"),
                    py::arg("simplices"))
        .def_readonly("num_nodes", &SimplicialComplex::num_nodes)
        .def_readonly("maximal_simplices", &SimplicialComplex::maximal)
        .def("__len__", [](const SimplicialComplex& k) { return k.maximal.size(); })
        .def("__repr__", [](const SimplicialComplex& k) {
            return "SimplicialComplex(num_nodes=" + std::to_string(k.num_nodes) +
                   ", maximal=" + std::to_string(k.maximal.size()) + ")";
        });

    py::class_<PyCatalog>(m, "SimpletCatalog")
        .def_property_readonly("k", [](const PyCatalog& c) { return c.catalog.k; })
        .def("__len__", [](const PyCatalog& c) { return c.catalog.size(); })
        .def_property_readonly("codes", [](const PyCatalog& c) { return c.catalog.codes_hex(); })
        .def_property_readonly("spanning_tree_counts",
                               [](const PyCatalog& c) { return c.catalog.spanning_tree_counts; })
        .def_property_readonly("maximal_simplices", [](const PyCatalog& c) {
            std::vector<MaskFamily> out;
            for (const auto& s : c.catalog.simplets) out.push_back(s.maximal);
            return out;
        });

    m.def(
        "build_catalog",
        [](int k, int threads) {
            PyCatalog c;
            c.catalog = build_catalog(k, threads);
            return c;
        },
        py::arg("k"), py::arg("threads") = 0,
        "Enumerate all simplets of size k with spanning-tree weights");

    m.def(
        "load_plain",
        [](const std::string& path) { return load_plain(path).complex; },
        py::arg("path"), "Load a complex from one-simplex-per-line text");
    m.def(
        "load_benson",
        [](const std::string& prefix) { return load_benson(prefix).complex; },
        py::arg("prefix"), "Load a complex from {prefix}-nverts.txt/{prefix}-simplices.txt");

    m.def(
        "count_exact",
        [](const SimplicialComplex& complex, PyCatalog& catalog, int threads,
           uint64_t subset_cap) {
            ExactOptions opt;
            opt.threads = threads;
            opt.subset_cap = subset_cap;
            return report_to_dict(count_exact(complex, catalog.catalog, catalog.match_table(), opt));
        },
        py::arg("complex"), py::arg("catalog"), py::arg("threads") = 0,
        py::arg("subset_cap") = uint64_t(1000000000),
        "Exact per-simplet occurrence counts");

    m.def(
        "estimate_counts",
        [](const SimplicialComplex& complex, PyCatalog& catalog, uint64_t samples, uint64_t seed,
           int threads) {
            EstimateOptions opt;
            opt.samples = samples;
            opt.seed = seed;
            opt.threads = threads;
            return report_to_dict(
                estimate_counts(complex, catalog.catalog, catalog.match_table(), opt));
        },
        py::arg("complex"), py::arg("catalog"), py::arg("samples"), py::arg("seed") = 0,
        py::arg("threads") = 0, "Color-coding sampling estimate of per-simplet counts");

    m.def(
        "null_model",
        [](const SimplicialComplex& complex, int64_t c_shuffle, uint64_t seed) {
            NullModelResult r = null_model(complex, NullModelConfig{c_shuffle, seed});
            return py::make_tuple(r.complex, r.sizes_before, r.degenerate);
        },
        py::arg("complex"), py::arg("c_shuffle") = 1000, py::arg("seed") = 0,
        "Size-preserving shuffle; returns (complex, sizes_before_remax, degenerate)");

    m.def(
        "characteristic_profile",
        [](const py::dict& counts, const py::dict& null_counts, double epsilon) {
            auto to_report = [](const py::dict& d) {
                CountReport r;
                r.k = d["k"].cast<int>();
                r.counts = d["counts"].cast<std::vector<double>>();
                r.codes_hex = d["codes"].cast<std::vector<std::string>>();
                return r;
            };
            return characteristic_profile(to_report(counts), to_report(null_counts), epsilon)
                .values;
        },
        py::arg("counts"), py::arg("null_counts"), py::arg("epsilon") = 1e-3,
        "Unit-normalized significance vector of two count reports");

    m.def(
        "normalized_error",
        [](const py::dict& exact, const py::dict& estimate) {
            auto to_report = [](const py::dict& d) {
                CountReport r;
                r.k = d["k"].cast<int>();
                r.counts = d["counts"].cast<std::vector<double>>();
                return r;
            };
            return normalized_error(to_report(exact), to_report(estimate));
        },
        py::arg("exact"), py::arg("estimate"));

    m.def(
        "cosine_similarity_matrix",
        [](const std::vector<std::vector<double>>& vectors) {
            std::vector<CharacteristicProfile> profiles;
            for (const auto& v : vectors) {
                CharacteristicProfile p;
                p.k = 0;
                p.values = v;
                profiles.push_back(std::move(p));
            }
            return cosine_similarity_matrix(profiles);
        },
        py::arg("profiles"));

    m.def(
        "kmeans_pp",
        [](const std::vector<std::vector<double>>& vectors, int n_clusters, int trials,
           uint64_t seed) {
            KmeansResult r = kmeans_pp(vectors, n_clusters, trials, seed);
            return r.assignments;
        },
        py::arg("vectors"), py::arg("n_clusters"), py::arg("trials") = 10, py::arg("seed") = 0);

    m.def("spanning_tree_count", [](const SimplicialComplex& complex) {
        return spanning_tree_count(primal_graph(complex));
    });
}
