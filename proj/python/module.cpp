#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "casson/casson.hpp"
#include "casson/curve.hpp"
#include "casson/integral.hpp"
#include "casson/pedal.hpp"

namespace py = pybind11;
using namespace casson;

namespace {

py::dict estimate_dict(const McEstimate& e) {
    py::dict d;
    d["value"] = e.value;
    d["stderr"] = e.std_error;
    d["n"] = e.n;
    d["seed"] = e.seed;
    return d;
}

McConfig config_from(std::uint64_t samples, std::uint64_t seed, int threads, double padding) {
    McConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.threads = threads;
    cfg.padding = padding;
    return cfg;
}

PedalPermutation perm_from(const std::vector<int>& levels) {
    PedalPermutation p{levels};
    p.check();
    return p;
}

} // namespace

PYBIND11_MODULE(_casson, m) {
    m.doc() = "Casson knot invariant: Gauss diagram pairings, pedal counts and localized integrals";

    py::register_exception<Error>(m, "CassonError");

    py::class_<MultiGaussDiagram>(m, "MultiGaussDiagram")
        .def("__len__", [](const MultiGaussDiagram& g) { return g.passages.size(); })
        .def("__eq__", [](const MultiGaussDiagram& a, const MultiGaussDiagram& b) { return a == b; })
        .def_property_readonly("n_chords",
                               [](const MultiGaussDiagram& g) { return g.chords.size(); });
    py::class_<DoubleGaussDiagram>(m, "DoubleGaussDiagram")
        .def_property_readonly("diagram", [](const DoubleGaussDiagram& g) { return g.get(); })
        .def("__len__", [](const DoubleGaussDiagram& g) { return g.get().passages.size(); });
    py::class_<LongKnotCurve>(m, "LongKnotCurve")
        .def("point",
             [](const LongKnotCurve& k, double t) {
                 Vec3 p = k.point(t);
                 return py::make_tuple(p.x, p.y, p.z);
             })
        .def_property_readonly("t_min", &LongKnotCurve::t_min)
        .def_property_readonly("t_max", &LongKnotCurve::t_max);

    m.def("parse_gauss_code", &parse_gauss_code, py::arg("text"));
    m.def("to_gauss_code", &to_gauss_code, py::arg("diagram"));
    m.def("parse_diagram_json", &parse_diagram_json, py::arg("doc"));
    m.def("serialize", &serialize, py::arg("diagram"));
    m.def("validate",
          [](const MultiGaussDiagram& g) { return validate(g); }, py::arg("diagram"));

    m.def("c2_double", [](const DoubleGaussDiagram& g) { return c2_double(g); });
    m.def("c2_double", [](const std::string& code) {
        if (code.find_first_not_of(" \t\r\n") == std::string::npos) return 0LL;
        return c2_double(parse_gauss_code(code));
    });
    m.def("c2_multi", &c2_multi, py::arg("diagram"));
    m.def("c2_pedal",
          [](const std::vector<int>& levels) { return c2_pedal(perm_from(levels)); });
    m.def("pedal_to_gauss",
          [](const std::vector<int>& levels) { return pedal_to_gauss(perm_from(levels)); });
    m.def("pedal_perturb",
          [](const std::vector<int>& levels, std::uint64_t seed) {
              return pedal_perturb(perm_from(levels), seed);
          },
          py::arg("levels"), py::arg("seed") = 1);
    m.def("perturb",
          [](const MultiGaussDiagram& g, std::uint64_t seed) { return perturb(g, seed); },
          py::arg("diagram"), py::arg("seed") = 1);
    m.def("uber_bound", &uber_bound, py::arg("n"));

    m.def("pair", [](const std::string& pattern, const MultiGaussDiagram& g) {
        const auto& pat = c2_patterns();
        if (pattern == "p0") return pair(pat.p0, g);
        if (pattern == "left") return pair(pat.left, g);
        if (pattern == "mid") return pair(pat.mid, g);
        if (pattern == "right") return pair(pat.right, g);
        if (pattern == "unmarked") return pair(pat.unmarked, g);
        throw Error(ErrorCode::SchemaError, "unknown pattern " + pattern);
    });

    m.def("builtin_curve", [](const std::string& name, double h) {
        if (name == "trivial") return builtin_trivial();
        if (name == "trefoil") return builtin_trefoil(h);
        if (name == "figure8") return builtin_figure8(h);
        throw Error(ErrorCode::SchemaError, "unknown builtin curve " + name);
    }, py::arg("name"), py::arg("h") = 0.1);
    m.def("curve_gauss_code", [](const LongKnotCurve& k) {
        return to_gauss_code(diagram_from_curve(k, Vec3{0, 0, 1}));
    });
    m.def("petal_curve", &petal_curve, py::arg("levels"), py::arg("h") = 0.1,
          py::arg("perturb") = true, py::arg("seed") = 1);
    m.def("curve_to_json", &curve_to_json, py::arg("curve"));
    m.def("load_curve_json", &load_curve_json, py::arg("doc"));

    m.def("term_chords",
          [](const LongKnotCurve& k, double eps, std::uint64_t samples, std::uint64_t seed,
             int threads, double padding) {
              return estimate_dict(
                  term_chords(k, BumpForm({0, 0, 1}, eps), config_from(samples, seed, threads, padding)));
          },
          py::arg("curve"), py::arg("eps") = 0.1, py::arg("samples") = 200000, py::arg("seed") = 1,
          py::arg("threads") = 1, py::arg("padding") = 0.5);
    m.def("term_tripod",
          [](const LongKnotCurve& k, double eps, std::uint64_t samples, std::uint64_t seed,
             int threads, double padding) {
              return estimate_dict(
                  term_tripod(k, BumpForm({0, 0, 1}, eps), config_from(samples, seed, threads, padding)));
          },
          py::arg("curve"), py::arg("eps") = 0.1, py::arg("samples") = 200000, py::arg("seed") = 1,
          py::arg("threads") = 1, py::arg("padding") = 0.5);
    m.def("casson_estimate",
          [](const LongKnotCurve& k, double eps, std::uint64_t samples, std::uint64_t seed,
             int threads, double padding) {
              return estimate_dict(casson_estimate(k, BumpForm({0, 0, 1}, eps),
                                                   config_from(samples, seed, threads, padding)));
          },
          py::arg("curve"), py::arg("eps") = 0.1, py::arg("samples") = 200000, py::arg("seed") = 1,
          py::arg("threads") = 1, py::arg("padding") = 0.5);
    m.def("lk_hopf",
          [](double eps, std::uint64_t samples, std::uint64_t seed, int threads) {
              auto [l1, l2] = builtin_hopf();
              return estimate_dict(
                  lk_localized(l1, l2, BumpForm({0, 0, 1}, eps), config_from(samples, seed, threads, 0.5)));
          },
          py::arg("eps") = 0.2, py::arg("samples") = 200000, py::arg("seed") = 1, py::arg("threads") = 1);
}
