// Python module _surfmaps. Maps cross the boundary as the same dart JSON
// the command line tool reads and writes.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "surfmaps/bijection.hpp"
#include "surfmaps/blossoming.hpp"
#include "surfmaps/combinatorial_map.hpp"
#include "surfmaps/decomposition.hpp"
#include "surfmaps/enumeration.hpp"
#include "surfmaps/scheme_series.hpp"
#include "surfmaps/series.hpp"
#include "surfmaps/surface.hpp"
#include "surfmaps/verify.hpp"

namespace py = pybind11;
using namespace surfmaps;

namespace {

FlagMap read_map(const std::string& text) {
    CombinatorialMap cm = from_json(text);
    require_valid(cm);
    return to_flags(cm);
}

std::string write_map(const FlagMap& f) { return to_json(to_darts(f)); }

// {exponent tuple: Fraction}
py::dict series_dict(const Series& s) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    py::dict out;
    s.for_each([&](const std::vector<int>& e, const mpq_class& c) {
        out[py::tuple(py::cast(e))] = fraction(c.get_str());
    });
    return out;
}

EnumSpec make_spec(int edges, const std::string& surface, const std::string& filters, int min_euler) {
    EnumSpec spec;
    if (!surface.empty()) spec.surface = parse_surface(surface);
    spec.min_euler = min_euler;
    spec.max_edges = edges;
    spec.filters = parse_filters(filters);
    const uint32_t blossoming = static_cast<uint32_t>(Filter::WellBlossoming) | static_cast<uint32_t>(Filter::WellRooted) |
                                static_cast<uint32_t>(Filter::BudRooted);
    spec.blossoming = (spec.filters & blossoming) != 0;
    return spec;
}

void run(const EnumSpec& spec, const std::function<void(const FlagMap&)>& out) {
    if (spec.blossoming) enumerate_blossoming(spec, out);
    else enumerate_maps(spec, out);
}

}  // namespace

PYBIND11_MODULE(_surfmaps, m) {
    m.doc() = "Rooted maps on surfaces, their blossoming openings and scheme series.";

    py::register_exception<MapError>(m, "MapError", PyExc_ValueError);
    py::register_exception<SeriesError>(m, "SeriesError", PyExc_ArithmeticError);

    m.def("parse_surface", [](const std::string& s) {
        SurfaceId id = parse_surface(s);
        return py::make_tuple(id.euler, id.orientable);
    }, py::arg("surface"), "(euler characteristic, orientable) for a surface name.");

    m.def("count_maps", [](int max_edges, const std::string& surface, const std::string& filters, int min_euler) {
        EnumSpec spec = make_spec(max_edges, surface, filters, min_euler);
        long long n = 0;
        py::gil_scoped_release nogil;
        run(spec, [&](const FlagMap&) { ++n; });
        return n;
    }, py::arg("max_edges"), py::arg("surface") = "", py::arg("filters") = "", py::arg("min_euler") = -1);

    m.def("enumerate_maps", [](int max_edges, const std::string& surface, const std::string& filters, int min_euler) {
        EnumSpec spec = make_spec(max_edges, surface, filters, min_euler);
        std::vector<std::string> out;
        py::gil_scoped_release nogil;
        run(spec, [&](const FlagMap& f) { out.push_back(write_map(f)); });
        return out;
    }, py::arg("max_edges"), py::arg("surface") = "", py::arg("filters") = "", py::arg("min_euler") = -1,
       "Rooted maps (or blossoming maps, for blossoming filters) as dart JSON strings.");

    m.def("canonical_encoding", [](const std::string& map) { return canonical_encoding(read_map(map)); });
    m.def("surface_of", [](const std::string& map) { return surface_of(read_map(map)).name(); });
    m.def("cells", [](const std::string& map) {
        FlagMap f = read_map(map);
        Cells c = cells(f);
        py::dict d;
        d["vertices"] = c.nv;
        d["edges"] = edge_count(f);
        d["faces"] = c.nf;
        d["stems"] = c.nstems;
        return d;
    });

    m.def("open_map", [](const std::string& map) { return write_map(opening_leftmost(read_map(map))); },
          "Blossoming opening along the leftmost geodesic tree of a bipartite pointed map.");
    m.def("close_map", [](const std::string& map) { return write_map(closure(read_map(map))); },
          "Closure of a well-rooted blossoming map.");
    m.def("quadrangulate", [](const std::string& map) { return write_map(quadrangulate(read_map(map))); });
    m.def("quadrangulate_inverse", [](const std::string& map) { return write_map(quadrangulate_inverse(read_map(map))); });

    m.def("classify", [](const std::string& map) {
        Classification c = classify(read_map(map));
        py::dict d;
        d["unicellular"] = c.unicellular;
        d["balanced"] = c.balanced;
        d["well_blossoming"] = c.well_blossoming;
        d["bud_rooted"] = c.bud_rooted;
        d["well_rooted"] = c.well_rooted;
        d["bicolorable"] = c.bicolorable;
        d["virtually_rooted"] = c.virtually_rooted;
        return d;
    });

    m.def("schemes", [](const std::string& surface) {
        std::vector<std::string> out;
        for (const auto& s : enumerate_schemes(parse_surface(surface))) out.push_back(write_map(s));
        return out;
    }, py::arg("surface"), "Labeled schemes of a surface with Euler characteristic <= 0.");

    m.def("tree_series", [](int order) {
        TreeSeries t = tree_series_four_valent(order);
        py::dict d;
        d["black"] = series_dict(t.black);
        d["white"] = series_dict(t.white);
        return d;
    }, py::arg("order"));

    m.def("motzkin", [](int order, const std::string& method) {
        MotzkinSeries w;
        if (method == "fixed_point") w = motzkin_fixed_point(order);
        else if (method == "closed_form") w = motzkin_closed_form(order);
        else if (method == "direct") w = motzkin_direct(order);
        else throw py::value_error("method is fixed_point, closed_form or direct");
        py::dict d;
        d["B"] = series_dict(w.b);
        d["D"] = series_dict(w.d);
        d["D_black"] = series_dict(w.d_black);
        d["D_white"] = series_dict(w.d_white);
        return d;
    }, py::arg("order"), py::arg("method") = "closed_form");

    m.def("rooted_series_from_schemes", [](const std::string& surface, int order) {
        SurfaceId s = parse_surface(surface);
        Series r;
        {
            py::gil_scoped_release nogil;
            r = R_from_schemes(s, order);
        }
        return series_dict(r);
    }, py::arg("surface"), py::arg("order"), "Rooted map series in (x, y) rebuilt from the schemes.");

    m.def("verify", [](const std::string& suite, int edges, uint64_t seed) {
        VerifyOptions o;
        o.edges = edges;
        o.seed = seed;
        std::vector<CheckResult> res;
        {
            py::gil_scoped_release nogil;
            res = run_suite(suite, o);
        }
        py::list out;
        for (const auto& r : res) {
            py::dict d;
            d["name"] = r.name;
            d["criterion"] = r.criterion;
            d["pass"] = r.pass;
            d["compared"] = r.compared;
            d["counterexample"] = r.counterexample;
            d["detail"] = r.detail;
            d["seconds"] = r.seconds;
            out.append(d);
        }
        return out;
    }, py::arg("suite") = "all", py::arg("edges") = 4, py::arg("seed") = 1);
}
