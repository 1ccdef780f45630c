#include "doctest.h"

#include "surfmaps/decomposition.hpp"
#include "surfmaps/enumeration.hpp"
#include "surfmaps/scheme_series.hpp"

using namespace surfmaps;

TEST_CASE("product formula against decorated cores") {
    for (SurfaceId sid : {SurfaceId{0, true}, SurfaceId{0, false}}) {
        for (const auto& s : enumerate_schemes(sid))
            for (const auto& l : labeled_schemes_in_window(s, -1, 1))
                CHECK(core_series_from_scheme(l, 4) == core_series_direct(l, 4));
    }
}

TEST_CASE("binary surjections against the windowed sum") {
    for (const auto& s : enumerate_schemes({0, false}))
        CHECK(scheme_class_series(s, 5) == scheme_class_series_window(s, 5, 8));
}

TEST_CASE("root label must be zero") {
    FlagMap s = enumerate_schemes({0, true}).front();
    std::vector<int> h(cells(s).nv, 5);
    CHECK_THROWS_AS(label_scheme(s, h), MapError);
}

TEST_CASE("scheme sums count maps on the torus") {
    const int order = 4;
    Series r = R_from_schemes({0, true}, order);
    Series m(2, order);
    EnumSpec es;
    es.surface = SurfaceId{0, true};
    es.max_edges = order;
    enumerate_maps(es, [&](const FlagMap& x) {
        Cells c = cells(x);
        if (c.nv + c.nf <= order) m.add_to({c.nv, c.nf}, 1);
    });
    CHECK(r == m);
}

TEST_CASE("loops only change the series by a walk factor") {
    const int order = 8;
    MotzkinSeries w = motzkin_closed_form(order);
    for (const auto& s : enumerate_schemes({0, false})) {
        auto cyc = offset_cycles(offset_graph(s));
        bool loops_only = !cyc.empty();
        for (const auto& c : cyc) loops_only = loops_only && c.size() == 1;
        if (!loops_only) continue;
        int k = 0;
        FlagMap x = xi_loops(s, &k);
        CHECK(symmetrized(scheme_class_series(s, order)) == w.d.pow(k) * symmetrized(scheme_class_series(x, order)));
    }
}
