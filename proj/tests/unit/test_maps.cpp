#include "doctest.h"

#include <random>

#include "surfmaps/combinatorial_map.hpp"
#include "surfmaps/enumeration.hpp"
#include "surfmaps/surface.hpp"

using namespace surfmaps;

namespace {
std::vector<FlagMap> maps_with(int edges) {
    std::vector<FlagMap> r;
    ShapeSpec sh;
    sh.edges = edges;
    generate_rooted(sh, [&](const FlagMap& m) { r.push_back(m); });
    return r;
}
}  // namespace

TEST_CASE("euler relation holds on every generated map") {
    for (int e = 1; e <= 3; ++e) {
        for (const auto& m : maps_with(e)) {
            check_flag_map(m);
            Cells c = cells(m);
            CHECK(c.ne == e);
            CHECK(c.nv - c.ne + c.nf == surface_of(m).euler);
        }
    }
}

TEST_CASE("rooted map counts with two edges per surface") {
    // 24 in total over all surfaces
    std::map<std::string, int> n;
    for (const auto& m : maps_with(2)) n[surface_of(m).name()]++;
    CHECK(n["sphere"] == 9);
    CHECK(n["pp"] == 10);
    CHECK(n["torus"] == 1);
    CHECK(n["klein"] == 4);
}

TEST_CASE("dual swaps vertices and faces and is an involution") {
    for (const auto& m : maps_with(3)) {
        FlagMap d = dual(m);
        Cells a = cells(m), b = cells(d);
        CHECK(a.nv == b.nf);
        CHECK(a.nf == b.nv);
        CHECK(canonical_key(dual(d)) == canonical_key(m));
    }
}

TEST_CASE("dart round trip and gauge changes keep the canonical encoding") {
    std::mt19937_64 rng(7);
    for (const auto& m : maps_with(3)) {
        CombinatorialMap d = to_darts(m);
        CHECK(validate_map(d).empty());
        std::string key = canonical_encoding(m);
        CHECK(canonical_encoding(to_flags(d)) == key);
        CHECK(canonical_encoding(to_flags(random_gauge(d, rng))) == key);
        CHECK(canonical_encoding(from_json(to_json(d))) == key);
    }
}

TEST_CASE("bipartite maps have a bicolorable dual") {
    for (const auto& m : maps_with(3)) {
        CHECK(is_bipartite(m) == is_bicolorable(dual(m)));
    }
}

TEST_CASE("surface parsing") {
    CHECK(parse_surface("sphere") == SurfaceId{2, true});
    CHECK(parse_surface("pp") == SurfaceId{1, false});
    CHECK(parse_surface("torus") == SurfaceId{0, true});
    CHECK(parse_surface("klein") == SurfaceId{0, false});
    CHECK(parse_surface("chi:-1,n") == SurfaceId{-1, false});
    CHECK_THROWS_AS(parse_surface("chi:-1,o"), MapError);
    CHECK_THROWS_AS(parse_surface("donut"), MapError);
}
