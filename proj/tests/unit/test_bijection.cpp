#include "doctest.h"

#include "surfmaps/bijection.hpp"
#include "surfmaps/blossoming.hpp"
#include "surfmaps/combinatorial_map.hpp"
#include "surfmaps/enumeration.hpp"
#include "surfmaps/surface.hpp"

using namespace surfmaps;

TEST_CASE("opening then closure gives back pointed bipartite maps") {
    EnumSpec s;
    s.max_edges = 3;
    s.min_euler = 0;
    s.filters = static_cast<uint32_t>(Filter::Bipartite) | static_cast<uint32_t>(Filter::Pointed);
    int n = 0;
    enumerate_maps(s, [&](const FlagMap& m) {
        std::string diff;
        CHECK_MESSAGE(roundtrip_open_close(m, &diff), diff);
        ++n;
    });
    CHECK(n > 0);
}

TEST_CASE("opened maps are well-blossoming with matched weights") {
    EnumSpec s;
    s.max_edges = 3;
    s.filters = static_cast<uint32_t>(Filter::Bipartite) | static_cast<uint32_t>(Filter::Pointed);
    enumerate_maps(s, [&](const FlagMap& m) {
        FlagMap u = opening_leftmost(m);
        Classification c = classify(u);
        CHECK(c.unicellular);
        CHECK(c.well_blossoming);
        CHECK(surface_of(u) == surface_of(m));
    });
}

TEST_CASE("leftmost geodesic tree agrees with the brute force") {
    EnumSpec s;
    s.max_edges = 3;
    s.filters = static_cast<uint32_t>(Filter::Bipartite) | static_cast<uint32_t>(Filter::Pointed);
    enumerate_maps(s, [&](const FlagMap& m) {
        if (m.is_vertex_map()) return;
        SpanningTree a = leftmost_geodesic_tree(m), b = leftmost_geodesic_tree_bruteforce(m);
        CHECK(is_spanning_tree(m, a));
        CHECK(is_geodesic(m, a));
        CHECK(a.in_tree == b.in_tree);
    });
}

TEST_CASE("closure matchings agree") {
    EnumSpec s;
    s.max_edges = 3;
    s.blossoming = true;
    s.filters = static_cast<uint32_t>(Filter::WellBlossoming);
    enumerate_blossoming(s, [&](const FlagMap& u) { CHECK(closure_matching(u) == closure_matching_recursive(u)); });
}

TEST_CASE("quadrangulation is invertible and bipartite") {
    ShapeSpec sh;
    sh.edges = 3;
    generate_rooted(sh, [&](const FlagMap& m) {
        FlagMap q = quadrangulate(m);
        CHECK(is_bipartite(q));
        CHECK(canonical_key(quadrangulate_inverse(q)) == canonical_key(m));
        Cells a = cells(m), b = cells(q);
        CHECK(b.nv == a.nv + a.nf);
        CHECK(b.nf == a.ne);
    });
}
