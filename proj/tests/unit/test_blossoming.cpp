#include "doctest.h"

#include <algorithm>

#include "surfmaps/blossoming.hpp"
#include "surfmaps/enumeration.hpp"

using namespace surfmaps;

TEST_CASE("well-rooted maps: labels from 0, black face, white root bud") {
    EnumSpec es;
    es.max_edges = 3;
    es.blossoming = true;
    es.filters = static_cast<uint32_t>(Filter::WellRooted);
    int n = 0;
    enumerate_blossoming(es, [&](const FlagMap& u) {
        if (u.is_vertex_map()) return;
        Tour t = tour(u);
        auto lab = corner_labeling(u, t);
        CHECK(lab[u.root] == 0);
        int lo = *std::min_element(lab.begin(), lab.end());
        CHECK(lo == 0);
        ColorWeights w = color_weights(u, t, lab);
        CHECK(w.face == Color::Black);
        CHECK(w.face_black == w.rootable_black + 1);
        CHECK(w.face_white + 1 == w.rootable_white);
        CHECK(blossoming_bicolorable(u));
        ++n;
    });
    CHECK(n > 0);
}

TEST_CASE("rootable stems are the root bud and the leaves") {
    EnumSpec es;
    es.max_edges = 3;
    es.blossoming = true;
    es.filters = static_cast<uint32_t>(Filter::BudRooted);
    enumerate_blossoming(es, [&](const FlagMap& u) {
        Tour t = tour(u);
        for (int f : rootable_stems(u, t)) CHECK((u.kind(f) == StemKind::Leaf || f == u.root || u.H[f] == u.root));
        CHECK(classify(u).well_blossoming);
    });
}
