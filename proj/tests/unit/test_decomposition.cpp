#include "doctest.h"

#include <map>
#include <set>

#include "surfmaps/blossoming.hpp"
#include "surfmaps/combinatorial_map.hpp"
#include "surfmaps/decomposition.hpp"
#include "surfmaps/enumeration.hpp"

using namespace surfmaps;

namespace {
EnumSpec well_rooted_four_valent(SurfaceId s, int edges) {
    EnumSpec es;
    es.surface = s;
    es.max_edges = edges;
    es.blossoming = true;
    es.filters = static_cast<uint32_t>(Filter::WellRooted) | static_cast<uint32_t>(Filter::FourValent) |
                 static_cast<uint32_t>(Filter::BudRooted);
    return es;
}
}  // namespace

TEST_CASE("bud-rooted maps have two real well-rootable stems") {
    EnumSpec es;
    es.max_edges = 2;
    es.min_euler = 0;
    es.blossoming = true;
    es.filters = static_cast<uint32_t>(Filter::BudRooted);
    int n = 0;
    enumerate_blossoming(es, [&](const FlagMap& u) {
        auto w = well_rootable_stems(u);
        CHECK(w.size() == 2);
        for (int c : rootable_corners(u)) {
            FlagMap r = reroot_on_corner(u, c).map;
            CHECK(classify(r).bud_rooted);
            auto w2 = well_rootable_stems(r);
            CHECK(w2.size() == 2);
            for (int f : w2) CHECK_FALSE(r.is_virtual(f));
        }
        ++n;
    });
    CHECK(n > 0);
}

TEST_CASE("rerooting on a stem and back") {
    EnumSpec es = well_rooted_four_valent({0, true}, 4);
    enumerate_blossoming(es, [&](const FlagMap& u) {
        for (int f = 0; f < u.size(); ++f) {
            if (!is_rootable_stem(u, f) || f == u.root) continue;
            Rerooted r = reroot_on_stem(u, f);
            CHECK(classify(r.map).bud_rooted);
        }
    });
}

TEST_CASE("pruning then gluing restores the map") {
    EnumSpec es = well_rooted_four_valent({0, false}, 5);
    int n = 0;
    enumerate_blossoming(es, [&](const FlagMap& u) {
        Pruned p = prune(u);
        CHECK(is_core(p.core));
        CHECK(canonical_key(glue(p.core, p.trees)) == canonical_key(u));
        ++n;
    });
    CHECK(n > 0);
}

TEST_CASE("shortcut is inverted by the inverse shortcut") {
    for (SurfaceId s : {SurfaceId{0, true}, SurfaceId{0, false}}) {
        EnumSpec es = well_rooted_four_valent(s, 5);
        enumerate_blossoming(es, [&](const FlagMap& m) {
            auto pm = canonical_perm(m);
            for (int k : rootable_scheme_corners(m)) {
                DecoratedCore dc = shortcut(m, k);
                CHECK((dc.epsilon == 1 || dc.epsilon == 2));
                CHECK(is_scheme_rooted(dc.core));
                auto [m2, k2] = inverse_shortcut(dc);
                CHECK(canonical_key(m2) == canonical_key(m));
                CHECK(canonical_perm(m2)[k2] == pm[k]);
            }
        });
    }
}

TEST_CASE("cores and their walk decorations") {
    EnumSpec es = well_rooted_four_valent({0, true}, 5);
    enumerate_blossoming(es, [&](const FlagMap& m) {
        for (int k : rootable_scheme_corners(m)) {
            FlagMap core = shortcut(m, k).core;
            DecoratedScheme ds = core_to_motzkin(core);
            CHECK(canonical_key(motzkin_to_core(ds.scheme, ds.paths)) == canonical_key(core));
        }
    });
}

TEST_CASE("scheme counts on the torus and the Klein bottle") {
    auto torus = enumerate_schemes({0, true});
    auto klein = enumerate_schemes({0, false});
    CHECK(torus.size() == 12);
    CHECK(klein.size() == 56);
    std::set<std::string> tk, kk;
    for (const auto& s : torus) tk.insert(unrooted(s).key);
    for (const auto& s : klein) kk.insert(unrooted(s).key);
    CHECK(tk.size() == 2);
    CHECK(kk.size() == 13);
    CHECK_THROWS_AS(enumerate_schemes({1, false}), MapError);
}

TEST_CASE("offset structure of torus and Klein schemes") {
    int with_cycles = 0;
    for (SurfaceId sid : {SurfaceId{0, true}, SurfaceId{0, false}}) {
        for (const auto& s : enumerate_schemes(sid)) {
            OffsetReport rep = check_offset_structure(s, sid.euler);
            CHECK(rep.ok);
            auto cyc = offset_cycles(offset_graph(s));
            if (sid.orientable) CHECK(cyc.empty());
            if (cyc.empty()) continue;
            ++with_cycles;
            FlagMap r = remove_first_offset_cycle(s);
            if (!r.is_vertex_map()) CHECK(offset_cycles(offset_graph(r)).size() + 1 == cyc.size());
        }
    }
    CHECK(with_cycles == 24);
}

TEST_CASE("unrooted key does not depend on the rooting") {
    for (const auto& s : enumerate_schemes({0, false})) {
        std::string key = unrooted(s).key;
        for (int c : rootable_corners(s)) CHECK(unrooted(reroot_on_corner(s, c).map).key == key);
    }
}

TEST_CASE("loop removal leaves no offset cycle") {
    for (const auto& s : enumerate_schemes({0, false})) {
        auto cyc = offset_cycles(offset_graph(s));
        bool loops_only = !cyc.empty();
        for (const auto& c : cyc) loops_only = loops_only && c.size() == 1;
        if (!loops_only) continue;
        int k = 0;
        FlagMap x = xi_loops(s, &k);
        CHECK(k == static_cast<int>(cyc.size()));
        CHECK(offset_cycles(offset_graph(x)).empty());
    }
}
