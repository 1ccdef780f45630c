#include "doctest.h"

#include <set>

#include "surfmaps/combinatorial_map.hpp"
#include "surfmaps/enumeration.hpp"

using namespace surfmaps;

namespace {
std::vector<std::string> orderly_encodings(int edges) {
    std::vector<std::string> r;
    ShapeSpec sh;
    sh.edges = edges;
    generate_rooted(sh, [&](const FlagMap& m) { r.push_back(canonical_encoding(m)); });
    return r;
}
}  // namespace

TEST_CASE("orderly generation matches the dart brute force") {
    for (int e = 0; e <= 3; ++e) {
        auto a = orderly_encodings(e);
        std::set<std::string> sa(a.begin(), a.end());
        CHECK(sa.size() == a.size());
        auto b = bruteforce_rooted_encodings(e);
        CHECK(std::vector<std::string>(sa.begin(), sa.end()) == b);
    }
}

TEST_CASE("generated maps are already canonical") {
    ShapeSpec sh;
    sh.edges = 3;
    generate_rooted(sh, [&](const FlagMap& m) {
        FlagMap c = canonical_form(m);
        CHECK(c.C == m.C);
        CHECK(c.H == m.H);
        CHECK(c.E == m.E);
    });
}

TEST_CASE("sphere with one edge has two rooted maps") {
    EnumSpec s;
    s.surface = parse_surface("sphere");
    s.min_edges = s.max_edges = 1;
    int n = 0;
    enumerate_maps(s, [&](const FlagMap&) { ++n; });
    CHECK(n == 2);
}
