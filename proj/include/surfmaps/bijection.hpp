#pragma once

#include <string>
#include <vector>

#include "surfmaps/flag_map.hpp"

namespace surfmaps {

/// Edge subset of a host map, stored per flag (all four flags of an edge agree).
struct SpanningTree {
    std::vector<uint8_t> in_tree;
    bool contains(int flag) const { return in_tree[flag] != 0; }
};

/// Heights of every flag's vertex above the pointed vertex.
std::vector<int> flag_heights(const FlagMap& m);

SpanningTree leftmost_geodesic_tree(const FlagMap& m);

/// Brute-force reference: lexicographic maximum of contour words over all
/// geodesic spanning trees. Exponential, for tests only.
SpanningTree leftmost_geodesic_tree_bruteforce(const FlagMap& m);

bool is_spanning_tree(const FlagMap& m, const SpanningTree& t);
bool is_geodesic(const FlagMap& m, const SpanningTree& t);
std::vector<int> contour_word(const FlagMap& m, const SpanningTree& t);

FlagMap opening(const FlagMap& m, const SpanningTree& t);
FlagMap opening_leftmost(const FlagMap& m);

/// Stem matching of the closure: pairs (bud flag, leaf flag), each given by
/// the tour flag preceding the stem.
std::vector<std::pair<int, int>> closure_matching(const FlagMap& u);
/// Same matching by the nested rule (match an adjacent bud/leaf pair in the
/// cyclic order, remove, repeat). Used as a cross-check.
std::vector<std::pair<int, int>> closure_matching_recursive(const FlagMap& u);

FlagMap closure(const FlagMap& u);

bool roundtrip_open_close(const FlagMap& m, std::string* diff = nullptr);
bool roundtrip_close_open(const FlagMap& u, std::string* diff = nullptr);

/// Tutte's quadrangulation. The vertex map goes to the vertex map.
FlagMap quadrangulate(const FlagMap& m);
FlagMap quadrangulate_inverse(const FlagMap& q);

}  // namespace surfmaps
