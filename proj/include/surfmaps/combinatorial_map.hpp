#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "surfmaps/flag_map.hpp"

namespace surfmaps {

struct OrientedCorner {
    int dart = 0;  // the corner following this dart in direct order
    int spin = 1;
    bool operator==(const OrientedCorner&) const = default;
    OrientedCorner reversed() const { return {dart, -spin}; }
};

struct StemInfo {
    StemKind kind = StemKind::Bud;
    bool is_virtual = false;
};

/// Signed rotation system. alpha[d] == -1 marks a stem.
struct CombinatorialMap {
    int n_darts = 0;
    std::vector<int> sigma, alpha, twist;
    OrientedCorner root;
    std::optional<int> pointed;  // representative dart of the pointed vertex
    std::map<int, StemInfo> stems;
    bool vertex_map_pointed = false;  // pointing of the dartless map
};

/// Validation problems, one string per violated invariant.
std::vector<std::string> validate_map(const CombinatorialMap& m);
/// Throws MapError on the first violated invariant.
void require_valid(const CombinatorialMap& m);

OrientedCorner face_rotation(const CombinatorialMap& m, OrientedCorner oc);
OrientedCorner vertex_rotation(const CombinatorialMap& m, OrientedCorner oc);

CombinatorialMap flip(const CombinatorialMap& m, int vertex_dart);

/// Conversions. Flags of dart d are 2d (spin +1) and 2d+1 (spin -1).
FlagMap to_flags(const CombinatorialMap& m);

/// Gauge: one flag per vertex declared direct. Empty means "first flag of
/// each vertex in index order". flag_index, when given, receives the flag of
/// to_flags(result) matching each flag of f.
CombinatorialMap to_darts(const FlagMap& f, const std::vector<int>& direct_flags = {},
                          std::vector<int>* flag_index = nullptr);

/// Same map with every vertex orientation flipped at random.
CombinatorialMap random_gauge(const CombinatorialMap& m, std::mt19937_64& rng);

std::string to_json(const CombinatorialMap& m);
CombinatorialMap from_json(const std::string& text);

/// Canonical relabeling: BFS from the root flag over C, H, E.
FlagMap canonical_form(const FlagMap& m);
std::string canonical_encoding(const FlagMap& m);
std::string canonical_encoding(const CombinatorialMap& m);

/// Convenience: compact key for hashing (flag arrays of the canonical form).
std::string canonical_key(const FlagMap& m);

}  // namespace surfmaps
