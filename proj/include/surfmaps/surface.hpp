#pragma once

#include <optional>
#include <string>
#include <vector>

#include "surfmaps/flag_map.hpp"

namespace surfmaps {

struct SurfaceId {
    int euler = 2;
    bool orientable = true;
    bool operator==(const SurfaceId&) const = default;
    bool operator<(const SurfaceId& o) const {
        return euler != o.euler ? euler > o.euler : orientable > o.orientable;
    }
    /// 2g as an integer (g may be a half integer)
    int twice_genus() const { return 2 - euler; }
    std::string name() const;
};

/// Parses sphere|pp|torus|klein|chi:<int>,<o|n>.
SurfaceId parse_surface(const std::string& s);

SurfaceId surface_of(const FlagMap& m);
bool is_orientable(const FlagMap& m);

/// BFS heights over interior edges, indexed by vertex id of cells(m).
std::vector<int> distances_from(const FlagMap& m, const Cells& cl, int vertex);

/// Distance parity from the root vertex when every cycle is even.
std::optional<std::vector<int>> classify_bipartite(const FlagMap& m, const Cells& cl);
bool is_bipartite(const FlagMap& m);
bool is_bicolorable(const FlagMap& m);

struct WeightVectors {
    std::vector<int> face_weight;    // [i] = #faces of degree 2i
    std::vector<int> vertex_weight;  // [i] = #vertices of degree 2i
    int black_vertices = 0, white_vertices = 0;
    int black_faces = 0, white_faces = 0;
    bool bipartite = false, bicolorable = false;
};

WeightVectors weights(const FlagMap& m);

}  // namespace surfmaps
