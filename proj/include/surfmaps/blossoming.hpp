#pragma once

#include <vector>

#include "surfmaps/flag_map.hpp"

namespace surfmaps {

/// Tour of a unicellular map: flags theta^1(root), ..., theta^K(root) = root.
struct Tour {
    std::vector<int> flags;
    std::vector<int> index;  // per flag, tour index in [1, K], or 0 for reversed flags
    /// Tour index of the corner of flag f (whichever orientation is in the tour).
    int corner_index(const FlagMap& m, int f) const { return index[f] ? index[f] : index[m.C[f]]; }
};

Tour tour(const FlagMap& u);

/// Corner labels stored per flag. Throws Unbalanced when the tour does not
/// close at 0 and allow_unbalanced is false.
std::vector<int> corner_labeling(const FlagMap& u, const Tour& t, bool allow_unbalanced = false);

struct Classification {
    bool unicellular = false;
    bool balanced = false;
    bool well_blossoming = false;
    bool bud_rooted = false;
    bool well_rooted = false;
    bool bicolorable = false;
    bool virtually_rooted = false;
};

/// Well-labeling check: beside each edge halfedge, the corner met first in
/// the tour carries the larger label, by exactly one.
bool is_well_labeling(const FlagMap& u, const Tour& t, const std::vector<int>& label);

Classification classify(const FlagMap& u);

/// Parity 2-colouring of oriented corners: a step around a vertex flips the
/// colour, a step along a face flips it only across a stem.
bool blossoming_bicolorable(const FlagMap& u);

enum class Color : int8_t { None = -1, Black = 0, White = 1 };

struct ColorWeights {
    int face_black = 0, face_white = 0;          // gamma^f
    int rootable_black = 0, rootable_white = 0;  // gamma^r
    Color face = Color::None;
};

/// Colour of a stem from the labels of its two corners; virtual stems have none.
Color stem_color(const FlagMap& u, const std::vector<int>& label, int stem_flag);

/// One flag per real rootable stem (the root bud if real, then every real
/// leaf), in tour order of the first corner beside it.
std::vector<int> rootable_stems(const FlagMap& u, const Tour& t);

ColorWeights color_weights(const FlagMap& u, const Tour& t, const std::vector<int>& label);

/// True when the root corner sits between two virtual buds.
bool is_virtually_rooted(const FlagMap& u);

/// Tour flag of the corner preceding a stem: the tour flag whose halfedge is
/// the stem.
int flag_before_stem(const FlagMap& u, const Tour& t, int stem_flag);

}  // namespace surfmaps
