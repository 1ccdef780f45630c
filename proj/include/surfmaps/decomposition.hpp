#pragma once

#include <map>
#include <string>
#include <vector>

#include "surfmaps/blossoming.hpp"
#include "surfmaps/flag_map.hpp"
#include "surfmaps/surface.hpp"

namespace surfmaps {

/// Flag maps produced by surgery keep a record of where old flags went.
struct Rerooted {
    FlagMap map;
    std::vector<int> old_to_new;  // -1 for deleted flags
};

// ---- labels on corners ----

/// Per flag f: label(corner of H f) - label(corner of f). Stems add their
/// kind in tour direction; across an edge halfedge the corner on the side of
/// the edge's first traversal is one above.
std::vector<int> halfedge_steps(const FlagMap& m, const Tour& t);

/// Labels determined by the steps around each vertex, shifted so every
/// vertex has minimum 0. Throws NotDecent when the steps around a vertex do
/// not sum to zero.
std::vector<int> relative_labels(const FlagMap& m, const Tour& t);

/// Steps hold, and the root corner has label 0.
bool is_decent(const FlagMap& m, const Tour& t, const std::vector<int>& label);

// ---- rerooting ----

bool is_rootable_stem(const FlagMap& m, int f);

/// Root bud (if any) becomes a leaf, s becomes a bud, the root moves to the
/// corner preceding s. Virtual stems are kept.
Rerooted reroot_on_stem(const FlagMap& m, int s);

/// Corner given by either of its flags. Throws NotRootableCorner.
Rerooted reroot_on_corner(const FlagMap& m, int corner);

bool is_rootable_corner(const FlagMap& m, int corner);

/// Tour flags of rootable corners, in tour order from the root corner.
std::vector<int> rootable_corners(const FlagMap& m);

/// Rootable stems s with reroot_on_stem(m, s) well-rooted, in tour order
/// starting at the given corner (root corner by default).
std::vector<int> well_rootable_stems(const FlagMap& m, int from_corner = -1);

/// Removes the virtual stems whose corners do not touch the root corner.
Rerooted drop_stale_virtual(const FlagMap& m);

// ---- pruning ----

/// A tree cut from a core stem. Flags are local; `plant` is the flag facing
/// the core stem's tour flag (a stem flag of kind None in this map).
struct PlantedTree {
    FlagMap map;
    int plant = -1;
    int marked = -1;  // local root flag of the original map, if it lies here
};

struct Pruned {
    FlagMap core;
    std::map<int, PlantedTree> trees;  // keyed by the core stem's tour flag
    std::vector<int> old_to_new;
};

/// Repeatedly removes vertices of interior degree 1. Throws EmptyCoreOnSphere
/// when nothing is left.
Pruned prune(const FlagMap& u);

/// Inverse of prune; core flags keep their numbers, tree flags follow.
FlagMap glue(const FlagMap& core, const std::map<int, PlantedTree>& trees,
             std::vector<int>* tree_offsets = nullptr);

// ---- schemes ----

bool is_core(const FlagMap& m);
/// Scheme vertices: interior degree at least 3.
std::vector<char> scheme_vertices(const FlagMap& m, const Cells& cl);
bool is_scheme_rooted(const FlagMap& core);

struct LabeledScheme {
    FlagMap map;
    std::vector<int> label;  // per flag (corner label)
};

/// Contracts branches of a scheme-rooted core. Throws NotSchemeRooted or
/// GenusTooSmall.
LabeledScheme scheme_of(const FlagMap& core);

/// Vertex heights (minimum corner label) and relative labels.
std::vector<int> vertex_heights(const FlagMap& m, const Cells& cl, const std::vector<int>& label);

/// Minimum relative label of the two corners beside each halfedge, per flag.
std::vector<int> halfedge_types(const FlagMap& m, const std::vector<int>& rel);
std::vector<int> vertex_types(const FlagMap& m, const Cells& cl, const std::vector<int>& rel);

/// Class key of the unrooted map: least canonical key over rerootings on
/// rootable corners. Also returns the number of rootable corners of the
/// unrooted map (virtual corners forgotten).
struct UnrootedInfo {
    std::string key;
    int rootable_corners = 0;
};
UnrootedInfo unrooted(const FlagMap& s);

/// Rooted unlabeled 4-valent schemes of a surface (real or virtual root).
/// Throws GenusTooSmall for Euler characteristic >= 1.
std::vector<FlagMap> enumerate_schemes(const SurfaceId& surface);

// ---- edges of a scheme ----

struct SchemeEdge {
    int origin_flag = -1;       // tour flag of the second traversal (departs from the origin)
    int first_flag = -1;        // tour flag of the first traversal
    bool forward = false;       // both traversals leave from the same end
    int origin_vertex = -1, dest_vertex = -1;
    int origin_type = 0, dest_type = 0;  // relative types of the two halfedges
};

/// One entry per edge, in order of first traversal. The origin is the end
/// where the second traversal starts.
std::vector<SchemeEdge> scheme_edges(const FlagMap& s, const Tour& t, const Cells& cl, const std::vector<int>& rel);

// ---- Motzkin decoration of branches ----

/// Step types of a branch vertex, read from origin to destination. Side 1 is
/// the side of the first traversal.
enum class Step : int8_t {
    Up,    // height + 1
    Down,  // height - 1
    S1BL,  // both stems on side 1, bud then leaf (origin to destination)
    S1LB,
    S2BL,  // both stems on side 2
    S2LB,
};

struct BranchPath {
    int start = 0;  // height at the origin
    std::vector<Step> steps;
};

struct DecoratedScheme {
    LabeledScheme scheme;
    std::vector<BranchPath> paths;  // indexed like scheme_edges
};

DecoratedScheme core_to_motzkin(const FlagMap& core);
FlagMap motzkin_to_core(const LabeledScheme& l, const std::vector<BranchPath>& paths);

// ---- offset structure ----

struct OffsetArc {
    int edge = -1;  // index into scheme_edges
    int from = -1, to = -1;
};

struct OffsetGraph {
    int nv = 0;
    std::vector<OffsetArc> arcs;
};

OffsetGraph offset_graph(const FlagMap& s);
/// Directed simple cycles, each as a list of arc indices.
std::vector<std::vector<int>> offset_cycles(const OffsetGraph& g);

struct OffsetReport {
    bool ok = true;
    int max_vertex_type = 0;
    int total_cycle_length = 0;
    std::vector<std::string> problems;
};

/// Structural predicate on offset cycles (length, disjointness, forward and
/// consecutive edges, total length) plus the vertex-type bound.
OffsetReport check_offset_structure(const FlagMap& s, int euler);

/// Removes the vertices of the first offset cycle (the one holding the
/// earliest edge). Cut edges leave stems whose kind follows the relative
/// labels beside them. When the root vertex goes, the first bud after it
/// that keeps every relative label becomes the root; NotSpecial if none
/// does. Returns the flagless map when the cycle covers every vertex; that
/// result has Euler characteristic 1.
FlagMap remove_first_offset_cycle(const FlagMap& s);

/// Adds a leaf on each side of the type-1 halfedge of every offset loop.
/// Throws HasLongOffsetCycle.
FlagMap xi_loops(const FlagMap& s, int* loops = nullptr);

// ---- shortcut ----

struct DecoratedCore {
    FlagMap core;
    std::map<int, PlantedTree> trees;  // by tour flag of a real rootable stem
    int epsilon = 0;
};

DecoratedCore shortcut(const FlagMap& m, int corner);
/// Returns the map and the tour flag of the marked corner.
std::pair<FlagMap, int> inverse_shortcut(const DecoratedCore& dc);

/// Tour flags of rootable scheme corners of a well-rooted map.
std::vector<int> rootable_scheme_corners(const FlagMap& m);

/// Canonical relabeling permutation (breadth-first from the root).
std::vector<int> canonical_perm(const FlagMap& m);

}  // namespace surfmaps
