#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfmaps {

/// Raised when an operation is applied outside its domain.
class MapError : public std::runtime_error {
public:
    MapError(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

enum class StemKind : int8_t { None = 0, Bud = 1, Leaf = -1 };

/// A map stored as flags. A flag is an oriented corner: a corner together
/// with the halfedge it points to. Three fixed-point-free involutions act on
/// flags:
///   C  reverses the oriented corner (same corner, other halfedge),
///   H  keeps the halfedge and moves to the other corner beside it,
///   E  crosses the edge to the flag on the same side at the other end.
/// For a stem (an unmatched halfedge) E coincides with H on its two flags.
///
/// Vertex rotation is C.H, face rotation is C.E; vertices are <C,H>-orbits,
/// faces <C,E>-orbits, edges <H,E>-orbits, corners C-orbits, halfedges
/// H-orbits. The dual swaps H and E.
///
/// The map with no flags is the vertex map (one vertex, no edge, one face).
struct FlagMap {
    std::vector<int> C, H, E;
    std::vector<StemKind> stem;     // per flag, equal on both flags of a halfedge
    std::vector<uint8_t> virt;      // per flag, 1 on virtual stems
    int root = -1;                  // root flag, -1 only for the vertex map
    bool pointed = false;
    int point = -1;                 // a flag of the pointed vertex (-1 for the vertex map)

    int size() const { return static_cast<int>(C.size()); }
    bool is_vertex_map() const { return C.empty(); }

    int sigma(int f) const { return C[H[f]]; }
    int sigma_inv(int f) const { return H[C[f]]; }
    int theta(int f) const { return C[E[f]]; }
    int theta_inv(int f) const { return E[C[f]]; }
    int rev(int f) const { return C[f]; }

    bool is_stem(int f) const { return E[f] == H[f]; }
    StemKind kind(int f) const { return stem[f]; }
    bool is_virtual(int f) const { return virt[f] != 0; }

    void resize(int n);
};

/// Orbit decomposition of a flag map.
struct Cells {
    std::vector<int> vertex, face, edge, corner, half;
    int nv = 0, nf = 0, ne = 0, nstems = 0, ncorners = 0, nhalf = 0;
    std::vector<int> vertex_rep, face_rep;  // smallest flag of each cell
};

Cells cells(const FlagMap& m);

/// Label orbits of the group generated by the given involutions.
std::vector<int> orbits(const FlagMap& m, bool useC, bool useH, bool useE, int* count = nullptr);

/// Checks the involution/commutation axioms and connectivity; throws MapError.
void check_flag_map(const FlagMap& m);

FlagMap vertex_map(bool pointed = false);

/// Number of interior edges (stems excluded).
int edge_count(const FlagMap& m);

/// Degree of each vertex counted in corners; virtual stems skipped when
/// count_virtual is false.
std::vector<int> vertex_degrees(const FlagMap& m, const Cells& cl, bool count_virtual = false);
std::vector<int> interior_degrees(const FlagMap& m, const Cells& cl);
std::vector<int> face_degrees(const FlagMap& m, const Cells& cl);

/// Swaps H and E. Root flag is kept; the pointed vertex is dropped unless
/// marked_face is a flag, in which case its face becomes the pointed vertex.
FlagMap dual(const FlagMap& m, int marked_face = -1);

/// Relabels flags; perm[old] = new.
FlagMap relabel(const FlagMap& m, const std::vector<int>& perm);

/// Keeps only interior edges (stems dropped), relabeling flags. map_old_to_new
/// receives -1 for dropped flags.
FlagMap interior(const FlagMap& m, std::vector<int>* map_old_to_new = nullptr);

}  // namespace surfmaps
