#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "surfmaps/flag_map.hpp"
#include "surfmaps/surface.hpp"

namespace surfmaps {

/// Shape constraints checked while the flag tables are being built.
struct ShapeSpec {
    int edges = 0;
    int stems = 0;
    int vertex_degree = 0;  // 0: any, else every vertex has this degree (stems included)
    int face_degree = 0;    // 0: any
    bool unicellular = false;
};

/// Orderly generation: every rooted map with the given shape is produced
/// exactly once, already in canonical flag order (root flag 0, flags numbered
/// in breadth-first order over C, H, E). Stem kinds are left unset.
void generate_rooted(const ShapeSpec& spec, const std::function<void(const FlagMap&)>& out);

/// Reference enumerator over dart tables (sigma permutations, fixed alpha,
/// twists, roots) deduplicated by canonical encoding. Exponential; edges <= 3.
std::vector<std::string> bruteforce_rooted_encodings(int edges);

enum class Filter : uint32_t {
    Bipartite = 1,
    Quadrangulation = 2,
    FourValent = 4,
    Bicolorable = 8,
    Pointed = 16,
    RootPointed = 32,
    WellBlossoming = 64,
    WellRooted = 128,
    BudRooted = 256,
};

struct EnumSpec {
    std::optional<SurfaceId> surface;
    int min_euler = -1000;
    int max_edges = 0;
    int min_edges = 0;
    uint32_t filters = 0;
    /// blossoming corpus only: stems allowed with edges + stems/2 <= max_edges
    bool blossoming = false;
    bool has(Filter f) const { return (filters & static_cast<uint32_t>(f)) != 0; }
};

uint32_t parse_filters(const std::string& csv);

/// Guard on the dart budget (2 edges + stems); reads SURFACE_MAPS_MAX_DARTS.
int max_darts_guard();

/// Rooted maps (or pointed maps, or well-blossoming maps) matching spec, in
/// generation order. Pointed maps come as one copy per vertex.
void enumerate_maps(const EnumSpec& spec, const std::function<void(const FlagMap&)>& out);

/// Blossoming maps: unicellular, stems assigned every bud/leaf pattern, kept
/// when well-blossoming (or well-rooted / bud-rooted per filters).
void enumerate_blossoming(const EnumSpec& spec, const std::function<void(const FlagMap&)>& out);

/// Monomial -> count. Keys are exponent pairs (x, y).
using Bivariate = std::map<std::pair<int, int>, long long>;

/// Count series used by the identities: M (vertices, faces), BP^□ (black,
/// white vertices), R^× with face-colour weight and with rootable-stem weight.
struct CountSeries {
    Bivariate maps, quadrangulations, four_valent_face, four_valent_rootable;
};

/// Bivariate count series up to the given number of map edges on a surface.
/// The vertex map contributes xy to every series by convention.
CountSeries series_from_counts(const SurfaceId& s, int max_edges);

std::string bivariate_to_string(const Bivariate& b);

}  // namespace surfmaps
