#include "surfmaps/enumeration.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

#include "surfmaps/bijection.hpp"
#include "surfmaps/blossoming.hpp"
#include "surfmaps/combinatorial_map.hpp"

namespace surfmaps {

namespace {

// Backtracking over partial involution tables. Flags are numbered in the
// order the canonical BFS would discover them, so each rooted map shows up
// once: at flag i, generator X, the image is either a fresh flag (the next
// label) or an already discovered flag j > i whose X-slot is still open.
class Orderly {
public:
    Orderly(const ShapeSpec& s, const std::function<void(const FlagMap&)>& out)
        : spec_(s), out_(out), n_(4 * s.edges + 2 * s.stems) {
        tab_[0].assign(n_, -1);
        tab_[1].assign(n_, -1);
        tab_[2].assign(n_, -1);
    }

    void run() {
        if (n_ == 0) {
            out_(vertex_map());
            return;
        }
        count_ = 1;
        rec(0, 0);
    }

private:
    const ShapeSpec& spec_;
    const std::function<void(const FlagMap&)>& out_;
    int n_;
    std::vector<int> tab_[3];  // C, H, E
    int count_ = 0;
    int stems_ = 0;

    int& C(int f) { return tab_[0][f]; }
    int& H(int f) { return tab_[1][f]; }
    int& E(int f) { return tab_[2][f]; }

    // HE = EH wherever both sides are determined, and nothing forced into an
    // occupied slot.
    bool commute_ok(int x) {
        if (x < 0) return true;
        int h = H(x), e = E(x);
        if (h < 0 || e < 0) return true;
        int a = E(h), b = H(e);
        if (a >= 0 && b >= 0) return a == b;
        if (a >= 0) {
            int ha = H(a);
            return ha < 0 || ha == e;
        }
        if (b >= 0) {
            int eb = E(b);
            return eb < 0 || eb == h;
        }
        return true;
    }

    // Length of the alternating (g1,g2) walk through x: returns {size, closed}.
    std::pair<int, bool> orbit(int x, int g1, int g2) {
        int len = 1, y = x, g = g1;
        for (;;) {
            int z = tab_[g][y];
            if (z < 0) break;
            if (z == x) return {len, true};
            ++len;
            y = z;
            g = g == g1 ? g2 : g1;
        }
        // open chain: walk the other way
        y = x;
        g = g2;
        for (;;) {
            int z = tab_[g][y];
            if (z < 0) break;
            ++len;
            y = z;
            g = g == g1 ? g2 : g1;
        }
        return {len, false};
    }

    bool cell_ok(int x, int g1, int g2, int target, bool whole) {
        auto [len, closed] = orbit(x, g1, g2);
        if (whole) {
            if (closed) return len == n_;
            return true;
        }
        if (target <= 0) return true;
        if (closed) return len == target;
        return len <= target;
    }

    bool local_ok(int i, int j, int g) {
        if (g != 0) {
            for (int x : {i, j, H(i), H(j), E(i), E(j)})
                if (!commute_ok(x)) return false;
        }
        // vertices <C,H>, faces <C,E>
        if (g != 2 && spec_.vertex_degree > 0) {
            if (!cell_ok(i, 0, 1, 2 * spec_.vertex_degree, false)) return false;
        }
        if (g != 1) {
            if (spec_.unicellular && !cell_ok(i, 0, 2, 0, true)) return false;
            if (spec_.face_degree > 0 && !cell_ok(i, 0, 2, 2 * spec_.face_degree, false)) return false;
        }
        return true;
    }

    void assign(int i, int j, int g) {
        tab_[g][i] = j;
        tab_[g][j] = i;
    }
    void unassign(int i, int j, int g) {
        tab_[g][i] = -1;
        tab_[g][j] = -1;
    }

    void emit() {
        FlagMap m;
        m.C = tab_[0];
        m.H = tab_[1];
        m.E = tab_[2];
        m.stem.assign(n_, StemKind::None);
        m.virt.assign(n_, 0);
        m.root = 0;
        out_(m);
    }

    void rec(int i, int g) {
        if (g == 3) {
            ++i;
            g = 0;
        }
        if (i == count_) {
            if (count_ == n_ && stems_ == spec_.stems) emit();
            return;
        }
        if (tab_[g][i] >= 0) {
            rec(i, g + 1);
            return;
        }
        // existing flags first, then a fresh one
        for (int j = i + 1; j < count_; ++j) {
            if (tab_[g][j] >= 0) continue;
            try_pair(i, j, g);
        }
        if (count_ < n_) {
            int j = count_++;
            try_pair(i, j, g);
            --count_;
        }
    }

    void try_pair(int i, int j, int g) {
        assign(i, j, g);
        bool stem = false;
        if (g == 2 && H(i) == j) stem = true;
        if (g == 1 && E(i) == j) stem = true;
        bool ok = true;
        if (stem) {
            // a stem's two flags pair both ways; an edge never pairs so
            if (stems_ + 1 > spec_.stems) ok = false;
        }
        if (ok) ok = local_ok(i, j, g);
        if (ok) {
            if (stem) stems_ += 1;
            rec(i, g + 1);
            if (stem) stems_ -= 1;
        }
        unassign(i, j, g);
    }
};


bool surface_match(const EnumSpec& spec, const FlagMap& m) {
    SurfaceId s = surface_of(m);
    if (spec.surface) return s == *spec.surface;
    return s.euler >= spec.min_euler;
}

}  // namespace

void generate_rooted(const ShapeSpec& spec, const std::function<void(const FlagMap&)>& out) {
    Orderly o(spec, out);
    o.run();
}

std::vector<std::string> bruteforce_rooted_encodings(int edges) {
    if (edges > 3) throw MapError("BoundTooLarge", "dart brute force limited to 3 edges");
    std::set<std::string> seen;
    if (edges == 0) {
        seen.insert(canonical_encoding(vertex_map()));
        return {seen.begin(), seen.end()};
    }
    const int n = 2 * edges;
    CombinatorialMap m;
    m.n_darts = n;
    m.alpha.resize(n);
    for (int d = 0; d < n; ++d) m.alpha[d] = d ^ 1;
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
        m.sigma = sigma;
        for (int tw = 0; tw < (1 << edges); ++tw) {
            m.twist.assign(n, 1);
            for (int e = 0; e < edges; ++e)
                if (tw >> e & 1) m.twist[2 * e] = m.twist[2 * e + 1] = -1;
            if (!validate_map(m).empty()) continue;
            for (int d = 0; d < n; ++d)
                for (int s : {1, -1}) {
                    m.root = {d, s};
                    seen.insert(canonical_encoding(m));
                }
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return {seen.begin(), seen.end()};
}

uint32_t parse_filters(const std::string& csv) {
    uint32_t r = 0;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item == "bipartite") r |= static_cast<uint32_t>(Filter::Bipartite);
        else if (item == "quadrangulation") r |= static_cast<uint32_t>(Filter::Quadrangulation);
        else if (item == "four_valent") r |= static_cast<uint32_t>(Filter::FourValent);
        else if (item == "bicolorable") r |= static_cast<uint32_t>(Filter::Bicolorable);
        else if (item == "pointed") r |= static_cast<uint32_t>(Filter::Pointed);
        else if (item == "root_pointed") r |= static_cast<uint32_t>(Filter::RootPointed);
        else if (item == "well_blossoming" || item == "blossoming") r |= static_cast<uint32_t>(Filter::WellBlossoming);
        else if (item == "well_rooted") r |= static_cast<uint32_t>(Filter::WellRooted);
        else if (item == "bud_rooted") r |= static_cast<uint32_t>(Filter::BudRooted);
        else throw MapError("UnknownFilter", item);
    }
    return r;
}

int max_darts_guard() {
    const char* v = std::getenv("SURFACE_MAPS_MAX_DARTS");
    if (!v || !*v) return 24;
    char* end = nullptr;
    long x = std::strtol(v, &end, 10);
    if (end == v || x <= 0) throw MapError("BadGuard", std::string("SURFACE_MAPS_MAX_DARTS=") + v);
    return static_cast<int>(x);
}

void enumerate_maps(const EnumSpec& spec, const std::function<void(const FlagMap&)>& out) {
    if (spec.blossoming || spec.has(Filter::WellBlossoming) || spec.has(Filter::WellRooted) ||
        spec.has(Filter::BudRooted)) {
        enumerate_blossoming(spec, out);
        return;
    }
    if (2 * spec.max_edges > max_darts_guard())
        throw MapError("BoundTooLarge", std::to_string(2 * spec.max_edges) + " darts exceeds the guard");
    for (int e = spec.min_edges; e <= spec.max_edges; ++e) {
        ShapeSpec sh;
        sh.edges = e;
        if (spec.has(Filter::FourValent)) sh.vertex_degree = 4;
        if (spec.has(Filter::Quadrangulation)) sh.face_degree = 4;
        if (e > 0 && sh.vertex_degree && (2 * e) % 4) continue;
        if (e > 0 && sh.face_degree && (2 * e) % 4) continue;
        generate_rooted(sh, [&](const FlagMap& m) {
            if (!surface_match(spec, m)) return;
            if (spec.has(Filter::Bipartite) && !is_bipartite(m)) return;
            if (spec.has(Filter::Bicolorable) && !is_bicolorable(m)) return;
            if (spec.has(Filter::Pointed)) {
                if (m.is_vertex_map()) {
                    out(vertex_map(true));
                    return;
                }
                Cells cl = cells(m);
                for (int v = 0; v < cl.nv; ++v) {
                    FlagMap p = m;
                    p.pointed = true;
                    p.point = cl.vertex_rep[v];
                    out(p);
                }
                return;
            }
            if (spec.has(Filter::RootPointed)) {
                FlagMap p = m;
                p.pointed = true;
                p.point = m.is_vertex_map() ? -1 : cells(m).vertex_rep[cells(m).vertex[m.root]];
                out(p);
                return;
            }
            out(m);
        });
    }
}

void enumerate_blossoming(const EnumSpec& spec, const std::function<void(const FlagMap&)>& out) {
    // budget: interior edges + stems/2 <= max_edges, i.e. darts <= 2 max_edges
    if (2 * spec.max_edges > max_darts_guard())
        throw MapError("BoundTooLarge", std::to_string(2 * spec.max_edges) + " darts exceeds the guard");
    const bool want_rooted = spec.has(Filter::WellRooted);
    const bool want_bud = spec.has(Filter::BudRooted);
    for (int budget = std::max(0, spec.min_edges); budget <= spec.max_edges; ++budget) {
        // balanced needs as many buds as leaves, so an even number of stems
        for (int s = 0; s <= 2 * budget; s += 2) {
            int e = budget - s / 2;
            ShapeSpec sh;
            sh.edges = e;
            sh.stems = s;
            sh.unicellular = true;
            if (spec.has(Filter::FourValent)) sh.vertex_degree = 4;
            generate_rooted(sh, [&](const FlagMap& base) {
                if (!surface_match(spec, base)) return;
                if (base.is_vertex_map()) {
                    FlagMap v = base;
                    Classification c = classify(v);
                    if (want_rooted && !c.well_rooted) return;
                    if (want_bud && !c.bud_rooted) return;
                    out(v);
                    return;
                }
                std::vector<int> stem_flags;
                for (int f = 0; f < base.size(); ++f)
                    if (base.is_stem(f) && f < base.H[f]) stem_flags.push_back(f);
                const int k = static_cast<int>(stem_flags.size());
                for (uint32_t mask = 0; mask < (1u << k); ++mask) {
                    if (__builtin_popcount(mask) * 2 != k) continue;
                    FlagMap u = base;
                    for (int i = 0; i < k; ++i) {
                        StemKind kd = (mask >> i & 1) ? StemKind::Bud : StemKind::Leaf;
                        u.stem[stem_flags[i]] = kd;
                        u.stem[u.H[stem_flags[i]]] = kd;
                    }
                    Classification c = classify(u);
                    if (!c.well_blossoming) continue;
                    if (want_rooted && !c.well_rooted) continue;
                    if (want_bud && !c.bud_rooted) continue;
                    if (spec.has(Filter::Bicolorable) && !c.bicolorable) continue;
                    out(u);
                }
            });
        }
    }
}

namespace {
void bump(Bivariate& b, int x, int y) { b[{x, y}] += 1; }
}  // namespace

CountSeries series_from_counts(const SurfaceId& s, int max_edges) {
    CountSeries r;
    // M: all rooted maps with at most max_edges edges, x^V y^F
    EnumSpec ms;
    ms.surface = s;
    ms.max_edges = max_edges;
    enumerate_maps(ms, [&](const FlagMap& m) {
        Cells cl = cells(m);
        bump(r.maps, cl.nv, cl.nf);
    });
    // BP^□: bipartite quadrangulations with at most max_edges faces, by
    // black/white vertices (black = the root vertex colour class)
    for (int f = 0; f <= max_edges; ++f) {
        ShapeSpec sh;
        sh.edges = 2 * f;
        sh.face_degree = f ? 4 : 0;
        generate_rooted(sh, [&](const FlagMap& q) {
            if (surface_of(q) != s) return;
            if (q.is_vertex_map()) {
                bump(r.quadrangulations, 1, 1);
                return;
            }
            WeightVectors w = weights(q);
            if (!w.bipartite) return;
            bump(r.quadrangulations, w.black_vertices, w.white_vertices);
        });
    }
    // R^×: well-rooted 4-valent blossoming maps with at most max_edges vertices
    for (int v = 0; v <= max_edges; ++v) {
        // 4v halfedges; stems = 2v - 2 + 2 chi... read off from unicellularity
        int stems = 2 * v - 2 + 2 * s.euler;
        if (v == 0) {
            if (s.euler == 2) {
                bump(r.four_valent_face, 1, 1);
                bump(r.four_valent_rootable, 1, 1);
            }
            continue;
        }
        if (stems < 0 || (4 * v - stems) % 2) continue;
        ShapeSpec sh;
        sh.edges = (4 * v - stems) / 2;
        sh.stems = stems;
        sh.vertex_degree = 4;
        sh.unicellular = true;
        if (2 * sh.edges + sh.stems > max_darts_guard())
            throw MapError("BoundTooLarge", "four-valent corpus exceeds the dart guard");
        generate_rooted(sh, [&](const FlagMap& base) {
            if (surface_of(base) != s) return;
            std::vector<int> stem_flags;
            for (int f = 0; f < base.size(); ++f)
                if (base.is_stem(f) && f < base.H[f]) stem_flags.push_back(f);
            const int k = static_cast<int>(stem_flags.size());
            for (uint32_t mask = 0; mask < (1u << k); ++mask) {
                if (__builtin_popcount(mask) * 2 != k) continue;
                FlagMap u = base;
                for (int i = 0; i < k; ++i) {
                    StemKind kd = (mask >> i & 1) ? StemKind::Bud : StemKind::Leaf;
                    u.stem[stem_flags[i]] = kd;
                    u.stem[u.H[stem_flags[i]]] = kd;
                }
                Classification c = classify(u);
                if (!c.well_rooted) continue;
                Tour t = tour(u);
                auto lab = corner_labeling(u, t);
                ColorWeights cw = color_weights(u, t, lab);
                bump(r.four_valent_face, cw.face_black, cw.face_white);
                bump(r.four_valent_rootable, cw.rootable_black, cw.rootable_white);
            }
        });
    }
    return r;
}

std::string bivariate_to_string(const Bivariate& b) {
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : b) {
        if (!c) continue;
        if (!first) os << " + ";
        first = false;
        os << c << "*x^" << k.first << "*y^" << k.second;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace surfmaps
