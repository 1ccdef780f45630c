#include "surfmaps/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <set>

#include "surfmaps/combinatorial_map.hpp"
#include "surfmaps/enumeration.hpp"

namespace surfmaps {

namespace {

int tour_flag(const FlagMap& m, const Tour& t, int f) { return t.index[f] ? f : m.C[f]; }

bool same_halfedge(const FlagMap& m, int a, int b) { return a == b || m.H[a] == b; }

bool is_bud_stem(const FlagMap& m, int f) { return m.is_stem(f) && m.kind(f) == StemKind::Bud; }

void set_kind(FlagMap& m, int f, StemKind k) { m.stem[f] = m.stem[m.H[f]] = k; }

std::vector<int> identity(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// Keeps the alive flags in index order. The involutions must already be
// closed on the alive set.
Rerooted compact(const FlagMap& m, const std::vector<char>& alive) {
    const int n = m.size();
    Rerooted r;
    r.old_to_new.assign(n, -1);
    int k = 0;
    for (int f = 0; f < n; ++f)
        if (alive[f]) r.old_to_new[f] = k++;
    const auto& p = r.old_to_new;
    r.map.resize(k);
    for (int f = 0; f < n; ++f) {
        if (!alive[f]) continue;
        int g = p[f];
        r.map.C[g] = p[m.C[f]];
        r.map.H[g] = p[m.H[f]];
        r.map.E[g] = p[m.E[f]];
        r.map.stem[g] = m.stem[f];
        r.map.virt[g] = m.virt[f];
    }
    r.map.root = m.root >= 0 ? p[m.root] : -1;
    r.map.pointed = m.pointed;
    r.map.point = m.point >= 0 ? p[m.point] : -1;
    return r;
}

// Removes stem halfedges, merging the two corners beside each of them.
Rerooted remove_stems(const FlagMap& m, const std::vector<int>& stem_flags) {
    FlagMap r = m;
    std::vector<char> alive(m.size(), 1);
    for (int x1 : stem_flags) {
        if (!alive[x1]) continue;
        int x2 = r.H[x1];
        int a = r.C[x1], b = r.C[x2];
        if (a == x2) throw MapError("Internal", "removing the only halfedge of a vertex");
        alive[x1] = alive[x2] = 0;
        r.C[a] = b;
        r.C[b] = a;
    }
    return compact(r, alive);
}

std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& second) {
    std::vector<int> out(first.size(), -1);
    for (size_t i = 0; i < first.size(); ++i)
        if (first[i] >= 0) out[i] = second[first[i]];
    return out;
}

bool connected(const FlagMap& m) {
    if (m.is_vertex_map()) return true;
    int comps = 0;
    orbits(m, true, true, true, &comps);
    return comps == 1;
}

// Inserts a stem in the corner of f, right after the halfedge of f when
// walking from f to C f. Returns the flag of the new stem facing f.
int insert_stem(FlagMap& m, int f, StemKind kind, bool is_virtual) {
    int n = m.size();
    int cf = m.C[f];
    for (auto* v : {&m.C, &m.H, &m.E}) v->resize(n + 2, -1);
    m.stem.resize(n + 2, StemKind::None);
    m.virt.resize(n + 2, 0);
    int x1 = n, x2 = n + 1;
    m.C[f] = x1;
    m.C[x1] = f;
    m.C[x2] = cf;
    m.C[cf] = x2;
    m.H[x1] = m.E[x1] = x2;
    m.H[x2] = m.E[x2] = x1;
    m.stem[x1] = m.stem[x2] = kind;
    m.virt[x1] = m.virt[x2] = is_virtual ? 1 : 0;
    return x1;
}

// Splits the corner whose tour flag is c with a virtual bud followed by a
// virtual stem of the given kind; returns the tour flag before the second one.
int insert_virtual_pair(FlagMap& m, int c, StemKind second) {
    int d = m.C[c];
    insert_stem(m, d, StemKind::Bud, true);  // b: corner {d, b1} then {b2, c}
    int b2 = m.C[c];
    insert_stem(m, b2, second, true);        // l: corner {b2, l1} then {l2, c}
    return m.size() - 2;
}

}  // namespace

// ---- labels ----

std::vector<int> halfedge_steps(const FlagMap& m, const Tour& t) {
    std::vector<int> d(m.size(), 0);
    if (m.is_vertex_map()) return d;
    for (int f : t.flags) {
        if (!m.is_stem(f)) continue;
        int k = static_cast<int>(m.kind(f));
        d[f] = k;
        d[m.H[f]] = -k;
    }
    std::vector<char> seen(m.size(), 0);
    int c = m.root;
    for (size_t i = 0; i < t.flags.size(); ++i, c = m.theta(c)) {
        if (m.is_stem(c) || seen[c]) continue;
        int e = m.E[c], h = m.H[c], he = m.H[e];
        seen[c] = seen[e] = seen[h] = seen[he] = 1;
        d[c] = d[e] = -1;
        d[h] = d[he] = 1;
    }
    return d;
}

std::vector<int> relative_labels(const FlagMap& m, const Tour& t) {
    const int n = m.size();
    std::vector<int> rel(n, 0);
    if (m.is_vertex_map()) return rel;
    auto d = halfedge_steps(m, t);
    std::vector<char> seen(n, 0);
    std::vector<int> orbit;
    for (int f0 = 0; f0 < n; ++f0) {
        if (seen[f0]) continue;
        orbit.clear();
        int g = f0, l = 0;
        do {
            rel[g] = rel[m.C[g]] = l;
            seen[g] = seen[m.C[g]] = 1;
            orbit.push_back(g);
            l += d[g];
            g = m.sigma(g);
        } while (g != f0);
        if (l != 0) throw MapError("NotDecent", "steps around a vertex do not sum to zero");
        int lo = rel[orbit[0]];
        for (int x : orbit) lo = std::min(lo, rel[x]);
        for (int x : orbit) rel[x] = rel[m.C[x]] = rel[x] - lo;
    }
    return rel;
}

bool is_decent(const FlagMap& m, const Tour& t, const std::vector<int>& label) {
    if (m.is_vertex_map()) return true;
    auto d = halfedge_steps(m, t);
    if (label[m.root] != 0) return false;
    for (int f = 0; f < m.size(); ++f) {
        if (label[m.C[f]] != label[f]) return false;
        if (label[m.sigma(f)] != label[f] + d[f]) return false;
    }
    return true;
}

// ---- rerooting ----

bool is_rootable_stem(const FlagMap& m, int f) {
    if (!m.is_stem(f)) return false;
    return m.kind(f) == StemKind::Leaf || same_halfedge(m, f, m.root);
}

Rerooted reroot_on_stem(const FlagMap& m, int s) {
    if (!is_rootable_stem(m, s)) throw MapError("NotRootableStem", "stem is neither a leaf nor the root");
    Tour t = tour(m);
    FlagMap r = m;
    if (is_bud_stem(r, r.root)) set_kind(r, r.root, StemKind::Leaf);
    set_kind(r, s, StemKind::Bud);
    r.root = flag_before_stem(m, t, s);
    return {std::move(r), identity(m.size())};
}

Rerooted drop_stale_virtual(const FlagMap& m) {
    if (m.is_vertex_map()) return {m, {}};
    std::vector<int> stale;
    int a = m.root, b = m.C[m.root];
    for (int f = 0; f < m.size(); ++f) {
        if (!m.is_stem(f) || !m.is_virtual(f) || f > m.H[f]) continue;
        if (same_halfedge(m, f, a) || same_halfedge(m, f, b)) continue;
        stale.push_back(f);
    }
    if (stale.empty()) return {m, identity(m.size())};
    return remove_stems(m, stale);
}

bool is_rootable_corner(const FlagMap& m, int corner) {
    Tour t = tour(m);
    int c = tour_flag(m, t, corner);
    for (int h : {c, m.C[c]})
        if (is_bud_stem(m, h) && !same_halfedge(m, h, m.root)) return false;
    return true;
}

Rerooted reroot_on_corner(const FlagMap& m, int corner) {
    if (!is_rootable_corner(m, corner)) throw MapError("NotRootableCorner", "corner touches a non-root bud");
    Tour t = tour(m);
    int c = tour_flag(m, t, corner);
    if (m.is_stem(c)) {
        Rerooted r = reroot_on_stem(m, c);
        Rerooted d = drop_stale_virtual(r.map);
        return {std::move(d.map), compose(r.old_to_new, d.old_to_new)};
    }
    FlagMap w = m;
    int l1 = insert_virtual_pair(w, c, StemKind::Leaf);
    Rerooted r = reroot_on_stem(w, l1);
    Rerooted d = drop_stale_virtual(r.map);
    std::vector<int> o2n(m.size());
    for (int f = 0; f < m.size(); ++f) o2n[f] = d.old_to_new[f];
    return {std::move(d.map), std::move(o2n)};
}

std::vector<int> rootable_corners(const FlagMap& m) {
    std::vector<int> out;
    if (m.is_vertex_map()) return out;
    Tour t = tour(m);
    int f = m.root;
    for (size_t i = 0; i < t.flags.size(); ++i, f = m.theta(f)) {
        bool ok = true;
        for (int h : {f, m.C[f]})
            if (is_bud_stem(m, h) && !same_halfedge(m, h, m.root)) ok = false;
        if (ok) out.push_back(f);
    }
    return out;
}

std::vector<int> well_rootable_stems(const FlagMap& m, int from_corner) {
    std::vector<int> out;
    if (m.is_vertex_map()) return out;
    Tour t = tour(m);
    int f = from_corner < 0 ? m.root : tour_flag(m, t, from_corner);
    for (size_t i = 0; i < t.flags.size(); ++i, f = m.theta(f)) {
        if (!m.is_stem(f) || m.is_virtual(f) || !is_rootable_stem(m, f)) continue;
        FlagMap r = drop_stale_virtual(reroot_on_stem(m, f).map).map;
        if (classify(r).well_rooted) out.push_back(f);
    }
    return out;
}

// ---- pruning ----

Pruned prune(const FlagMap& u) {
    if (u.is_vertex_map()) throw MapError("EmptyCoreOnSphere", "the vertex map has an empty core");
    const int n = u.size();
    Cells cl = cells(u);
    auto deg = interior_degrees(u, cl);
    std::vector<std::vector<int>> at(cl.nv);
    for (int f = 0; f < n; ++f)
        if (!u.is_stem(f)) at[cl.vertex[f]].push_back(f);
    std::vector<char> alive_v(cl.nv, 1);
    std::vector<char> dead_edge(n, 0);  // indexed by edge orbit id
    std::deque<int> q;
    for (int v = 0; v < cl.nv; ++v)
        if (deg[v] <= 1) q.push_back(v);
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (!alive_v[v] || deg[v] > 1) continue;
        alive_v[v] = 0;
        if (deg[v] == 0) continue;
        for (int f : at[v]) {
            if (dead_edge[cl.edge[f]]) continue;
            dead_edge[cl.edge[f]] = 1;
            int w = cl.vertex[u.E[f]];
            deg[v]--;
            deg[w]--;
            if (deg[w] <= 1) q.push_back(w);
            break;
        }
    }
    if (std::find(alive_v.begin(), alive_v.end(), 1) == alive_v.end())
        throw MapError("EmptyCoreOnSphere", "the map prunes to nothing");

    Tour tu = tour(u);
    std::vector<char> alive(n, 0);
    for (int f = 0; f < n; ++f) alive[f] = alive_v[cl.vertex[f]];
    FlagMap w = u;
    struct Plant {
        int core_flag, tree_flag;
    };
    std::vector<Plant> plants;
    for (int f = 0; f < n; ++f) {
        if (!alive[f] || u.is_stem(f) || alive[u.E[f]]) continue;
        w.E[f] = u.H[f];
        if (tu.index[f]) plants.push_back({f, u.E[f]});
    }
    // core root: the old root, or the tour flag before the stem whose tree holds it
    int core_root = alive[u.root] ? u.root : -1;

    Pruned p;
    std::vector<char> in_tree(n, 0);
    std::vector<std::pair<int, PlantedTree>> trees;
    for (auto [cf, tf] : plants) {
        std::vector<int> flags{tf};
        in_tree[tf] = 1;
        for (size_t i = 0; i < flags.size(); ++i) {
            int f = flags[i];
            for (int g : {u.C[f], u.H[f], u.E[f]}) {
                if (alive[g] || in_tree[g]) continue;
                in_tree[g] = 1;
                flags.push_back(g);
            }
        }
        std::sort(flags.begin(), flags.end());
        std::vector<char> keep(n, 0);
        for (int f : flags) keep[f] = 1;
        FlagMap tm = u;
        tm.E[tf] = u.H[tf];
        tm.E[u.H[tf]] = tf;
        tm.root = -1;
        tm.pointed = false;
        tm.point = -1;
        int charge = 0;
        for (int f : flags)
            if (u.is_stem(f)) charge += static_cast<int>(u.kind(f));
        charge /= 2;
        if (charge != 1 && charge != -1) throw MapError("Internal", "tree with charge other than one");
        Rerooted c = compact(tm, keep);
        PlantedTree pt;
        pt.plant = c.old_to_new[tf];
        pt.marked = keep[u.root] ? c.old_to_new[u.root] : -1;
        pt.map = std::move(c.map);
        pt.map.root = pt.marked;
        if (pt.marked >= 0) core_root = cf;
        StemKind k = charge > 0 ? StemKind::Bud : StemKind::Leaf;
        set_kind(w, cf, k);
        w.virt[cf] = w.virt[u.H[cf]] = 0;
        trees.emplace_back(cf, std::move(pt));
    }
    w.root = core_root;
    w.pointed = false;
    w.point = -1;
    Rerooted c = compact(w, alive);
    p.core = std::move(c.map);
    p.old_to_new = std::move(c.old_to_new);
    for (auto& [cf, pt] : trees) p.trees.emplace(p.old_to_new[cf], std::move(pt));
    return p;
}

FlagMap glue(const FlagMap& core, const std::map<int, PlantedTree>& trees, std::vector<int>* tree_offsets) {
    FlagMap g = core;
    if (tree_offsets) tree_offsets->clear();
    for (const auto& [t, pt] : trees) {
        const int off = g.size();
        const int k = pt.map.size();
        if (tree_offsets) tree_offsets->push_back(off);
        for (auto* v : {&g.C, &g.H, &g.E}) v->resize(off + k, -1);
        g.stem.resize(off + k, StemKind::None);
        g.virt.resize(off + k, 0);
        for (int f = 0; f < k; ++f) {
            g.C[off + f] = off + pt.map.C[f];
            g.H[off + f] = off + pt.map.H[f];
            g.E[off + f] = off + pt.map.E[f];
            g.stem[off + f] = pt.map.stem[f];
            g.virt[off + f] = pt.map.virt[f];
        }
        int p = off + pt.plant;
        int ht = g.H[t], hp = g.H[p];
        if (!g.is_stem(t)) throw MapError("Internal", "glue target is not a stem");
        g.E[t] = p;
        g.E[p] = t;
        g.E[ht] = hp;
        g.E[hp] = ht;
        for (int f : {t, ht, p, hp}) {
            g.stem[f] = StemKind::None;
            g.virt[f] = 0;
        }
        if (pt.marked >= 0) g.root = off + pt.marked;
    }
    return g;
}

// ---- schemes ----

bool is_core(const FlagMap& m) {
    if (m.is_vertex_map() || edge_count(m) == 0) return false;
    Cells cl = cells(m);
    for (int d : interior_degrees(m, cl))
        if (d < 2) return false;
    return true;
}

std::vector<char> scheme_vertices(const FlagMap& m, const Cells& cl) {
    auto deg = interior_degrees(m, cl);
    std::vector<char> out(cl.nv);
    for (int v = 0; v < cl.nv; ++v) out[v] = deg[v] >= 3;
    return out;
}

bool is_scheme_rooted(const FlagMap& core) {
    if (core.is_vertex_map()) return false;
    Cells cl = cells(core);
    return scheme_vertices(core, cl)[cl.vertex[core.root]] != 0;
}

namespace {

LabeledScheme scheme_of_impl(const FlagMap& core, std::vector<int>* old_to_new) {
    if (core.is_vertex_map() || surface_of(core).euler >= 1)
        throw MapError("GenusTooSmall", "schemes need Euler characteristic at most 0");
    if (!is_core(core)) throw MapError("NotCore", "a vertex has interior degree below 2");
    Cells cl = cells(core);
    auto sv = scheme_vertices(core, cl);
    if (!sv[cl.vertex[core.root]]) throw MapError("NotSchemeRooted", "root vertex is a branch vertex");
    Tour t = tour(core);
    auto label = corner_labeling(core, t, true);
    const int n = core.size();
    FlagMap w = core;
    std::vector<char> alive(n, 0);
    for (int f = 0; f < n; ++f) alive[f] = sv[cl.vertex[f]];
    for (int f = 0; f < n; ++f) {
        if (!alive[f] || core.is_stem(f)) continue;
        int g = core.E[f];
        while (!sv[cl.vertex[g]]) {
            g = core.C[g];
            while (core.is_stem(g)) g = core.C[core.H[g]];
            g = core.E[g];
        }
        w.E[f] = g;
    }
    Rerooted c = compact(w, alive);
    LabeledScheme l;
    l.map = std::move(c.map);
    l.label.assign(l.map.size(), 0);
    for (int f = 0; f < n; ++f)
        if (alive[f]) l.label[c.old_to_new[f]] = label[f];
    if (old_to_new) *old_to_new = std::move(c.old_to_new);
    return l;
}

}  // namespace

LabeledScheme scheme_of(const FlagMap& core) { return scheme_of_impl(core, nullptr); }

std::vector<int> vertex_heights(const FlagMap& m, const Cells& cl, const std::vector<int>& label) {
    std::vector<int> h(cl.nv, 0);
    std::vector<char> set(cl.nv, 0);
    for (int f = 0; f < m.size(); ++f) {
        int v = cl.vertex[f];
        if (!set[v] || label[f] < h[v]) h[v] = label[f];
        set[v] = 1;
    }
    return h;
}

std::vector<int> halfedge_types(const FlagMap& m, const std::vector<int>& rel) {
    std::vector<int> ty(m.size(), 0);
    for (int f = 0; f < m.size(); ++f) ty[f] = std::min(rel[f], rel[m.H[f]]);
    return ty;
}

std::vector<int> vertex_types(const FlagMap& m, const Cells& cl, const std::vector<int>& rel) {
    auto ty = halfedge_types(m, rel);
    std::vector<int> out(cl.nv, 0);
    for (int f = 0; f < m.size(); ++f) out[cl.vertex[f]] = std::max(out[cl.vertex[f]], ty[f]);
    return out;
}

UnrootedInfo unrooted(const FlagMap& s) {
    UnrootedInfo info;
    auto corners = rootable_corners(s);
    info.rootable_corners = static_cast<int>(corners.size());
    for (int c : corners) {
        std::string k = canonical_key(reroot_on_corner(s, c).map);
        if (info.key.empty() || k < info.key) info.key = std::move(k);
    }
    return info;
}

std::vector<FlagMap> enumerate_schemes(const SurfaceId& surface) {
    const int chi = surface.euler;
    if (chi >= 1) throw MapError("GenusTooSmall", "schemes need Euler characteristic at most 0");
    std::vector<FlagMap> out;
    std::set<std::string> seen;
    auto try_add = [&](const FlagMap& m) {
        Tour t = tour(m);
        try {
            relative_labels(m, t);
        } catch (const MapError&) {
            return;
        }
        FlagMap c = canonical_form(m);
        if (seen.insert(canonical_key(c)).second) out.push_back(std::move(c));
    };
    for (int v = 1; v <= 2 - 2 * chi; ++v) {
        const int e = v + 1 - chi;
        const int s = 2 * v - 2 + 2 * chi;
        if (s < 0 || s > v) continue;
        ShapeSpec spec;
        spec.edges = e;
        spec.stems = s;
        spec.vertex_degree = 4;
        spec.unicellular = true;
        generate_rooted(spec, [&](const FlagMap& g) {
            SurfaceId sid = surface_of(g);
            if (sid.euler != chi || sid.orientable != surface.orientable) return;
            Cells cl = cells(g);
            for (int d : interior_degrees(g, cl))
                if (d < 3) return;
            std::vector<int> stems;
            for (int f = 0; f < g.size(); ++f)
                if (g.is_stem(f) && f < g.H[f]) stems.push_back(f);
            if (g.is_stem(g.root)) {
                std::vector<int> others;
                for (int f : stems)
                    if (!same_halfedge(g, f, g.root)) others.push_back(f);
                for (uint32_t mask = 0; mask < (1u << others.size()); ++mask) {
                    FlagMap m = g;
                    set_kind(m, m.root, StemKind::Bud);
                    for (size_t i = 0; i < others.size(); ++i)
                        set_kind(m, others[i], (mask >> i) & 1 ? StemKind::Bud : StemKind::Leaf);
                    try_add(m);
                }
            } else {
                for (uint32_t mask = 0; mask < (1u << stems.size()); ++mask) {
                    FlagMap m = g;
                    for (size_t i = 0; i < stems.size(); ++i)
                        set_kind(m, stems[i], (mask >> i) & 1 ? StemKind::Bud : StemKind::Leaf);
                    if (is_bud_stem(m, m.C[m.root])) continue;
                    int l1 = insert_virtual_pair(m, m.root, StemKind::Bud);
                    m.root = l1;
                    try_add(m);
                }
            }
        });
    }
    return out;
}

// ---- edges of a scheme ----

std::vector<SchemeEdge> scheme_edges(const FlagMap& s, const Tour& t, const Cells& cl, const std::vector<int>& rel) {
    std::vector<SchemeEdge> out;
    if (s.is_vertex_map()) return out;
    std::vector<int> ty = rel.empty() ? std::vector<int>(s.size(), 0) : halfedge_types(s, rel);
    std::vector<int> edge_of(s.size(), -1);
    int c = s.root;
    for (size_t i = 0; i < t.flags.size(); ++i, c = s.theta(c)) {
        if (s.is_stem(c)) continue;
        if (edge_of[c] < 0) {
            int id = static_cast<int>(out.size());
            for (int g : {c, s.H[c], s.E[c], s.H[s.E[c]]}) edge_of[g] = id;
            SchemeEdge e;
            e.first_flag = c;
            out.push_back(e);
        } else {
            out[edge_of[c]].origin_flag = c;
        }
    }
    for (auto& e : out) {
        int o = e.origin_flag;
        e.forward = o == s.H[e.first_flag];
        e.origin_vertex = cl.vertex[o];
        e.dest_vertex = cl.vertex[s.E[o]];
        e.origin_type = ty[o];
        e.dest_type = ty[s.E[o]];
    }
    return out;
}

// ---- Motzkin decoration ----

DecoratedScheme core_to_motzkin(const FlagMap& core) {
    std::vector<int> o2n;
    DecoratedScheme ds;
    ds.scheme = scheme_of_impl(core, &o2n);
    std::vector<int> n2o(ds.scheme.map.size(), -1);
    for (int f = 0; f < core.size(); ++f)
        if (o2n[f] >= 0) n2o[o2n[f]] = f;
    Cells ccl = cells(core);
    auto sv = scheme_vertices(core, ccl);
    auto label = corner_labeling(core, tour(core), true);
    const FlagMap& s = ds.scheme.map;
    Tour ts = tour(s);
    auto edges = scheme_edges(s, ts, cells(s), {});
    for (const auto& e : edges) {
        BranchPath p;
        int o = n2o[e.origin_flag];
        p.start = label[o];
        int g = core.E[o];
        while (!sv[ccl.vertex[g]]) {
            std::vector<StemKind> side2, side1;
            int x = core.C[g];
            while (core.is_stem(x)) {
                side2.push_back(core.kind(x));
                x = core.C[core.H[x]];
            }
            int y = core.C[core.H[g]];
            while (core.is_stem(y)) {
                side1.push_back(core.kind(y));
                y = core.C[core.H[y]];
            }
            if (core.H[x] != y) throw MapError("Internal", "branch sides do not meet");
            Step st;
            if (side2.size() == 1 && side1.size() == 1) {
                st = side2[0] == StemKind::Bud ? Step::Up : Step::Down;
            } else if (side2.size() == 2 && side1.empty()) {
                st = side2[0] == StemKind::Bud ? Step::S2BL : Step::S2LB;
                if (side2[0] == side2[1]) throw MapError("NotWellBlossoming", "two equal stems on one side");
            } else if (side1.size() == 2 && side2.empty()) {
                st = side1[0] == StemKind::Bud ? Step::S1BL : Step::S1LB;
                if (side1[0] == side1[1]) throw MapError("NotWellBlossoming", "two equal stems on one side");
            } else {
                throw MapError("NotFourValent", "branch vertex without exactly two stems");
            }
            p.steps.push_back(st);
            g = core.E[x];
        }
        ds.paths.push_back(std::move(p));
    }
    return ds;
}

FlagMap motzkin_to_core(const LabeledScheme& l, const std::vector<BranchPath>& paths) {
    const FlagMap& s = l.map;
    Tour ts = tour(s);
    auto edges = scheme_edges(s, ts, cells(s), {});
    if (edges.size() != paths.size()) throw MapError("Internal", "one path per scheme edge expected");
    FlagMap r = s;
    auto grow = [&](int k) {
        int n = r.size();
        for (auto* v : {&r.C, &r.H, &r.E}) v->resize(n + k, -1);
        r.stem.resize(n + k, StemKind::None);
        r.virt.resize(n + k, 0);
        return n;
    };
    auto chain = [&](int from, int to, const std::vector<StemKind>& kinds) {
        int cur = from;
        for (StemKind k : kinds) {
            int x = grow(2), y = x + 1;
            r.C[cur] = x;
            r.C[x] = cur;
            r.H[x] = r.E[x] = y;
            r.H[y] = r.E[y] = x;
            r.stem[x] = r.stem[y] = k;
            cur = y;
        }
        r.C[cur] = to;
        r.C[to] = cur;
    };
    auto link = [&](int a, int b) {
        r.E[a] = b;
        r.E[b] = a;
    };
    constexpr StemKind B = StemKind::Bud, L = StemKind::Leaf;
    for (size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        int o = e.origin_flag;
        int far2 = s.E[o], far1 = s.H[far2];
        int prev2 = o, prev1 = s.H[o];
        for (Step st : paths[i].steps) {
            int in2 = grow(4), in1 = in2 + 1, out2 = in2 + 2, out1 = in2 + 3;
            r.H[in2] = in1;
            r.H[in1] = in2;
            r.H[out2] = out1;
            r.H[out1] = out2;
            std::vector<StemKind> k2, k1;
            switch (st) {
                case Step::Up: k2 = {B}; k1 = {e.forward ? B : L}; break;
                case Step::Down: k2 = {L}; k1 = {e.forward ? L : B}; break;
                case Step::S1BL: k1 = {B, L}; break;
                case Step::S1LB: k1 = {L, B}; break;
                case Step::S2BL: k2 = {B, L}; break;
                case Step::S2LB: k2 = {L, B}; break;
            }
            chain(in2, out2, k2);
            chain(in1, out1, k1);
            link(prev2, in2);
            link(prev1, in1);
            prev2 = out2;
            prev1 = out1;
        }
        link(prev2, far2);
        link(prev1, far1);
    }
    return r;
}

// ---- offset structure ----

namespace {

struct OffsetData {
    Tour tour;
    Cells cl;
    std::vector<int> rel, types;
    std::vector<SchemeEdge> edges;
    OffsetGraph graph;
};

OffsetData offset_data(const FlagMap& s) {
    OffsetData d;
    d.tour = tour(s);
    d.cl = cells(s);
    d.rel = relative_labels(s, d.tour);
    d.types = halfedge_types(s, d.rel);
    d.edges = scheme_edges(s, d.tour, d.cl, d.rel);
    d.graph.nv = d.cl.nv;
    for (size_t i = 0; i < d.edges.size(); ++i) {
        const auto& e = d.edges[i];
        if (e.origin_type == 0 && e.dest_type == 1)
            d.graph.arcs.push_back({static_cast<int>(i), e.origin_vertex, e.dest_vertex});
        else if (e.origin_type == 1 && e.dest_type == 0)
            d.graph.arcs.push_back({static_cast<int>(i), e.dest_vertex, e.origin_vertex});
    }
    return d;
}

int first_cycle(const OffsetData& d, const std::vector<std::vector<int>>& cycles) {
    int best = -1, best_edge = 0;
    for (size_t i = 0; i < cycles.size(); ++i) {
        int lo = d.graph.arcs[cycles[i][0]].edge;
        for (int a : cycles[i]) lo = std::min(lo, d.graph.arcs[a].edge);
        if (best < 0 || lo < best_edge) {
            best = static_cast<int>(i);
            best_edge = lo;
        }
    }
    return best;
}

}  // namespace

OffsetGraph offset_graph(const FlagMap& s) { return offset_data(s).graph; }

std::vector<std::vector<int>> offset_cycles(const OffsetGraph& g) {
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> from(g.nv);
    for (size_t i = 0; i < g.arcs.size(); ++i) from[g.arcs[i].from].push_back(static_cast<int>(i));
    // each cycle is reported once, from its smallest vertex
    std::vector<int> path;
    std::vector<char> on(g.nv, 0);
    for (int start = 0; start < g.nv; ++start) {
        auto dfs = [&](auto&& self, int v) -> void {
            for (int a : from[v]) {
                int w = g.arcs[a].to;
                if (w < start) continue;
                if (w == start) {
                    path.push_back(a);
                    out.push_back(path);
                    path.pop_back();
                } else if (!on[w]) {
                    on[w] = 1;
                    path.push_back(a);
                    self(self, w);
                    path.pop_back();
                    on[w] = 0;
                }
            }
        };
        on[start] = 1;
        dfs(dfs, start);
        on[start] = 0;
    }
    return out;
}

OffsetReport check_offset_structure(const FlagMap& s, int euler) {
    OffsetReport rep;
    OffsetData d = offset_data(s);
    auto vt = vertex_types(s, d.cl, d.rel);
    for (int x : vt) rep.max_vertex_type = std::max(rep.max_vertex_type, x);
    if (rep.max_vertex_type > 1) rep.problems.push_back("vertex of relative type above 1");
    auto cycles = offset_cycles(d.graph);
    // edge ids along the tour, stems skipped
    std::vector<int> edge_of(s.size(), -1);
    for (size_t i = 0; i < d.edges.size(); ++i) {
        int c = d.edges[i].first_flag;
        for (int g : {c, s.H[c], s.E[c], s.H[s.E[c]]}) edge_of[g] = static_cast<int>(i);
    }
    std::vector<int> seq;
    for (int f : d.tour.flags)
        if (!s.is_stem(f)) seq.push_back(edge_of[f]);
    auto consecutive = [&](int a, int b) {
        const size_t k = seq.size();
        for (size_t i = 0; i < k; ++i) {
            int x = seq[i], y = seq[(i + 1) % k];
            if ((x == a && y == b) || (x == b && y == a)) return true;
        }
        return false;
    };
    std::vector<int> owner(d.graph.nv, -1);
    for (size_t ci = 0; ci < cycles.size(); ++ci) {
        const auto& cyc = cycles[ci];
        rep.total_cycle_length += static_cast<int>(cyc.size());
        if (cyc.size() > 2) rep.problems.push_back("offset cycle longer than 2");
        for (int a : cyc)
            if (!d.edges[d.graph.arcs[a].edge].forward) rep.problems.push_back("offset cycle with a backward edge");
        if (cyc.size() == 2 && !consecutive(d.graph.arcs[cyc[0]].edge, d.graph.arcs[cyc[1]].edge))
            rep.problems.push_back("offset cycle edges not consecutive");
        for (int a : cyc) {
            int v = d.graph.arcs[a].from;
            if (owner[v] >= 0 && owner[v] != static_cast<int>(ci)) rep.problems.push_back("offset cycles share a vertex");
            owner[v] = static_cast<int>(ci);
        }
    }
    if (rep.total_cycle_length > 2 - euler) rep.problems.push_back("total offset cycle length above 2g");
    rep.ok = rep.problems.empty();
    return rep;
}

FlagMap remove_first_offset_cycle(const FlagMap& s) {
    OffsetData d = offset_data(s);
    auto cycles = offset_cycles(d.graph);
    if (cycles.empty()) throw MapError("NoOffsetCycle", "offset graph is acyclic");
    const auto& cyc = cycles[first_cycle(d, cycles)];
    std::vector<char> gone(d.cl.nv, 0);
    for (int a : cyc) gone[d.graph.arcs[a].from] = 1;
    const int n = s.size();
    std::vector<char> alive(n);
    for (int f = 0; f < n; ++f) alive[f] = !gone[d.cl.vertex[f]];
    // every vertex on the cycle: nothing is left, the flagless map stands
    // for the empty map here (Euler characteristic 1, not 2)
    if (std::find(alive.begin(), alive.end(), 1) == alive.end()) return FlagMap{};
    FlagMap w = s;
    std::vector<int> fresh;  // tour flags of the new stems
    for (int f = 0; f < n; ++f) {
        if (!alive[f] || s.is_stem(f) || alive[s.E[f]]) continue;
        w.E[f] = s.H[f];
        if (d.tour.index[f]) fresh.push_back(f);
    }
    for (int t : fresh) {
        int k = d.rel[s.H[t]] - d.rel[t];
        if (k != 1 && k != -1) throw MapError("NotSpecial", "new stem between corners not one apart");
        set_kind(w, t, k > 0 ? StemKind::Bud : StemKind::Leaf);
    }
    auto finish = [&](int root) -> std::optional<FlagMap> {
        FlagMap x = w;
        x.root = root;
        Rerooted c = compact(x, alive);
        if (!connected(c.map)) return std::nullopt;
        if (cells(c.map).nf != 1) return std::nullopt;
        std::vector<int> rel;
        try {
            rel = relative_labels(c.map, tour(c.map));
        } catch (const MapError&) {
            return std::nullopt;
        }
        for (int f = 0; f < n; ++f)
            if (alive[f] && rel[c.old_to_new[f]] != d.rel[f]) return std::nullopt;
        return c.map;
    };
    if (alive[s.root]) {
        if (auto r = finish(s.root)) return *r;
        throw MapError("NotSpecial", "relative labels change after removal");
    }
    int f = s.root;
    for (size_t i = 0; i < d.tour.flags.size(); ++i) {
        f = s.theta(f);
        if (!alive[f] || !is_bud_stem(w, f)) continue;
        if (auto r = finish(f)) return *r;
    }
    throw MapError("NotSpecial", "no bud roots the remaining map with the same relative labels");
}

FlagMap xi_loops(const FlagMap& s, int* loops) {
    OffsetData d = offset_data(s);
    auto cycles = offset_cycles(d.graph);
    FlagMap r = s;
    int k = 0;
    for (const auto& cyc : cycles) {
        if (cyc.size() > 1) throw MapError("HasLongOffsetCycle", "offset cycle of length above 1");
        const auto& e = d.edges[d.graph.arcs[cyc[0]].edge];
        int o = e.origin_flag;
        int hf = e.origin_type == 1 ? o : s.E[o];
        insert_stem(r, hf, StemKind::Leaf, false);
        insert_stem(r, r.H[hf], StemKind::Leaf, false);
        ++k;
    }
    if (loops) *loops = k;
    return r;
}

// ---- shortcut ----

std::vector<int> rootable_scheme_corners(const FlagMap& m) {
    Pruned p;
    try {
        p = prune(m);
    } catch (const MapError& e) {
        if (e.code() == "EmptyCoreOnSphere") return {};
        throw;
    }
    Cells cl = cells(p.core);
    auto sv = scheme_vertices(p.core, cl);
    std::vector<int> out;
    for (int f : rootable_corners(m)) {
        int g = p.old_to_new[f];
        if (g >= 0 && sv[cl.vertex[g]]) out.push_back(f);
    }
    return out;
}

DecoratedCore shortcut(const FlagMap& m, int corner) {
    Classification cls = classify(m);
    if (!cls.well_rooted || !cls.bud_rooted || cls.virtually_rooted)
        throw MapError("NotWellRooted", "shortcut needs a real-rooted well-rooted map");
    Tour t = tour(m);
    int kappa = tour_flag(m, t, corner);
    auto rsc = rootable_scheme_corners(m);
    if (std::find(rsc.begin(), rsc.end(), kappa) == rsc.end())
        throw MapError("NotRootableSchemeCorner", "marked corner is not a rootable scheme corner");
    DecoratedCore dc;
    auto wr = well_rootable_stems(m, kappa);
    for (size_t i = 0; i < wr.size(); ++i)
        if (same_halfedge(m, wr[i], m.root)) dc.epsilon = static_cast<int>(i) + 1;
    if (dc.epsilon == 0) throw MapError("Internal", "root is not among the well-rootable stems");
    FlagMap mm = m;
    set_kind(mm, mm.root, StemKind::Leaf);
    Pruned p = prune(mm);
    Rerooted rr = reroot_on_corner(p.core, p.old_to_new[kappa]);
    dc.core = std::move(rr.map);
    for (auto& [key, pt] : p.trees) dc.trees.emplace(rr.old_to_new[key], std::move(pt));
    for (auto& [key, pt] : dc.trees) {
        pt.marked = -1;
        pt.map.root = -1;
    }
    return dc;
}

std::pair<FlagMap, int> inverse_shortcut(const DecoratedCore& dc) {
    FlagMap g = glue(dc.core, dc.trees);
    auto wr = well_rootable_stems(g);
    if (dc.epsilon < 1 || dc.epsilon > static_cast<int>(wr.size()))
        throw MapError("Internal", "epsilon outside the well-rootable stems");
    Rerooted r = reroot_on_stem(g, wr[dc.epsilon - 1]);
    Rerooted d = drop_stale_virtual(r.map);
    int rho = dc.core.root;
    int mk = g.is_virtual(rho) ? g.theta(rho) : rho;
    return {std::move(d.map), d.old_to_new[mk]};
}

std::vector<int> canonical_perm(const FlagMap& m) {
    const int n = m.size();
    std::vector<int> perm(n, -1), order;
    if (n == 0) return perm;
    order.reserve(n);
    perm[m.root] = 0;
    order.push_back(m.root);
    for (size_t i = 0; i < order.size(); ++i) {
        int f = order[i];
        for (int g : {m.C[f], m.H[f], m.E[f]}) {
            if (perm[g] < 0) {
                perm[g] = static_cast<int>(order.size());
                order.push_back(g);
            }
        }
    }
    return perm;
}

}  // namespace surfmaps
