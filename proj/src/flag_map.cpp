#include "surfmaps/flag_map.hpp"

#include <algorithm>

namespace surfmaps {

void FlagMap::resize(int n) {
    C.assign(n, -1);
    H.assign(n, -1);
    E.assign(n, -1);
    stem.assign(n, StemKind::None);
    virt.assign(n, 0);
}

std::vector<int> orbits(const FlagMap& m, bool useC, bool useH, bool useE, int* count) {
    const int n = m.size();
    std::vector<int> id(n, -1);
    std::vector<int> stack;
    int k = 0;
    for (int s = 0; s < n; ++s) {
        if (id[s] >= 0) continue;
        id[s] = k;
        stack.push_back(s);
        while (!stack.empty()) {
            int f = stack.back();
            stack.pop_back();
            int nb[3] = {useC ? m.C[f] : -1, useH ? m.H[f] : -1, useE ? m.E[f] : -1};
            for (int g : nb) {
                if (g >= 0 && id[g] < 0) {
                    id[g] = k;
                    stack.push_back(g);
                }
            }
        }
        ++k;
    }
    if (count) *count = k;
    return id;
}

Cells cells(const FlagMap& m) {
    Cells c;
    if (m.is_vertex_map()) {
        c.nv = 1;
        c.nf = 1;
        return c;
    }
    c.vertex = orbits(m, true, true, false, &c.nv);
    c.face = orbits(m, true, false, true, &c.nf);
    int nedge_orbits = 0;
    c.edge = orbits(m, false, true, true, &nedge_orbits);
    c.corner = orbits(m, true, false, false, &c.ncorners);
    c.half = orbits(m, false, true, false, &c.nhalf);
    std::vector<int> sz(nedge_orbits, 0);
    for (int f = 0; f < m.size(); ++f) sz[c.edge[f]]++;
    for (int s : sz) {
        if (s == 4) c.ne++;
        else c.nstems++;
    }
    c.vertex_rep.assign(c.nv, -1);
    c.face_rep.assign(c.nf, -1);
    for (int f = m.size() - 1; f >= 0; --f) {
        c.vertex_rep[c.vertex[f]] = f;
        c.face_rep[c.face[f]] = f;
    }
    return c;
}

int edge_count(const FlagMap& m) {
    int n = 0;
    for (int f = 0; f < m.size(); ++f)
        if (!m.is_stem(f)) ++n;
    return n / 4;
}

void check_flag_map(const FlagMap& m) {
    const int n = m.size();
    if (n == 0) return;
    auto inv = [&](const std::vector<int>& p, const char* name) {
        if (static_cast<int>(p.size()) != n) throw MapError("NonPermutation", std::string(name) + " size");
        for (int f = 0; f < n; ++f) {
            if (p[f] < 0 || p[f] >= n) throw MapError("NonPermutation", std::string(name) + " out of range");
            if (p[f] == f) throw MapError("AlphaFixedPoint", std::string(name) + " has a fixed point");
            if (p[p[f]] != f) throw MapError("NonPermutation", std::string(name) + " not an involution");
        }
    };
    inv(m.C, "C");
    inv(m.H, "H");
    inv(m.E, "E");
    for (int f = 0; f < n; ++f) {
        if (m.E[m.H[f]] != m.H[m.E[f]]) throw MapError("NonPermutation", "H and E do not commute");
        if (m.is_stem(f)) {
            if (m.stem[f] != m.stem[m.H[f]]) throw MapError("NonPermutation", "stem kind differs on halfedge");
        } else if (m.stem[f] != StemKind::None) {
            throw MapError("NonPermutation", "stem kind on an edge");
        }
    }
    int comps = 0;
    orbits(m, true, true, true, &comps);
    if (comps != 1) throw MapError("Disconnected", "flag graph not connected");
    if (m.root < 0 || m.root >= n) throw MapError("RootOutOfRange", "root flag");
    if (m.pointed && (m.point < 0 || m.point >= n)) throw MapError("RootOutOfRange", "pointed flag");
}

FlagMap vertex_map(bool pointed) {
    FlagMap m;
    m.pointed = pointed;
    return m;
}

std::vector<int> vertex_degrees(const FlagMap& m, const Cells& cl, bool count_virtual) {
    std::vector<int> deg(cl.nv, 0);
    if (m.is_vertex_map()) return deg;
    // each halfedge has two flags at its vertex
    for (int f = 0; f < m.size(); ++f) {
        if (m.is_stem(f) && m.is_virtual(f) && !count_virtual) continue;
        deg[cl.vertex[f]]++;
    }
    for (int& d : deg) d /= 2;
    return deg;
}

std::vector<int> interior_degrees(const FlagMap& m, const Cells& cl) {
    std::vector<int> deg(cl.nv, 0);
    for (int f = 0; f < m.size(); ++f)
        if (!m.is_stem(f)) deg[cl.vertex[f]]++;
    for (int& d : deg) d /= 2;
    return deg;
}

std::vector<int> face_degrees(const FlagMap& m, const Cells& cl) {
    std::vector<int> deg(cl.nf, 0);
    for (int f = 0; f < m.size(); ++f) deg[cl.face[f]]++;
    for (int& d : deg) d /= 2;
    return deg;
}

FlagMap dual(const FlagMap& m, int marked_face) {
    FlagMap d = m;
    std::swap(d.H, d.E);
    d.pointed = marked_face >= 0;
    d.point = marked_face;
    if (m.is_vertex_map()) {
        d.pointed = m.pointed;
        d.point = -1;
    }
    return d;
}

FlagMap relabel(const FlagMap& m, const std::vector<int>& perm) {
    FlagMap r;
    const int n = m.size();
    r.resize(n);
    for (int f = 0; f < n; ++f) {
        int g = perm[f];
        r.C[g] = perm[m.C[f]];
        r.H[g] = perm[m.H[f]];
        r.E[g] = perm[m.E[f]];
        r.stem[g] = m.stem[f];
        r.virt[g] = m.virt[f];
    }
    r.root = m.root >= 0 ? perm[m.root] : -1;
    r.pointed = m.pointed;
    r.point = m.point >= 0 ? perm[m.point] : -1;
    return r;
}

FlagMap interior(const FlagMap& m, std::vector<int>* map_old_to_new) {
    const int n = m.size();
    std::vector<int> C = m.C;
    std::vector<char> alive(n, 1);
    bool any_edge = false;
    for (int f = 0; f < n; ++f) {
        if (!m.is_stem(f)) {
            any_edge = true;
            continue;
        }
        if (!alive[f]) continue;
        int g = m.H[f];
        int a = C[f], b = C[g];
        alive[f] = alive[g] = 0;
        if (a == g) continue;  // lonely stem, vertex disappears with it
        C[a] = b;
        C[b] = a;
    }
    if (map_old_to_new) map_old_to_new->assign(n, -1);
    if (!any_edge) {
        FlagMap v = vertex_map(m.pointed);
        return v;
    }
    std::vector<int> perm(n, -1);
    int k = 0;
    for (int f = 0; f < n; ++f)
        if (alive[f]) perm[f] = k++;
    FlagMap r;
    r.resize(k);
    for (int f = 0; f < n; ++f) {
        if (!alive[f]) continue;
        r.C[perm[f]] = perm[C[f]];
        r.H[perm[f]] = perm[m.H[f]];
        r.E[perm[f]] = perm[m.E[f]];
    }
    // a root or point sitting on a removed stem slides to the surviving flag
    // of the same corner
    auto survive = [&](int f) {
        if (f < 0) return -1;
        int g = f;
        for (int guard = 0; guard < 2 * n && !alive[g]; ++guard) {
            // move along the vertex rotation until an edge flag is met
            g = m.sigma(g);
        }
        return alive[g] ? perm[g] : -1;
    };
    r.root = survive(m.root);
    r.pointed = m.pointed;
    r.point = survive(m.point);
    if (map_old_to_new) *map_old_to_new = perm;
    return r;
}

}  // namespace surfmaps
