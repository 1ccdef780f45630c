#include "surfmaps/bijection.hpp"

#include <algorithm>
#include <deque>

#include "surfmaps/blossoming.hpp"
#include "surfmaps/combinatorial_map.hpp"
#include "surfmaps/surface.hpp"

namespace surfmaps {

std::vector<int> flag_heights(const FlagMap& m) {
    if (!m.pointed) throw MapError("NotPointed", "map has no pointed vertex");
    if (m.is_vertex_map()) return {};
    Cells cl = cells(m);
    auto h = distances_from(m, cl, cl.vertex[m.point]);
    std::vector<int> out(m.size());
    for (int f = 0; f < m.size(); ++f) out[f] = h[cl.vertex[f]];
    return out;
}

namespace {

// BFS heights from the pointed vertex using only the allowed edges; -1 when
// unreachable.
std::vector<int> restricted_heights(const FlagMap& m, const Cells& cl, const std::vector<uint8_t>& allowed) {
    std::vector<std::vector<int>> adj(cl.nv);
    for (int f = 0; f < m.size(); ++f)
        if (!m.is_stem(f) && allowed[cl.edge[f]]) adj[cl.vertex[f]].push_back(cl.vertex[m.E[f]]);
    std::vector<int> h(cl.nv, -1);
    int s = cl.vertex[m.point];
    h[s] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : adj[v])
            if (h[w] < 0) {
                h[w] = h[v] + 1;
                q.push_back(w);
            }
    }
    return h;
}

void require_bipartite_pointed(const FlagMap& m) {
    if (!m.pointed) throw MapError("NotPointed", "map has no pointed vertex");
    if (!is_bipartite(m)) throw MapError("NotBipartite", "map has an odd cycle");
}

}  // namespace

SpanningTree leftmost_geodesic_tree(const FlagMap& m) {
    require_bipartite_pointed(m);
    SpanningTree t;
    t.in_tree.assign(m.size(), 0);
    if (m.is_vertex_map()) return t;
    Cells cl = cells(m);
    int ne_orbits = *std::max_element(cl.edge.begin(), cl.edge.end()) + 1;
    std::vector<uint8_t> visited(ne_orbits, 0), tree(ne_orbits, 0);
    auto hm = restricted_heights(m, cl, std::vector<uint8_t>(ne_orbits, 1));
    int c = m.root;
    bool moved = false;
    for (;;) {
        int e = cl.edge[c];
        if (visited[e]) {
            c = tree[e] ? m.theta(c) : m.sigma(c);
            moved = true;
        } else {
            int cp = m.theta(c);
            // m'' keeps every edge not yet discarded, minus e
            std::vector<uint8_t> allowed(ne_orbits, 1);
            for (int x = 0; x < ne_orbits; ++x)
                if (visited[x] && !tree[x]) allowed[x] = 0;
            allowed[e] = 0;
            auto h2 = restricted_heights(m, cl, allowed);
            bool disconnected = std::find(h2.begin(), h2.end(), -1) != h2.end();
            int vc = cl.vertex[c];
            if (hm[cl.vertex[cp]] == hm[vc] + 1 || disconnected || h2[vc] != hm[vc]) tree[e] = 1;
            visited[e] = 1;
        }
        if (moved && c == m.root) break;
    }
    for (int f = 0; f < m.size(); ++f) t.in_tree[f] = tree[cl.edge[f]];
    return t;
}

std::vector<int> contour_word(const FlagMap& m, const SpanningTree& t) {
    std::vector<int> word;
    if (m.is_vertex_map()) return {0};
    auto h = flag_heights(m);
    int c = m.root;
    do {
        word.push_back(h[c]);
        c = t.contains(c) ? m.theta(c) : m.sigma(c);
    } while (c != m.root && word.size() <= static_cast<size_t>(m.size()));
    return word;
}

bool is_spanning_tree(const FlagMap& m, const SpanningTree& t) {
    if (m.is_vertex_map()) return true;
    Cells cl = cells(m);
    int ne_orbits = *std::max_element(cl.edge.begin(), cl.edge.end()) + 1;
    std::vector<uint8_t> allowed(ne_orbits, 0);
    int count = 0;
    for (int f = 0; f < m.size(); ++f) {
        if (t.contains(f) && !allowed[cl.edge[f]]) {
            allowed[cl.edge[f]] = 1;
            ++count;
        }
    }
    if (count != cl.nv - 1) return false;
    FlagMap p = m;
    if (!p.pointed) {
        p.pointed = true;
        p.point = p.root;
    }
    auto h = restricted_heights(p, cl, allowed);
    return std::find(h.begin(), h.end(), -1) == h.end();
}

bool is_geodesic(const FlagMap& m, const SpanningTree& t) {
    if (m.is_vertex_map()) return true;
    Cells cl = cells(m);
    int ne_orbits = *std::max_element(cl.edge.begin(), cl.edge.end()) + 1;
    std::vector<uint8_t> allowed(ne_orbits, 0), all(ne_orbits, 1);
    for (int f = 0; f < m.size(); ++f)
        if (t.contains(f)) allowed[cl.edge[f]] = 1;
    return restricted_heights(m, cl, allowed) == restricted_heights(m, cl, all);
}

SpanningTree leftmost_geodesic_tree_bruteforce(const FlagMap& m) {
    require_bipartite_pointed(m);
    SpanningTree best;
    best.in_tree.assign(m.size(), 0);
    if (m.is_vertex_map()) return best;
    Cells cl = cells(m);
    int ne_orbits = *std::max_element(cl.edge.begin(), cl.edge.end()) + 1;
    std::vector<int> edge_ids;
    for (int x = 0; x < ne_orbits; ++x) edge_ids.push_back(x);
    std::vector<int> best_word;
    bool found = false;
    for (uint32_t mask = 0; mask < (1u << ne_orbits); ++mask) {
        if (std::popcount(mask) != cl.nv - 1) continue;
        SpanningTree t;
        t.in_tree.assign(m.size(), 0);
        for (int f = 0; f < m.size(); ++f) t.in_tree[f] = (mask >> cl.edge[f]) & 1;
        if (!is_spanning_tree(m, t) || !is_geodesic(m, t)) continue;
        auto w = contour_word(m, t);
        if (!found || w > best_word) {
            best_word = w;
            best = t;
            found = true;
        }
    }
    return best;
}

FlagMap opening(const FlagMap& m, const SpanningTree& t) {
    if (!m.pointed) throw MapError("NotPointed", "map has no pointed vertex");
    FlagMap o = dual(m);
    o.pointed = false;
    o.point = -1;
    if (m.is_vertex_map()) return o;
    auto h = flag_heights(m);
    int c = m.root;
    bool moved = false;
    for (int guard = 0; guard < 4 * m.size() + 4; ++guard) {
        if (!o.is_stem(c) && t.contains(c)) {
            int a = c, b = o.H[c];          // halfedge after c
            int a2 = o.E[c], b2 = o.H[a2];  // the other end
            for (int x : {a, b, a2, b2}) o.E[x] = o.H[x];
            // the m-vertex across the cut edge is reached through E in m
            bool up = h[m.E[c]] == h[c] + 1;
            StemKind here = up ? StemKind::Bud : StemKind::Leaf;
            StemKind there = up ? StemKind::Leaf : StemKind::Bud;
            o.stem[a] = o.stem[b] = here;
            o.stem[a2] = o.stem[b2] = there;
        } else {
            c = o.theta(c);
            moved = true;
        }
        if (moved && c == o.root) break;
    }
    for (int f = 0; f < m.size(); ++f)
        if (t.contains(f) && !o.is_stem(f)) throw MapError("Internal", "opening left a tree edge uncut");
    return o;
}

FlagMap opening_leftmost(const FlagMap& m) { return opening(m, leftmost_geodesic_tree(m)); }

std::vector<std::pair<int, int>> closure_matching(const FlagMap& u) {
    Tour t = tour(u);
    std::vector<int> buds, free_leaves;
    std::vector<std::pair<int, int>> pairs;
    int f = u.root;
    for (size_t i = 0; i < t.flags.size(); ++i, f = u.theta(f)) {
        if (!u.is_stem(f)) continue;
        if (u.kind(f) == StemKind::Bud) {
            buds.push_back(f);
        } else if (!buds.empty()) {
            pairs.emplace_back(buds.back(), f);
            buds.pop_back();
        } else {
            free_leaves.push_back(f);
        }
    }
    if (buds.size() != free_leaves.size()) throw MapError("Unbalanced", "buds and leaves differ in number");
    // leftover buds climb back to the start height; the lowest one closes the
    // deepest early leaf
    const size_t k = buds.size();
    for (size_t i = 0; i < k; ++i) pairs.emplace_back(buds[i], free_leaves[k - 1 - i]);
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

std::vector<std::pair<int, int>> closure_matching_recursive(const FlagMap& u) {
    Tour t = tour(u);
    std::vector<int> seq;
    int f = u.root;
    for (size_t i = 0; i < t.flags.size(); ++i, f = u.theta(f))
        if (u.is_stem(f)) seq.push_back(f);
    std::vector<std::pair<int, int>> pairs;
    while (!seq.empty()) {
        bool done = false;
        const size_t n = seq.size();
        for (size_t i = 0; i < n && !done; ++i) {
            int a = seq[i], b = seq[(i + 1) % n];
            if (u.kind(a) == StemKind::Bud && u.kind(b) == StemKind::Leaf) {
                pairs.emplace_back(a, b);
                seq.erase(seq.begin() + static_cast<long>(std::max(i, (i + 1) % n)));
                seq.erase(seq.begin() + static_cast<long>(std::min(i, (i + 1) % n)));
                done = true;
            }
        }
        if (!done) throw MapError("Unbalanced", "no bud followed by a leaf");
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

FlagMap closure(const FlagMap& u) {
    auto cls = classify(u);
    if (!cls.well_blossoming) throw MapError("NotWellBlossoming", "closure needs a well-blossoming map");
    if (u.is_vertex_map()) return vertex_map(true);
    Tour t = tour(u);
    auto label = corner_labeling(u, t);
    FlagMap m = u;
    for (auto [b, l] : closure_matching(u)) {
        int hb = u.H[b], hl = u.H[l];
        m.E[b] = hl;
        m.E[hl] = b;
        m.E[l] = hb;
        m.E[hb] = l;
    }
    std::fill(m.stem.begin(), m.stem.end(), StemKind::None);
    std::fill(m.virt.begin(), m.virt.end(), 0);
    Cells cl = cells(m);
    int lo = *std::min_element(label.begin(), label.end());
    int marked = -1;
    for (int f = 0; f < m.size(); ++f) {
        if (label[f] != lo) continue;
        if (marked < 0) marked = f;
        else if (cl.face[f] != cl.face[marked]) throw MapError("Internal", "minimum labels in two faces");
    }
    return dual(m, marked);
}

bool roundtrip_open_close(const FlagMap& m, std::string* diff) {
    std::string a = canonical_encoding(m);
    std::string b = canonical_encoding(closure(opening_leftmost(m)));
    if (a != b && diff) *diff = a + " -> " + b;
    return a == b;
}

bool roundtrip_close_open(const FlagMap& u, std::string* diff) {
    std::string a = canonical_encoding(u);
    std::string b = canonical_encoding(opening_leftmost(closure(u)));
    if (a != b && diff) *diff = a + " -> " + b;
    return a == b;
}

FlagMap quadrangulate(const FlagMap& m) {
    if (m.is_vertex_map()) return vertex_map(false);
    const int n = m.size();
    FlagMap q;
    q.resize(2 * n);
    // (f, vertex end) -> 2f, (f, face end) -> 2f+1
    for (int f = 0; f < n; ++f) {
        q.C[2 * f] = 2 * m.H[f];
        q.C[2 * f + 1] = 2 * m.E[f] + 1;
        q.H[2 * f] = 2 * m.C[f];
        q.H[2 * f + 1] = 2 * m.C[f] + 1;
        q.E[2 * f] = 2 * f + 1;
        q.E[2 * f + 1] = 2 * f;
    }
    q.root = 2 * m.root;
    return q;
}

FlagMap quadrangulate_inverse(const FlagMap& q) {
    if (q.is_vertex_map()) return vertex_map(false);
    Cells cl = cells(q);
    auto col = classify_bipartite(q, cl);
    if (!col) throw MapError("NotQuadrangulation", "not bipartite");
    for (int d : face_degrees(q, cl))
        if (d != 4) throw MapError("NotQuadrangulation", "a face has degree other than 4");
    std::vector<int> idx(q.size(), -1);
    int k = 0;
    for (int f = 0; f < q.size(); ++f)
        if ((*col)[cl.vertex[f]] == 0) idx[f] = k++;
    FlagMap m;
    m.resize(k);
    for (int f = 0; f < q.size(); ++f) {
        if (idx[f] < 0) continue;
        m.C[idx[f]] = idx[q.H[f]];
        m.H[idx[f]] = idx[q.C[f]];
        m.E[idx[f]] = idx[q.E[q.C[q.E[f]]]];
    }
    m.root = idx[q.root];
    return m;
}

}  // namespace surfmaps
