#include "surfmaps/blossoming.hpp"

#include <algorithm>

namespace surfmaps {

Tour tour(const FlagMap& u) {
    Tour t;
    t.index.assign(u.size(), 0);
    if (u.is_vertex_map()) return t;
    int f = u.root;
    int k = 0;
    do {
        f = u.theta(f);
        t.index[f] = ++k;
        t.flags.push_back(f);
    } while (f != u.root);
    // every corner must be met once, in one of its two orientations
    if (static_cast<int>(t.flags.size()) * 2 != u.size()) throw MapError("NotUnicellular", "more than one face");
    return t;
}

std::vector<int> corner_labeling(const FlagMap& u, const Tour& t, bool allow_unbalanced) {
    std::vector<int> label(u.size(), 0);
    if (u.is_vertex_map()) return label;
    int cur = 0;
    // walk from the root: the root is the last tour flag
    int f = u.root;
    for (size_t i = 0; i < t.flags.size(); ++i) {
        label[f] = label[u.C[f]] = cur;
        if (u.is_stem(f)) cur += static_cast<int>(u.kind(f));
        f = u.theta(f);
    }
    if (cur != 0 && !allow_unbalanced) throw MapError("Unbalanced", "buds and leaves differ in number");
    return label;
}

bool is_well_labeling(const FlagMap& u, const Tour& t, const std::vector<int>& label) {
    // Labels are constant along each side of an edge, so one comparison per
    // edge suffices: walking from the root (root corner first), the corner
    // that first runs along the edge sits one above the corner across its
    // halfedge. On a twisted edge both sides may run along the same
    // halfedge, which is why a per-halfedge rule is not used.
    if (u.is_vertex_map()) return true;
    std::vector<uint8_t> seen(u.size(), 0);  // per flag, marks visited edges
    int c = u.root;
    for (size_t i = 0; i < t.flags.size(); ++i, c = u.theta(c)) {
        if (u.is_stem(c) || seen[c]) continue;
        for (int g : {c, u.H[c], u.E[c], u.H[u.E[c]]}) seen[g] = 1;
        int s = u.C[u.H[c]];
        if (label[s] != label[c] - 1) return false;
    }
    return true;
}

bool blossoming_bicolorable(const FlagMap& u) {
    const int n = u.size();
    std::vector<int> side(n, -1);
    for (int s = 0; s < n; ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::vector<int> st{s};
        while (!st.empty()) {
            int f = st.back();
            st.pop_back();
            // rotating around a vertex always crosses a halfedge; walking
            // along a face crosses one only when it steps over a stem
            const std::pair<int, int> steps[] = {{u.sigma(f), 1},
                                                 {u.sigma_inv(f), 1},
                                                 {u.theta(f), u.is_stem(f) ? 1 : 0},
                                                 {u.theta_inv(f), u.is_stem(u.C[f]) ? 1 : 0}};
            for (auto [g, flip] : steps) {
                int want = flip ? 1 - side[f] : side[f];
                if (side[g] < 0) {
                    side[g] = want;
                    st.push_back(g);
                } else if (side[g] != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool is_virtually_rooted(const FlagMap& u) {
    if (u.is_vertex_map()) return false;
    int r = u.root;
    int p = u.theta_inv(r);
    return u.is_stem(r) && u.is_virtual(r) && u.is_stem(p) && u.is_virtual(p);
}

Classification classify(const FlagMap& u) {
    Classification c;
    if (u.is_vertex_map()) {
        c.unicellular = c.balanced = c.well_blossoming = c.well_rooted = c.bicolorable = true;
        return c;
    }
    Cells cl = cells(u);
    c.unicellular = cl.nf == 1;
    c.bicolorable = blossoming_bicolorable(u);
    if (!c.unicellular) return c;
    Tour t = tour(u);
    auto label = corner_labeling(u, t, true);
    int sum = 0;
    for (int f : t.flags)
        if (u.is_stem(f)) sum += static_cast<int>(u.kind(f));
    c.balanced = sum == 0;
    c.well_blossoming = c.balanced && is_well_labeling(u, t, label);
    c.bud_rooted = c.well_blossoming && u.is_stem(u.root) && u.kind(u.root) == StemKind::Bud;
    c.well_rooted = c.well_blossoming && std::all_of(label.begin(), label.end(), [](int x) { return x >= 0; });
    c.virtually_rooted = is_virtually_rooted(u);
    return c;
}

Color stem_color(const FlagMap& u, const std::vector<int>& label, int f) {
    if (!u.is_stem(f) || u.is_virtual(f)) return Color::None;
    int hi = std::max(label[f], label[u.H[f]]);
    return (hi % 2 == 0) ? Color::Black : Color::White;
}

int flag_before_stem(const FlagMap& u, const Tour& t, int f) { return t.index[f] ? f : u.H[f]; }

std::vector<int> rootable_stems(const FlagMap& u, const Tour& t) {
    std::vector<int> out;
    for (int f : t.flags) {
        if (!u.is_stem(f) || u.is_virtual(f)) continue;
        if (u.kind(f) == StemKind::Leaf || f == u.root) out.push_back(f);
    }
    // the root is the last tour flag; list it first
    if (!out.empty() && out.back() == u.root) std::rotate(out.rbegin(), out.rbegin() + 1, out.rend());
    return out;
}

ColorWeights color_weights(const FlagMap& u, const Tour& t, const std::vector<int>& label) {
    ColorWeights w;
    if (u.is_vertex_map()) {
        w.face = Color::Black;
        w.face_black = 1;
        return w;
    }
    int lo = *std::min_element(label.begin(), label.end());
    w.face = (lo % 2 == 0) ? Color::Black : Color::White;
    (w.face == Color::Black ? w.face_black : w.face_white)++;
    for (int f : t.flags) {
        if (!u.is_stem(f) || u.is_virtual(f)) continue;
        Color c = stem_color(u, label, f);
        bool leaf = u.kind(f) == StemKind::Leaf;
        if (leaf) (c == Color::Black ? w.face_black : w.face_white)++;
        if (leaf || f == u.root) (c == Color::Black ? w.rootable_black : w.rootable_white)++;
    }
    return w;
}

}  // namespace surfmaps
