#include "surfmaps/scheme_series.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "surfmaps/blossoming.hpp"

namespace surfmaps {

namespace {

bool real_rootable(const FlagMap& m, int f) {
    if (!m.is_stem(f) || m.is_virtual(f)) return false;
    return m.kind(f) == StemKind::Leaf || f == m.root || m.H[f] == m.root;
}

// Walk series shared by every product, cached per order.
const MotzkinSeries& walks_at(int order) {
    static std::map<int, MotzkinSeries> cache;
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, motzkin_closed_form(order)).first;
    return it->second;
}

struct EdgeEnds {
    int lambda0, lambda1;
    bool forward;
};

std::vector<EdgeEnds> edge_ends(const LabeledScheme& l, std::vector<SchemeEdge>* out = nullptr) {
    const FlagMap& s = l.map;
    auto edges = scheme_edges(s, tour(s), cells(s), {});
    std::vector<EdgeEnds> ends;
    for (const auto& e : edges) ends.push_back({l.label[e.origin_flag], l.label[s.E[e.origin_flag]], e.forward});
    if (out) *out = std::move(edges);
    return ends;
}

}  // namespace

LabeledScheme label_scheme(const FlagMap& s, const std::vector<int>& heights) {
    Cells cl = cells(s);
    auto rel = relative_labels(s, tour(s));
    LabeledScheme l;
    l.map = s;
    l.label.resize(s.size());
    for (int f = 0; f < s.size(); ++f) l.label[f] = rel[f] + heights[cl.vertex[f]];
    if (l.label[s.root] != 0) throw MapError("RootNotZero", "root corner label must be 0");
    return l;
}

std::vector<LabeledScheme> labeled_schemes_in_window(const FlagMap& s, int lo, int hi) {
    Cells cl = cells(s);
    auto rel = relative_labels(s, tour(s));
    const int rv = cl.vertex[s.root];
    std::vector<int> h(cl.nv, lo);
    h[rv] = -rel[s.root];
    std::vector<LabeledScheme> out;
    if (h[rv] < lo || h[rv] > hi) return out;
    std::function<void(int)> rec = [&](int v) {
        if (v == cl.nv) {
            out.push_back(label_scheme(s, h));
            return;
        }
        if (v == rv) return rec(v + 1);
        for (int x = lo; x <= hi; ++x) {
            h[v] = x;
            rec(v + 1);
        }
    };
    rec(0);
    return out;
}

Series core_series_from_scheme(const LabeledScheme& l, int order) {
    const auto& w = walks_at(order);
    Series tb = bivariate_var(order, kBlack), tw = bivariate_var(order, kWhite);
    Series r = bivariate_const(order, 1);
    const FlagMap& s = l.map;
    for (int f = 0; f < s.size(); ++f) {
        if (!real_rootable(s, f) || f > s.H[f]) continue;
        int lam = std::min(l.label[f], l.label[s.H[f]]);
        bool root_bud = f == s.root || s.H[f] == s.root;
        r *= root_bud ? delta(lam, lam + 1, tb, tw) : delta(lam, lam + 1, tw, tb);
    }
    Series tt = tb * tw;
    for (const auto& e : edge_ends(l)) {
        r *= w.b;
        int a = e.lambda0, b = e.lambda1;
        if (!e.forward)
            r *= a <= b ? delta(a, b, w.d_black, w.d_white) : delta(b, a, w.d_white, w.d_black);
        else
            r *= a <= b ? w.d.pow(b - a) : (tt * w.d).pow(a - b);
    }
    return r;
}

Series core_series_direct(const LabeledScheme& l, int order) {
    std::vector<SchemeEdge> edges;
    auto ends = edge_ends(l, &edges);
    const FlagMap& s = l.map;
    int base = 0;
    for (int f = 0; f < s.size(); ++f)
        if (real_rootable(s, f) && f < s.H[f]) ++base;
    Series out(2, order);
    if (base > order) return out;
    // every decoration of one edge within the degree budget, with its degree
    struct Option {
        BranchPath path;
        int degree;
    };
    std::vector<std::vector<Option>> options(ends.size());
    const int budget = order - base;
    for (size_t i = 0; i < ends.size(); ++i) {
        const auto& e = ends[i];
        BranchPath p;
        p.start = e.lambda0;
        auto cost = [&](Step st) {
            if (st == Step::Up) return e.forward ? 0 : 1;
            if (st == Step::Down) return e.forward ? 2 : 1;
            return 1;
        };
        std::function<void(int, int)> rec = [&](int h, int deg) {
            int gap = h - e.lambda1;
            int need = e.forward ? (gap > 0 ? 2 * gap : 0) : std::abs(gap);
            if (deg + need > budget) return;
            if (gap == 0) options[i].push_back({p, deg});
            for (Step st : {Step::Up, Step::Down, Step::S1BL, Step::S1LB, Step::S2BL, Step::S2LB}) {
                int nh = h + (st == Step::Up ? 1 : st == Step::Down ? -1 : 0);
                // forward up steps are free: bound the climb by what the way down costs
                if (e.forward && nh > e.lambda1 && deg + cost(st) + 2 * (nh - e.lambda1) > budget) continue;
                p.steps.push_back(st);
                rec(nh, deg + cost(st));
                p.steps.pop_back();
            }
        };
        rec(e.lambda0, 0);
    }
    std::vector<BranchPath> chosen(ends.size());
    std::function<void(size_t, int)> combine = [&](size_t i, int deg) {
        if (i == ends.size()) {
            FlagMap core = motzkin_to_core(l, chosen);
            Classification c = classify(core);
            if (!c.bud_rooted) throw MapError("Internal", "decorated core is not bud-rooted");
            Tour t = tour(core);
            auto lab = corner_labeling(core, t);
            ColorWeights cw = color_weights(core, t, lab);
            if (!is_virtually_rooted(core)) {
                cw.rootable_black += 1;
                cw.rootable_white -= 1;
            }
            if (cw.rootable_black + cw.rootable_white <= order) out.add_to({cw.rootable_black, cw.rootable_white}, 1);
            return;
        }
        for (const auto& o : options[i]) {
            if (deg + o.degree > budget) continue;
            chosen[i] = o.path;
            combine(i + 1, deg + o.degree);
        }
    };
    combine(0, 0);
    return out;
}

Series scheme_class_series_window(const FlagMap& s, int order, int window) {
    Series r(2, order);
    for (const auto& l : labeled_schemes_in_window(s, -window, window)) r += core_series_from_scheme(l, order);
    return r;
}

Series scheme_class_series(const FlagMap& s, int order) {
    Cells cl = cells(s);
    auto rel = relative_labels(s, tour(s));
    const int n = cl.nv;
    const int rv = cl.vertex[s.root];
    const auto& w = walks_at(order);
    Series tt = bivariate_var(order, kBlack) * bivariate_var(order, kWhite);
    Series one = bivariate_const(order, 1);
    LabeledScheme probe{s, std::vector<int>(s.size(), 0)};
    std::vector<SchemeEdge> edges;
    edge_ends(probe, &edges);
    Series total(2, order);
    std::vector<int> block(n, 0);
    // ordered set partitions: block[v] in [0, k), every block used
    std::function<void(int, int)> parts = [&](int v, int k) {
        if (v < n) {
            for (int b = 0; b <= k; ++b) {
                block[v] = b;
                parts(v + 1, std::max(k, b + 1));
            }
            return;
        }
        // relabel so blocks are ordered: try every ordering of the k blocks
        std::vector<int> order_of(k);
        for (int i = 0; i < k; ++i) order_of[i] = i;
        do {
            std::vector<int> p(n);
            for (int u = 0; u < n; ++u) p[u] = order_of[block[u]];
            // the first-occurrence numbering visits each set partition once;
            // orderings make them surjections
            for (uint32_t eps = 0; eps < (1u << std::max(0, k - 1)); ++eps) {
                std::vector<int> level(k, 0);
                for (int i = 1; i < k; ++i) level[i] = level[i - 1] + 2 - static_cast<int>((eps >> (i - 1)) & 1);
                std::vector<int> h(n);
                int shift = -rel[s.root] - level[p[rv]];
                for (int u = 0; u < n; ++u) h[u] = level[p[u]] + shift;
                Series term = core_series_from_scheme(label_scheme(s, h), order);
                for (int i = 0; i + 1 < k; ++i) {
                    int cross = 0, weight = 0;
                    for (const auto& e : edges) {
                        int po = p[e.origin_vertex], pd = p[e.dest_vertex];
                        bool up = po <= i && pd > i, down = pd <= i && po > i;
                        if (!up && !down) continue;
                        ++cross;
                        weight += !e.forward ? 1 : (down ? 2 : 0);
                    }
                    if (cross == 0) continue;
                    if (weight == 0) throw MapError("Internal", "cut crossed only by free climbs");
                    term *= (one - w.d.pow(2 * cross) * tt.pow(weight)).reciprocal();
                }
                total += term;
            }
        } while (std::next_permutation(order_of.begin(), order_of.end()));
    };
    parts(0, 0);
    return total;
}

Series symmetrized(const Series& c) { return c + swap_colors(c); }

std::vector<SchemeClass> scheme_classes(const SurfaceId& surface) {
    std::map<std::string, SchemeClass> by_key;
    for (auto& s : enumerate_schemes(surface)) {
        UnrootedInfo u = unrooted(s);
        auto& c = by_key[u.key];
        c.key = u.key;
        c.rootable_corners = u.rootable_corners;
        c.members.push_back(std::move(s));
    }
    std::vector<SchemeClass> out;
    for (auto& [k, c] : by_key) out.push_back(std::move(c));
    return out;
}

Series R_from_scheme(const SchemeClass& c, int order) {
    Series cs(2, order);
    for (const auto& s : c.members) cs += scheme_class_series(s, order);
    TreeSeries t = tree_series_four_valent(order);
    Series sym = symmetrized(cs);
    return sym.substitute({t.black, t.white}) * mpq_class(1, c.rootable_corners);
}

Series R_from_schemes(const SurfaceId& surface, int order) {
    Series r(2, order);
    for (const auto& c : scheme_classes(surface)) r += R_from_scheme(c, order);
    return r;
}

}  // namespace surfmaps
