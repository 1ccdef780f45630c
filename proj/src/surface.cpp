#include "surfmaps/surface.hpp"

#include <deque>
#include <stdexcept>

namespace surfmaps {

std::string SurfaceId::name() const {
    if (euler == 2 && orientable) return "sphere";
    if (euler == 1 && !orientable) return "pp";
    if (euler == 0) return orientable ? "torus" : "klein";
    return "chi:" + std::to_string(euler) + (orientable ? ",o" : ",n");
}

SurfaceId parse_surface(const std::string& s) {
    if (s == "sphere") return {2, true};
    if (s == "pp") return {1, false};
    if (s == "torus") return {0, true};
    if (s == "klein") return {0, false};
    if (s.rfind("chi:", 0) == 0) {
        auto comma = s.find(',');
        int chi = std::stoi(s.substr(4, comma == std::string::npos ? std::string::npos : comma - 4));
        bool o = comma == std::string::npos ? (chi % 2 == 0) : s.substr(comma + 1) == "o";
        if (chi > 2 || (o && chi % 2 != 0)) throw MapError("UnknownSurface", "no such surface: " + s);
        return {chi, o};
    }
    throw MapError("UnknownSurface", "unknown surface: " + s);
}

bool is_orientable(const FlagMap& m) {
    const int n = m.size();
    std::vector<int> side(n, -1);
    for (int s = 0; s < n; ++s) {
        if (side[s] >= 0) continue;
        side[s] = 0;
        std::vector<int> st{s};
        while (!st.empty()) {
            int f = st.back();
            st.pop_back();
            for (int g : {m.C[f], m.H[f], m.E[f]}) {
                if (side[g] < 0) {
                    side[g] = 1 - side[f];
                    st.push_back(g);
                } else if (side[g] == side[f]) {
                    return false;
                }
            }
        }
    }
    return true;
}

SurfaceId surface_of(const FlagMap& m) {
    if (m.is_vertex_map()) return {2, true};
    Cells cl = cells(m);
    return {cl.nv - cl.ne + cl.nf, is_orientable(m)};
}

std::vector<int> distances_from(const FlagMap& m, const Cells& cl, int vertex) {
    std::vector<int> h(cl.nv, -1);
    if (m.is_vertex_map()) {
        h[0] = 0;
        return h;
    }
    std::vector<std::vector<int>> adj(cl.nv);
    for (int f = 0; f < m.size(); ++f)
        if (!m.is_stem(f)) adj[cl.vertex[f]].push_back(cl.vertex[m.E[f]]);
    std::deque<int> q{vertex};
    h[vertex] = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int w : adj[v]) {
            if (h[w] < 0) {
                h[w] = h[v] + 1;
                q.push_back(w);
            }
        }
    }
    return h;
}

std::optional<std::vector<int>> classify_bipartite(const FlagMap& m, const Cells& cl) {
    if (m.is_vertex_map()) return std::vector<int>{0};
    auto h = distances_from(m, cl, cl.vertex[m.root]);
    for (int f = 0; f < m.size(); ++f) {
        if (m.is_stem(f)) continue;
        if ((h[cl.vertex[f]] - h[cl.vertex[m.E[f]]]) % 2 == 0) return std::nullopt;
    }
    for (int& x : h) x &= 1;
    return h;
}

bool is_bipartite(const FlagMap& m) { return classify_bipartite(m, cells(m)).has_value(); }

bool is_bicolorable(const FlagMap& m) { return is_bipartite(dual(m)); }

WeightVectors weights(const FlagMap& m) {
    WeightVectors w;
    Cells cl = cells(m);
    auto bump = [](std::vector<int>& v, int deg) {
        if (deg % 2) return;
        if (static_cast<int>(v.size()) <= deg / 2) v.resize(deg / 2 + 1, 0);
        v[deg / 2]++;
    };
    if (!m.is_vertex_map()) {
        for (int d : face_degrees(m, cl)) bump(w.face_weight, d);
        for (int d : vertex_degrees(m, cl)) bump(w.vertex_weight, d);
    }
    if (auto col = classify_bipartite(m, cl)) {
        w.bipartite = true;
        for (int c : *col) (c ? w.white_vertices : w.black_vertices)++;
    }
    FlagMap d = dual(m);
    Cells dl = cells(d);
    if (auto col = classify_bipartite(d, dl)) {
        w.bicolorable = true;
        for (int c : *col) (c ? w.white_faces : w.black_faces)++;
    }
    return w;
}

}  // namespace surfmaps
