#include "surfmaps/combinatorial_map.hpp"

#include <algorithm>
#include "json.hpp"

namespace surfmaps {

using nlohmann::json;

namespace {

bool is_perm(const std::vector<int>& p, int n) {
    if (static_cast<int>(p.size()) != n) return false;
    std::vector<char> seen(n, 0);
    for (int x : p) {
        if (x < 0 || x >= n || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

std::vector<int> inverse(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
    return q;
}

}  // namespace

std::vector<std::string> validate_map(const CombinatorialMap& m) {
    std::vector<std::string> errs;
    const int n = m.n_darts;
    if (n == 0) return errs;
    if (!is_perm(m.sigma, n)) errs.push_back("NonPermutation: sigma");
    if (static_cast<int>(m.alpha.size()) != n) {
        errs.push_back("NonPermutation: alpha size");
        return errs;
    }
    for (int d = 0; d < n; ++d) {
        int a = m.alpha[d];
        if (a == -1) {
            if (!m.stems.count(d)) errs.push_back("NonPermutation: unmatched dart " + std::to_string(d) + " is not a stem");
            continue;
        }
        if (a == d) errs.push_back("AlphaFixedPoint: dart " + std::to_string(d));
        else if (a < 0 || a >= n || m.alpha[a] != d) errs.push_back("NonPermutation: alpha at " + std::to_string(d));
        if (m.stems.count(d)) errs.push_back("NonPermutation: matched dart " + std::to_string(d) + " listed as stem");
    }
    if (static_cast<int>(m.twist.size()) != n) {
        errs.push_back("NonPermutation: twist size");
    } else {
        for (int d = 0; d < n; ++d) {
            if (m.twist[d] != 1 && m.twist[d] != -1) errs.push_back("NonPermutation: twist value");
            int a = m.alpha[d];
            if (a >= 0 && a < n && m.twist[a] != m.twist[d]) errs.push_back("NonPermutation: twist differs on edge");
        }
    }
    if (m.root.dart < 0 || m.root.dart >= n || (m.root.spin != 1 && m.root.spin != -1))
        errs.push_back("RootOutOfRange: root");
    if (m.pointed && (*m.pointed < 0 || *m.pointed >= n)) errs.push_back("RootOutOfRange: pointed");
    if (!errs.empty()) return errs;
    // connectivity over sigma and alpha
    std::vector<char> seen(n, 0);
    std::vector<int> st{0};
    seen[0] = 1;
    int cnt = 1;
    auto sinv = inverse(m.sigma);
    while (!st.empty()) {
        int d = st.back();
        st.pop_back();
        for (int e : {m.sigma[d], sinv[d], m.alpha[d]}) {
            if (e >= 0 && !seen[e]) {
                seen[e] = 1;
                ++cnt;
                st.push_back(e);
            }
        }
    }
    if (cnt != n) errs.push_back("Disconnected: " + std::to_string(n - cnt) + " darts unreachable");
    return errs;
}

void require_valid(const CombinatorialMap& m) {
    auto errs = validate_map(m);
    if (errs.empty()) return;
    auto pos = errs[0].find(':');
    throw MapError(errs[0].substr(0, pos), errs[0].substr(pos + 2));
}

OrientedCorner vertex_rotation(const CombinatorialMap& m, OrientedCorner oc) {
    if (oc.spin > 0) return {m.sigma[oc.dart], 1};
    for (int d = 0; d < m.n_darts; ++d)
        if (m.sigma[d] == oc.dart) return {d, -1};
    return oc;
}

OrientedCorner face_rotation(const CombinatorialMap& m, OrientedCorner oc) {
    int dstar = oc.spin > 0 ? m.sigma[oc.dart] : oc.dart;
    if (m.alpha[dstar] < 0) return vertex_rotation(m, oc);
    int a = m.alpha[dstar];
    int s2 = oc.spin * m.twist[dstar];
    if (s2 > 0) return {a, 1};
    for (int d = 0; d < m.n_darts; ++d)
        if (m.sigma[d] == a) return {d, -1};
    return oc;
}

CombinatorialMap flip(const CombinatorialMap& m, int v) {
    CombinatorialMap r = m;
    std::vector<char> at(m.n_darts, 0);
    int d = v;
    do {
        at[d] = 1;
        d = m.sigma[d];
    } while (d != v);
    auto sinv = inverse(m.sigma);
    for (int e = 0; e < m.n_darts; ++e) {
        if (at[e]) r.sigma[e] = sinv[e];
        if (m.alpha[e] >= 0 && at[e] != at[m.alpha[e]]) r.twist[e] = -m.twist[e];
    }
    if (at[m.root.dart]) r.root = {m.sigma[m.root.dart], -m.root.spin};
    return r;
}

FlagMap to_flags(const CombinatorialMap& m) {
    FlagMap f;
    const int n = m.n_darts;
    if (n == 0) {
        f = vertex_map(m.vertex_map_pointed || m.pointed.has_value());
        return f;
    }
    f.resize(2 * n);
    auto sinv = inverse(m.sigma);
    auto flag = [](OrientedCorner oc) { return 2 * oc.dart + (oc.spin > 0 ? 0 : 1); };
    for (int d = 0; d < n; ++d) {
        f.C[2 * d] = 2 * d + 1;
        f.C[2 * d + 1] = 2 * d;
        f.H[2 * d] = 2 * m.sigma[d] + 1;
        f.H[2 * d + 1] = 2 * sinv[d];
    }
    for (int d = 0; d < n; ++d) {
        for (int s : {1, -1}) {
            OrientedCorner oc{d, s};
            int fl = flag(oc);
            int dstar = s > 0 ? m.sigma[d] : d;
            if (m.alpha[dstar] < 0) {
                f.E[fl] = f.H[fl];
                auto it = m.stems.find(dstar);
                f.stem[fl] = it->second.kind;
                f.virt[fl] = it->second.is_virtual ? 1 : 0;
                continue;
            }
            int a = m.alpha[dstar];
            int s2 = s * m.twist[dstar];
            OrientedCorner t = s2 > 0 ? OrientedCorner{a, 1} : OrientedCorner{sinv[a], -1};
            f.E[fl] = f.C[flag(t)];
        }
    }
    f.root = flag(m.root);
    if (m.pointed) {
        f.pointed = true;
        f.point = 2 * *m.pointed;
    }
    return f;
}

CombinatorialMap to_darts(const FlagMap& f, const std::vector<int>& direct_flags, std::vector<int>* flag_index) {
    CombinatorialMap m;
    if (f.is_vertex_map()) {
        m.vertex_map_pointed = f.pointed;
        return m;
    }
    const int n = f.size();
    std::vector<int> spin(n, 0);
    auto orient = [&](int start) {
        int g = start;
        do {
            spin[g] = 1;
            spin[f.C[g]] = -1;
            g = f.sigma(g);
        } while (g != start);
    };
    for (int g : direct_flags)
        if (spin[g] == 0) orient(g);
    for (int g = 0; g < n; ++g)
        if (spin[g] == 0) orient(g);
    // darts are numbered by their positive flag in index order
    std::vector<int> dart(n, -1);
    std::vector<int> pos;
    for (int g = 0; g < n; ++g) {
        if (spin[g] > 0) {
            dart[g] = static_cast<int>(pos.size());
            pos.push_back(g);
        }
    }
    auto dart_of_corner = [&](int g) { return spin[g] > 0 ? dart[g] : dart[f.C[g]]; };
    m.n_darts = static_cast<int>(pos.size());
    m.sigma.assign(m.n_darts, -1);
    m.alpha.assign(m.n_darts, -1);
    m.twist.assign(m.n_darts, 1);
    for (int d = 0; d < m.n_darts; ++d) m.sigma[d] = dart[f.sigma(pos[d])];
    for (int d = 0; d < m.n_darts; ++d) {
        int q = f.C[pos[d]];  // (c_d, -1): its halfedge is dart d
        if (f.is_stem(q)) {
            m.stems[d] = StemInfo{f.stem[q], f.virt[q] != 0};
            continue;
        }
        int e = f.E[q];
        int a = spin[e] < 0 ? dart_of_corner(e) : m.sigma[dart_of_corner(e)];
        m.alpha[d] = a;
        m.twist[d] = spin[e];
    }
    if (flag_index) {
        flag_index->assign(n, -1);
        for (int g = 0; g < n; ++g) (*flag_index)[g] = 2 * dart_of_corner(g) + (spin[g] > 0 ? 0 : 1);
    }
    m.root = {dart_of_corner(f.root), spin[f.root]};
    if (f.pointed) {
        int best = m.n_darts;
        int g = f.point;
        do {
            best = std::min(best, dart_of_corner(g));
            g = f.sigma(g);
        } while (g != f.point);
        m.pointed = best;
    }
    return m;
}

CombinatorialMap random_gauge(const CombinatorialMap& m, std::mt19937_64& rng) {
    FlagMap f = to_flags(m);
    if (f.is_vertex_map()) return m;
    Cells cl = cells(f);
    std::vector<int> direct;
    for (int v = 0; v < cl.nv; ++v) {
        int g = cl.vertex_rep[v];
        if (rng() & 1) g = f.C[g];
        direct.push_back(g);
    }
    // shuffle flag indices too so dart numbering changes
    std::vector<int> perm(f.size());
    for (int i = 0; i < f.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    FlagMap r = relabel(f, perm);
    for (int& g : direct) g = perm[g];
    return to_darts(r, direct);
}

std::string to_json(const CombinatorialMap& m) {
    json j;
    j["n_darts"] = m.n_darts;
    j["sigma"] = m.sigma;
    j["alpha"] = m.alpha;
    j["twist"] = m.twist;
    if (m.n_darts == 0) j["root"] = nullptr;
    else j["root"] = {m.root.dart, m.root.spin};
    if (m.pointed) j["pointed"] = *m.pointed;
    else if (m.n_darts == 0 && m.vertex_map_pointed) j["pointed"] = 0;
    else j["pointed"] = nullptr;
    if (!m.stems.empty()) {
        json s = json::object();
        for (auto& [d, info] : m.stems)
            s[std::to_string(d)] = {{"kind", info.kind == StemKind::Bud ? "bud" : "leaf"}, {"virtual", info.is_virtual}};
        j["stems"] = s;
    }
    return j.dump();
}

CombinatorialMap from_json(const std::string& text) {
    json j = json::parse(text);
    CombinatorialMap m;
    m.n_darts = j.at("n_darts").get<int>();
    m.sigma = j.at("sigma").get<std::vector<int>>();
    m.alpha = j.at("alpha").get<std::vector<int>>();
    m.twist = j.contains("twist") ? j.at("twist").get<std::vector<int>>() : std::vector<int>(m.n_darts, 1);
    if (m.n_darts > 0) {
        const auto& r = j.at("root");
        m.root = {r.at(0).get<int>(), r.at(1).get<int>()};
    }
    if (j.contains("pointed") && !j["pointed"].is_null()) {
        if (m.n_darts == 0) m.vertex_map_pointed = true;
        else m.pointed = j["pointed"].get<int>();
    }
    if (j.contains("stems")) {
        for (auto& [k, v] : j["stems"].items()) {
            StemInfo info;
            info.kind = v.at("kind").get<std::string>() == "bud" ? StemKind::Bud : StemKind::Leaf;
            info.is_virtual = v.value("virtual", false);
            m.stems[std::stoi(k)] = info;
        }
    }
    return m;
}

FlagMap canonical_form(const FlagMap& m) {
    if (m.is_vertex_map()) return m;
    const int n = m.size();
    std::vector<int> perm(n, -1), order;
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
    FlagMap r = relabel(m, perm);
    if (r.pointed) {
        // normalize the point to the smallest flag of its vertex
        int best = r.point, g = r.point;
        do {
            best = std::min({best, g, r.C[g]});
            g = r.sigma(g);
        } while (g != r.point);
        r.point = best;
    }
    return r;
}

std::string canonical_encoding(const FlagMap& m) {
    FlagMap c = canonical_form(m);
    // gauge: every vertex takes the orientation of its first flag
    return to_json(to_darts(c));
}

std::string canonical_encoding(const CombinatorialMap& m) { return canonical_encoding(to_flags(m)); }

std::string canonical_key(const FlagMap& m) {
    FlagMap c = canonical_form(m);
    std::string s;
    const int n = c.size();
    s.reserve(3 * n + 8);
    for (int f = 0; f < n; ++f) {
        s.push_back(static_cast<char>(c.C[f]));
        s.push_back(static_cast<char>(c.H[f]));
        s.push_back(static_cast<char>(c.E[f]));
        s.push_back(static_cast<char>(static_cast<int>(c.stem[f]) * 2 + c.virt[f]));
    }
    s.push_back(c.pointed ? 'p' : 'n');
    s += std::to_string(c.point);
    return s;
}

}  // namespace surfmaps
