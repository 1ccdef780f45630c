#include "surfmaps/verify.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "surfmaps/bijection.hpp"
#include "surfmaps/blossoming.hpp"
#include "surfmaps/combinatorial_map.hpp"
#include "surfmaps/decomposition.hpp"
#include "surfmaps/enumeration.hpp"
#include "surfmaps/scheme_series.hpp"
#include "surfmaps/series.hpp"

namespace surfmaps {

namespace {

constexpr uint32_t bit(Filter f) { return static_cast<uint32_t>(f); }

// Time limits of the acceptance run, in seconds.
constexpr double kProductLimit = 600;
constexpr double kRationalityLimit = 900;

// Surfaces of the acceptance corpus: Euler characteristic >= -1.
constexpr int kMinEuler = -1;

const SurfaceId kTorus{0, true};
const SurfaceId kKlein{0, false};

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// Records the first failure only.
void fail(CheckResult& r, const std::string& example, const std::string& why) {
    if (!r.pass && !r.counterexample.empty()) return;
    r.pass = false;
    r.counterexample = example;
    if (r.detail.empty()) r.detail = why;
}

std::string first_difference(const Series& a, const Series& b) {
    std::string out;
    Series d = a - b;
    d.for_each([&](const std::vector<int>& e, const mpq_class& c) {
        if (!out.empty()) return;
        std::ostringstream s;
        s << "exponents";
        for (int x : e) s << ' ' << x;
        s << ": " << a.coeff(e).get_str() << " vs " << b.coeff(e).get_str() << " (diff " << c.get_str() << ")";
        out = s.str();
    });
    return out;
}

std::string first_difference(const Bivariate& a, const Bivariate& b) {
    std::map<std::pair<int, int>, std::pair<long long, long long>> all;
    for (auto& [k, v] : a) all[k].first = v;
    for (auto& [k, v] : b) all[k].second = v;
    for (auto& [k, v] : all) {
        if (v.first != v.second) {
            std::ostringstream s;
            s << "x^" << k.first << " y^" << k.second << ": " << v.first << " vs " << v.second;
            return s.str();
        }
    }
    return {};
}

std::vector<int> histogram(const std::vector<int>& degrees) {
    std::vector<int> h;
    for (int d : degrees) {
        int i = d / 2;
        if (static_cast<int>(h.size()) <= i) h.resize(i + 1, 0);
        h[i]++;
    }
    return h;
}

std::vector<int> trimmed(std::vector<int> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

EnumSpec pointed_bipartite(int edges) {
    EnumSpec s;
    s.max_edges = edges;
    s.min_euler = kMinEuler;
    s.filters = bit(Filter::Bipartite) | bit(Filter::Pointed);
    return s;
}

EnumSpec blossoming_corpus(int edges, uint32_t filters) {
    EnumSpec s;
    s.max_edges = edges;
    s.min_euler = kMinEuler;
    s.blossoming = true;
    s.filters = filters;
    return s;
}

Series map_series(const SurfaceId& sid, int order) {
    Series m(2, order);
    EnumSpec es;
    es.surface = sid;
    es.max_edges = order - sid.euler;
    enumerate_maps(es, [&](const FlagMap& x) {
        Cells c = cells(x);
        if (c.nv + c.nf <= order) m.add_to({c.nv, c.nf}, 1);
    });
    return m;
}

Series from_bivariate(const Bivariate& b, int order) {
    Series s(2, order);
    for (auto& [k, v] : b)
        if (k.first + k.second <= order) s.add_to({k.first, k.second}, mpq_class(static_cast<long>(v)));
    return s;
}

bool loops_only(const std::vector<std::vector<int>>& cycles, int* loops) {
    *loops = 0;
    for (const auto& c : cycles) {
        if (c.size() != 1) return false;
        ++*loops;
    }
    return true;
}

}  // namespace

CheckResult check_roundtrip(const VerifyOptions& o) {
    Timer t;
    CheckResult r;
    r.name = "closure inverts opening and back";
    r.criterion = 1;
    r.pass = true;
    enumerate_maps(pointed_bipartite(o.edges), [&](const FlagMap& m) {
        ++r.compared;
        std::string diff;
        if (!roundtrip_open_close(m, &diff)) fail(r, canonical_encoding(m), "close(open(m)) != m: " + diff);
    });
    enumerate_blossoming(blossoming_corpus(o.edges, bit(Filter::WellBlossoming)), [&](const FlagMap& u) {
        ++r.compared;
        std::string diff;
        if (!roundtrip_close_open(u, &diff)) fail(r, canonical_encoding(u), "open(close(u)) != u: " + diff);
    });
    r.seconds = t.seconds();
    return r;
}

CheckResult check_weights(const VerifyOptions& o) {
    Timer t;
    CheckResult r;
    r.name = "opening carries face degrees and vertex colours";
    r.criterion = 2;
    r.pass = true;
    enumerate_maps(pointed_bipartite(o.edges), [&](const FlagMap& m) {
        ++r.compared;
        if (m.is_vertex_map()) return;
        WeightVectors w = weights(m);
        FlagMap u = opening_leftmost(m);
        Cells cu = cells(u);
        auto vdeg = trimmed(histogram(vertex_degrees(u, cu)));
        if (vdeg != trimmed(w.face_weight)) fail(r, canonical_encoding(m), "face degrees of m differ from vertex degrees of the opening");
        Tour tu = tour(u);
        ColorWeights cw = color_weights(u, tu, corner_labeling(u, tu));
        if (cw.face_black != w.black_vertices || cw.face_white != w.white_vertices)
            fail(r, canonical_encoding(m), "vertex colours of m differ from face colours of the opening");
    });
    r.seconds = t.seconds();
    return r;
}

CheckResult check_counts(const VerifyOptions& o) {
    Timer t;
    CheckResult r;
    r.name = "maps = bipartite quadrangulations = well-rooted 4-valent maps";
    r.criterion = 3;
    r.pass = true;
    for (const char* name : {"sphere", "pp", "torus", "klein"}) {
        SurfaceId sid = parse_surface(name);
        CountSeries cs = series_from_counts(sid, o.edges);
        r.compared += static_cast<long long>(cs.maps.size());
        std::string d1 = first_difference(cs.maps, cs.quadrangulations);
        std::string d2 = first_difference(cs.maps, cs.four_valent_face);
        if (!d1.empty()) fail(r, std::string(name) + " " + d1, "M differs from BP^square");
        if (!d2.empty()) fail(r, std::string(name) + " " + d2, "M differs from R^x");
    }
    r.seconds = t.seconds();
    return r;
}

CheckResult check_walks(const VerifyOptions&) {
    Timer t;
    constexpr int kOrder = 10;
    CheckResult r;
    r.name = "walk series: fixed point, closed form and direct count agree";
    r.criterion = 4;
    r.pass = true;
    MotzkinSeries a = motzkin_fixed_point(kOrder), b = motzkin_closed_form(kOrder), c = motzkin_direct(kOrder);
    const std::pair<const char*, std::function<const Series&(const MotzkinSeries&)>> parts[] = {
        {"D_black", [](const MotzkinSeries& s) -> const Series& { return s.d_black; }},
        {"D_white", [](const MotzkinSeries& s) -> const Series& { return s.d_white; }},
        {"B", [](const MotzkinSeries& s) -> const Series& { return s.b; }},
        {"D", [](const MotzkinSeries& s) -> const Series& { return s.d; }},
    };
    for (const auto& [name, get] : parts) {
        r.compared += 2;
        if (get(a) != get(b)) fail(r, std::string(name) + " " + first_difference(get(a), get(b)), "fixed point vs closed form");
        if (get(c) != get(b)) fail(r, std::string(name) + " " + first_difference(get(c), get(b)), "direct vs closed form");
    }
    Series tb = bivariate_var(kOrder, kBlack), tw = bivariate_var(kOrder, kWhite);
    ++r.compared;
    if (tb * b.d_white != tw * b.d_black) fail(r, first_difference(tb * b.d_white, tw * b.d_black), "t_b D_w != t_w D_b");
    r.seconds = t.seconds();
    return r;
}

CheckResult check_core_products(const VerifyOptions&) {
    Timer t;
    constexpr int kOrder = 6, kHeight = 2;
    CheckResult r;
    r.name = "product formula = decorated cores (heights in [-2,2], degree 6)";
    r.criterion = 5;
    r.pass = true;
    for (const SurfaceId& sid : {kTorus, kKlein}) {
        for (const auto& s : enumerate_schemes(sid)) {
            for (const auto& l : labeled_schemes_in_window(s, -kHeight, kHeight)) {
                ++r.compared;
                Series a = core_series_from_scheme(l, kOrder), b = core_series_direct(l, kOrder);
                if (a != b) fail(r, sid.name() + " " + canonical_encoding(l.map) + " " + first_difference(a, b), "product formula differs");
            }
        }
    }
    r.seconds = t.seconds();
    if (r.seconds > kProductLimit) fail(r, "", "over the time limit");
    return r;
}

CheckResult check_rootable(const VerifyOptions& o) {
    Timer t;
    CheckResult r;
    r.name = "two real well-rootable stems (virtually rooted included)";
    r.criterion = 6;
    r.pass = true;
    auto check = [&](const FlagMap& u, const FlagMap& origin) {
        ++r.compared;
        auto w = well_rootable_stems(u);
        bool ok = w.size() == 2;
        for (int f : w) ok = ok && !u.is_virtual(f);
        if (!ok) fail(r, canonical_encoding(origin), std::to_string(w.size()) + " well-rootable stems");
    };
    enumerate_blossoming(blossoming_corpus(o.edges, bit(Filter::BudRooted)), [&](const FlagMap& u) {
        if (u.is_vertex_map()) return;
        check(u, u);
        for (int c : rootable_corners(u)) {
            FlagMap v = reroot_on_corner(u, c).map;
            if (!classify(v).bud_rooted) {
                fail(r, canonical_encoding(u), "rerooting on a rootable corner is not bud-rooted");
                continue;
            }
            check(v, u);
        }
    });
    r.seconds = t.seconds();
    return r;
}

CheckResult check_shortcut(const VerifyOptions& o) {
    Timer t;
    constexpr int kOrder = 6;
    constexpr int kDirectOrder = 4;
    CheckResult r;
    r.name = "shortcut bijection and sum over schemes = R^x (degree 6)";
    r.criterion = 7;
    r.pass = true;
    for (const SurfaceId& sid : {kTorus, kKlein, SurfaceId{-1, false}}) {
        EnumSpec es;
        es.surface = sid;
        es.max_edges = 2 * o.edges;  // four-valent: up to o.edges vertices
        es.blossoming = true;
        es.filters = bit(Filter::WellRooted) | bit(Filter::FourValent) | bit(Filter::BudRooted);
        enumerate_blossoming(es, [&](const FlagMap& m) {
            auto pm = canonical_perm(m);
            for (int k : rootable_scheme_corners(m)) {
                ++r.compared;
                DecoratedCore dc = shortcut(m, k);
                if (dc.epsilon != 1 && dc.epsilon != 2) fail(r, canonical_encoding(m), "epsilon outside {1,2}");
                auto [m2, k2] = inverse_shortcut(dc);
                if (canonical_key(m2) != canonical_key(m) || canonical_perm(m2)[k2] != pm[k])
                    fail(r, canonical_encoding(m), "inverse shortcut does not give back the marked map");
            }
        });
    }
    for (const SurfaceId& sid : {kTorus, kKlein}) {
        Series sum = R_from_schemes(sid, kOrder);
        Series counted = map_series(sid, kOrder);
        r.compared += 1;
        if (sum != counted) fail(r, sid.name() + " " + first_difference(sum, counted), "scheme sum differs from counts");
        // direct four-valent count where it is cheap
        Series direct = from_bivariate(series_from_counts(sid, kDirectOrder).four_valent_face, kDirectOrder);
        if (sum.truncate(kDirectOrder) != direct)
            fail(r, sid.name() + " " + first_difference(sum.truncate(kDirectOrder), direct), "scheme sum differs from 4-valent counts");
    }
    r.seconds = t.seconds();
    return r;
}

CheckResult check_offsets(const VerifyOptions&) {
    Timer t;
    CheckResult r;
    r.name = "offset cycles: short, disjoint, forward, consecutive; types <= 1";
    r.criterion = 8;
    r.pass = true;
    // every surface with 2g <= 3 that has schemes
    for (const SurfaceId& sid : {kTorus, kKlein, SurfaceId{-1, false}}) {
        for (const auto& s : enumerate_schemes(sid)) {
            ++r.compared;
            OffsetReport rep = check_offset_structure(s, sid.euler);
            if (!rep.ok) fail(r, sid.name() + " " + canonical_encoding(s), rep.problems.front());
        }
    }
    r.seconds = t.seconds();
    return r;
}

CheckResult check_rationality(const VerifyOptions&) {
    Timer t;
    constexpr int kTruncation = 12;
    CheckResult r;
    r.name = "exact rational witnesses at truncation 12";
    r.criterion = 9;
    r.pass = true;
    MotzkinSeries w = motzkin_closed_form(kTruncation);
    for (const SurfaceId& sid : {kTorus, kKlein}) {
        for (const auto& s : enumerate_schemes(sid)) {
            auto cycles = offset_cycles(offset_graph(s));
            int k = 0;
            if (sid.orientable ? !cycles.empty() : !loops_only(cycles, &k)) continue;
            ++r.compared;
            Series c = symmetrized(scheme_class_series(s, kTruncation));
            Series q = c * (w.b * w.b * w.d.pow(k)).reciprocal();
            auto wit = rationality_probe(q);
            if (!wit || wit->q * q != wit->p)
                fail(r, sid.name() + " " + canonical_encoding(s), "no exact witness (k = " + std::to_string(k) + ")");
        }
    }
    r.seconds = t.seconds();
    if (r.seconds > kRationalityLimit) fail(r, "", "over the time limit");
    return r;
}

CheckResult check_gauge(const VerifyOptions& o) {
    Timer t;
    CheckResult r;
    r.name = "counts and images do not depend on the flip gauge";
    r.criterion = 10;
    r.pass = true;
    // tallies keyed by surface and weights, one per gauge seed
    using Tally = std::map<std::string, long long>;
    auto tally = [&](uint64_t seed) {
        Tally out;
        std::mt19937_64 rng(seed);
        enumerate_maps(pointed_bipartite(o.edges), [&](const FlagMap& m) {
            if (m.is_vertex_map()) {
                out["vertex"]++;
                return;
            }
            FlagMap g = to_flags(random_gauge(to_darts(m), rng));
            if (canonical_encoding(g) != canonical_encoding(m)) fail(r, canonical_encoding(m), "gauge changed the map");
            FlagMap u = opening_leftmost(g);
            if (canonical_key(u) != canonical_key(opening_leftmost(m))) fail(r, canonical_encoding(m), "gauge changed the opening");
            Cells c = cells(g);
            Tour tu = tour(u);
            ColorWeights cw = color_weights(u, tu, corner_labeling(u, tu));
            std::ostringstream key;
            key << surface_of(g).name() << ' ' << c.nv << ' ' << c.nf << ' ' << cw.face_black << ' ' << cw.face_white;
            out[key.str()]++;
        });
        return out;
    };
    Tally a = tally(o.seed), b = tally(o.seed + 1);
    r.compared = static_cast<long long>(a.size());
    if (a != b) fail(r, "", "tallies differ between seeds " + std::to_string(o.seed) + " and " + std::to_string(o.seed + 1));
    r.seconds = t.seconds();
    return r;
}

std::vector<std::string> suite_names() {
    return {"all", "roundtrip", "weights", "counts", "walks", "products", "rootable", "shortcut", "offset", "rationality", "gauge"};
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& o) {
    using Fn = CheckResult (*)(const VerifyOptions&);
    const std::vector<std::pair<std::string, Fn>> all = {
        {"roundtrip", check_roundtrip}, {"weights", check_weights},       {"counts", check_counts},
        {"walks", check_walks},         {"products", check_core_products}, {"rootable", check_rootable},
        {"shortcut", check_shortcut},   {"offset", check_offsets},        {"rationality", check_rationality},
        {"gauge", check_gauge},
    };
    std::vector<CheckResult> out;
    for (size_t i = 0; i < all.size(); ++i) {
        const auto& [name, fn] = all[i];
        if (suite != "all" && suite != name) continue;
        try {
            out.push_back(fn(o));
        } catch (const std::exception& e) {
            CheckResult r;
            r.name = name;
            r.criterion = static_cast<int>(i) + 1;
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
            out.push_back(r);
        }
    }
    if (out.empty()) throw MapError("UnknownSuite", "no suite named " + suite);
    return out;
}

std::string report_json(const std::vector<CheckResult>& rs) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rs) {
        j.push_back({{"criterion", r.criterion},
                     {"name", r.name},
                     {"status", r.pass ? "pass" : "fail"},
                     {"compared", r.compared},
                     {"counterexample", r.counterexample},
                     {"detail", r.detail},
                     {"seconds", r.seconds}});
    }
    return j.dump(2);
}

std::string report_table(const std::vector<CheckResult>& rs) {
    std::ostringstream s;
    for (const auto& r : rs) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%8.2fs", r.seconds);
        s << (r.pass ? "PASS" : "FAIL") << "  " << r.criterion << "  " << r.name << "  compared=" << r.compared << "  " << buf;
        if (!r.pass) s << "\n      " << r.detail << (r.counterexample.empty() ? "" : "\n      counterexample: " + r.counterexample);
        s << "\n";
    }
    return s.str();
}

}  // namespace surfmaps
