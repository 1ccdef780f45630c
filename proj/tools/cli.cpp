// Command-line front end. Maps travel as JSON (one object per line when
// streaming), so verbs compose in pipelines.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "surfmaps/bijection.hpp"
#include "surfmaps/blossoming.hpp"
#include "surfmaps/combinatorial_map.hpp"
#include "surfmaps/decomposition.hpp"
#include "surfmaps/enumeration.hpp"
#include "surfmaps/scheme_series.hpp"
#include "surfmaps/series.hpp"
#include "surfmaps/verify.hpp"

using namespace surfmaps;
using nlohmann::json;

namespace {

struct Options {
    std::string surface;
    int edges = -1;
    int order = 10;
    std::string filter;
    std::string emit;
    uint64_t seed = 1;
    std::string input = "-";
    int corner = -1;
    std::string id;
    std::string suite = "all";
    bool inverse = false;
    int min_euler = -1;
};

// Exit code 2 for anything the caller got wrong.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

// A single JSON object, a JSON array of objects, or one object per line.
std::vector<json> read_documents(const std::string& path) {
    std::string text = read_input(path);
    std::vector<json> docs;
    size_t p = text.find_first_not_of(" \t\r\n");
    if (p == std::string::npos) return docs;
    if (text[p] == '[') {
        for (auto& d : json::parse(text)) docs.push_back(d);
        return docs;
    }
    std::istringstream lines(text);
    std::string line;
    std::string pending;
    for (; std::getline(lines, line);) {
        pending += line;
        if (pending.find_first_not_of(" \t\r") == std::string::npos) {
            pending.clear();
            continue;
        }
        // a pretty-printed object spans lines: accumulate until it parses
        if (!json::accept(pending)) {
            pending += '\n';
            continue;
        }
        docs.push_back(json::parse(pending));
        pending.clear();
    }
    if (!pending.empty() && pending.find_first_not_of(" \t\r\n") != std::string::npos)
        throw UsageError("input is not valid JSON");
    return docs;
}

// The "map" member when present (outputs of prune/scheme/shortcut), else the document itself.
FlagMap flags_of(const json& d) {
    const json& m = d.contains("map") ? d["map"] : d;
    CombinatorialMap cm = from_json(m.dump());
    require_valid(cm);
    return to_flags(cm);
}

// Class keys are binary; print them as hex.
std::string hex(const std::string& key) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (unsigned char c : key) {
        out += digits[c >> 4];
        out += digits[c & 15];
    }
    return out;
}

json map_json(const FlagMap& f, std::vector<int>* index = nullptr) {
    return json::parse(to_json(to_darts(f, {}, index)));
}

// Labels re-indexed to the flag numbering of the emitted map.
json labels_json(const std::vector<int>& label, const std::vector<int>& index) {
    std::vector<int> out(label.size());
    for (size_t f = 0; f < label.size(); ++f) out[index[f]] = label[f];
    return out;
}

void emit_docs(const std::vector<json>& docs, const std::string& emit) {
    if (emit == "json") {
        std::cout << (docs.size() == 1 ? docs[0] : json(docs)).dump(2) << "\n";
    } else {
        for (const auto& d : docs) std::cout << d.dump() << "\n";
    }
}

std::string series_tsv(const std::string& name, const Series& s) {
    std::ostringstream out;
    s.for_each([&](const std::vector<int>& e, const mpq_class& c) {
        out << name;
        for (int x : e) out << '\t' << x;
        out << '\t' << c.get_num().get_str() << '\t' << c.get_den().get_str() << "\n";
    });
    return out.str();
}

json series_json(const Series& s) {
    json arr = json::array();
    s.for_each([&](const std::vector<int>& e, const mpq_class& c) { arr.push_back({{"exponents", e}, {"coefficient", c.get_str()}}); });
    return arr;
}

void print_series(const std::vector<std::pair<std::string, Series>>& named, const std::string& emit, json extra = json::object()) {
    if (emit == "json") {
        json j = extra;
        for (const auto& [n, s] : named) j[n] = series_json(s);
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (auto& [k, v] : extra.items()) std::cout << "# " << k << " = " << v.dump() << "\n";
    for (const auto& [n, s] : named) std::cout << series_tsv(n, s);
}

// ---- verbs ----

int cmd_enumerate(const Options& o) {
    if (o.edges < 0) throw UsageError("--edges is required");
    EnumSpec spec;
    if (!o.surface.empty()) spec.surface = parse_surface(o.surface);
    spec.min_euler = o.min_euler;
    spec.max_edges = o.edges;
    spec.filters = parse_filters(o.filter);
    const uint32_t blossoming = static_cast<uint32_t>(Filter::WellBlossoming) | static_cast<uint32_t>(Filter::WellRooted) |
                                static_cast<uint32_t>(Filter::BudRooted);
    spec.blossoming = (spec.filters & blossoming) != 0;
    const std::string emit = o.emit.empty() ? "count" : o.emit;
    long long n = 0;
    std::vector<json> docs;
    auto out = [&](const FlagMap& m) {
        ++n;
        if (emit == "count") return;
        if (emit == "tsv") {
            Cells c = cells(m);
            std::cout << surface_of(m).name() << '\t' << edge_count(m) << '\t' << c.nv << '\t' << c.nf << '\t'
                      << c.nstems << '\t' << canonical_encoding(m) << "\n";
            return;
        }
        json d = map_json(m);
        if (emit == "jsonl") std::cout << d.dump() << "\n";
        else docs.push_back(d);
    };
    if (spec.blossoming) enumerate_blossoming(spec, out);
    else enumerate_maps(spec, out);
    if (emit == "count") std::cout << n << "\n";
    if (emit == "json") std::cout << json(docs).dump(2) << "\n";
    return 0;
}

template <class F>
int map_each(const Options& o, F&& f) {
    std::vector<json> out;
    for (const auto& d : read_documents(o.input)) out.push_back(f(flags_of(d)));
    emit_docs(out, o.emit.empty() ? "jsonl" : o.emit);
    return 0;
}

int cmd_open(const Options& o) { return map_each(o, [](const FlagMap& m) { return map_json(opening_leftmost(m)); }); }

int cmd_close(const Options& o) { return map_each(o, [](const FlagMap& u) { return map_json(closure(u)); }); }

int cmd_lgt(const Options& o) {
    return map_each(o, [](const FlagMap& m) {
        std::vector<int> index;
        json j = {{"map", map_json(m, &index)}};
        if (m.is_vertex_map()) {
            j["tree_darts"] = json::array();
            return j;
        }
        SpanningTree t = leftmost_geodesic_tree(m);
        std::vector<int> darts;
        for (int f = 0; f < m.size(); ++f)
            if (t.contains(f) && index[f] % 2 == 0) darts.push_back(index[f] / 2);
        j["tree_darts"] = darts;
        j["contour"] = contour_word(m, t);
        return j;
    });
}

int cmd_quadrangulate(const Options& o) {
    return map_each(o, [&](const FlagMap& m) { return map_json(o.inverse ? quadrangulate_inverse(m) : quadrangulate(m)); });
}

int cmd_prune(const Options& o) {
    return map_each(o, [](const FlagMap& u) {
        Pruned p = prune(u);
        std::vector<int> index;
        json j = {{"map", map_json(p.core, &index)}};
        json trees = json::array();
        for (const auto& [stem, t] : p.trees) {
            std::vector<int> ti;
            json tj = {{"stem_flag", index[stem]}, {"tree", map_json(t.map, &ti)}, {"plant_flag", ti.empty() ? -1 : ti[t.plant]}};
            trees.push_back(tj);
        }
        j["trees"] = trees;
        return j;
    });
}

int cmd_scheme(const Options& o) {
    return map_each(o, [](const FlagMap& core) {
        LabeledScheme l = scheme_of(core);
        std::vector<int> index;
        json j = {{"map", map_json(l.map, &index)}};
        j["labels"] = labels_json(l.label, index);
        j["unrooted"] = hex(unrooted(l.map).key);
        return j;
    });
}

json offset_json(const FlagMap& s, const SurfaceId& sid) {
    OffsetGraph g = offset_graph(s);
    OffsetReport rep = check_offset_structure(s, sid.euler);
    json arcs = json::array();
    for (const auto& a : g.arcs) arcs.push_back({{"edge", a.edge}, {"from", a.from}, {"to", a.to}});
    return {{"surface", sid.name()},
            {"encoding", canonical_encoding(s)},
            {"arcs", arcs},
            {"cycles", offset_cycles(g)},
            {"max_vertex_type", rep.max_vertex_type},
            {"total_cycle_length", rep.total_cycle_length},
            {"ok", rep.ok},
            {"problems", rep.problems}};
}

int cmd_offset(const Options& o) {
    std::vector<json> out;
    if (!o.surface.empty()) {
        SurfaceId sid = parse_surface(o.surface);
        long long n = 0, bad = 0, cyclic = 0;
        for (const auto& s : enumerate_schemes(sid)) {
            json j = offset_json(s, sid);
            ++n;
            bad += j["ok"].get<bool>() ? 0 : 1;
            cyclic += j["cycles"].empty() ? 0 : 1;
            if (o.emit == "jsonl" || o.emit == "json") out.push_back(j);
        }
        if (o.emit == "jsonl" || o.emit == "json") emit_docs(out, o.emit);
        else std::cout << "schemes " << n << " with_cycles " << cyclic << " violations " << bad << "\n";
        return bad ? 1 : 0;
    }
    return map_each(o, [](const FlagMap& s) { return offset_json(s, surface_of(s)); });
}

int cmd_shortcut(const Options& o) {
    std::vector<json> out;
    for (const auto& d : read_documents(o.input)) {
        std::vector<int> index;
        FlagMap m = flags_of(d);
        // corner numbers refer to the flags of the map as read (2 dart + spin bit)
        std::vector<int> corners = o.corner >= 0 ? std::vector<int>{o.corner} : rootable_scheme_corners(m);
        for (int k : corners) {
            if (k >= m.size()) throw UsageError("--corner out of range");
            DecoratedCore dc = shortcut(m, k);
            json j = {{"corner", k}, {"epsilon", dc.epsilon}, {"map", map_json(dc.core, &index)}};
            json trees = json::array();
            for (const auto& [stem, t] : dc.trees) {
                std::vector<int> ti;
                trees.push_back({{"stem_flag", index[stem]}, {"tree", map_json(t.map, &ti)}, {"plant_flag", ti.empty() ? -1 : ti[t.plant]}});
            }
            j["trees"] = trees;
            out.push_back(j);
        }
    }
    emit_docs(out, o.emit.empty() ? "jsonl" : o.emit);
    return 0;
}

const FlagMap& find_scheme(const std::vector<FlagMap>& all, const std::string& id) {
    for (const auto& s : all)
        if (canonical_encoding(s) == id || hex(unrooted(s).key) == id) return s;
    throw UsageError("no scheme with id " + id + " (list them with `series scheme --surface S`)");
}

int cmd_series(const std::string& what, const Options& o) {
    const std::string emit = o.emit.empty() ? "tsv" : o.emit;
    if (o.order < 0) throw UsageError("--order must be non-negative");
    if (what == "tree") {
        TreeSeries t = tree_series_four_valent(o.order);
        print_series({{"T_black", t.black}, {"T_white", t.white}}, emit);
        return 0;
    }
    if (what == "motzkin") {
        MotzkinSeries a = motzkin_fixed_point(o.order), b = motzkin_closed_form(o.order), c = motzkin_direct(o.order);
        bool agree = a.b == b.b && a.d == b.d && a.d_black == b.d_black && a.d_white == b.d_white && c.b == b.b &&
                     c.d == b.d && c.d_black == b.d_black && c.d_white == b.d_white;
        print_series({{"B", b.b}, {"D", b.d}, {"D_black", b.d_black}, {"D_white", b.d_white}}, emit, {{"three_way_agreement", agree}});
        return agree ? 0 : 1;
    }
    if (what == "scheme" || what == "probe") {
        if (o.surface.empty()) throw UsageError("--surface is required");
        SurfaceId sid = parse_surface(o.surface);
        auto all = enumerate_schemes(sid);
        if (o.id.empty()) {
            for (const auto& s : all) std::cout << canonical_encoding(s) << '\t' << hex(unrooted(s).key) << "\n";
            return 0;
        }
        const FlagMap& s = find_scheme(all, o.id);
        Series c = symmetrized(scheme_class_series(s, o.order));
        if (what == "scheme") {
            print_series({{"C_sym", c}}, emit);
            return 0;
        }
        // divide by B^2g and by D per offset loop, then look for P/Q
        MotzkinSeries w = motzkin_closed_form(o.order);
        auto cycles = offset_cycles(offset_graph(s));
        int loops = 0;
        for (const auto& cy : cycles) loops += cy.size() == 1 ? 1 : 0;
        Series q = c * (w.b.pow(sid.twice_genus()) * w.d.pow(loops)).reciprocal();
        auto wit = rationality_probe(q);
        json extra = {{"witness", wit.has_value()}, {"offset_loops", loops}, {"offset_cycles", cycles.size()}};
        if (!wit) {
            print_series({}, emit, extra);
            return 0;
        }
        extra["deg_p"] = wit->deg_p;
        extra["deg_q"] = wit->deg_q;
        print_series({{"P", wit->p}, {"Q", wit->q}}, emit, extra);
        return 0;
    }
    throw UsageError("series needs one of tree, motzkin, scheme, probe");
}

int cmd_verify(const Options& o) {
    VerifyOptions vo;
    vo.edges = o.edges < 0 ? 4 : o.edges;
    vo.seed = o.seed;
    auto results = run_suite(o.suite, vo);
    std::cout << (o.emit == "json" ? report_json(results) + "\n" : report_table(results));
    for (const auto& r : results)
        if (!r.pass) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maps on surfaces: enumeration, opening and closure, cores and schemes, series"};
    app.require_subcommand(1);
    Options o;
    const std::vector<std::string> emits = {"count", "tsv", "json", "jsonl"};
    auto common = [&](CLI::App* sub) {
        sub->add_option("--surface", o.surface, "sphere|pp|torus|klein|chi:<int>,<o|n>");
        sub->add_option("--edges", o.edges, "edge bound")->check(CLI::NonNegativeNumber);
        sub->add_option("--order", o.order, "series truncation order");
        sub->add_option("--filter", o.filter, "comma separated filters");
        sub->add_option("--emit", o.emit, "count|tsv|json|jsonl")->check(CLI::IsMember(emits));
        sub->add_option("--seed", o.seed, "flip gauge seed");
        sub->add_option("--input", o.input, "input file, - for stdin");
    };
    std::string series_what;
    std::map<std::string, CLI::App*> subs;
    const std::vector<std::pair<const char*, const char*>> verbs = {
        {"enumerate", "rooted maps up to --edges edges, or blossoming maps under a blossoming filter"},
        {"open", "blossoming opening of bipartite pointed maps"},
        {"close", "closure of well-rooted blossoming maps"},
        {"lgt", "leftmost geodesic spanning tree and its contour word"},
        {"quadrangulate", "map to quadrangulation (or back with --inverse)"},
        {"prune", "core of a blossoming map with its pruned trees"},
        {"scheme", "labeled scheme of a core"},
        {"offset", "offset cycles of schemes"},
        {"shortcut", "shortcut of a well-rooted core at a marked corner"},
        {"series", "generating series: tree, motzkin, scheme, probe"},
        {"verify", "run verification suites"},
    };
    for (const auto& [verb, help] : verbs) {
        CLI::App* sub = app.add_subcommand(verb, help);
        common(sub);
        subs[verb] = sub;
    }
    subs["enumerate"]->add_option("--min-euler", o.min_euler, "smallest Euler characteristic when no surface is given");
    subs["quadrangulate"]->add_flag("--inverse", o.inverse, "recover the map from its quadrangulation");
    subs["shortcut"]->add_option("--corner", o.corner, "flag of the marked corner (default: every rootable scheme corner)");
    subs["series"]->add_option("what", series_what, "tree|motzkin|scheme|probe")->required();
    subs["series"]->add_option("--id", o.id, "scheme canonical encoding or unrooted key");
    subs["verify"]->add_option("--suite", o.suite, "all|roundtrip|weights|counts|walks|products|rootable|shortcut|offset|rationality|gauge");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (subs["enumerate"]->parsed()) return cmd_enumerate(o);
        if (subs["open"]->parsed()) return cmd_open(o);
        if (subs["close"]->parsed()) return cmd_close(o);
        if (subs["lgt"]->parsed()) return cmd_lgt(o);
        if (subs["quadrangulate"]->parsed()) return cmd_quadrangulate(o);
        if (subs["prune"]->parsed()) return cmd_prune(o);
        if (subs["scheme"]->parsed()) return cmd_scheme(o);
        if (subs["offset"]->parsed()) return cmd_offset(o);
        if (subs["shortcut"]->parsed()) return cmd_shortcut(o);
        if (subs["series"]->parsed()) return cmd_series(series_what, o);
        if (subs["verify"]->parsed()) return cmd_verify(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SeriesError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: bad JSON input: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
