#include "listalloc/io.hpp"

#include "listalloc/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace listalloc {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

json parse_json(const std::string& text)
{
    try {
        json doc = json::parse(text);
        if (!doc.is_object())
            throw FormatError("expected a JSON object");
        return doc;
    }
    catch (const json::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

const json& field(const json& doc, const char* name)
{
    auto it = doc.find(name);
    if (it == doc.end())
        throw FormatError(std::string("missing field \"") + name + "\"");
    return *it;
}

long integer(const json& v, const char* what)
{
    if (!v.is_number_integer())
        throw FormatError(std::string(what) + " must be an integer");
    return v.get<long>();
}

long bounded(const json& v, long lo, long hi, const char* what)
{
    long x = integer(v, what);
    if (x < lo || x > hi)
        throw FormatError(std::string(what) + " out of range: " + std::to_string(x));
    return x;
}

const json& array(const json& v, const char* what)
{
    if (!v.is_array())
        throw FormatError(std::string(what) + " must be an array");
    return v;
}

MultiGraph read_edges(const json& doc, int n)
{
    MultiGraph g(n);
    for (const auto& e : array(field(doc, "edges"), "edges")) {
        if (!e.is_array() || (e.size() != 2 && e.size() != 3))
            throw FormatError("edge must be [u, v] or [u, v, mult]");
        long u = bounded(e[0], 0, n - 1, "edge endpoint");
        long v = bounded(e[1], 0, n - 1, "edge endpoint");
        long mult = e.size() == 3 ? bounded(e[2], 1, std::numeric_limits<long>::max(), "multiplicity") : 1;
        if (u == v)
            throw FormatError("loop at vertex " + std::to_string(u));
        g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), mult);
    }
    return g;
}

ojson write_edges(const MultiGraph& g)
{
    ojson edges = ojson::array();
    for (const auto& e : g.edges())
        edges.push_back({e.u, e.v, e.mult});
    return edges;
}

// "lists": {"vertex": [ids...]}, ids offset by `base`; missing vertices get the full set.
std::vector<boost::dynamic_bitset<>> read_lists(const json& doc, int n, int width, int base)
{
    std::vector<boost::dynamic_bitset<>> lists(n, boost::dynamic_bitset<>(width).set());
    auto it = doc.find("lists");
    if (it == doc.end())
        return lists;
    if (!it->is_object())
        throw FormatError("lists must be an object keyed by vertex");
    for (const auto& [key, value] : it->items()) {
        long v;
        try {
            std::size_t used = 0;
            v = std::stol(key, &used);
            if (used != key.size())
                throw FormatError("");
        }
        catch (...) {
            throw FormatError("list key is not a vertex id: " + key);
        }
        if (v < 0 || v >= n)
            throw FormatError("list key out of range: " + key);
        boost::dynamic_bitset<> l(width);
        for (const auto& x : array(value, "list"))
            l.set(bounded(x, base, width - 1 + base, "list entry") - base);
        lists[v] = l;
    }
    return lists;
}

ojson write_lists(const std::vector<boost::dynamic_bitset<>>& lists, int base)
{
    ojson out = ojson::object();
    for (std::size_t v = 0; v < lists.size(); ++v) {
        ojson l = ojson::array();
        for (auto b = lists[v].find_first(); b != boost::dynamic_bitset<>::npos;
             b = lists[v].find_next(b))
            l.push_back(static_cast<long>(b) + base);
        out[std::to_string(v)] = l;
    }
    return out;
}

int vertex_count(const json& doc)
{
    return static_cast<int>(bounded(field(doc, "n"), 0, 1'000'000, "n"));
}

template <class F>
auto guarded(F&& f) -> decltype(f())
{
    try {
        return f();
    }
    catch (const FormatError&) {
        throw;
    }
    catch (const std::exception& e) {
        throw FormatError(e.what());
    }
}

struct HomParts {
    Digraph guest;
    Digraph host;
    std::vector<HostSet> lists;
};

HomParts read_hom(const json& doc)
{
    HomParts p;
    const int n = vertex_count(doc);
    p.guest = Digraph(n, false);
    for (const auto& a : array(field(doc, "guest_arcs"), "guest_arcs")) {
        if (!a.is_array() || a.size() != 2)
            throw FormatError("guest arc must be [u, v]");
        p.guest.add_arc(static_cast<Vertex>(bounded(a[0], 0, n - 1, "guest arc endpoint")),
                        static_cast<Vertex>(bounded(a[1], 0, n - 1, "guest arc endpoint")));
    }
    const json& host = field(doc, "host");
    if (!host.is_object())
        throw FormatError("host must be an object");
    const int h = static_cast<int>(bounded(field(host, "vertices"), 1, 1'000'000, "host vertices"));
    p.host = Digraph(h, true);
    if (host.contains("arcs"))
        for (const auto& a : array(host["arcs"], "host arcs")) {
            if (!a.is_array() || a.size() != 2)
                throw FormatError("host arc must be [x, y]");
            p.host.add_arc(static_cast<Vertex>(bounded(a[0], 0, h - 1, "host arc endpoint")),
                           static_cast<Vertex>(bounded(a[1], 0, h - 1, "host arc endpoint")));
        }
    if (host.contains("loops"))
        for (const auto& x : array(host["loops"], "host loops")) {
            auto v = static_cast<Vertex>(bounded(x, 0, h - 1, "host loop"));
            if (!p.host.has_arc(v, v))
                p.host.add_arc(v, v);
        }
    p.lists = read_lists(doc, n, h, 0);
    return p;
}

ojson write_hom(const Digraph& guest, const Digraph& host, const std::vector<HostSet>& lists)
{
    ojson out;
    out["n"] = guest.num_vertices();
    ojson arcs = ojson::array();
    for (const auto& a : guest.arcs())
        arcs.push_back({a.tail, a.head});
    out["guest_arcs"] = arcs;
    ojson harcs = ojson::array();
    ojson loops = ojson::array();
    for (const auto& a : host.arcs()) {
        if (a.tail == a.head)
            loops.push_back(a.tail);
        else
            harcs.push_back({a.tail, a.head});
    }
    out["host"] = {{"vertices", host.num_vertices()}, {"arcs", harcs}, {"loops", loops}};
    out["lists"] = write_lists(lists, 0);
    return out;
}

std::string dump(const ojson& doc)
{
    return doc.dump() + "\n";
}

json witness(const std::string& text, const char* kind)
{
    json doc = parse_json(text);
    auto it = doc.find("kind");
    if (it != doc.end() && (!it->is_string() || it->get<std::string>() != kind))
        throw FormatError(std::string("expected a witness of kind ") + kind);
    return doc;
}

std::vector<int> int_array(const json& v, long lo, const char* what)
{
    std::vector<int> out;
    for (const auto& x : array(v, what))
        out.push_back(static_cast<int>(bounded(x, lo, 1'000'000'000, what)));
    return out;
}

} // namespace

LAInstance parse_la(const std::string& text)
{
    return guarded([&] {
        json doc = parse_json(text);
        LAInstance inst;
        const int n = vertex_count(doc);
        inst.r = static_cast<int>(bounded(field(doc, "r"), 1, 100'000, "r"));
        inst.graph = read_edges(doc, n);
        inst.lists = read_lists(doc, n, inst.r, 1);
        inst.alpha = PairWeights(inst.r);
        std::set<std::pair<long, long>> seen;
        if (doc.contains("alpha"))
            for (const auto& a : array(doc["alpha"], "alpha")) {
                if (!a.is_array() || a.size() != 3)
                    throw FormatError("alpha entry must be [i, j, value]");
                long i = bounded(a[0], 1, inst.r, "alpha box");
                long j = bounded(a[1], 1, inst.r, "alpha box");
                long value = bounded(a[2], 0, std::numeric_limits<long>::max(), "alpha value");
                if (i == j)
                    throw FormatError("alpha pair with equal boxes");
                if (!seen.insert({std::min(i, j), std::max(i, j)}).second)
                    throw FormatError("duplicate alpha pair");
                inst.alpha.set(static_cast<Box>(i - 1), static_cast<Box>(j - 1), value);
            }
        validate(inst);
        return inst;
    });
}

std::string serialize(const LAInstance& inst)
{
    ojson out;
    out["n"] = inst.graph.num_vertices();
    out["edges"] = write_edges(inst.graph);
    out["r"] = inst.r;
    out["lists"] = write_lists(inst.lists, 1);
    ojson alpha = ojson::array();
    for (const auto& p : inst.alpha.support())
        alpha.push_back({p.i + 1, p.j + 1, inst.alpha.get(p.i, p.j)});
    out["alpha"] = alpha;
    return dump(out);
}

MMWCInstance parse_minmax(const std::string& text)
{
    return guarded([&] {
        json doc = parse_json(text);
        MMWCInstance inst;
        const int n = vertex_count(doc);
        inst.graph = read_edges(doc, n);
        inst.ell = bounded(field(doc, "ell"), 0, std::numeric_limits<long>::max(), "ell");
        for (const auto& t : array(field(doc, "terminals"), "terminals"))
            inst.terminals.push_back(static_cast<Vertex>(bounded(t, 0, n - 1, "terminal")));
        if (inst.terminals.empty())
            throw FormatError("at least one terminal is required");
        if (doc.contains("r") && integer(doc["r"], "r") != inst.r())
            throw FormatError("r differs from the number of terminals");
        validate(inst);
        return inst;
    });
}

std::string serialize(const MMWCInstance& inst)
{
    ojson out;
    out["n"] = inst.graph.num_vertices();
    out["edges"] = write_edges(inst.graph);
    out["r"] = inst.r();
    out["terminals"] = inst.terminals;
    out["ell"] = inst.ell;
    return dump(out);
}

BLDHInstance parse_bldh(const std::string& text)
{
    return guarded([&] {
        json doc = parse_json(text);
        HomParts p = read_hom(doc);
        BLDHInstance inst{std::move(p.guest), std::move(p.host), std::move(p.lists),
                          bounded(field(doc, "ell"), 0, std::numeric_limits<long>::max(), "ell")};
        validate(inst);
        return inst;
    });
}

ASLDHInstance parse_asldh(const std::string& text)
{
    return guarded([&] {
        json doc = parse_json(text);
        HomParts p = read_hom(doc);
        ASLDHInstance inst{std::move(p.guest), std::move(p.host), std::move(p.lists), {}};
        for (const auto& a : inst.host.proper_arcs())
            inst.alpha[a] = 0;
        std::set<Arc> seen;
        for (const auto& a : array(field(doc, "alpha_arcs"), "alpha_arcs")) {
            if (!a.is_array() || a.size() != 3)
                throw FormatError("alpha_arcs entry must be [x, y, value]");
            const int h = inst.host.num_vertices();
            Arc arc{static_cast<Vertex>(bounded(a[0], 0, h - 1, "alpha arc endpoint")),
                    static_cast<Vertex>(bounded(a[1], 0, h - 1, "alpha arc endpoint"))};
            auto it = inst.alpha.find(arc);
            if (it == inst.alpha.end())
                throw FormatError("alpha_arcs names a pair that is not a non-loop host arc");
            if (!seen.insert(arc).second)
                throw FormatError("duplicate alpha_arcs entry");
            it->second = bounded(a[2], 0, std::numeric_limits<long>::max(), "alpha value");
        }
        validate(inst);
        return inst;
    });
}

std::string serialize(const BLDHInstance& inst)
{
    ojson out = write_hom(inst.guest, inst.host, inst.lists);
    out["ell"] = inst.ell;
    return dump(out);
}

std::string serialize(const ASLDHInstance& inst)
{
    ojson out = write_hom(inst.guest, inst.host, inst.lists);
    ojson alpha = ojson::array();
    for (const auto& [a, value] : inst.alpha)
        alpha.push_back({a.tail, a.head, value});
    out["alpha_arcs"] = alpha;
    return dump(out);
}

Allocation parse_allocation(const std::string& text)
{
    return guarded([&] {
        json doc = witness(text, "allocation");
        Allocation a{int_array(field(doc, "assignment"), 1, "assignment")};
        for (Box& b : a.assignment)
            --b;
        return a;
    });
}

std::string serialize(const Allocation& alloc)
{
    ojson out;
    out["kind"] = "allocation";
    ojson a = ojson::array();
    for (Box b : alloc.assignment)
        a.push_back(b + 1);
    out["assignment"] = a;
    return dump(out);
}

Partition parse_partition(const std::string& text)
{
    return guarded([&] {
        json doc = witness(text, "partition");
        Partition p{int_array(field(doc, "parts"), 1, "parts")};
        for (int& k : p.part_of)
            --k;
        return p;
    });
}

std::string serialize(const Partition& p)
{
    ojson out;
    out["kind"] = "partition";
    ojson a = ojson::array();
    for (int k : p.part_of)
        a.push_back(k + 1);
    out["parts"] = a;
    return dump(out);
}

HomMapping parse_hom(const std::string& text)
{
    return guarded([&] {
        json doc = witness(text, "homomorphism");
        return HomMapping{int_array(field(doc, "mapping"), 0, "mapping")};
    });
}

std::string serialize(const HomMapping& chi)
{
    ojson out;
    out["kind"] = "homomorphism";
    out["mapping"] = chi.image;
    return dump(out);
}

MultiGraph parse_dimacs(std::istream& in)
{
    std::string line;
    std::optional<MultiGraph> g;
    long declared = -1;
    long seen = 0;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c")
            continue;
        auto fail = [&](const std::string& msg) {
            throw FormatError("DIMACS line " + std::to_string(line_no) + ": " + msg);
        };
        if (tag == "p") {
            std::string kind;
            long n, m;
            if (g || !(ls >> kind >> n >> m) || kind != "edge" || n < 0 || m < 0)
                fail("expected a single `p edge n m` header");
            g.emplace(static_cast<int>(n));
            declared = m;
        }
        else if (tag == "e") {
            if (!g)
                fail("edge before header");
            long u, v, mult = 1;
            if (!(ls >> u >> v))
                fail("expected `e u v [mult]`");
            if (!(ls >> mult))
                mult = 1;
            if (u < 1 || v < 1 || u > g->num_vertices() || v > g->num_vertices())
                fail("vertex out of range");
            if (u == v)
                fail("loop");
            if (mult < 1)
                fail("multiplicity must be positive");
            g->add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), mult);
            ++seen;
        }
        else {
            fail("unknown line tag `" + tag + "`");
        }
    }
    if (!g)
        throw FormatError("DIMACS: missing header");
    if (seen != declared)
        throw FormatError("DIMACS: header declares " + std::to_string(declared) + " edges, found " +
                          std::to_string(seen));
    return *g;
}

std::string serialize_dimacs(const MultiGraph& g)
{
    std::ostringstream out;
    out << "p edge " << g.num_vertices() << " " << g.num_edges() << "\n";
    for (const auto& e : g.edges())
        out << "e " << e.u + 1 << " " << e.v + 1 << " " << e.mult << "\n";
    return out.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace listalloc
