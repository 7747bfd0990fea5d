#include "listalloc/multigraph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace listalloc {

MultiGraph::MultiGraph(int n) : n_(n)
{
    if (n < 0)
        throw std::invalid_argument("negative vertex count");
}

long MultiGraph::total_multiplicity() const
{
    long total = 0;
    for (const auto& e : edges_)
        total += e.mult;
    return total;
}

std::vector<Edge>::iterator MultiGraph::find_slot(Vertex u, Vertex v)
{
    return std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                            [](const Edge& e, const std::pair<Vertex, Vertex>& key) {
                                return std::pair{e.u, e.v} < key;
                            });
}

void MultiGraph::add_edge(Vertex u, Vertex v, long mult)
{
    if (u == v)
        throw std::invalid_argument("loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    if (mult <= 0)
        throw std::invalid_argument("edge multiplicity must be positive");
    if (u > v)
        std::swap(u, v);
    auto it = find_slot(u, v);
    if (it != edges_.end() && it->u == u && it->v == v)
        it->mult += mult;
    else
        edges_.insert(it, Edge{u, v, mult});
}

void MultiGraph::set_multiplicity(Vertex u, Vertex v, long mult)
{
    if (u > v)
        std::swap(u, v);
    auto it = find_slot(u, v);
    bool present = it != edges_.end() && it->u == u && it->v == v;
    if (mult == 0) {
        if (present)
            edges_.erase(it);
        return;
    }
    if (present)
        it->mult = mult;
    else
        add_edge(u, v, mult);
}

long MultiGraph::multiplicity(Vertex u, Vertex v) const
{
    if (u > v)
        std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                               [](const Edge& e, const std::pair<Vertex, Vertex>& key) {
                                   return std::pair{e.u, e.v} < key;
                               });
    if (it != edges_.end() && it->u == u && it->v == v)
        return it->mult;
    return 0;
}

std::vector<std::vector<std::pair<Vertex, long>>> MultiGraph::adjacency() const
{
    std::vector<std::vector<std::pair<Vertex, long>>> adj(n_);
    for (const auto& e : edges_) {
        adj[e.u].emplace_back(e.v, e.mult);
        adj[e.v].emplace_back(e.u, e.mult);
    }
    return adj;
}

Digraph::Digraph(int n, bool loops_allowed, bool parallel_allowed)
    : n_(n), loops_allowed_(loops_allowed), parallel_allowed_(parallel_allowed)
{
    if (n < 0)
        throw std::invalid_argument("negative vertex count");
}

void Digraph::add_arc(Vertex tail, Vertex head)
{
    if (tail < 0 || head < 0 || tail >= n_ || head >= n_)
        throw std::invalid_argument("arc endpoint out of range");
    if (tail == head && !loops_allowed_)
        throw std::invalid_argument("loop at vertex " + std::to_string(tail) + " not allowed");
    if (!parallel_allowed_ && has_arc(tail, head))
        throw std::invalid_argument("parallel arc (" + std::to_string(tail) + "," +
                                    std::to_string(head) + ")");
    arcs_.push_back(Arc{tail, head});
}

bool Digraph::has_arc(Vertex tail, Vertex head) const
{
    return std::find(arcs_.begin(), arcs_.end(), Arc{tail, head}) != arcs_.end();
}

std::vector<Arc> Digraph::loops() const
{
    std::vector<Arc> out;
    for (const auto& a : arcs_)
        if (a.tail == a.head)
            out.push_back(a);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Arc> Digraph::proper_arcs() const
{
    std::vector<Arc> out;
    for (const auto& a : arcs_)
        if (a.tail != a.head)
            out.push_back(a);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct DisjointSets {
    explicit DisjointSets(int n) : parent(n)
    {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // keeps the smaller root so that class ids are the smallest member
    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (b < a)
            std::swap(a, b);
        parent[b] = a;
        return true;
    }

    std::vector<int> parent;
};

// Stoer-Wagner on a dense weight matrix. Returns the cut value and one side.
std::pair<long, std::vector<char>> stoer_wagner(std::vector<std::vector<long>> w)
{
    const int n = static_cast<int>(w.size());
    std::vector<std::vector<int>> merged(n);
    for (int i = 0; i < n; ++i)
        merged[i] = {i};
    std::vector<char> alive(n, 1);

    long best = std::numeric_limits<long>::max();
    std::vector<int> best_side;

    for (int phase = n; phase > 1; --phase) {
        std::vector<long> key(n, 0);
        std::vector<char> added(n, 0);
        int prev = -1;
        int last = -1;
        for (int step = 0; step < phase; ++step) {
            int sel = -1;
            for (int v = 0; v < n; ++v)
                if (alive[v] && !added[v] && (sel < 0 || key[v] > key[sel]))
                    sel = v;
            added[sel] = 1;
            prev = last;
            last = sel;
            for (int v = 0; v < n; ++v)
                if (alive[v] && !added[v])
                    key[v] += w[sel][v];
        }
        if (key[last] < best) {
            best = key[last];
            best_side = merged[last];
        }
        // merge last into prev
        for (int v = 0; v < n; ++v) {
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        w[prev][prev] = 0;
        merged[prev].insert(merged[prev].end(), merged[last].begin(), merged[last].end());
        alive[last] = 0;
    }

    std::vector<char> side(n, 0);
    for (int v : best_side)
        side[v] = 1;
    return {best, side};
}

std::vector<std::vector<long>> weight_matrix(const MultiGraph& g)
{
    const int n = g.num_vertices();
    std::vector<std::vector<long>> w(n, std::vector<long>(n, 0));
    for (const auto& e : g.edges()) {
        w[e.u][e.v] += e.mult;
        w[e.v][e.u] += e.mult;
    }
    return w;
}

// Maximum flow between two vertex groups (Edmonds-Karp on a dense matrix).
long max_flow(const std::vector<std::vector<long>>& w, const std::vector<char>& is_source,
              const std::vector<char>& is_sink)
{
    const int n = static_cast<int>(w.size());
    const int s = n;
    const int t = n + 1;
    const long inf = std::numeric_limits<long>::max() / 4;
    std::vector<std::vector<long>> cap(n + 2, std::vector<long>(n + 2, 0));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            cap[u][v] = w[u][v];
    for (int v = 0; v < n; ++v) {
        if (is_source[v])
            cap[s][v] = inf;
        if (is_sink[v])
            cap[v][t] = inf;
    }

    long flow = 0;
    std::vector<int> pred(n + 2);
    while (true) {
        std::fill(pred.begin(), pred.end(), -1);
        pred[s] = s;
        std::queue<int> q;
        q.push(s);
        while (!q.empty() && pred[t] < 0) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < n + 2; ++v)
                if (pred[v] < 0 && cap[u][v] > 0) {
                    pred[v] = u;
                    q.push(v);
                }
        }
        if (pred[t] < 0)
            return flow;
        long push = inf;
        for (int v = t; v != s; v = pred[v])
            push = std::min(push, cap[pred[v]][v]);
        for (int v = t; v != s; v = pred[v]) {
            cap[pred[v]][v] -= push;
            cap[v][pred[v]] += push;
        }
        flow += push;
        if (flow >= inf)
            return flow;
    }
}

} // namespace

std::vector<VertexSet> components(const MultiGraph& g)
{
    const int n = g.num_vertices();
    DisjointSets ds(n);
    for (const auto& e : g.edges())
        ds.unite(e.u, e.v);
    std::vector<int> index(n, -1);
    std::vector<VertexSet> out;
    for (int v = 0; v < n; ++v) {
        int root = ds.find(v);
        if (index[root] < 0) {
            index[root] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[index[root]].push_back(v);
    }
    return out;
}

bool is_connected(const MultiGraph& g)
{
    return g.num_vertices() <= 1 || components(g).size() == 1;
}

Contraction contract_edges(const MultiGraph& g, const std::vector<Edge>& ec)
{
    const int n = g.num_vertices();
    DisjointSets ds(n);
    for (const auto& e : ec) {
        if (e.mult <= 0 || g.multiplicity(e.u, e.v) < e.mult)
            throw std::invalid_argument("contracted edge {" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + "} not present with enough multiplicity");
        ds.unite(e.u, e.v);
    }

    Contraction out;
    out.vertex_map.assign(n, -1);
    std::vector<int> id_of_root(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        int root = ds.find(v);
        if (id_of_root[root] < 0)
            id_of_root[root] = next++;
        out.vertex_map[v] = id_of_root[root];
    }
    out.graph = MultiGraph(next);
    for (const auto& e : g.edges()) {
        int a = out.vertex_map[e.u];
        int b = out.vertex_map[e.v];
        if (a != b)
            out.graph.add_edge(a, b, e.mult);
    }
    return out;
}

MultiGraph induced_subgraph(const MultiGraph& g, const VertexSet& vertices)
{
    std::vector<int> local(g.num_vertices(), -1);
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
        local[vertices[i]] = i;
    MultiGraph h(static_cast<int>(vertices.size()));
    for (const auto& e : g.edges())
        if (local[e.u] >= 0 && local[e.v] >= 0)
            h.add_edge(local[e.u], local[e.v], e.mult);
    return h;
}

long cut_value(const MultiGraph& g, const std::vector<char>& in_side1)
{
    long total = 0;
    for (const auto& e : g.edges())
        if (in_side1[e.u] != in_side1[e.v])
            total += e.mult;
    return total;
}

Separation global_min_cut(const MultiGraph& g)
{
    const int n = g.num_vertices();
    if (n < 2)
        throw std::invalid_argument("global_min_cut needs at least two vertices");
    if (!is_connected(g))
        throw std::invalid_argument("global_min_cut needs a connected graph");

    const auto w = weight_matrix(g);
    const long value = stoer_wagner(w).first;

    // Build the lexicographically smallest side containing vertex 0 one
    // element at a time; every partial choice is checked by an s-t flow.
    std::vector<char> in(n, 0);
    std::vector<char> out(n, 0);
    in[0] = 1;
    auto feasible = [&](const std::vector<char>& src, const std::vector<char>& snk, int decided) {
        bool any_sink = std::find(snk.begin(), snk.end(), 1) != snk.end();
        if (any_sink)
            return max_flow(w, src, snk) == value;
        for (int t = decided + 1; t < n; ++t) {
            auto with_t = snk;
            with_t.at(t) = 1;
            if (max_flow(w, src, with_t) == value)
                return true;
        }
        return false;
    };

    int last = 0;
    while (true) {
        if (cut_value(g, in) == value && std::count(in.begin(), in.end(), 1) < n)
            break;
        int chosen = -1;
        for (int v = last + 1; v < n && chosen < 0; ++v) {
            auto src = in;
            auto snk = out;
            src[v] = 1;
            for (int u = last + 1; u < v; ++u)
                snk[u] = 1;
            if (feasible(src, snk, v)) {
                chosen = v;
                in = src;
                out = snk;
            }
        }
        if (chosen < 0)
            throw std::logic_error("global_min_cut: lexicographic search lost feasibility");
        last = chosen;
    }

    Separation sep;
    for (int v = 0; v < n; ++v)
        (in[v] ? sep.side1 : sep.side2).push_back(v);
    sep.cut_size = value;
    return sep;
}

MultiGraph d_edge_core(const MultiGraph& g, int d)
{
    if (d <= 0)
        throw std::invalid_argument("d_edge_core needs d >= 1");
    MultiGraph current = g;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& comp : components(current)) {
            if (comp.size() < 2)
                continue;
            MultiGraph piece = induced_subgraph(current, comp);
            auto [value, side] = stoer_wagner(weight_matrix(piece));
            if (value >= d)
                continue;
            for (const auto& e : piece.edges())
                if (side[e.u] != side[e.v])
                    current.set_multiplicity(comp[e.u], comp[e.v], 0);
            changed = true;
        }
    }
    return current;
}

VertexSet non_isolated_vertices(const MultiGraph& g)
{
    std::vector<char> seen(g.num_vertices(), 0);
    for (const auto& e : g.edges())
        seen[e.u] = seen[e.v] = 1;
    VertexSet out;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (seen[v])
            out.push_back(v);
    return out;
}

namespace {

bool lex_less(const VertexSet& a, const VertexSet& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

std::optional<Separation> find_good_separation(const MultiGraph& g, int q, long y)
{
    if (!is_connected(g))
        throw std::invalid_argument("find_good_separation needs a connected graph");
    const int n = g.num_vertices();
    if (q < 0 || y < 0)
        throw std::invalid_argument("find_good_separation needs q, y >= 0");
    if (n < 2 * (q + 1))
        return std::nullopt;

    const auto& edges = g.edges();
    const int m = static_cast<int>(edges.size());
    std::optional<Separation> best;
    std::vector<int> chosen;

    auto examine = [&](long weight) {
        DisjointSets ds(n);
        std::vector<char> removed(m, 0);
        for (int i : chosen)
            removed[i] = 1;
        for (int i = 0; i < m; ++i)
            if (!removed[i])
                ds.unite(edges[i].u, edges[i].v);
        // two classes: root 0 and one other
        int other = -1;
        for (int v = 0; v < n; ++v) {
            int root = ds.find(v);
            if (root == 0)
                continue;
            if (other < 0)
                other = root;
            else if (root != other)
                return;
        }
        if (other < 0)
            return;
        // every removed edge must cross, so the removed set is exactly the cut
        for (int i : chosen)
            if (ds.find(edges[i].u) == ds.find(edges[i].v))
                return;
        Separation sep;
        for (int v = 0; v < n; ++v)
            (ds.find(v) == 0 ? sep.side1 : sep.side2).push_back(v);
        if (static_cast<int>(sep.side1.size()) <= q || static_cast<int>(sep.side2.size()) <= q)
            return;
        sep.cut_size = weight;
        if (!best || lex_less(sep.side1, best->side1))
            best = std::move(sep);
    };

    auto recurse = [&](auto&& self, int start, long weight) -> void {
        if (!chosen.empty())
            examine(weight);
        for (int i = start; i < m; ++i) {
            if (weight + edges[i].mult > y)
                continue;
            chosen.push_back(i);
            self(self, i + 1, weight + edges[i].mult);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0, 0);
    return best;
}

} // namespace listalloc
