#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace listalloc {

using Vertex = int;

/// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;

/// An undirected edge {u, v} with u < v and a positive multiplicity.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    long mult = 1;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Loopless undirected multigraph on vertices 0..n-1. Parallel edges are
/// stored as a multiplicity on a single edge record.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int n);

    int num_vertices() const { return n_; }

    /// Number of distinct vertex pairs carrying an edge.
    int num_edges() const { return static_cast<int>(edges_.size()); }

    /// Sum of all multiplicities.
    long total_multiplicity() const;

    /// Adds `mult` copies of {u, v}. Throws on loops, bad endpoints or mult <= 0.
    void add_edge(Vertex u, Vertex v, long mult = 1);

    /// Sets the multiplicity of {u, v}; zero removes the edge.
    void set_multiplicity(Vertex u, Vertex v, long mult);

    long multiplicity(Vertex u, Vertex v) const;

    /// Edges sorted by (u, v).
    const std::vector<Edge>& edges() const { return edges_; }

    std::vector<std::vector<std::pair<Vertex, long>>> adjacency() const;

    friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

private:
    std::vector<Edge>::iterator find_slot(Vertex u, Vertex v);

    int n_ = 0;
    std::vector<Edge> edges_;
};

/// Directed arc (tail, head).
struct Arc {
    Vertex tail = 0;
    Vertex head = 0;

    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Digraph on vertices 0..n-1. Hosts allow loops; guests do not. Parallel
/// arcs are rejected unless the graph was built with `parallel_allowed`,
/// which only the sparsifier output uses.
class Digraph {
public:
    Digraph() = default;
    Digraph(int n, bool loops_allowed, bool parallel_allowed = false);

    int num_vertices() const { return n_; }
    bool loops_allowed() const { return loops_allowed_; }
    bool parallel_allowed() const { return parallel_allowed_; }

    void add_arc(Vertex tail, Vertex head);
    bool has_arc(Vertex tail, Vertex head) const;

    /// Arcs in insertion order.
    const std::vector<Arc>& arcs() const { return arcs_; }

    /// Loops (x, x), sorted.
    std::vector<Arc> loops() const;

    /// Arcs between distinct vertices, sorted.
    std::vector<Arc> proper_arcs() const;

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    int n_ = 0;
    bool loops_allowed_ = false;
    bool parallel_allowed_ = false;
    std::vector<Arc> arcs_;
};

/// A bipartition of the vertex set. side1 is the side holding the smallest vertex.
struct Separation {
    VertexSet side1;
    VertexSet side2;
    long cut_size = 0;

    friend bool operator==(const Separation&, const Separation&) = default;
};

/// Result of contract_edges: the quotient graph and a total, surjective map
/// from old vertices to new ones. New vertices are numbered by smallest member.
struct Contraction {
    MultiGraph graph;
    std::vector<Vertex> vertex_map;
};

/// Connected components, each sorted, ordered by smallest vertex.
std::vector<VertexSet> components(const MultiGraph& g);

bool is_connected(const MultiGraph& g);

/// Identifies the endpoints of every edge in `ec` (multiplicities must be
/// available in g). Internal edges disappear, parallel survivors are summed.
Contraction contract_edges(const MultiGraph& g, const std::vector<Edge>& ec);

/// Subgraph induced by `vertices`, relabelled 0..k-1 in the order given.
MultiGraph induced_subgraph(const MultiGraph& g, const VertexSet& vertices);

/// Total multiplicity of edges with exactly one endpoint inside `in_side1`.
long cut_value(const MultiGraph& g, const std::vector<char>& in_side1);

/// Global minimum cut. Among all minimum cuts, the one whose side1 is
/// lexicographically smallest is returned. Requires a connected graph, n >= 2.
Separation global_min_cut(const MultiGraph& g);

/// The unique edge-maximal subgraph whose components are all d-edge-connected.
/// Vertices keep their identity; vertices outside the core are isolated.
MultiGraph d_edge_core(const MultiGraph& g, int d);

/// Vertices incident to at least one edge, sorted.
VertexSet non_isolated_vertices(const MultiGraph& g);

/// A (q, y)-good separation (both sides connected, both larger than q, at most
/// y crossing edges), or nullopt when none exists. Ties are broken by the
/// lexicographically smallest side1. Requires a connected graph.
std::optional<Separation> find_good_separation(const MultiGraph& g, int q, long y);

} // namespace listalloc
