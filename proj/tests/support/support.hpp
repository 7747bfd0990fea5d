#pragma once

// Exhaustive reference checks used only by the tests. Everything here is
// written from the definitions and shares no code with the library's
// algorithms.

#include "listalloc/la_model.hpp"
#include "listalloc/multigraph.hpp"
#include "listalloc/solver.hpp"
#include "listalloc/splitters.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace support {

using namespace listalloc;

// Minimum over all bipartitions with both sides non-empty; n <= 16.
inline long exhaustive_min_cut(const MultiGraph& g)
{
    const int n = g.num_vertices();
    long best = std::numeric_limits<long>::max();
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); mask += 2) {
        long cut = 0;
        for (const auto& e : g.edges())
            if (((mask >> e.u) & 1) != ((mask >> e.v) & 1))
                cut += e.mult;
        best = std::min(best, cut);
    }
    return best;
}

inline bool is_d_edge_connected(const MultiGraph& g, int d)
{
    return g.num_vertices() >= 2 && exhaustive_min_cut(g) >= d;
}

// The core as the union of G[X] over maximal vertex sets X whose induced
// subgraph is d-edge-connected; vertices keep their ids.
inline MultiGraph brute_force_core(const MultiGraph& g, int d)
{
    const int n = g.num_vertices();
    std::vector<std::uint32_t> good;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        VertexSet x;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1)
                x.push_back(v);
        if (is_d_edge_connected(induced_subgraph(g, x), d))
            good.push_back(mask);
    }
    MultiGraph core(n);
    for (std::uint32_t m : good) {
        bool maximal = std::none_of(good.begin(), good.end(), [&](std::uint32_t o) {
            return o != m && (o & m) == m;
        });
        if (!maximal)
            continue;
        for (const auto& e : g.edges())
            if ((m >> e.u & 1) && (m >> e.v & 1))
                core.add_edge(e.u, e.v, e.mult);
    }
    return core;
}

// Calls f(assignment) for every allocation respecting the lists, in
// lexicographic order; stops when f returns true.
inline bool for_each_list_assignment(const LAInstance& inst,
                                     const std::function<bool(const std::vector<Box>&)>& f)
{
    const int n = inst.graph.num_vertices();
    std::vector<Box> box(n, 0);
    std::function<bool(int)> go = [&](int v) {
        if (v == n)
            return f(box);
        for (Box b = 0; b < inst.r; ++b) {
            if (!inst.lists[v].test(b))
                continue;
            box[v] = b;
            if (go(v + 1))
                return true;
        }
        return false;
    };
    return go(0);
}

inline bool counts_match(const LAInstance& inst, const std::vector<Box>& box)
{
    std::vector<std::vector<long>> seen(inst.r, std::vector<long>(inst.r, 0));
    for (const auto& e : inst.graph.edges())
        if (box[e.u] != box[e.v]) {
            seen[box[e.u]][box[e.v]] += e.mult;
            seen[box[e.v]][box[e.u]] += e.mult;
        }
    for (Box i = 0; i < inst.r; ++i)
        for (Box j = 0; j < inst.r; ++j)
            if (i != j && seen[i][j] != inst.alpha.get(i, j))
                return false;
    return true;
}

// Conditions A and B of the split problem for some box j.
inline bool split_conditions(const LAInstance& inst, const VertexSet& s, const std::vector<Box>& box,
                             long bound)
{
    const int n = inst.graph.num_vertices();
    for (Box j = 0; j < inst.r; ++j) {
        long outside = std::count_if(box.begin(), box.end(), [&](Box b) { return b != j; });
        if (outside > bound)
            continue;
        std::vector<char> boundary(n, 0);
        for (const auto& e : inst.graph.edges())
            if (box[e.u] != box[e.v]) {
                if (box[e.u] == j)
                    boundary[e.u] = 1;
                if (box[e.v] == j)
                    boundary[e.v] = 1;
            }
        std::vector<char> in_s(n, 0);
        for (Vertex v : s)
            in_s[v] = 1;
        bool ok = true;
        for (Vertex v = 0; v < n; ++v) {
            if (boundary[v] && !in_s[v])
                ok = false;
            if (in_s[v] && box[v] != j)
                ok = false;
        }
        if (ok)
            return true;
    }
    return false;
}

inline bool exhaustive_shcla(const LAInstance& inst, const VertexSet& s, long bound)
{
    return for_each_list_assignment(inst, [&](const std::vector<Box>& box) {
        return counts_match(inst, box) && split_conditions(inst, s, box, bound);
    });
}

// Every disjoint (A, B) with |A| <= a, |B| <= b is separated by some set.
inline bool family_covers(const SeparatingFamily& f)
{
    const int n = f.n;
    std::vector<std::uint32_t> sets;
    for (const auto& s : f.sets) {
        std::uint32_t m = 0;
        for (int v = 0; v < n; ++v)
            if (s.test(v))
                m |= 1u << v;
        sets.push_back(m);
    }
    for (std::uint32_t a = 0; a < (1u << n); ++a) {
        if (std::popcount(a) > f.a)
            continue;
        const std::uint32_t rest = ((1u << n) - 1) & ~a;
        for (std::uint32_t b = rest;; b = (b - 1) & rest) {
            if (std::popcount(b) <= f.b) {
                bool hit = std::any_of(sets.begin(), sets.end(), [&](std::uint32_t s) {
                    return (a & ~s) == 0 && (b & s) == 0;
                });
                if (!hit)
                    return false;
            }
            if (b == 0)
                break;
        }
    }
    return true;
}

inline MultiGraph random_connected_graph(int n, double density, long max_mult, std::mt19937_64& rng)
{
    MultiGraph g(n);
    std::uniform_int_distribution<long> mult(1, max_mult);
    for (Vertex v = 1; v < n; ++v)
        g.add_edge(std::uniform_int_distribution<int>(0, v - 1)(rng), v, mult(rng));
    std::bernoulli_distribution add(density);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (g.multiplicity(u, v) == 0 && add(rng))
                g.add_edge(u, v, mult(rng));
    return g;
}

inline MultiGraph relabel(const MultiGraph& g, const std::vector<Vertex>& perm)
{
    MultiGraph out(g.num_vertices());
    for (const auto& e : g.edges())
        out.add_edge(perm[e.u], perm[e.v], e.mult);
    return out;
}

} // namespace support
