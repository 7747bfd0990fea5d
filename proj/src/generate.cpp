#include "listalloc/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace listalloc {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(Rng& rng, double p)
{
    return std::bernoulli_distribution(std::clamp(p, 0.0, 1.0))(rng);
}

MultiGraph random_graph(const GenParams& p, Rng& rng)
{
    MultiGraph g(p.n);
    auto mult = [&] { return static_cast<long>(uniform(rng, 1, static_cast<int>(std::max(1L, p.max_mult)))); };
    if (p.connected)
        for (Vertex v = 1; v < p.n; ++v)
            g.add_edge(uniform(rng, 0, v - 1), v, mult());
    for (Vertex u = 0; u < p.n; ++u)
        for (Vertex v = u + 1; v < p.n; ++v)
            if (g.multiplicity(u, v) == 0 && coin(rng, p.edge_density))
                g.add_edge(u, v, mult());
    return g;
}

boost::dynamic_bitset<> random_list(int width, double density, Rng& rng)
{
    boost::dynamic_bitset<> l(width);
    for (int x = 0; x < width; ++x)
        if (coin(rng, density))
            l.set(x);
    if (l.none())
        l.set(uniform(rng, 0, width - 1));
    return l;
}

Digraph random_guest(const GenParams& p, Rng& rng)
{
    Digraph g(p.n, false);
    for (Vertex u = 0; u < p.n; ++u)
        for (Vertex v = 0; v < p.n; ++v)
            if (u != v && coin(rng, p.edge_density / 2))
                g.add_arc(u, v);
    return g;
}

// Proper arcs first, then loops, so the instance round-trips through JSON.
Digraph random_host(const GenParams& p, Rng& rng)
{
    Digraph host(p.h, true);
    for (Vertex x = 0; x < p.h; ++x)
        for (Vertex y = 0; y < p.h; ++y)
            if (x != y && coin(rng, p.host_density))
                host.add_arc(x, y);
    for (Vertex x = 0; x < p.h; ++x)
        if (p.h == 1 || coin(rng, p.host_density))
            host.add_arc(x, x);
    return host;
}

void check(const GenParams& p)
{
    if (p.n < 0 || p.r < 1 || p.h < 1 || p.w < 0 || p.ell < 0)
        throw std::invalid_argument("generator parameters out of range");
}

} // namespace

LAInstance generate_la(const GenParams& p, std::uint64_t seed)
{
    check(p);
    Rng rng(seed);
    LAInstance inst;
    inst.graph = random_graph(p, rng);
    inst.r = p.r;
    inst.alpha = PairWeights(p.r);
    for (Vertex v = 0; v < p.n; ++v)
        inst.lists.push_back(random_list(p.r, p.list_density, rng));

    if (p.planted) {
        Allocation hidden;
        for (Vertex v = 0; v < p.n; ++v) {
            Box b = uniform(rng, 0, p.r - 1);
            hidden.assignment.push_back(b);
            inst.lists[v].set(b);
        }
        inst.alpha = crossing_counts(inst, hidden);
        return inst;
    }
    if (p.r >= 2)
        for (long k = 0; k < p.w; ++k) {
            Box i = uniform(rng, 0, p.r - 1);
            Box j = uniform(rng, 0, p.r - 2);
            if (j >= i)
                ++j;
            inst.alpha.add(i, j, 1);
        }
    return inst;
}

MMWCInstance generate_minmax(const GenParams& p, std::uint64_t seed)
{
    check(p);
    if (p.r > p.n)
        throw std::invalid_argument("more terminals than vertices");
    Rng rng(seed);
    MMWCInstance inst;
    inst.graph = random_graph(p, rng);
    inst.ell = p.ell;
    std::vector<Vertex> order(p.n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    inst.terminals.assign(order.begin(), order.begin() + p.r);
    return inst;
}

BLDHInstance generate_bldh(const GenParams& p, std::uint64_t seed)
{
    check(p);
    Rng rng(seed);
    BLDHInstance inst;
    inst.guest = random_guest(p, rng);
    inst.host = random_host(p, rng);
    for (Vertex v = 0; v < p.n; ++v)
        inst.lists.push_back(random_list(p.h, p.list_density, rng));
    inst.ell = p.ell;
    return inst;
}

ASLDHInstance generate_asldh(const GenParams& p, std::uint64_t seed)
{
    check(p);
    Rng rng(seed);
    ASLDHInstance inst;
    inst.guest = random_guest(p, rng);
    inst.host = random_host(p, rng);
    for (Vertex v = 0; v < p.n; ++v)
        inst.lists.push_back(random_list(p.h, p.list_density, rng));
    const auto arcs = inst.host.proper_arcs();
    for (const auto& a : arcs)
        inst.alpha[a] = 0;

    if (p.planted) {
        // Images chosen vertex by vertex among hosts compatible with earlier arcs.
        HomMapping chi;
        bool ok = true;
        for (Vertex v = 0; v < p.n && ok; ++v) {
            std::vector<Vertex> fits;
            for (Vertex x = 0; x < p.h; ++x) {
                bool good = true;
                for (const auto& a : inst.guest.arcs()) {
                    if (a.tail == v && a.head < v)
                        good = good && inst.host.has_arc(x, chi.image[a.head]);
                    if (a.head == v && a.tail < v)
                        good = good && inst.host.has_arc(chi.image[a.tail], x);
                }
                if (good)
                    fits.push_back(x);
            }
            if (fits.empty()) {
                ok = false;
                break;
            }
            Vertex x = fits[uniform(rng, 0, static_cast<int>(fits.size()) - 1)];
            chi.image.push_back(x);
            inst.lists[v].set(x);
        }
        if (ok) {
            inst.alpha = arc_charges(inst.guest, inst.host, chi);
            return inst;
        }
    }
    if (!arcs.empty())
        for (long k = 0; k < p.w; ++k)
            ++inst.alpha[arcs[uniform(rng, 0, static_cast<int>(arcs.size()) - 1)]];
    return inst;
}

} // namespace listalloc
