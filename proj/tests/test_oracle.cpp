#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "listalloc/errors.hpp"
#include "listalloc/generate.hpp"
#include "listalloc/oracle.hpp"

using namespace listalloc;

namespace {

LAInstance triangle_instance(long alpha12)
{
    LAInstance inst;
    inst.graph = MultiGraph(3);
    inst.graph.add_edge(0, 1);
    inst.graph.add_edge(1, 2);
    inst.graph.add_edge(0, 2);
    inst.r = 2;
    inst.lists.assign(3, full_box_set(2));
    inst.alpha = PairWeights(2);
    inst.alpha.set(0, 1, alpha12);
    return inst;
}

Digraph bidirected_triangle()
{
    Digraph h(3, true);
    for (Vertex x = 0; x < 3; ++x)
        for (Vertex y = 0; y < 3; ++y)
            if (x != y)
                h.add_arc(x, y);
    return h;
}

Digraph directed_cycle()
{
    Digraph g(3, false);
    g.add_arc(0, 1);
    g.add_arc(1, 2);
    g.add_arc(2, 0);
    return g;
}

Digraph one_arc()
{
    Digraph g(2, false);
    g.add_arc(0, 1);
    return g;
}

} // namespace

TEST_CASE("oracle_la frozen values")
{
    auto yes = oracle_la(triangle_instance(2));
    REQUIRE(yes.has_value());
    CHECK(yes->assignment == std::vector<Box>{0, 0, 1});
    CHECK_FALSE(oracle_la(triangle_instance(3)).has_value());

    LAInstance single;
    single.graph = MultiGraph(2);
    single.r = 1;
    single.lists.assign(2, full_box_set(1));
    single.alpha = PairWeights(1);
    CHECK(oracle_la(single)->assignment == std::vector<Box>{0, 0});
}

TEST_CASE("oracle_la respects its cap")
{
    GenParams p;
    p.n = 8;
    p.r = 3;
    auto inst = generate_la(p, 1);
    CHECK_THROWS_AS(oracle_la(inst, 1000), CapExceeded);
    CHECK_NOTHROW(oracle_la(inst, 6561));
}

TEST_CASE("oracle_minmax frozen values")
{
    MMWCInstance path;
    path.graph = MultiGraph(3);
    path.graph.add_edge(0, 1);
    path.graph.add_edge(1, 2);
    path.terminals = {0, 2};
    path.ell = 1;
    auto p = oracle_minmax(path);
    REQUIRE(p.has_value());
    CHECK(p->part_of == std::vector<int>{0, 0, 1});

    MMWCInstance edge;
    edge.graph = MultiGraph(2);
    edge.graph.add_edge(0, 1);
    edge.terminals = {0, 1};
    CHECK_FALSE(oracle_minmax(edge).has_value());

    MMWCInstance apart;
    apart.graph = MultiGraph(4);
    apart.graph.add_edge(0, 1);
    apart.graph.add_edge(2, 3);
    apart.terminals = {1, 2};
    auto q = oracle_minmax(apart);
    REQUIRE(q.has_value());
    CHECK(q->part_of == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("oracle_bldh frozen values")
{
    BLDHInstance loop;
    loop.guest = one_arc();
    loop.host = Digraph(1, true);
    loop.host.add_arc(0, 0);
    loop.lists.assign(2, HostSet(1).set());
    CHECK(oracle_bldh(loop)->image == std::vector<Vertex>{0, 0});

    BLDHInstance cycle;
    cycle.guest = directed_cycle();
    cycle.host = bidirected_triangle();
    cycle.lists.assign(3, HostSet(3).set());
    cycle.ell = 2;
    CHECK_FALSE(oracle_bldh(cycle).has_value());
    cycle.ell = 3;
    CHECK(oracle_bldh(cycle)->image == std::vector<Vertex>{0, 1, 2});

    BLDHInstance reversed;
    reversed.guest = one_arc();
    reversed.host = Digraph(2, true);
    reversed.host.add_arc(0, 1);
    reversed.lists = {HostSet(2, 0b10), HostSet(2, 0b01)};
    reversed.ell = 1;
    CHECK_FALSE(oracle_bldh(reversed).has_value());
}

TEST_CASE("oracle_asldh frozen values")
{
    ASLDHInstance inst;
    inst.guest = one_arc();
    inst.host = Digraph(2, true);
    inst.host.add_arc(0, 1);
    inst.lists.assign(2, HostSet(2).set());
    inst.alpha[{0, 1}] = 1;
    CHECK(oracle_asldh(inst)->image == std::vector<Vertex>{0, 1});
    inst.alpha[{0, 1}] = 0;
    CHECK_FALSE(oracle_asldh(inst).has_value());

    ASLDHInstance cycle;
    cycle.guest = directed_cycle();
    cycle.host = bidirected_triangle();
    cycle.lists.assign(3, HostSet(3).set());
    for (const auto& a : cycle.host.proper_arcs())
        cycle.alpha[a] = 0;
    cycle.alpha[{0, 1}] = cycle.alpha[{1, 2}] = cycle.alpha[{2, 0}] = 1;
    auto chi = oracle_asldh(cycle);
    REQUIRE(chi.has_value());
    CHECK(chi->image == std::vector<Vertex>{0, 1, 2});
    CHECK(check_asldh(cycle, *chi).empty());
}

TEST_CASE("oracle_mbldh bounds each host vertex")
{
    BLDHInstance cycle;
    cycle.guest = directed_cycle();
    cycle.host = bidirected_triangle();
    cycle.lists.assign(3, HostSet(3).set());
    cycle.ell = 1;
    CHECK_FALSE(oracle_mbldh(cycle).has_value());
    cycle.ell = 2;
    auto chi = oracle_mbldh(cycle);
    REQUIRE(chi.has_value());
    CHECK(check_mbldh(cycle, *chi).empty());
}

TEST_CASE("oracle witnesses pass their verifiers and are deterministic")
{
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        GenParams p;
        p.n = 3 + seed % 5;
        p.r = 2 + seed % 2;
        p.h = 1 + seed % 3;
        p.planted = seed % 2 == 0;
        auto la = generate_la(p, seed);
        if (auto a = oracle_la(la)) {
            CHECK(verify_allocation(la, *a).ok());
            CHECK(oracle_la(la) == a);
        }
        auto mm = generate_minmax(p, seed);
        if (auto part = oracle_minmax(mm))
            CHECK(check_partition(mm, *part).empty());
        auto b = generate_bldh(p, seed);
        if (auto chi = oracle_bldh(b))
            CHECK(check_bldh(b, *chi).empty());
        auto as = generate_asldh(p, seed);
        if (auto chi = oracle_asldh(as))
            CHECK(check_asldh(as, *chi).empty());
    }
}
