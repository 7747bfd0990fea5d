#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "listalloc/errors.hpp"
#include "listalloc/generate.hpp"
#include "listalloc/io.hpp"

#include <sstream>

using namespace listalloc;

TEST_CASE("LA instances round-trip")
{
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        GenParams p;
        p.n = static_cast<int>(seed % 9);
        p.r = 1 + seed % 4;
        p.planted = seed % 2 == 0;
        auto inst = generate_la(p, seed);
        const auto text = serialize(inst);
        CHECK(parse_la(text) == inst);
        CHECK(serialize(parse_la(text)) == text);
    }
}

TEST_CASE("LA format details")
{
    auto inst = parse_la(R"({"n":3,"edges":[[0,1,2],[1,2]],"r":2,"lists":{"0":[2]},"alpha":[[2,1,1]]})");
    CHECK(inst.graph.multiplicity(0, 1) == 2);
    CHECK(inst.graph.multiplicity(1, 2) == 1);
    CHECK(inst.lists[0] == box_set(2, {1}));
    CHECK(inst.lists[1] == full_box_set(2));
    CHECK(inst.alpha.get(0, 1) == 1);
    CHECK(serialize(Allocation{{0, 1, 1}}) == "{\"kind\":\"allocation\",\"assignment\":[1,2,2]}\n");
    CHECK(parse_allocation("{\"kind\":\"allocation\",\"assignment\":[2,1]}").assignment ==
          std::vector<Box>{1, 0});
}

TEST_CASE("other instances and witnesses round-trip")
{
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        GenParams p;
        p.n = 2 + seed % 6;
        p.r = 2;
        p.h = 1 + seed % 3;
        p.planted = seed % 2 == 0;
        auto mm = generate_minmax(p, seed);
        CHECK(parse_minmax(serialize(mm)) == mm);
        auto b = generate_bldh(p, seed);
        CHECK(parse_bldh(serialize(b)) == b);
        auto a = generate_asldh(p, seed);
        CHECK(parse_asldh(serialize(a)) == a);
    }
    Partition part{{0, 1, 1, 0}};
    CHECK(parse_partition(serialize(part)) == part);
    HomMapping chi{{2, 0, 1}};
    CHECK(parse_hom(serialize(chi)) == chi);
}

TEST_CASE("DIMACS")
{
    std::istringstream in("c comment\np edge 3 2\ne 1 2\ne 2 3 4\n");
    auto g = parse_dimacs(in);
    CHECK(g.num_vertices() == 3);
    CHECK(g.multiplicity(0, 1) == 1);
    CHECK(g.multiplicity(1, 2) == 4);
    std::istringstream again(serialize_dimacs(g));
    CHECK(parse_dimacs(again) == g);
}

TEST_CASE("malformed input raises FormatError")
{
    const char* bad_la[] = {
        "",
        "not json",
        "[]",
        R"({"n":2,"edges":[[0,0,1]],"r":1})",
        R"({"n":2,"edges":[[0,5]],"r":1})",
        R"({"n":2,"edges":[[0,1,0]],"r":1})",
        R"({"n":2,"edges":[],"r":0})",
        R"({"n":2,"edges":[],"r":2,"lists":{"0":[3]}})",
        R"({"n":2,"edges":[],"r":2,"lists":{"7":[1]}})",
        R"({"n":2,"edges":[],"r":2,"alpha":[[1,1,1]]})",
        R"({"n":2,"edges":[],"r":2,"alpha":[[1,2,-1]]})",
        R"({"n":-1,"edges":[],"r":2})",
        R"({"n":"2","edges":[],"r":2})",
    };
    for (const char* text : bad_la)
        CHECK_THROWS_AS(parse_la(text), FormatError);

    CHECK_THROWS_AS(parse_minmax(R"({"n":2,"edges":[],"terminals":[0,0],"ell":0})"), FormatError);
    CHECK_THROWS_AS(parse_bldh(R"({"n":1,"guest_arcs":[[0,0]],"host":{"vertices":1,"arcs":[],"loops":[0]},"lists":{},"ell":0})"),
                    FormatError);
    CHECK_THROWS_AS(parse_asldh(R"({"n":1,"guest_arcs":[],"host":{"vertices":2,"arcs":[[0,1]],"loops":[]},"lists":{},"alpha_arcs":[[1,0,1]]})"),
                    FormatError);
    CHECK_THROWS_AS(parse_allocation(R"({"kind":"allocation","assignment":[0]})"), FormatError);
    CHECK_THROWS_AS(parse_hom(R"({"kind":"partition","parts":[1]})"), FormatError);

    const char* bad_dimacs[] = {"e 1 2\n", "p edge 2 1\ne 1 3\n", "p edge 2 1\ne 1 1\n", "p edge x\n",
                                "p edge 2 2\ne 1 2\n"};
    for (const char* text : bad_dimacs) {
        std::istringstream in(text);
        CHECK_THROWS_AS(parse_dimacs(in), FormatError);
    }
    CHECK_THROWS_AS(read_file("/nonexistent/file.json"), FormatError);
}
