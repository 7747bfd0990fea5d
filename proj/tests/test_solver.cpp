#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "listalloc/errors.hpp"
#include "listalloc/generate.hpp"
#include "listalloc/oracle.hpp"
#include "listalloc/solver.hpp"
#include "support/support.hpp"

#include <climits>
#include <random>

using namespace listalloc;

namespace {

LAInstance make(const MultiGraph& g, int r, std::vector<std::tuple<Box, Box, long>> alpha)
{
    LAInstance inst;
    inst.graph = g;
    inst.r = r;
    inst.lists.assign(g.num_vertices(), full_box_set(r));
    inst.alpha = PairWeights(r);
    for (auto [i, j, v] : alpha)
        inst.alpha.set(i, j, v);
    return inst;
}

MultiGraph path(int n)
{
    MultiGraph g(n);
    for (Vertex v = 0; v + 1 < n; ++v)
        g.add_edge(v, v + 1);
    return g;
}

MultiGraph triangle()
{
    MultiGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    return g;
}

GenParams small_params(std::mt19937_64& rng, bool connected)
{
    GenParams p;
    p.n = std::uniform_int_distribution<int>(3, 8)(rng);
    p.r = std::uniform_int_distribution<int>(2, 3)(rng);
    p.max_mult = 2;
    p.connected = connected;
    p.planted = rng() % 2 == 0;
    p.w = std::uniform_int_distribution<int>(1, 3)(rng);
    p.edge_density = std::uniform_real_distribution<double>(0.1, 0.5)(rng);
    p.list_density = std::uniform_real_distribution<double>(0.5, 1.0)(rng);
    return p;
}

} // namespace

TEST_CASE("threshold functions")
{
    CHECK(f1(1) == 8);
    CHECK(f2(1) == 9);
    CHECK(f1(2) == 1024);
    CHECK(f2(2) == 2049);
    CHECK(f1(20) == LONG_MAX);
    CHECK(f2(20) == LONG_MAX);

    PipelineConfig cfg;
    CHECK(cfg.effective_f2(1) == 9);
    cfg.f1_override = 2;
    CHECK(cfg.effective_f2(3) == 7);
    cfg.f2_override = 4;
    CHECK(cfg.effective_f2(3) == 4);
}

TEST_CASE("solve_la examples")
{
    MultiGraph two(4);
    two.add_edge(0, 1);
    two.add_edge(2, 3);
    auto a = solve_la(make(two, 2, {{0, 1, 1}}));
    REQUIRE(a.has_value());
    CHECK(verify_allocation(make(two, 2, {{0, 1, 1}}), *a).ok());

    auto empty = make(triangle(), 2, {{0, 1, 2}});
    empty.lists[1].reset();
    CHECK_FALSE(solve_la(empty).has_value());

    auto single = make(MultiGraph(1), 3, {});
    single.lists[0] = box_set(3, {1});
    CHECK(solve_la(single)->assignment == std::vector<Box>{1});

    CHECK_THROWS_AS(solve_la(make(path(2), 2, {{0, 1, 1}, {0, 2, 1}})), std::invalid_argument);
}

TEST_CASE("normalize_cla examples")
{
    auto w0 = make(path(3), 4, {});
    w0.lists = {box_set(4, {2, 3}), box_set(4, {0, 2}), box_set(4, {2})};
    auto r0 = normalize_cla(w0);
    REQUIRE(r0.status == ClaNormalization::Status::yes);
    CHECK(r0.witness->assignment == std::vector<Box>{2, 2, 2});

    w0.lists[2] = box_set(4, {3});
    CHECK(normalize_cla(w0).status == ClaNormalization::Status::no);

    auto five = make(path(3), 5, {{0, 1, 2}});
    auto r1 = normalize_cla(five);
    REQUIRE(r1.status == ClaNormalization::Status::reduced);
    CHECK(r1.instance.r == 2);
    CHECK(r1.original_box == std::vector<Box>{0, 1});

    five.lists[1] = box_set(5, {3});
    CHECK(normalize_cla(five).status == ClaNormalization::Status::no);
}

TEST_CASE("brute_force_la examples")
{
    const std::vector<Box> free3(3, -1);
    auto tri = make(triangle(), 2, {{0, 1, 2}});
    auto a = brute_force_la(tri, free3, PipelineConfig{});
    REQUIRE(a.has_value());
    CHECK(verify_allocation(tri, *a).ok());

    auto w0 = make(triangle(), 2, {});
    w0.lists[0] = box_set(2, {1});
    CHECK(brute_force_la(w0, free3, PipelineConfig{})->assignment == std::vector<Box>{1, 1, 1});

    CHECK_FALSE(brute_force_la(make(triangle(), 2, {{0, 1, 4}}), free3, PipelineConfig{}));

    auto pinned = brute_force_la(tri, {1, -1, -1}, PipelineConfig{});
    REQUIRE(pinned.has_value());
    CHECK(pinned->assignment[0] == 1);
}

TEST_CASE("brute_force_la with pins agrees with the oracle")
{
    std::mt19937_64 rng(41);
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        auto p = small_params(rng, seed % 2 == 0);
        auto inst = generate_la(p, seed);
        std::vector<Box> pins(inst.num_vertices(), -1);
        auto pinned = inst;
        for (Vertex v = 0; v < inst.num_vertices(); ++v)
            if (rng() % 4 == 0) {
                pins[v] = static_cast<Box>(rng() % inst.r);
                pinned.lists[v] &= box_set(inst.r, {pins[v]});
            }
        auto got = brute_force_la(inst, pins, PipelineConfig{});
        CHECK(got.has_value() == oracle_la(pinned).has_value());
        if (got)
            CHECK(verify_allocation(pinned, *got).ok());
        auto searched = search_assignment(inst, PipelineConfig{});
        CHECK(searched.has_value() == oracle_la(inst).has_value());
    }
}

TEST_CASE("state caps abort instead of answering")
{
    PipelineConfig cfg;
    cfg.state_cap = 5;
    auto inst = make(path(8), 3, {{0, 1, 1}, {1, 2, 2}});
    CHECK_THROWS_AS(solve_la(inst, cfg), CapExceeded);

    StateBudget budget(10, Clock::now() - std::chrono::seconds(1), "test");
    CHECK_THROWS_AS(budget.tick(2000), CapExceeded);
    CHECK_THROWS_AS(check_deadline(Clock::now() - std::chrono::seconds(1)), Timeout);
}

TEST_CASE("solve_cla under a lowered threshold agrees with the oracle")
{
    std::mt19937_64 rng(97);
    int trials = 0, shrunk = 0;
    for (std::uint64_t seed = 1; trials < 600; ++seed) {
        auto p = small_params(rng, true);
        auto inst = generate_la(p, seed);
        if (inst.w() < 1 || inst.w() > 3)
            continue;
        auto norm = normalize_cla(normalize(inst));
        if (norm.status != ClaNormalization::Status::reduced)
            continue;
        ++trials;
        PipelineConfig cfg;
        cfg.f2_override = 1 + seed % 3;
        bool contracted = false;
        cfg.on_contraction = [&](const LAInstance&, const LAInstance&) { contracted = true; };
        auto got = solve_cla(norm.instance, cfg);
        auto want = oracle_la(norm.instance);
        CHECK(got.has_value() == want.has_value());
        if (got)
            CHECK(verify_allocation(norm.instance, *got).ok());
        shrunk += contracted;

        auto full = solve_la(inst, cfg);
        CHECK(full.has_value() == oracle_la(inst).has_value());
    }
    CHECK(shrunk > 100);
}

TEST_CASE("shrink returns graphs within the threshold and contracts soundly")
{
    std::mt19937_64 rng(7);
    int runs = 0;
    for (std::uint64_t seed = 1; runs < 200 && seed < 5000; ++seed) {
        auto p = small_params(rng, true);
        auto inst = generate_la(p, seed);
        if (inst.w() < 1 || inst.w() > 3)
            continue;
        auto norm = normalize_cla(normalize(inst));
        if (norm.status != ClaNormalization::Status::reduced)
            continue;
        PipelineConfig cfg;
        cfg.f2_override = 2;
        cfg.on_contraction = [&](const LAInstance& before, const LAInstance& after) {
            CHECK(after.num_vertices() < before.num_vertices());
            CHECK(oracle_la(before).has_value() == oracle_la(after).has_value());
        };
        ShrinkEngine engine(norm.instance, cfg);
        if (norm.instance.num_vertices() <= engine.threshold())
            continue;
        std::optional<VertexSet> out;
        try {
            out = engine.run();
        }
        catch (const ShrinkStalled&) {
            continue;
        }
        ++runs;
        if (!out) {
            CHECK_FALSE(oracle_la(norm.instance).has_value());
            continue;
        }
        CHECK(static_cast<long>(out->size()) <= engine.threshold());
        CHECK(static_cast<long>(engine.max_returned_size()) <= engine.threshold());
        CHECK(*out == engine.current_vertices());
        auto compact = engine.current_instance();
        auto a = oracle_la(compact);
        CHECK(a.has_value() == oracle_la(norm.instance).has_value());
        if (a)
            CHECK(verify_allocation(norm.instance, engine.lift(*a)).ok());
    }
    CHECK(runs > 50);
}

TEST_CASE("border space sizes")
{
    auto inst = make(path(4), 2, {{0, 1, 1}});
    auto empty_border = compute_shrink_data(inst, {}, 1, PipelineConfig{});
    CHECK(empty_border.space_size == 2);
    auto two = compute_shrink_data(inst, {0, 3}, 1, PipelineConfig{});
    CHECK(two.space_size == 8);
    CHECK(two.space_size <= static_cast<std::size_t>(f1(1)));
    for (const auto& el : two.feasible) {
        CHECK(el.witness.assignment[0] == el.psi[0]);
        CHECK(el.witness.assignment[3] == el.psi[1]);
    }

    // Forced crossing of multiplicity 2 fits neither alpha' = 0 nor alpha' = 1.
    MultiGraph heavy(2);
    heavy.add_edge(0, 1, 2);
    auto impossible = make(heavy, 2, {{0, 1, 1}});
    impossible.lists = {box_set(2, {0}), box_set(2, {1})};
    auto blocked = compute_shrink_data(impossible, {}, 1, PipelineConfig{});
    CHECK(blocked.feasible.empty());
}

TEST_CASE("contractible edges cross in no stored witness")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 4 + trial % 5;
        auto g = support::random_connected_graph(n, 0.3, 1, rng);
        auto inst = make(g, 2, {{0, 1, 1}});
        VertexSet border;
        if (trial % 2)
            border = {0, static_cast<Vertex>(n - 1)};
        auto data = compute_shrink_data(inst, border, 1, PipelineConfig{});
        for (const auto& e : data.contractible) {
            CHECK(g.multiplicity(e.u, e.v) == e.mult);
            for (const auto& el : data.feasible)
                CHECK(el.witness.assignment[e.u] == el.witness.assignment[e.v]);
        }
    }
}

TEST_CASE("solve_hcla through the separating family")
{
    PipelineConfig cfg;
    cfg.f2_override = 1;
    auto inst = make(path(3), 2, {{0, 1, 1}});
    auto a = solve_hcla(inst, 1, cfg);
    REQUIRE(a.has_value());
    CHECK(verify_allocation(inst, *a).ok());
    CHECK(has_unique_dominant_box(inst, *a, 1, 1));

    auto no = make(path(3), 2, {{0, 1, 3}});
    CHECK_FALSE(solve_hcla(no, 1, cfg).has_value());
}

TEST_CASE("solve_shcla examples")
{
    PipelineConfig cfg;
    cfg.f2_override = 1;
    SHCLAInstance inst{make(path(3), 2, {{0, 1, 1}}), {1}};
    auto a = solve_shcla(inst, 1, cfg);
    REQUIRE(a.has_value());
    CHECK(verify_allocation(inst.base, *a).ok());
    auto j = split_box(inst, *a, 1);
    REQUIRE(j.has_value());
    CHECK(a->assignment[1] == *j);
    CHECK((a->assignment[0] == a->assignment[1]) != (a->assignment[2] == a->assignment[1]));

    SHCLAInstance whole{make(path(3), 2, {}), {0, 1, 2}};
    whole.base.lists[0] = box_set(2, {1});
    CHECK(solve_shcla(whole, 1, cfg)->assignment == std::vector<Box>{1, 1, 1});
    whole.base.alpha.set(0, 1, 1);
    CHECK_FALSE(solve_shcla(whole, 1, cfg).has_value());
}

TEST_CASE("split dynamic program matches enumeration")
{
    std::mt19937_64 rng(13);
    int yes = 0;
    for (std::uint64_t seed = 1; seed <= 400; ++seed) {
        auto p = small_params(rng, seed % 3 != 0);
        p.n = std::min(p.n, 7);
        SHCLAInstance inst{generate_la(p, seed), {}};
        if (inst.base.w() > 3)
            continue;
        for (Vertex v = 0; v < p.n; ++v)
            if (rng() % 3 == 0)
                inst.s_set.push_back(v);
        PipelineConfig cfg;
        cfg.f2_override = 1 + seed % 3;
        const long parameter = std::max(1L, inst.base.w());
        const long bound = parameter * *cfg.f2_override;
        auto got = solve_shcla(inst, parameter, cfg);
        CHECK(got.has_value() == support::exhaustive_shcla(inst.base, inst.s_set, bound));
        if (got) {
            ++yes;
            CHECK(verify_allocation(inst.base, *got).ok());
            auto j = split_box(inst, *got, bound);
            REQUIRE(j.has_value());
            // Components of G - S are never split.
            MultiGraph rest(p.n);
            std::vector<char> in_s(p.n, 0);
            for (Vertex v : inst.s_set)
                in_s[v] = 1;
            for (const auto& e : inst.base.graph.edges())
                if (!in_s[e.u] && !in_s[e.v])
                    rest.add_edge(e.u, e.v, e.mult);
            for (const auto& c : components(rest)) {
                if (in_s[c.front()])
                    continue;
                const bool inside = got->assignment[c.front()] == *j;
                for (Vertex v : c)
                    CHECK((got->assignment[v] == *j) == inside);
            }
        }
    }
    CHECK(yes > 30);
}

TEST_CASE("trace reports shrink activity")
{
    std::vector<std::string> lines;
    PipelineConfig cfg;
    cfg.f2_override = 2;
    cfg.trace = [&](const std::string& s) { lines.push_back(s); };
    MultiGraph g = path(8);
    g.add_edge(0, 7);
    auto inst = make(g, 2, {{0, 1, 2}});
    auto a = solve_cla(inst, cfg);
    REQUIRE(a.has_value());
    CHECK(verify_allocation(inst, *a).ok());
    CHECK_FALSE(lines.empty());
}

TEST_CASE("results do not depend on the number of jobs")
{
    std::mt19937_64 rng(17);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto p = small_params(rng, false);
        auto inst = generate_la(p, seed);
        PipelineConfig one, four;
        four.jobs = 4;
        CHECK(solve_la(inst, one) == solve_la(inst, four));
    }
}
