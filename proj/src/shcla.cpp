#include "listalloc/solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace listalloc {

namespace {

long saturating_mul(long a, long b)
{
    if (a == 0 || b == 0)
        return 0;
    if (a > std::numeric_limits<long>::max() / b)
        return std::numeric_limits<long>::max();
    return a * b;
}

// Table entry: how P_s(i, a, c) was made true.
struct Cell {
    enum : char { no = 0, inside = 1, outside = 2 };
    char how = no;
    std::size_t prev = 0; // index of alpha'' for `outside`
};

} // namespace

std::optional<Allocation> solve_shcla(const SHCLAInstance& sinst, long parameter,
                                      const PipelineConfig& cfg)
{
    const LAInstance& inst = sinst.base;
    const VertexSet& s_set = sinst.s_set;
    const int n = inst.graph.num_vertices();
    const int r = inst.r;

    std::vector<char> in_s(n, 0);
    for (Vertex v : s_set)
        in_s[v] = 1;

    // Components of G - S in global ids, ordered by smallest vertex.
    VertexSet rest;
    for (Vertex v = 0; v < n; ++v)
        if (!in_s[v])
            rest.push_back(v);
    std::vector<VertexSet> comps;
    for (const auto& c : components(induced_subgraph(inst.graph, rest))) {
        VertexSet g;
        for (Vertex v : c)
            g.push_back(rest[v]);
        comps.push_back(std::move(g));
    }
    const int ell = static_cast<int>(comps.size());

    const long f2_value = cfg.effective_f2(parameter);
    const long bound = std::min<long>(saturating_mul(parameter, f2_value),
                                      static_cast<long>(rest.size()));
    const SubWeightSpace space(inst.alpha);
    const std::size_t k = space.size();
    const std::size_t width = static_cast<std::size_t>(bound) + 1;
    auto at = [&](std::size_t a, long c) { return a * width + static_cast<std::size_t>(c); };

    StateBudget budget(cfg.state_cap, cfg.deadline, "solve_shcla");

    for (Box s = 0; s < r; ++s) {
        check_deadline(cfg.deadline);
        if (!is_friendly(inst, s_set, s))
            continue;

        // Sub-instance G[S u C_i] with S pinned to s, C_i avoiding s, weights alpha''.
        std::map<std::pair<int, std::size_t>, std::optional<Allocation>> memo;
        auto sub = [&](int i, std::size_t diff) -> const std::optional<Allocation>& {
            auto key = std::make_pair(i, diff);
            auto it = memo.find(key);
            if (it != memo.end())
                return it->second;
            VertexSet order = s_set;
            order.insert(order.end(), comps[i].begin(), comps[i].end());
            LAInstance part;
            part.graph = induced_subgraph(inst.graph, order);
            part.r = r;
            part.alpha = space.at(diff);
            for (std::size_t p = 0; p < order.size(); ++p) {
                if (p < s_set.size()) {
                    part.lists.push_back(box_set(r, {s}));
                }
                else {
                    BoxSet l = inst.lists[order[p]];
                    l.reset(s);
                    part.lists.push_back(l);
                }
            }
            return memo.emplace(key, search_assignment(part, cfg)).first->second;
        };

        std::vector<std::vector<Cell>> table(ell + 1, std::vector<Cell>(k * width));
        table[0][at(space.zero_index(), 0)].how = Cell::inside;
        for (int i = 1; i <= ell; ++i) {
            const VertexSet& ci = comps[i - 1];
            const long size_i = static_cast<long>(ci.size());
            const bool friendly = is_friendly(inst, ci, s);
            const auto& prev = table[i - 1];
            auto& cur = table[i];
            for (std::size_t a = 0; a < k; ++a) {
                const auto lower = space.below(a);
                for (long c = 0; c <= bound; ++c) {
                    budget.tick();
                    if (friendly && prev[at(a, c)].how != Cell::no) {
                        cur[at(a, c)].how = Cell::inside;
                        continue;
                    }
                    if (size_i > c)
                        continue;
                    for (std::size_t b : lower) {
                        if (prev[at(b, c - size_i)].how == Cell::no)
                            continue;
                        if (!sub(i - 1, a - b))
                            continue;
                        cur[at(a, c)] = {Cell::outside, b};
                        break;
                    }
                }
            }
        }

        for (long c = 0; c <= bound; ++c) {
            if (table[ell][at(space.full_index(), c)].how == Cell::no)
                continue;
            Allocation alloc;
            alloc.assignment.assign(n, s);
            std::size_t a = space.full_index();
            long cc = c;
            for (int i = ell; i >= 1; --i) {
                const Cell& cell = table[i][at(a, cc)];
                if (cell.how == Cell::inside)
                    continue;
                const VertexSet& ci = comps[i - 1];
                const auto& part = *sub(i - 1, a - cell.prev);
                for (std::size_t p = 0; p < ci.size(); ++p)
                    alloc.assignment[ci[p]] = part.assignment[s_set.size() + p];
                a = cell.prev;
                cc -= static_cast<long>(ci.size());
            }
            if (!verify_allocation(inst, alloc).ok())
                throw std::logic_error("solve_shcla: reconstructed allocation fails verification");
            return alloc;
        }
    }
    return std::nullopt;
}

std::optional<Box> split_box(const SHCLAInstance& sinst, const Allocation& alloc, long bound)
{
    const LAInstance& inst = sinst.base;
    const int n = inst.graph.num_vertices();
    std::vector<char> in_s(n, 0);
    for (Vertex v : sinst.s_set)
        in_s[v] = 1;
    for (Box j = 0; j < inst.r; ++j) {
        long outside = 0;
        for (Vertex v = 0; v < n; ++v)
            if (alloc.assignment[v] != j)
                ++outside;
        if (outside > bound)
            continue;
        bool ok = std::all_of(sinst.s_set.begin(), sinst.s_set.end(),
                              [&](Vertex v) { return alloc.assignment[v] == j; });
        for (const auto& e : inst.graph.edges()) {
            if (!ok)
                break;
            Box bu = alloc.assignment[e.u], bv = alloc.assignment[e.v];
            if (bu == bv)
                continue;
            if ((bu == j && !in_s[e.u]) || (bv == j && !in_s[e.v]))
                ok = false;
        }
        if (ok)
            return j;
    }
    return std::nullopt;
}

} // namespace listalloc
