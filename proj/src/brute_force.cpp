#include "listalloc/solver.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace listalloc {

namespace {

using Mask = std::uint64_t;

Mask to_mask(const BoxSet& s)
{
    Mask m = 0;
    for (auto b = s.find_first(); b != BoxSet::npos; b = s.find_next(b))
        m |= Mask{1} << b;
    return m;
}

// Edge indices in breadth-first order from vertex 0 (then from each
// unvisited vertex), so consecutive decisions touch nearby vertices.
std::vector<int> bfs_edge_order(const MultiGraph& g)
{
    const int n = g.num_vertices();
    const auto& edges = g.edges();
    std::vector<std::vector<int>> incident(n);
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
        incident[edges[k].u].push_back(k);
        incident[edges[k].v].push_back(k);
    }
    std::vector<char> seen_v(n, 0), seen_e(edges.size(), 0);
    std::vector<int> order;
    for (int s = 0; s < n; ++s) {
        if (seen_v[s])
            continue;
        std::queue<int> q;
        q.push(s);
        seen_v[s] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int k : incident[v]) {
                if (!seen_e[k]) {
                    seen_e[k] = 1;
                    order.push_back(k);
                }
                int o = edges[k].u == v ? edges[k].v : edges[k].u;
                if (!seen_v[o]) {
                    seen_v[o] = 1;
                    q.push(o);
                }
            }
        }
    }
    return order;
}

class BruteForce {
public:
    BruteForce(const LAInstance& inst, const std::vector<Box>& pins, const PipelineConfig& cfg)
        : inst_(inst), budget_(cfg.state_cap, cfg.deadline, "brute_force_la")
    {
        n_ = inst.graph.num_vertices();
        r_ = inst.r;
        w_ = inst.w();
        parent_.resize(n_);
        size_.assign(n_, 1);
        std::iota(parent_.begin(), parent_.end(), 0);
        list_.resize(n_);
        for (int v = 0; v < n_; ++v) {
            list_[v] = to_mask(inst.lists[v]);
            if (!pins.empty() && pins[v] >= 0)
                list_[v] &= Mask{1} << pins[v];
        }
        partner_.assign(r_, 0);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j)
                if (i != j && inst.alpha.get(i, j) > 0)
                    partner_[i] |= Mask{1} << j;
        for (int k : bfs_edge_order(inst.graph))
            edges_.push_back(inst.graph.edges()[k]);
        suffix_.assign(edges_.size() + 1, 0);
        for (int k = static_cast<int>(edges_.size()) - 1; k >= 0; --k)
            suffix_[k] = suffix_[k + 1] + edges_[k].mult;
        need_.assign(r_, std::vector<long>(r_, 0));
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j)
                if (i != j)
                    need_[i][j] = inst.alpha.get(i, j);
    }

    std::optional<Allocation> run()
    {
        for (int v = 0; v < n_; ++v)
            if (list_[v] == 0)
                return std::nullopt;
        if (!descend(0, w_))
            return std::nullopt;
        return result_;
    }

private:
    int find(int v) const
    {
        while (parent_[v] != v)
            v = parent_[v];
        return v;
    }

    bool supported(Mask a, Mask b) const
    {
        for (Mask m = a; m; m &= m - 1) {
            int i = std::countr_zero(m);
            if (partner_[i] & b)
                return true;
        }
        return false;
    }

    bool crossing_ok(const Edge& e) const
    {
        int a = find(e.u), b = find(e.v);
        return a != b && supported(list_[a], list_[b]);
    }

    bool descend(std::size_t k, long budget)
    {
        budget_.tick();
        if (budget > suffix_[k])
            return false;
        if (k == edges_.size())
            return budget == 0 && assign();

        const Edge& e = edges_[k];
        int a = find(e.u), b = find(e.v);

        // Edge inside one class.
        if (a == b) {
            if (descend(k + 1, budget))
                return true;
        }
        else {
            Mask merged = list_[a] & list_[b];
            if (merged != 0) {
                if (size_[a] < size_[b])
                    std::swap(a, b);
                Mask saved = list_[a];
                parent_[b] = a;
                size_[a] += size_[b];
                list_[a] = merged;
                bool ok = std::all_of(crossing_.begin(), crossing_.end(),
                                      [&](const Edge& f) { return crossing_ok(f); });
                if (ok && descend(k + 1, budget))
                    return true;
                size_[a] -= size_[b];
                list_[a] = saved;
                parent_[b] = b;
            }
        }

        // Crossing edge.
        if (a != b && e.mult <= budget && supported(list_[a], list_[b])) {
            crossing_.push_back(e);
            if (descend(k + 1, budget - e.mult))
                return true;
            crossing_.pop_back();
        }
        return false;
    }

    // Places the classes of G - F into boxes so that every edge of F crosses
    // and no pair exceeds its weight. Since F carries exactly w, the counts
    // then match alpha exactly.
    bool assign()
    {
        std::vector<int> cls;
        std::vector<int> index(n_, -1);
        for (const auto& f : crossing_)
            for (int v : {f.u, f.v}) {
                int c = find(v);
                if (index[c] < 0) {
                    index[c] = static_cast<int>(cls.size());
                    cls.push_back(c);
                }
            }
        const int m = static_cast<int>(cls.size());
        std::vector<std::vector<std::pair<int, long>>> nbr(m);
        for (const auto& f : crossing_) {
            int x = index[find(f.u)], y = index[find(f.v)];
            nbr[std::max(x, y)].push_back({std::min(x, y), f.mult});
        }
        std::vector<int> box(m, -1);
        std::vector<std::vector<long>> used(r_, std::vector<long>(r_, 0));

        auto place = [&](auto&& self, int x) -> bool {
            budget_.tick();
            if (x == m)
                return true;
            for (Mask l = list_[cls[x]]; l; l &= l - 1) {
                int i = std::countr_zero(l);
                bool ok = true;
                std::size_t done = 0;
                for (; done < nbr[x].size(); ++done) {
                    auto [y, mult] = nbr[x][done];
                    int j = box[y];
                    if (i == j || used[i][j] + mult > need_[i][j]) {
                        ok = false;
                        break;
                    }
                    used[i][j] += mult;
                    used[j][i] += mult;
                }
                if (ok) {
                    box[x] = i;
                    if (self(self, x + 1))
                        return true;
                    box[x] = -1;
                }
                for (std::size_t t = 0; t < done; ++t) {
                    auto [y, mult] = nbr[x][t];
                    used[i][box[y]] -= mult;
                    used[box[y]][i] -= mult;
                }
            }
            return false;
        };
        if (!place(place, 0))
            return false;

        Allocation alloc;
        alloc.assignment.resize(n_);
        for (int v = 0; v < n_; ++v) {
            int c = find(v);
            alloc.assignment[v] =
                index[c] >= 0 ? box[index[c]] : std::countr_zero(list_[c]);
        }
        result_ = std::move(alloc);
        return true;
    }

    const LAInstance& inst_;
    StateBudget budget_;
    int n_ = 0;
    int r_ = 0;
    long w_ = 0;
    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<Mask> list_;
    std::vector<Mask> partner_;
    std::vector<Edge> edges_;
    std::vector<long> suffix_;
    std::vector<std::vector<long>> need_;
    std::vector<Edge> crossing_;
    Allocation result_;
};

} // namespace

std::optional<Allocation> brute_force_la(const LAInstance& inst, const std::vector<Box>& pins,
                                         const PipelineConfig& cfg)
{
    if (inst.r > 64)
        throw CapExceeded("brute_force_la supports at most 64 boxes");
    if (!pins.empty() && static_cast<int>(pins.size()) != inst.graph.num_vertices())
        throw std::invalid_argument("brute_force_la: pins must cover every vertex");
    BruteForce search(inst, pins, cfg);
    return search.run();
}

std::optional<Allocation> search_assignment(const LAInstance& inst, const PipelineConfig& cfg)
{
    const int n = inst.graph.num_vertices();
    const int r = inst.r;
    StateBudget budget(cfg.state_cap, cfg.deadline, "search_assignment");

    std::vector<std::vector<long>> need(r, std::vector<long>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (i != j)
                need[i][j] = inst.alpha.get(i, j);
    const long w = inst.w();

    // Edges towards lower-indexed neighbours, checked when the higher end is placed.
    std::vector<std::vector<std::pair<int, long>>> back(n);
    for (const auto& e : inst.graph.edges())
        back[e.v].push_back({e.u, e.mult});

    std::vector<int> box(n, -1);
    std::vector<std::vector<long>> used(r, std::vector<long>(r, 0));
    long crossing = 0;

    auto go = [&](auto&& self, int v) -> bool {
        budget.tick();
        if (v == n)
            return crossing == w;
        for (auto b = inst.lists[v].find_first(); b != BoxSet::npos; b = inst.lists[v].find_next(b)) {
            const int i = static_cast<int>(b);
            bool ok = true;
            std::size_t done = 0;
            for (; done < back[v].size(); ++done) {
                auto [u, mult] = back[v][done];
                int j = box[u];
                if (i == j)
                    continue;
                if (used[i][j] + mult > need[i][j]) {
                    ok = false;
                    break;
                }
                used[i][j] += mult;
                used[j][i] += mult;
                crossing += mult;
            }
            if (ok) {
                box[v] = i;
                if (self(self, v + 1))
                    return true;
                box[v] = -1;
            }
            for (std::size_t t = 0; t < done; ++t) {
                auto [u, mult] = back[v][t];
                int j = box[u];
                if (i == j)
                    continue;
                used[i][j] -= mult;
                used[j][i] -= mult;
                crossing -= mult;
            }
        }
        return false;
    };
    if (!go(go, 0))
        return std::nullopt;
    return Allocation{box};
}

} // namespace listalloc
