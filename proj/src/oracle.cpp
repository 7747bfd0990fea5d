#include "listalloc/oracle.hpp"

#include "listalloc/errors.hpp"

#include <functional>
#include <map>
#include <string>

namespace listalloc {

namespace {

void check_cap(int base, int n, std::uint64_t cap, const char* who)
{
    std::uint64_t states = 1;
    for (int i = 0; i < n; ++i) {
        if (base == 0)
            return;
        if (states > cap / static_cast<std::uint64_t>(base))
            throw CapExceeded(std::string(who) + ": " + std::to_string(base) + "^" +
                              std::to_string(n) + " exceeds the oracle cap");
        states *= static_cast<std::uint64_t>(base);
    }
    if (states > cap)
        throw CapExceeded(std::string(who) + ": state space exceeds the oracle cap");
}

// Odometer over values[0..n-1] in [0, base), vertex 0 most significant.
// `admissible(v, value)` filters per position; `accept` sees full assignments.
template <class Admissible, class Accept>
bool enumerate(int n, int base, Admissible admissible, Accept accept, std::vector<int>& values)
{
    values.assign(n, 0);
    if (n == 0)
        return accept(values);
    // position-wise first admissible value
    std::function<bool(int)> go = [&](int pos) -> bool {
        if (pos == n)
            return accept(values);
        for (int x = 0; x < base; ++x) {
            if (!admissible(pos, x))
                continue;
            values[pos] = x;
            if (go(pos + 1))
                return true;
        }
        return false;
    };
    return go(0);
}

} // namespace

std::optional<Allocation> oracle_la(const LAInstance& inst, std::uint64_t cap)
{
    const int n = inst.graph.num_vertices();
    const int r = inst.r;
    check_cap(r, n, cap, "oracle_la");

    std::vector<std::vector<long>> required(r, std::vector<long>(r, 0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (i != j)
                required[i][j] = inst.alpha.get(i, j);

    std::vector<int> values;
    auto admissible = [&](int v, int x) { return inst.lists[v].test(x); };
    auto accept = [&](const std::vector<int>& box) {
        std::vector<std::vector<long>> seen(r, std::vector<long>(r, 0));
        for (const auto& e : inst.graph.edges()) {
            if (box[e.u] == box[e.v])
                continue;
            seen[box[e.u]][box[e.v]] += e.mult;
            seen[box[e.v]][box[e.u]] += e.mult;
        }
        return seen == required;
    };
    if (!enumerate(n, r, admissible, accept, values))
        return std::nullopt;
    return Allocation{values};
}

std::optional<Partition> oracle_minmax(const MMWCInstance& inst, std::uint64_t cap)
{
    const int n = inst.graph.num_vertices();
    const int r = static_cast<int>(inst.terminals.size());
    check_cap(r, n, cap, "oracle_minmax");

    std::vector<int> pinned(n, -1);
    for (int k = 0; k < r; ++k)
        pinned[inst.terminals[k]] = k;

    std::vector<int> values;
    auto admissible = [&](int v, int x) { return pinned[v] < 0 || pinned[v] == x; };
    auto accept = [&](const std::vector<int>& part) {
        std::vector<long> out(r, 0);
        for (const auto& e : inst.graph.edges())
            if (part[e.u] != part[e.v]) {
                out[part[e.u]] += e.mult;
                out[part[e.v]] += e.mult;
            }
        for (int k = 0; k < r; ++k)
            if (out[k] > inst.ell)
                return false;
        return true;
    };
    if (!enumerate(n, r, admissible, accept, values))
        return std::nullopt;
    return Partition{values};
}

namespace {

enum class ChargeRule { total_at_most, exact_per_arc, per_vertex_at_most };

std::optional<HomMapping> oracle_hom(const Digraph& guest, const Digraph& host,
                                     const std::vector<HostSet>& lists, ChargeRule rule, long ell,
                                     const std::map<Arc, long>* alpha, std::uint64_t cap,
                                     const char* who)
{
    const int n = guest.num_vertices();
    const int h = host.num_vertices();
    check_cap(h, n, cap, who);

    std::vector<std::vector<char>> arc(h, std::vector<char>(h, 0));
    for (const auto& a : host.arcs())
        arc[a.tail][a.head] = 1;

    std::vector<int> values;
    auto admissible = [&](int v, int x) { return lists[v].test(x); };
    auto accept = [&](const std::vector<int>& img) {
        std::vector<std::vector<long>> charge(h, std::vector<long>(h, 0));
        for (const auto& a : guest.arcs()) {
            int x = img[a.tail];
            int y = img[a.head];
            if (!arc[x][y])
                return false;
            if (x != y)
                ++charge[x][y];
        }
        switch (rule) {
        case ChargeRule::total_at_most: {
            long total = 0;
            for (int x = 0; x < h; ++x)
                for (int y = 0; y < h; ++y)
                    total += charge[x][y];
            return total <= ell;
        }
        case ChargeRule::exact_per_arc:
            for (int x = 0; x < h; ++x)
                for (int y = 0; y < h; ++y) {
                    if (x == y)
                        continue;
                    long want = 0;
                    if (arc[x][y])
                        want = alpha->at(Arc{x, y});
                    if (charge[x][y] != want)
                        return false;
                }
            return true;
        case ChargeRule::per_vertex_at_most:
            for (int x = 0; x < h; ++x) {
                long incident = 0;
                for (int y = 0; y < h; ++y)
                    incident += charge[x][y] + charge[y][x];
                if (incident > ell)
                    return false;
            }
            return true;
        }
        return false;
    };
    if (!enumerate(n, h, admissible, accept, values))
        return std::nullopt;
    return HomMapping{values};
}

} // namespace

std::optional<HomMapping> oracle_bldh(const BLDHInstance& inst, std::uint64_t cap)
{
    return oracle_hom(inst.guest, inst.host, inst.lists, ChargeRule::total_at_most, inst.ell,
                      nullptr, cap, "oracle_bldh");
}

std::optional<HomMapping> oracle_asldh(const ASLDHInstance& inst, std::uint64_t cap)
{
    return oracle_hom(inst.guest, inst.host, inst.lists, ChargeRule::exact_per_arc, 0, &inst.alpha,
                      cap, "oracle_asldh");
}

std::optional<HomMapping> oracle_mbldh(const BLDHInstance& inst, std::uint64_t cap)
{
    return oracle_hom(inst.guest, inst.host, inst.lists, ChargeRule::per_vertex_at_most, inst.ell,
                      nullptr, cap, "oracle_mbldh");
}

} // namespace listalloc
