#include "listalloc/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace listalloc {

// ------------------------------------------------------------ BoundedVectorFamily

BoundedVectorFamily::BoundedVectorFamily(std::vector<std::vector<int>> groups_of, int num_groups,
                                         long ell)
    : groups_of_(std::move(groups_of)), group_sum_(num_groups, 0),
      current_(groups_of_.size(), 0), ell_(ell)
{
    if (ell < 0)
        done_ = true;
}

bool BoundedVectorFamily::fits(std::size_t k, long value) const
{
    return std::all_of(groups_of_[k].begin(), groups_of_[k].end(),
                       [&](int g) { return group_sum_[g] + value <= ell_; });
}

bool BoundedVectorFamily::next(std::vector<long>& out)
{
    if (done_)
        return false;
    if (!started_) {
        started_ = true;
        out = current_;
        return true;
    }
    // Lexicographic successor: bump the last coordinate that can grow with
    // everything after it reset to zero.
    for (std::size_t k = current_.size(); k-- > 0;) {
        if (fits(k, 1)) {
            ++current_[k];
            for (int g : groups_of_[k])
                ++group_sum_[g];
            out = current_;
            return true;
        }
        for (int g : groups_of_[k])
            group_sum_[g] -= current_[k];
        current_[k] = 0;
    }
    done_ = true;
    return false;
}

std::size_t BoundedVectorFamily::count() const
{
    BoundedVectorFamily copy(groups_of_, static_cast<int>(group_sum_.size()), ell_);
    std::vector<long> x;
    std::size_t n = 0;
    while (copy.next(x))
        ++n;
    return n;
}

// ------------------------------------------------------------ Min-Max Multiway Cut

namespace {

std::vector<BoxPair> all_pairs(int r)
{
    std::vector<BoxPair> out;
    for (Box i = 0; i < r; ++i)
        for (Box j = i + 1; j < r; ++j)
            out.push_back({i, j});
    return out;
}

std::vector<std::vector<int>> pair_groups(const std::vector<BoxPair>& pairs)
{
    std::vector<std::vector<int>> out;
    for (const auto& p : pairs)
        out.push_back({p.i, p.j});
    return out;
}

} // namespace

MinMaxFamily::MinMaxFamily(const MMWCInstance& inst)
    : pairs_(all_pairs(inst.r())), alphas_(pair_groups(pairs_), inst.r(), inst.ell)
{
    validate(inst);
    const int r = inst.r();
    const int n = inst.graph.num_vertices();
    base_.graph = inst.graph;
    base_.r = r;
    base_.lists.assign(n, full_box_set(r));
    for (int k = 0; k < r; ++k)
        base_.lists[inst.terminals[k]] = box_set(r, {k});
    base_.alpha = PairWeights(r);
}

std::optional<LAInstance> MinMaxFamily::next()
{
    std::vector<long> x;
    if (!alphas_.next(x))
        return std::nullopt;
    LAInstance out = base_;
    for (std::size_t k = 0; k < pairs_.size(); ++k)
        out.alpha.set(pairs_[k].i, pairs_[k].j, x[k]);
    return out;
}

MinMaxFamily reduce_minmax_to_la(const MMWCInstance& inst)
{
    return MinMaxFamily(inst);
}

std::optional<Partition> solve_minmax(const MMWCInstance& inst, const PipelineConfig& cfg)
{
    MinMaxFamily family(inst);
    std::function<std::optional<LAInstance>()> next = [&] { return family.next(); };
    std::function<std::optional<Allocation>(const LAInstance&)> solve =
        [&](const LAInstance& member) { return solve_la(member, cfg); };
    auto alloc = first_success(next, solve, cfg.jobs);
    if (!alloc)
        return std::nullopt;
    Partition p{alloc->assignment};
    auto problem = check_partition(inst, p);
    if (!problem.empty())
        throw std::logic_error("solve_minmax: partition fails verification: " + problem);
    return p;
}

// ------------------------------------------------------------ BLDH families

namespace {

std::vector<std::vector<int>> hom_groups(const std::vector<Arc>& arcs, HomFamily::Rule rule)
{
    std::vector<std::vector<int>> out;
    for (const auto& a : arcs) {
        if (rule == HomFamily::Rule::total)
            out.push_back({0});
        else
            out.push_back({a.tail, a.head});
    }
    return out;
}

} // namespace

HomFamily::HomFamily(const BLDHInstance& inst, Rule rule)
    : base_(inst), arcs_(inst.host.proper_arcs()),
      alphas_(hom_groups(arcs_, rule),
              rule == Rule::total ? 1 : std::max(1, inst.host.num_vertices()), inst.ell)
{
    validate(inst);
}

std::optional<ASLDHInstance> HomFamily::next()
{
    std::vector<long> x;
    if (!alphas_.next(x))
        return std::nullopt;
    ASLDHInstance out{base_.guest, base_.host, base_.lists, {}};
    for (std::size_t k = 0; k < arcs_.size(); ++k)
        out.alpha[arcs_[k]] = x[k];
    return out;
}

HomFamily reduce_bldh_to_asldh(const BLDHInstance& inst)
{
    return HomFamily(inst, HomFamily::Rule::total);
}

HomFamily reduce_mbldh(const BLDHInstance& inst)
{
    return HomFamily(inst, HomFamily::Rule::per_vertex);
}

// ------------------------------------------------------------ sparsifier

MultiGraph underlying_multigraph(const Digraph& g)
{
    MultiGraph out(g.num_vertices());
    for (const auto& a : g.arcs())
        if (a.tail != a.head)
            out.add_edge(a.tail, a.head, 1);
    return out;
}

SparsifyResult sparsify_asldh(const ASLDHInstance& input)
{
    validate(input);
    SparsifyResult result;
    result.instance = input;
    result.vertex_map.resize(input.guest.num_vertices());
    std::iota(result.vertex_map.begin(), result.vertex_map.end(), 0);
    const int d = static_cast<int>(input.d());
    const int h = input.host.num_vertices();

    HostSet looped(h);
    for (const auto& a : input.host.loops())
        looped.set(a.tail);

    while (true) {
        ASLDHInstance& cur = result.instance;
        const MultiGraph under = underlying_multigraph(cur.guest);
        const MultiGraph core = d_edge_core(under, d + 1);
        if (core.num_edges() == 0)
            break;

        const Contraction c = contract_edges(under, core.edges());
        const int n2 = c.graph.num_vertices();
        Digraph guest(n2, false, true);
        std::vector<HostSet> lists(n2, HostSet(h).set());
        std::vector<char> swallowed(n2, 0);
        for (Vertex v = 0; v < cur.guest.num_vertices(); ++v)
            lists[c.vertex_map[v]] &= cur.lists[v];
        for (const auto& a : cur.guest.arcs()) {
            Vertex x = c.vertex_map[a.tail], y = c.vertex_map[a.head];
            if (x == y)
                swallowed[x] = 1;
            else
                guest.add_arc(x, y);
        }
        for (Vertex v = 0; v < n2; ++v) {
            if (swallowed[v])
                lists[v] &= looped;
            if (lists[v].none())
                result.resolved_no = true;
        }
        for (auto& m : result.vertex_map)
            m = c.vertex_map[m];
        cur.guest = std::move(guest);
        cur.lists = std::move(lists);
        ++result.rounds;
        if (result.resolved_no)
            break;
    }
    return result;
}

// ------------------------------------------------------------ gadget

int GadgetMap::arc_index(Vertex x, Vertex y) const
{
    auto it = std::lower_bound(host_arcs.begin(), host_arcs.end(), Arc{x, y});
    if (it == host_arcs.end() || *it != Arc{x, y})
        return -1;
    return static_cast<int>(it - host_arcs.begin());
}

std::pair<LAInstance, GadgetMap> reduce_asldh_to_la(const ASLDHInstance& inst)
{
    validate(inst);
    GadgetMap gm;
    gm.guest_vertices = inst.guest.num_vertices();
    gm.host_vertices = inst.host.num_vertices();
    gm.host_arcs = inst.host.proper_arcs();
    gm.guest_arcs = inst.guest.arcs();

    const int n = gm.guest_vertices;
    const int h = gm.host_vertices;
    const std::size_t m = gm.guest_arcs.size();
    const int r = gm.r();

    std::vector<char> looped(h, 0);
    for (const auto& a : inst.host.loops())
        looped[a.tail] = 1;

    LAInstance out;
    out.graph = MultiGraph(n + 2 * static_cast<int>(m));
    out.r = r;
    out.lists.assign(out.graph.num_vertices(), BoxSet(r));
    out.alpha = PairWeights(r);

    for (Vertex u = 0; u < n; ++u)
        for (Vertex x = 0; x < h; ++x)
            if (inst.lists[u].test(x))
                out.lists[u].set(gm.sigma(x));

    for (std::size_t t = 0; t < m; ++t) {
        const Vertex u = gm.guest_arcs[t].tail;
        const Vertex v = gm.guest_arcs[t].head;
        const Vertex f = gm.first_vertex(t);
        const Vertex l = gm.last_vertex(t);
        out.graph.add_edge(u, f);
        out.graph.add_edge(f, l);
        out.graph.add_edge(l, v);
        for (std::size_t k = 0; k < gm.host_arcs.size(); ++k) {
            const Arc& a = gm.host_arcs[k];
            if (inst.lists[u].test(a.tail) && inst.lists[v].test(a.head)) {
                out.lists[f].set(gm.sigma_first(k));
                out.lists[l].set(gm.sigma_last(k));
            }
        }
        for (Vertex x = 0; x < h; ++x)
            if (looped[x] && inst.lists[u].test(x) && inst.lists[v].test(x)) {
                out.lists[f].set(gm.sigma(x));
                out.lists[l].set(gm.sigma(x));
            }
    }

    for (std::size_t k = 0; k < gm.host_arcs.size(); ++k) {
        const Arc& a = gm.host_arcs[k];
        const long value = inst.alpha.at(a);
        out.alpha.set(gm.sigma(a.tail), gm.sigma_first(k), value);
        out.alpha.set(gm.sigma_first(k), gm.sigma_last(k), value);
        out.alpha.set(gm.sigma_last(k), gm.sigma(a.head), value);
    }
    return {std::move(out), std::move(gm)};
}

HomMapping extract_hom_from_allocation(const Allocation& alloc, const GadgetMap& gm)
{
    HomMapping chi;
    chi.image.resize(gm.guest_vertices);
    for (Vertex u = 0; u < gm.guest_vertices; ++u) {
        const Box b = alloc.assignment[u];
        if (b < 0 || b >= gm.host_vertices)
            throw std::logic_error("extract_hom_from_allocation: guest vertex in a subdivision box");
        chi.image[u] = b;
    }
    return chi;
}

Allocation embed_hom(const HomMapping& chi, const GadgetMap& gm)
{
    Allocation out;
    out.assignment.assign(gm.guest_vertices + 2 * gm.guest_arcs.size(), 0);
    for (Vertex u = 0; u < gm.guest_vertices; ++u)
        out.assignment[u] = gm.sigma(chi.image[u]);
    for (std::size_t t = 0; t < gm.guest_arcs.size(); ++t) {
        const Vertex x = chi.image[gm.guest_arcs[t].tail];
        const Vertex y = chi.image[gm.guest_arcs[t].head];
        if (x == y) {
            out.assignment[gm.first_vertex(t)] = gm.sigma(x);
            out.assignment[gm.last_vertex(t)] = gm.sigma(x);
            continue;
        }
        const int k = gm.arc_index(x, y);
        if (k < 0)
            throw std::invalid_argument("embed_hom: guest arc mapped onto a missing host arc");
        out.assignment[gm.first_vertex(t)] = gm.sigma_first(k);
        out.assignment[gm.last_vertex(t)] = gm.sigma_last(k);
    }
    return out;
}

// ------------------------------------------------------------ solving

bool prune_asldh_lists(ASLDHInstance& inst)
{
    const int h = inst.host.num_vertices();
    std::vector<std::vector<char>> usable(h, std::vector<char>(h, 0));
    for (const auto& a : inst.host.loops())
        usable[a.tail][a.tail] = 1;
    for (const auto& [a, value] : inst.alpha)
        if (value > 0)
            usable[a.tail][a.head] = 1;

    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& a : inst.guest.arcs()) {
            HostSet& lu = inst.lists[a.tail];
            HostSet& lv = inst.lists[a.head];
            for (Vertex x = 0; x < h; ++x) {
                if (!lu.test(x))
                    continue;
                bool ok = false;
                for (Vertex y = 0; y < h && !ok; ++y)
                    ok = lv.test(y) && usable[x][y];
                if (!ok) {
                    lu.reset(x);
                    changed = true;
                }
            }
            for (Vertex y = 0; y < h; ++y) {
                if (!lv.test(y))
                    continue;
                bool ok = false;
                for (Vertex x = 0; x < h && !ok; ++x)
                    ok = lu.test(x) && usable[x][y];
                if (!ok) {
                    lv.reset(y);
                    changed = true;
                }
            }
        }
    }
    for (const auto& l : inst.lists)
        if (l.none())
            return false;

    long total = 0;
    for (const auto& [a, value] : inst.alpha) {
        if (value == 0)
            continue;
        total += value;
        long carriers = 0;
        for (const auto& g : inst.guest.arcs())
            if (inst.lists[g.tail].test(a.tail) && inst.lists[g.head].test(a.head))
                ++carriers;
        if (carriers < value)
            return false;
    }
    return total <= static_cast<long>(inst.guest.arcs().size());
}

std::optional<HomMapping> solve_asldh(const ASLDHInstance& input, const PipelineConfig& cfg)
{
    validate(input);
    ASLDHInstance inst = input;
    if (!prune_asldh_lists(inst))
        return std::nullopt;
    const SparsifyResult sparse = sparsify_asldh(inst);
    if (sparse.resolved_no)
        return std::nullopt;
    const auto [la, gm] = reduce_asldh_to_la(sparse.instance);
    const auto alloc = solve_la(la, cfg);
    if (!alloc)
        return std::nullopt;
    const HomMapping small = extract_hom_from_allocation(*alloc, gm);
    HomMapping chi;
    for (Vertex v : sparse.vertex_map)
        chi.image.push_back(small.image[v]);
    auto problem = check_asldh(input, chi);
    if (!problem.empty())
        throw std::logic_error("solve_asldh: homomorphism fails verification: " + problem);
    return chi;
}

namespace {

std::optional<HomMapping> sweep(HomFamily family, const PipelineConfig& cfg)
{
    std::function<std::optional<ASLDHInstance>()> next = [&] { return family.next(); };
    std::function<std::optional<HomMapping>(const ASLDHInstance&)> solve =
        [&](const ASLDHInstance& member) { return solve_asldh(member, cfg); };
    return first_success(next, solve, cfg.jobs);
}

} // namespace

std::optional<HomMapping> solve_bldh(const BLDHInstance& inst, const PipelineConfig& cfg)
{
    auto chi = sweep(reduce_bldh_to_asldh(inst), cfg);
    if (chi) {
        auto problem = check_bldh(inst, *chi);
        if (!problem.empty())
            throw std::logic_error("solve_bldh: homomorphism fails verification: " + problem);
    }
    return chi;
}

std::optional<HomMapping> solve_mbldh(const BLDHInstance& inst, const PipelineConfig& cfg)
{
    auto chi = sweep(reduce_mbldh(inst), cfg);
    if (chi) {
        auto problem = check_mbldh(inst, *chi);
        if (!problem.empty())
            throw std::logic_error("solve_mbldh: homomorphism fails verification: " + problem);
    }
    return chi;
}

} // namespace listalloc
