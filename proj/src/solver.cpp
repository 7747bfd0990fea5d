#include "listalloc/solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace listalloc {

namespace {

constexpr long long_max = std::numeric_limits<long>::max();

long sat_mul(long a, long b)
{
    if (a == 0 || b == 0)
        return 0;
    if (a > long_max / b)
        return long_max;
    return a * b;
}

long sat_pow(long base, long exp)
{
    long result = 1;
    for (long i = 0; i < exp; ++i)
        result = sat_mul(result, base);
    return result;
}

long sat_add(long a, long b)
{
    return a > long_max - b ? long_max : a + b;
}

void emit(const PipelineConfig& cfg, const std::string& msg)
{
    if (cfg.trace)
        cfg.trace(msg);
}

std::string describe_set(const VertexSet& s)
{
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << (i ? "," : "") << s[i];
    out << "}";
    return out.str();
}

VertexSet set_union(const VertexSet& a, const VertexSet& b)
{
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b)
{
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Restricts inst to `vertices` (relabelled in the given order), with weights `alpha`.
LAInstance restrict_instance(const LAInstance& inst, const VertexSet& vertices,
                             const PairWeights& alpha)
{
    LAInstance out;
    out.graph = induced_subgraph(inst.graph, vertices);
    out.r = inst.r;
    out.alpha = alpha;
    for (Vertex v : vertices)
        out.lists.push_back(inst.lists[v]);
    return out;
}

// Connected instance of any shape: normalizes, solves, maps boxes back.
std::optional<Allocation> solve_connected(const LAInstance& inst, const PipelineConfig& cfg)
{
    auto norm = normalize_cla(inst);
    switch (norm.status) {
    case ClaNormalization::Status::yes:
        return norm.witness;
    case ClaNormalization::Status::no:
        return std::nullopt;
    case ClaNormalization::Status::reduced:
        break;
    }
    auto sol = solve_cla(norm.instance, cfg);
    if (!sol)
        return std::nullopt;
    for (Box& b : sol->assignment)
        b = norm.original_box[b];
    return sol;
}

} // namespace

long f1(long w)
{
    if (w == 0)
        return 1;
    return sat_mul(sat_pow(2, w), sat_pow(2 * w, 2 * w));
}

long f2(long w)
{
    return sat_add(sat_mul(w, f1(w)), 1);
}

long PipelineConfig::effective_f1(long w) const
{
    return f1_override ? *f1_override : f1(w);
}

long PipelineConfig::effective_f2(long w) const
{
    if (f2_override)
        return *f2_override;
    if (f1_override)
        return sat_add(sat_mul(w, *f1_override), 1);
    return f2(w);
}

ClaNormalization normalize_cla(const LAInstance& inst)
{
    ClaNormalization out;
    const int n = inst.graph.num_vertices();
    VertexSet all(n);
    std::iota(all.begin(), all.end(), 0);

    if (inst.w() == 0) {
        for (Box i = 0; i < inst.r; ++i)
            if (is_friendly(inst, all, i)) {
                out.status = ClaNormalization::Status::yes;
                out.witness = Allocation{std::vector<Box>(n, i)};
                return out;
            }
        out.status = ClaNormalization::Status::no;
        return out;
    }

    std::vector<Box> fresh(inst.r, -1);
    for (Box i = 0; i < inst.r; ++i)
        if (!inst.alpha.row_is_zero(i)) {
            fresh[i] = static_cast<Box>(out.original_box.size());
            out.original_box.push_back(i);
        }
    const int r = static_cast<int>(out.original_box.size());

    LAInstance& red = out.instance;
    red.graph = inst.graph;
    red.r = r;
    red.alpha = PairWeights(r);
    for (const auto& p : inst.alpha.support())
        red.alpha.set(fresh[p.i], fresh[p.j], inst.alpha.get(p.i, p.j));
    for (Vertex v = 0; v < n; ++v) {
        BoxSet l(r);
        for (Box i = 0; i < r; ++i)
            if (inst.lists[v].test(out.original_box[i]))
                l.set(i);
        if (l.none()) {
            out.status = ClaNormalization::Status::no;
            out.instance = {};
            out.original_box.clear();
            return out;
        }
        red.lists.push_back(std::move(l));
    }
    out.status = ClaNormalization::Status::reduced;
    return out;
}

std::optional<Allocation> solve_la(const LAInstance& input, const PipelineConfig& cfg)
{
    validate(input);
    for (const auto& l : input.lists)
        if (l.none())
            return std::nullopt;

    const LAInstance inst = normalize(input);
    const auto comps = components(inst.graph);
    const SubWeightSpace space(inst.alpha);
    const std::size_t ell = comps.size();
    const std::size_t k = space.size();

    // g(i, a): component i alone with weights `a`.
    std::map<std::pair<std::size_t, std::size_t>, std::optional<Allocation>> g_memo;
    auto g = [&](std::size_t i, std::size_t a) -> const std::optional<Allocation>& {
        auto key = std::make_pair(i, a);
        auto it = g_memo.find(key);
        if (it == g_memo.end()) {
            check_deadline(cfg.deadline);
            auto part = restrict_instance(inst, comps[i], space.at(a));
            it = g_memo.emplace(key, solve_connected(part, cfg)).first;
        }
        return it->second;
    };

    // P(i, a): the first i components realise `a`; choice[i][a] is the share of component i.
    constexpr std::size_t unknown = std::numeric_limits<std::size_t>::max();
    constexpr std::size_t none = unknown - 1;
    std::vector<std::vector<std::size_t>> choice(ell + 1, std::vector<std::size_t>(k, unknown));
    auto p = [&](auto&& self, std::size_t i, std::size_t a) -> bool {
        std::size_t& c = choice[i][a];
        if (c != unknown)
            return c != none;
        if (i == 0) {
            c = a == space.zero_index() ? 0 : none;
            return c != none;
        }
        c = none;
        for (std::size_t b : space.below(a)) {
            if (!self(self, i - 1, a - b))
                continue;
            if (!g(i - 1, b))
                continue;
            choice[i][a] = b;
            return true;
        }
        return false;
    };

    if (!p(p, ell, space.full_index()))
        return std::nullopt;

    Allocation alloc;
    alloc.assignment.assign(inst.graph.num_vertices(), 0);
    std::size_t a = space.full_index();
    for (std::size_t i = ell; i >= 1; --i) {
        std::size_t b = choice[i][a];
        const auto& part = *g(i - 1, b);
        for (std::size_t t = 0; t < comps[i - 1].size(); ++t)
            alloc.assignment[comps[i - 1][t]] = part.assignment[t];
        a -= b;
    }
    auto verdict = verify_allocation(input, alloc);
    if (!verdict.ok())
        throw std::logic_error("solve_la: witness fails verification: " + verdict.describe());
    return alloc;
}

std::optional<Allocation> solve_cla(const LAInstance& input, const PipelineConfig& cfg)
{
    if (!is_connected(input.graph))
        throw std::invalid_argument("solve_cla: graph must be connected");
    const long w = input.w();
    if (w < 1)
        throw std::invalid_argument("solve_cla: requires w >= 1");
    if (input.r > 2 * w)
        throw std::invalid_argument("solve_cla: requires r <= 2w");

    const LAInstance inst = normalize(input);
    const long threshold = cfg.effective_f2(w);
    if (inst.graph.num_vertices() <= threshold)
        return brute_force_la(inst, {}, cfg);

    ShrinkEngine engine(inst, cfg);
    try {
        if (!engine.run()) {
            emit(cfg, "solve_cla: shrink reported a NO-instance");
            return std::nullopt;
        }
    }
    catch (const ShrinkStalled&) {
        emit(cfg, "solve_cla: shrink stalled, brute force on the current instance");
    }
    auto sol = brute_force_la(engine.current_instance(), {}, cfg);
    if (!sol)
        return std::nullopt;
    return engine.lift(*sol);
}

// ---------------------------------------------------------------- shrink

ShrinkEngine::ShrinkEngine(const LAInstance& inst, const PipelineConfig& cfg)
    : original_(inst), graph_(inst.graph), lists_(inst.lists), cfg_(cfg)
{
    parent_.resize(inst.graph.num_vertices());
    std::iota(parent_.begin(), parent_.end(), 0);
    w_ = inst.w();
    f2_ = cfg.effective_f2(w_);
}

Vertex ShrinkEngine::find(Vertex v) const
{
    while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];
        v = parent_[v];
    }
    return v;
}

VertexSet ShrinkEngine::remap(const VertexSet& s) const
{
    VertexSet out;
    for (Vertex v : s)
        out.push_back(find(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

VertexSet ShrinkEngine::current_vertices() const
{
    VertexSet out;
    for (Vertex v = 0; v < static_cast<Vertex>(parent_.size()); ++v)
        if (find(v) == v)
            out.push_back(v);
    return out;
}

LAInstance ShrinkEngine::piece(const VertexSet& h) const
{
    LAInstance out;
    out.graph = induced_subgraph(graph_, h);
    out.r = original_.r;
    out.alpha = original_.alpha;
    for (Vertex v : h)
        out.lists.push_back(lists_[v]);
    return out;
}

LAInstance ShrinkEngine::current_instance() const
{
    return piece(current_vertices());
}

Allocation ShrinkEngine::lift(const Allocation& compact) const
{
    const VertexSet reps = current_vertices();
    Allocation out;
    out.assignment.resize(parent_.size());
    for (Vertex v = 0; v < static_cast<Vertex>(parent_.size()); ++v) {
        auto pos = std::lower_bound(reps.begin(), reps.end(), find(v)) - reps.begin();
        out.assignment[v] = compact.assignment[pos];
    }
    return out;
}

void ShrinkEngine::trace(const std::string& msg) const
{
    if (cfg_.trace)
        cfg_.trace(std::string(2 * depth_, ' ') + msg);
}

void ShrinkEngine::contract(const std::vector<Edge>& edges)
{
    LAInstance before;
    if (cfg_.on_contraction)
        before = current_instance();

    for (const auto& e : edges) {
        Vertex a = find(e.u), b = find(e.v);
        if (a == b)
            continue;
        if (b < a)
            std::swap(a, b);
        parent_[b] = a;
        lists_[a] &= lists_[b];
    }
    MultiGraph next(graph_.num_vertices());
    for (const auto& e : graph_.edges()) {
        Vertex a = find(e.u), b = find(e.v);
        if (a != b)
            next.add_edge(a, b, e.mult);
    }
    graph_ = std::move(next);
    ++rounds_;

    if (cfg_.on_contraction)
        cfg_.on_contraction(before, current_instance());
}

std::optional<VertexSet> ShrinkEngine::run()
{
    return shrink(current_vertices(), {});
}

std::optional<VertexSet> ShrinkEngine::shrink(const VertexSet& h, const VertexSet& border)
{
    check_deadline(cfg_.deadline);
    struct Depth {
        int& d;
        explicit Depth(int& x) : d(x) { ++d; }
        ~Depth() { --d; }
    } depth_guard(depth_);

    trace("shrink |H|=" + std::to_string(h.size()) + " B=" + describe_set(border));
    const MultiGraph local = induced_subgraph(graph_, h);
    const auto sep = find_good_separation(local, static_cast<int>(std::min<long>(f2_, 1L << 30)), w_);

    if (sep) {
        VertexSet side[2];
        for (Vertex v : sep->side1)
            side[0].push_back(h[v]);
        for (Vertex v : sep->side2)
            side[1].push_back(h[v]);
        const int i = set_intersection(border, side[0]).size() <= static_cast<std::size_t>(w_) ? 0 : 1;
        std::vector<char> in_i(h.size(), 0);
        for (Vertex v : i == 0 ? sep->side1 : sep->side2)
            in_i[v] = 1;
        VertexSet boundary;
        for (const auto& e : local.edges())
            if (in_i[e.u] != in_i[e.v])
                boundary.push_back(h[in_i[e.u] ? e.u : e.v]);
        std::sort(boundary.begin(), boundary.end());
        boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
        const VertexSet sub_border = set_union(set_intersection(border, side[i]), boundary);

        trace("separation cut=" + std::to_string(sep->cut_size) + " recurse into side " +
              std::to_string(i + 1) + " |V_i|=" + std::to_string(side[i].size()));
        auto shrunk = shrink(side[i], sub_border);
        if (!shrunk)
            return std::nullopt;
        VertexSet h_new = set_union(*shrunk, remap(side[1 - i]));
        if (static_cast<long>(h_new.size()) > f2_)
            return shrink(h_new, remap(border));
        max_returned_ = std::max(max_returned_, h_new.size());
        return h_new;
    }

    // Leaf: no good separation.
    std::vector<Vertex> local_border;
    for (Vertex b : border) {
        auto pos = std::lower_bound(h.begin(), h.end(), b);
        if (pos == h.end() || *pos != b)
            throw std::logic_error("shrink: border vertex outside H");
        local_border.push_back(static_cast<Vertex>(pos - h.begin()));
    }
    const LAInstance p = piece(h);
    const ShrinkData data = compute_shrink_data(p, local_border, w_, cfg_);
    trace("leaf |H|=" + std::to_string(h.size()) + " feasible=" +
          std::to_string(data.feasible.size()) + "/" + std::to_string(data.space_size) +
          " contractible=" + std::to_string(data.contractible.size()));
    if (data.feasible.empty())
        return std::nullopt;
    if (data.contractible.empty())
        throw ShrinkStalled();

    std::vector<Edge> global;
    for (const auto& e : data.contractible)
        global.push_back({h[e.u], h[e.v], e.mult});
    contract(global);
    VertexSet h_c = remap(h);
    if (static_cast<long>(h_c.size()) > f2_)
        return shrink(h_c, remap(border));
    max_returned_ = std::max(max_returned_, h_c.size());
    return h_c;
}

ShrinkData compute_shrink_data(const LAInstance& piece, const VertexSet& border, long parameter,
                               const PipelineConfig& cfg)
{
    const int r = piece.r;
    const SubWeightSpace space(piece.alpha);
    ShrinkData data;
    data.space_size = sat_mul(sat_pow(r, static_cast<long>(border.size())),
                              static_cast<long>(space.size()));

    StateBudget budget(cfg.state_cap, cfg.deadline, "compute_shrink_data");
    std::vector<Box> psi(border.size(), 0);
    std::vector<char> crossing(piece.graph.num_edges(), 0);
    const auto& edges = piece.graph.edges();

    while (true) {
        for (std::size_t a = 0; a < space.size(); ++a) {
            budget.tick();
            LAInstance element = piece;
            element.alpha = space.at(a);
            for (std::size_t t = 0; t < border.size(); ++t)
                element.lists[border[t]] = box_set(r, {psi[t]});
            auto sol = solve_hcla(element, parameter, cfg);
            if (!sol)
                continue;
            for (std::size_t k = 0; k < edges.size(); ++k)
                if (sol->assignment[edges[k].u] != sol->assignment[edges[k].v])
                    crossing[k] = 1;
            data.feasible.push_back({psi, element.alpha, std::move(*sol)});
        }
        // Odometer, first border vertex most significant.
        int t = static_cast<int>(border.size()) - 1;
        while (t >= 0 && psi[t] == r - 1)
            psi[t--] = 0;
        if (t < 0)
            break;
        ++psi[t];
    }

    for (std::size_t k = 0; k < edges.size(); ++k)
        if (!crossing[k])
            data.contractible.push_back(edges[k]);
    return data;
}

std::optional<Allocation> solve_hcla(const LAInstance& inst, long parameter,
                                     const PipelineConfig& cfg)
{
    const long n = inst.graph.num_vertices();
    const long f2_value = cfg.effective_f2(parameter);
    const long small = sat_mul(sat_mul(2, parameter), f2_value);
    if (n <= small)
        return brute_force_la(inst, {}, cfg);

    const long b = std::min(sat_mul(parameter, f2_value), n);
    const auto& family = cached_separating_family(static_cast<int>(n), static_cast<int>(parameter),
                                                  static_cast<int>(b), cfg.splitter);
    for (const auto& set : family.sets) {
        check_deadline(cfg.deadline);
        SHCLAInstance split{inst, {}};
        for (auto v = set.find_first(); v != Subset::npos; v = set.find_next(v))
            split.s_set.push_back(static_cast<Vertex>(v));
        auto sol = solve_shcla(split, parameter, cfg);
        if (sol)
            return sol;
    }
    return std::nullopt;
}

bool has_unique_dominant_box(const LAInstance& inst, const Allocation& alloc, long parameter,
                             long f2_value)
{
    const int n = inst.graph.num_vertices();
    const long bound = sat_mul(parameter, f2_value);
    std::vector<long> count(inst.r, 0);
    for (Box b : alloc.assignment)
        ++count[b];
    std::vector<Box> dominant;
    for (Box j = 0; j < inst.r; ++j)
        if (n - count[j] <= bound)
            dominant.push_back(j);
    if (dominant.size() != 1)
        return false;

    MultiGraph inside(n);
    for (const auto& e : inst.graph.edges())
        if (alloc.assignment[e.u] == alloc.assignment[e.v])
            inside.add_edge(e.u, e.v, e.mult);
    int large = 0;
    bool in_dominant = true;
    for (const auto& c : components(inside))
        if (static_cast<long>(c.size()) > f2_value) {
            ++large;
            in_dominant = in_dominant && alloc.assignment[c.front()] == dominant.front();
        }
    return large == 1 && in_dominant;
}

} // namespace listalloc
