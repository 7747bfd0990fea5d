#pragma once

#include "listalloc/la_model.hpp"
#include "listalloc/problems.hpp"
#include "listalloc/solver.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace listalloc {

/// Lazily enumerates integer vectors x >= 0 in lexicographic order (first
/// coordinate most significant) such that, for every group, the sum of the
/// coordinates in that group is at most `ell`. The zero vector comes first.
class BoundedVectorFamily {
public:
    /// groups_of[k] lists the groups coordinate k belongs to.
    BoundedVectorFamily(std::vector<std::vector<int>> groups_of, int num_groups, long ell);

    /// Writes the next member into `out`; false once exhausted.
    bool next(std::vector<long>& out);

    /// Number of members (enumerates a fresh copy).
    std::size_t count() const;

private:
    bool fits(std::size_t k, long value) const;

    std::vector<std::vector<int>> groups_of_;
    std::vector<long> group_sum_;
    std::vector<long> current_;
    long ell_ = 0;
    bool started_ = false;
    bool done_ = false;
};

// ------------------------------------------------------------ Min-Max Multiway Cut

/// The LA instances of a Min-Max Multiway Cut instance: terminal k is fixed
/// to box k, every other vertex may go anywhere, and the weights range over
/// all functions whose box row sums are at most ell.
class MinMaxFamily {
public:
    explicit MinMaxFamily(const MMWCInstance& inst);
    std::optional<LAInstance> next();

private:
    LAInstance base_;
    std::vector<BoxPair> pairs_;
    BoundedVectorFamily alphas_;
};

MinMaxFamily reduce_minmax_to_la(const MMWCInstance& inst);

std::optional<Partition> solve_minmax(const MMWCInstance& inst, const PipelineConfig& cfg = {});

// ------------------------------------------------------------ homomorphisms

/// ASLDH members of a BLDH instance, either with total charge at most ell
/// (bounded) or with charge at most ell around every host vertex (max).
class HomFamily {
public:
    enum class Rule { total, per_vertex };

    HomFamily(const BLDHInstance& inst, Rule rule);
    std::optional<ASLDHInstance> next();

private:
    BLDHInstance base_;
    std::vector<Arc> arcs_;
    BoundedVectorFamily alphas_;
};

HomFamily reduce_bldh_to_asldh(const BLDHInstance& inst);
HomFamily reduce_mbldh(const BLDHInstance& inst);

/// Underlying undirected multigraph: antiparallel arcs add up.
MultiGraph underlying_multigraph(const Digraph& g);

struct SparsifyResult {
    bool resolved_no = false;
    ASLDHInstance instance;
    std::vector<Vertex> vertex_map; // input guest vertex -> output guest vertex
    int rounds = 0;                 // core contractions performed
};

/// Contracts every component of the (d+1)-edge-connected core of the guest,
/// repeating until the core is empty. Lists of a contracted class are
/// intersected, and restricted to looped host vertices when the class
/// swallowed a guest arc.
SparsifyResult sparsify_asldh(const ASLDHInstance& inst);

/// Box numbering of the double-subdivided host: host vertex x is box x, the
/// k-th non-loop arc's subdivision vertices are boxes h+2k and h+2k+1.
/// Guest vertex u keeps id u; the t-th guest arc gets gadget vertices n+t
/// (first) and n+m+t (last).
struct GadgetMap {
    int guest_vertices = 0;
    int host_vertices = 0;
    std::vector<Arc> host_arcs;  // non-loop host arcs, sorted
    std::vector<Arc> guest_arcs; // in guest order

    int r() const { return host_vertices + 2 * static_cast<int>(host_arcs.size()); }
    Box sigma(Vertex x) const { return x; }
    Box sigma_first(std::size_t k) const { return host_vertices + 2 * static_cast<int>(k); }
    Box sigma_last(std::size_t k) const { return host_vertices + 2 * static_cast<int>(k) + 1; }
    Vertex first_vertex(std::size_t t) const { return guest_vertices + static_cast<int>(t); }
    Vertex last_vertex(std::size_t t) const
    {
        return guest_vertices + static_cast<int>(guest_arcs.size() + t);
    }
    /// Index of a non-loop host arc, or -1.
    int arc_index(Vertex x, Vertex y) const;
};

std::pair<LAInstance, GadgetMap> reduce_asldh_to_la(const ASLDHInstance& inst);

/// chi(u) = the host vertex whose box holds u.
HomMapping extract_hom_from_allocation(const Allocation& alloc, const GadgetMap& gm);

/// The allocation of the gadget instance induced by a homomorphism.
Allocation embed_hom(const HomMapping& chi, const GadgetMap& gm);

/// Drops host vertices from lists that cannot be used by any solution: a
/// guest arc needs a loop or a positively charged arc between the lists of
/// its ends. Returns false when some list becomes empty or some charged arc
/// has no guest arc able to carry it.
bool prune_asldh_lists(ASLDHInstance& inst);

std::optional<HomMapping> solve_asldh(const ASLDHInstance& inst, const PipelineConfig& cfg = {});
std::optional<HomMapping> solve_bldh(const BLDHInstance& inst, const PipelineConfig& cfg = {});
std::optional<HomMapping> solve_mbldh(const BLDHInstance& inst, const PipelineConfig& cfg = {});

/// Solves family members (produced by `next`) with up to `jobs` threads and
/// returns the result of the first successful member in family order. An
/// exception from a member is rethrown only if no earlier member succeeded.
template <class Member, class Result>
std::optional<Result> first_success(const std::function<std::optional<Member>()>& next,
                                    const std::function<std::optional<Result>(const Member&)>& solve,
                                    int jobs);

} // namespace listalloc

#include "listalloc/detail/first_success.hpp"
