#pragma once

#include "listalloc/errors.hpp"
#include "listalloc/la_model.hpp"
#include "listalloc/oracle.hpp"
#include "listalloc/splitters.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace listalloc {

/// f1(w) = 2^w * (2w)^(2w), saturating at LONG_MAX.
long f1(long w);

/// f2(w) = w * f1(w) + 1, saturating at LONG_MAX.
long f2(long w);

struct PipelineConfig {
    // Test mode: replaces the recursion thresholds. Lowering f2 makes the
    // shrink / separating-family machinery reachable on small graphs.
    std::optional<long> f1_override;
    std::optional<long> f2_override;

    std::uint64_t state_cap = 200'000'000; // per enumeration
    std::uint64_t oracle_cap = default_oracle_cap;
    SplitterOptions splitter;
    bool witness_required = true;
    int jobs = 1;
    Deadline deadline;

    std::function<void(const std::string&)> trace;

    // Called with the global instance before and after every contraction
    // performed by shrink, both relabelled compactly.
    std::function<void(const LAInstance& before, const LAInstance& after)> on_contraction;

    long effective_f1(long w) const;
    long effective_f2(long w) const;
};

/// Solves List Allocation. Returns a verified allocation or nullopt.
std::optional<Allocation> solve_la(const LAInstance& inst, const PipelineConfig& cfg = {});

struct ClaNormalization {
    enum class Status { reduced, yes, no };

    Status status = Status::no;
    LAInstance instance;            // reduced instance when status == reduced
    std::vector<Box> original_box;  // reduced box -> input box
    std::optional<Allocation> witness; // when status == yes
};

/// For a connected instance: resolves w = 0 by friendliness; otherwise drops
/// every box whose weight row is zero and reindexes the rest (so r <= 2w).
ClaNormalization normalize_cla(const LAInstance& inst);

/// Bounded brute force: enumerates crossing edge sets F of total
/// multiplicity exactly w, places the components of G - F into boxes and
/// returns the first allocation found. `pins[v] >= 0` fixes v to that box.
std::optional<Allocation> brute_force_la(const LAInstance& inst, const std::vector<Box>& pins,
                                         const PipelineConfig& cfg);

/// Depth-first search over vertex assignments in index order with
/// crossing-count pruning. Used for the pinned sub-instances of the split
/// dynamic program, where only a few vertices are free.
std::optional<Allocation> search_assignment(const LAInstance& inst, const PipelineConfig& cfg);

/// Connected instance with r <= 2w and w >= 1. Small graphs go straight to
/// brute force; larger ones are shrunk by recursive understanding first.
std::optional<Allocation> solve_cla(const LAInstance& inst, const PipelineConfig& cfg);

/// One feasible element of the border assignment space with its witness.
struct BorderElement {
    std::vector<Box> psi; // box per border vertex
    PairWeights alpha;
    Allocation witness;
};

struct ShrinkData {
    std::size_t space_size = 0; // r^|B| * |sub-weights of alpha|
    std::vector<BorderElement> feasible;
    std::vector<Edge> contractible; // edges crossing in no stored witness
};

/// Solves every border element (psi, alpha') of a highly connected piece and
/// collects the edges that are safe to contract. `border` holds local vertex
/// ids; `parameter` is the w of the enclosing instance.
ShrinkData compute_shrink_data(const LAInstance& piece, const VertexSet& border, long parameter,
                               const PipelineConfig& cfg);

/// Raised when a leaf piece has nothing to contract. This only happens when f2
/// is overridden below w*f1(w)+1; solve_cla then falls back to brute force.
class ShrinkStalled : public std::runtime_error {
public:
    ShrinkStalled() : std::runtime_error("shrink: no contractible edge at leaf") {}
};

/// The evolving global instance of the shrink recursion. Vertices keep their
/// original ids; a contracted class is represented by its smallest member.
class ShrinkEngine {
public:
    ShrinkEngine(const LAInstance& inst, const PipelineConfig& cfg);

    /// Shrinks the subgraph induced by `h` (current class representatives)
    /// with border `border`. Returns the vertex set of the shrunk subgraph,
    /// or nullopt when the instance was found to be a NO-instance.
    std::optional<VertexSet> shrink(const VertexSet& h, const VertexSet& border);

    /// Runs shrink on the whole graph with an empty border.
    std::optional<VertexSet> run();

    /// Current class representatives, sorted.
    VertexSet current_vertices() const;

    /// The current global instance, relabelled 0..k-1 by representative order.
    LAInstance current_instance() const;

    /// Maps an allocation of current_instance() back to the input instance.
    Allocation lift(const Allocation& compact) const;

    long parameter() const { return w_; }
    long threshold() const { return f2_; }
    std::size_t contraction_rounds() const { return rounds_; }
    std::size_t max_returned_size() const { return max_returned_; }

private:
    Vertex find(Vertex v) const;
    VertexSet remap(const VertexSet& s) const;
    LAInstance piece(const VertexSet& h) const;
    void contract(const std::vector<Edge>& edges);
    void trace(const std::string& msg) const;

    LAInstance original_;
    MultiGraph graph_;
    std::vector<BoxSet> lists_;
    mutable std::vector<Vertex> parent_;
    const PipelineConfig& cfg_;
    long w_ = 0;
    long f2_ = 0;
    std::size_t rounds_ = 0;
    std::size_t max_returned_ = 0;
    int depth_ = 0;
};

/// Highly connected instance: brute force when |V| <= 2*w*f2(w), otherwise a
/// sweep over a separating family, solving the split variant per set.
std::optional<Allocation> solve_hcla(const LAInstance& inst, long parameter,
                                     const PipelineConfig& cfg);

/// Split instance: the LA instance plus a vertex set S that must lie inside
/// the dominant box and contain its boundary.
struct SHCLAInstance {
    LAInstance base;
    VertexSet s_set;
};

/// Dynamic program over the components of G - S. `parameter` fixes the bound
/// parameter * f2(parameter) on the number of vertices outside the dominant box.
std::optional<Allocation> solve_shcla(const SHCLAInstance& inst, long parameter,
                                      const PipelineConfig& cfg);

/// Some box j such that the allocation has at most `bound` vertices outside
/// j and every vertex of j adjacent to another box lies in S, with S inside j.
std::optional<Box> split_box(const SHCLAInstance& inst, const Allocation& alloc, long bound);

/// True when exactly one box j leaves at most parameter*f2 vertices outside
/// it and exactly one component of G - E(alloc) has more than f2 vertices,
/// and that component lies in box j.
bool has_unique_dominant_box(const LAInstance& inst, const Allocation& alloc, long parameter,
                             long f2_value);

} // namespace listalloc
