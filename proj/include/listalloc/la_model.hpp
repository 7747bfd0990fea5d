#pragma once

#include "listalloc/multigraph.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

namespace listalloc {

/// Box index, 0-based internally. Files and the CLI use 1-based indices.
using Box = int;

/// Set of admissible boxes for one vertex.
using BoxSet = boost::dynamic_bitset<>;

BoxSet full_box_set(int r);
BoxSet box_set(int r, std::initializer_list<Box> boxes);

struct BoxPair {
    Box i = 0;
    Box j = 0;

    friend auto operator<=>(const BoxPair&, const BoxPair&) = default;
};

/// Symmetric non-negative weights on unordered pairs of distinct boxes.
/// Missing pairs weigh zero.
class PairWeights {
public:
    PairWeights() = default;
    explicit PairWeights(int r);

    int r() const { return r_; }
    long get(Box i, Box j) const;
    void set(Box i, Box j, long value);
    void add(Box i, Box j, long delta) { set(i, j, get(i, j) + delta); }

    long total() const;

    /// Pairs (i < j) with positive weight, lexicographic.
    std::vector<BoxPair> support() const;

    /// True when box i has weight zero towards every other box.
    bool row_is_zero(Box i) const;

    long row_sum(Box i) const;

    friend bool operator==(const PairWeights&, const PairWeights&) = default;

private:
    std::size_t slot(Box i, Box j) const;

    int r_ = 0;
    std::vector<long> values_;
};

/// A List Allocation instance: a multigraph, r boxes, a list of admissible
/// boxes per vertex and the exact number of crossing edges per box pair.
struct LAInstance {
    MultiGraph graph;
    int r = 1;
    std::vector<BoxSet> lists;
    PairWeights alpha;

    long w() const { return alpha.total(); }
    int num_vertices() const { return graph.num_vertices(); }

    friend bool operator==(const LAInstance&, const LAInstance&) = default;
};

/// Throws std::invalid_argument when sizes or box ranges disagree.
void validate(const LAInstance& inst);

/// Total map vertex -> box.
struct Allocation {
    std::vector<Box> assignment;

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct AllocationVerdict {
    enum class Kind { valid, list_violation, count_mismatch };

    Kind kind = Kind::valid;
    Vertex vertex = -1;
    BoxPair pair;
    long found = 0;
    long required = 0;

    bool ok() const { return kind == Kind::valid; }
    std::string describe() const;
};

/// Checks both allocation conditions. The first violation in canonical order
/// (lists by vertex, then counts by box pair) is reported.
AllocationVerdict verify_allocation(const LAInstance& inst, const Allocation& alloc);

/// Caps every multiplicity at w + 1; such an edge can never cross.
LAInstance normalize(const LAInstance& inst);

/// The set of all weight functions pointwise below a base function,
/// enumerated as a mixed-radix counter over the base support (pairs sorted
/// lexicographically, the last pair varying fastest). Elements are addressed
/// by index; for a <= b pointwise, index(b - a) == index(b) - index(a).
class SubWeightSpace {
public:
    explicit SubWeightSpace(const PairWeights& base);

    std::size_t size() const { return size_; }
    const PairWeights& base() const { return base_; }
    const std::vector<BoxPair>& pairs() const { return pairs_; }

    PairWeights at(std::size_t index) const;
    std::size_t index_of(const PairWeights& weights) const;
    std::size_t zero_index() const { return 0; }
    std::size_t full_index() const { return size_ - 1; }

    /// Digit of `index` at support position k.
    long digit(std::size_t index, std::size_t k) const;

    /// All indices b with b <= a pointwise, in increasing order.
    std::vector<std::size_t> below(std::size_t a) const;

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = PairWeights;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = PairWeights;

        iterator(const SubWeightSpace* space, std::size_t index) : space_(space), index_(index) {}
        PairWeights operator*() const { return space_->at(index_); }
        iterator& operator++()
        {
            ++index_;
            return *this;
        }
        bool operator==(const iterator& o) const { return index_ == o.index_; }

    private:
        const SubWeightSpace* space_;
        std::size_t index_;
    };

    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, size_}; }

private:
    PairWeights base_;
    std::vector<BoxPair> pairs_;
    std::vector<long> radix_;
    std::vector<std::size_t> stride_;
    std::size_t size_ = 1;
};

inline SubWeightSpace enumerate_sub_alpha(const PairWeights& alpha)
{
    return SubWeightSpace(alpha);
}

/// Box pair crossing counts of an allocation, computed edge by edge.
PairWeights crossing_counts(const LAInstance& inst, const Allocation& alloc);

/// True when every vertex of `vertices` has box i in its list.
bool is_friendly(const LAInstance& inst, const VertexSet& vertices, Box i);

} // namespace listalloc
