#include "listalloc/la_model.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace listalloc {

BoxSet full_box_set(int r)
{
    BoxSet s(r);
    s.set();
    return s;
}

BoxSet box_set(int r, std::initializer_list<Box> boxes)
{
    BoxSet s(r);
    for (Box b : boxes)
        s.set(b);
    return s;
}

PairWeights::PairWeights(int r) : r_(r), values_(r > 1 ? r * (r - 1) / 2 : 0, 0)
{
    if (r < 0)
        throw std::invalid_argument("negative box count");
}

std::size_t PairWeights::slot(Box i, Box j) const
{
    if (i == j || i < 0 || j < 0 || i >= r_ || j >= r_)
        throw std::invalid_argument("invalid box pair");
    if (i > j)
        std::swap(i, j);
    return static_cast<std::size_t>(i) * (2 * r_ - i - 1) / 2 + (j - i - 1);
}

long PairWeights::get(Box i, Box j) const
{
    return values_[slot(i, j)];
}

void PairWeights::set(Box i, Box j, long value)
{
    if (value < 0)
        throw std::invalid_argument("negative pair weight");
    values_[slot(i, j)] = value;
}

long PairWeights::total() const
{
    long t = 0;
    for (long v : values_)
        t += v;
    return t;
}

std::vector<BoxPair> PairWeights::support() const
{
    std::vector<BoxPair> out;
    for (Box i = 0; i < r_; ++i)
        for (Box j = i + 1; j < r_; ++j)
            if (get(i, j) > 0)
                out.push_back({i, j});
    return out;
}

bool PairWeights::row_is_zero(Box i) const
{
    return row_sum(i) == 0;
}

long PairWeights::row_sum(Box i) const
{
    long s = 0;
    for (Box j = 0; j < r_; ++j)
        if (j != i)
            s += get(i, j);
    return s;
}

void validate(const LAInstance& inst)
{
    if (inst.r < 1)
        throw std::invalid_argument("r must be positive");
    if (static_cast<int>(inst.lists.size()) != inst.graph.num_vertices())
        throw std::invalid_argument("list count differs from vertex count");
    for (const auto& l : inst.lists)
        if (static_cast<int>(l.size()) != inst.r)
            throw std::invalid_argument("list width differs from r");
    if (inst.alpha.r() != inst.r)
        throw std::invalid_argument("alpha width differs from r");
}

std::string AllocationVerdict::describe() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::valid:
        os << "valid";
        break;
    case Kind::list_violation:
        os << "list_violation(" << vertex << ")";
        break;
    case Kind::count_mismatch:
        os << "count_mismatch({" << pair.i + 1 << "," << pair.j + 1 << "}, " << found << ", "
           << required << ")";
        break;
    }
    return os.str();
}

PairWeights crossing_counts(const LAInstance& inst, const Allocation& alloc)
{
    PairWeights counts(inst.r);
    for (const auto& e : inst.graph.edges()) {
        Box a = alloc.assignment[e.u];
        Box b = alloc.assignment[e.v];
        if (a != b)
            counts.add(a, b, e.mult);
    }
    return counts;
}

AllocationVerdict verify_allocation(const LAInstance& inst, const Allocation& alloc)
{
    AllocationVerdict verdict;
    const int n = inst.graph.num_vertices();
    if (static_cast<int>(alloc.assignment.size()) != n)
        throw std::invalid_argument("allocation is not total");
    for (Vertex v = 0; v < n; ++v) {
        Box b = alloc.assignment[v];
        if (b < 0 || b >= inst.r || !inst.lists[v].test(b)) {
            verdict.kind = AllocationVerdict::Kind::list_violation;
            verdict.vertex = v;
            return verdict;
        }
    }
    const PairWeights counts = crossing_counts(inst, alloc);
    for (Box i = 0; i < inst.r; ++i)
        for (Box j = i + 1; j < inst.r; ++j)
            if (counts.get(i, j) != inst.alpha.get(i, j)) {
                verdict.kind = AllocationVerdict::Kind::count_mismatch;
                verdict.pair = {i, j};
                verdict.found = counts.get(i, j);
                verdict.required = inst.alpha.get(i, j);
                return verdict;
            }
    return verdict;
}

LAInstance normalize(const LAInstance& inst)
{
    LAInstance out = inst;
    const long cap = inst.w() + 1;
    for (const auto& e : inst.graph.edges())
        if (e.mult > cap)
            out.graph.set_multiplicity(e.u, e.v, cap);
    return out;
}

SubWeightSpace::SubWeightSpace(const PairWeights& base) : base_(base), pairs_(base.support())
{
    const std::size_t k = pairs_.size();
    radix_.resize(k);
    stride_.resize(k);
    for (std::size_t p = 0; p < k; ++p)
        radix_[p] = base.get(pairs_[p].i, pairs_[p].j) + 1;
    size_ = 1;
    for (std::size_t p = k; p-- > 0;) {
        stride_[p] = size_;
        size_ *= static_cast<std::size_t>(radix_[p]);
    }
}

long SubWeightSpace::digit(std::size_t index, std::size_t k) const
{
    return static_cast<long>((index / stride_[k]) % static_cast<std::size_t>(radix_[k]));
}

PairWeights SubWeightSpace::at(std::size_t index) const
{
    PairWeights out(base_.r());
    for (std::size_t k = 0; k < pairs_.size(); ++k)
        out.set(pairs_[k].i, pairs_[k].j, digit(index, k));
    return out;
}

std::size_t SubWeightSpace::index_of(const PairWeights& weights) const
{
    std::size_t index = 0;
    for (Box i = 0; i < base_.r(); ++i)
        for (Box j = i + 1; j < base_.r(); ++j) {
            long value = weights.get(i, j);
            if (value == 0)
                continue;
            auto it = std::lower_bound(pairs_.begin(), pairs_.end(), BoxPair{i, j});
            if (it == pairs_.end() || *it != BoxPair{i, j} || value > base_.get(i, j))
                throw std::invalid_argument("weights are not below the base");
            index += stride_[it - pairs_.begin()] * static_cast<std::size_t>(value);
        }
    return index;
}

std::vector<std::size_t> SubWeightSpace::below(std::size_t a) const
{
    std::vector<std::size_t> out{0};
    // build in mixed-radix order: most significant pair first
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        const long limit = digit(a, k);
        std::vector<std::size_t> next;
        next.reserve(out.size() * static_cast<std::size_t>(limit + 1));
        for (std::size_t prefix : out)
            for (long d = 0; d <= limit; ++d)
                next.push_back(prefix + stride_[k] * static_cast<std::size_t>(d));
        out = std::move(next);
    }
    return out;
}

bool is_friendly(const LAInstance& inst, const VertexSet& vertices, Box i)
{
    return std::all_of(vertices.begin(), vertices.end(),
                       [&](Vertex v) { return inst.lists[v].test(i); });
}

} // namespace listalloc
