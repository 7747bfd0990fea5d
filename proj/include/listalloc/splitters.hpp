#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <vector>

namespace listalloc {

enum class SplitterMode { exhaustive_verified, randomized };

struct SplitterOptions {
    SplitterMode mode = SplitterMode::exhaustive_verified;
    std::uint64_t seed = 0;
    double failure_bound = 1e-9; // target for randomized mode
    double c = 1.0;              // size multiplier for randomized mode
    std::uint64_t pair_cap = 50'000'000; // C(n,a)*C(n,b) limit for exhaustive mode
};

using Subset = boost::dynamic_bitset<>;

/// A family F of subsets of {0..n-1} such that for all disjoint A, B with
/// |A| <= a and |B| <= b some S in F has A inside S and B outside S.
struct SeparatingFamily {
    int n = 0;
    int a = 0;
    int b = 0;
    SplitterMode mode = SplitterMode::exhaustive_verified;
    std::uint64_t seed = 0;
    double failure_bound = 0.0; // 0 when certified
    std::vector<Subset> sets;
};

/// Exhaustive mode runs a greedy set cover over the eligible (A, B) pairs and
/// certifies coverage before returning; it requires n <= 64 and
/// C(n,a)*C(n,b) <= pair_cap, otherwise CapExceeded is thrown. Randomized
/// mode draws independent subsets and records the union-bound failure
/// probability of the drawn size.
SeparatingFamily build_separating_family(int n, int a, int b, const SplitterOptions& options);

/// Same as build_separating_family but memoized per (n, a, b, options); safe
/// to call from several threads.
const SeparatingFamily& cached_separating_family(int n, int a, int b,
                                                 const SplitterOptions& options);

/// Direct check of the coverage property over every eligible pair.
bool covers_all_pairs(const SeparatingFamily& family);

} // namespace listalloc
