#include "listalloc/splitters.hpp"

#include "listalloc/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <random>
#include <stdexcept>
#include <tuple>

namespace listalloc {

namespace {

using Mask = std::uint64_t;

std::uint64_t binomial_saturating(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (result > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(result);
}

// Calls f(mask) for every subset of `pool` (a mask) of exactly k elements.
template <class F>
void for_each_k_subset(Mask pool, int k, F&& f)
{
    std::vector<int> elems;
    for (int v = 0; v < 64; ++v)
        if (pool >> v & 1)
            elems.push_back(v);
    const int m = static_cast<int>(elems.size());
    if (k > m)
        return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        Mask s = 0;
        for (int i : idx)
            s |= Mask{1} << elems[i];
        f(s);
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i)
            --i;
        if (i < 0)
            return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

Mask full_mask(int n)
{
    return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

// Sorted-vector lexicographic order on subsets given as masks.
bool lex_less(Mask x, Mask y)
{
    if (x == y)
        return false;
    int p = std::countr_zero(x ^ y);
    Mask with = (x >> p & 1) ? x : y;
    Mask without = with == x ? y : x;
    bool without_continues = p + 1 < 64 && (without >> (p + 1)) != 0;
    bool with_smaller = without_continues;
    return with_smaller ? with == x : without == x;
}

Subset to_subset(Mask m, int n)
{
    Subset s(n);
    for (int v = 0; v < n; ++v)
        if (m >> v & 1)
            s.set(v);
    return s;
}

bool covers(const Subset& s, Mask a, Mask b)
{
    for (int v = 0; v < static_cast<int>(s.size()); ++v) {
        bool in = s.test(v);
        if ((a >> v & 1) && !in)
            return false;
        if ((b >> v & 1) && in)
            return false;
    }
    return true;
}

SeparatingFamily build_exhaustive(int n, int a, int b, const SplitterOptions& options)
{
    if (n > 64)
        throw CapExceeded("exhaustive separating family supports universes of at most 64 elements");
    const int aa = std::min(a, n);
    const int bb = std::min(b, n);
    const std::uint64_t c1 = binomial_saturating(n, aa);
    const std::uint64_t c2 = binomial_saturating(n, bb);
    if (c2 != 0 && c1 > options.pair_cap / c2)
        throw CapExceeded("exhaustive separating family: pair count exceeds the configured cap");

    const Mask all = full_mask(n);

    // Pairs that dominate every eligible pair.
    std::vector<std::pair<Mask, Mask>> pairs;
    if (aa + bb <= n) {
        for_each_k_subset(all, aa, [&](Mask A) {
            for_each_k_subset(all & ~A, bb, [&](Mask B) { pairs.emplace_back(A, B); });
        });
    }
    else {
        for (int k = std::max(0, n - bb); k <= aa; ++k)
            for_each_k_subset(all, k, [&](Mask A) { pairs.emplace_back(A, all & ~A); });
    }

    std::vector<Mask> candidates;
    if (n <= 12) {
        for (Mask s = 0; s <= all; ++s)
            candidates.push_back(s);
    }
    else {
        for (const auto& [A, B] : pairs)
            candidates.push_back(A);
        std::mt19937_64 rng(options.seed);
        std::bernoulli_distribution coin(aa + bb == 0 ? 0.5 : double(aa) / double(aa + bb));
        for (int i = 0; i < 2048; ++i) {
            Mask s = 0;
            for (int v = 0; v < n; ++v)
                if (coin(rng))
                    s |= Mask{1} << v;
            candidates.push_back(s);
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    }

    std::vector<char> covered(pairs.size(), 0);
    std::size_t remaining = pairs.size();
    auto gain = [&](Mask s) {
        std::size_t g = 0;
        for (std::size_t p = 0; p < pairs.size(); ++p)
            if (!covered[p] && (pairs[p].first & ~s) == 0 && (pairs[p].second & s) == 0)
                ++g;
        return g;
    };

    // Lazy greedy: stored gains only ever overestimate.
    struct Entry {
        std::size_t gain;
        Mask set;
    };
    auto worse = [](const Entry& x, const Entry& y) {
        if (x.gain != y.gain)
            return x.gain < y.gain;
        return lex_less(y.set, x.set);
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
    for (Mask s : candidates)
        heap.push({gain(s), s});

    SeparatingFamily family;
    family.n = n;
    family.a = a;
    family.b = b;
    family.mode = SplitterMode::exhaustive_verified;
    family.seed = options.seed;
    while (remaining > 0) {
        Entry top = heap.top();
        heap.pop();
        std::size_t fresh = gain(top.set);
        if (fresh != top.gain) {
            heap.push({fresh, top.set});
            continue;
        }
        if (fresh == 0)
            throw std::logic_error("separating family: greedy cover stalled");
        for (std::size_t p = 0; p < pairs.size(); ++p)
            if (!covered[p] && (pairs[p].first & ~top.set) == 0 && (pairs[p].second & top.set) == 0) {
                covered[p] = 1;
                --remaining;
            }
        family.sets.push_back(to_subset(top.set, n));
    }
    if (family.sets.empty())
        family.sets.push_back(Subset(n));

    if (!covers_all_pairs(family))
        throw std::logic_error("separating family failed certification");
    return family;
}

SeparatingFamily build_randomized(int n, int a, int b, const SplitterOptions& options)
{
    const int aa = std::min(a, n);
    const int bb = std::min(b, n);
    SeparatingFamily family;
    family.n = n;
    family.a = a;
    family.b = b;
    family.mode = SplitterMode::randomized;
    family.seed = options.seed;

    const double p = aa + bb == 0 ? 0.0 : double(aa) / double(aa + bb);
    const double pair_success = std::pow(p, aa) * std::pow(1.0 - p, bb);
    const long double log_pairs = std::log(static_cast<long double>(binomial_saturating(n, aa))) +
                                  std::log(static_cast<long double>(binomial_saturating(n, bb)));
    const double choose_ab = static_cast<double>(binomial_saturating(aa + bb, aa));

    double size = std::ceil(options.c * choose_ab * static_cast<double>(log_pairs) + 1.0);
    if (pair_success > 0.0 && pair_success < 1.0) {
        double needed = (static_cast<double>(log_pairs) - std::log(options.failure_bound)) /
                        -std::log1p(-pair_success);
        size = std::max(size, std::ceil(needed));
    }
    const auto count = static_cast<std::size_t>(std::max(1.0, size));

    std::mt19937_64 rng(options.seed);
    std::bernoulli_distribution coin(p);
    for (std::size_t i = 0; i < count; ++i) {
        Subset s(n);
        for (int v = 0; v < n; ++v)
            if (coin(rng))
                s.set(v);
        family.sets.push_back(std::move(s));
    }

    if (pair_success >= 1.0)
        family.failure_bound = 0.0;
    else
        family.failure_bound = std::min(
            1.0, static_cast<double>(std::exp(log_pairs + static_cast<long double>(count) *
                                                              std::log1p(-pair_success))));
    return family;
}

} // namespace

SeparatingFamily build_separating_family(int n, int a, int b, const SplitterOptions& options)
{
    if (n < 0 || a < 0 || b < 0)
        throw std::invalid_argument("separating family parameters must be non-negative");
    if (options.mode == SplitterMode::exhaustive_verified)
        return build_exhaustive(n, a, b, options);
    return build_randomized(n, a, b, options);
}

const SeparatingFamily& cached_separating_family(int n, int a, int b,
                                                 const SplitterOptions& options)
{
    using Key = std::tuple<int, int, int, int, std::uint64_t, double, double>;
    static std::mutex mutex;
    static std::map<Key, std::unique_ptr<SeparatingFamily>> cache;

    Key key{n, a, b, static_cast<int>(options.mode), options.seed, options.c, options.failure_bound};
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<SeparatingFamily>(
                                    build_separating_family(n, a, b, options)))
                 .first;
    return *it->second;
}

bool covers_all_pairs(const SeparatingFamily& family)
{
    const int n = family.n;
    if (n > 64)
        throw std::invalid_argument("coverage check supports universes of at most 64 elements");
    const Mask all = full_mask(n);
    for (int ka = 0; ka <= std::min(family.a, n); ++ka) {
        bool ok = true;
        for_each_k_subset(all, ka, [&](Mask A) {
            if (!ok)
                return;
            for (int kb = 0; kb <= std::min(family.b, n - ka) && ok; ++kb)
                for_each_k_subset(all & ~A, kb, [&](Mask B) {
                    if (!ok)
                        return;
                    bool hit = std::any_of(family.sets.begin(), family.sets.end(),
                                           [&](const Subset& s) { return covers(s, A, B); });
                    if (!hit)
                        ok = false;
                });
        });
        if (!ok)
            return false;
    }
    return true;
}

} // namespace listalloc
