#pragma once

// Exhaustive reference solvers. They enumerate every assignment in
// lexicographic order (vertex 0 most significant) and return the first one
// that satisfies the problem, so witnesses are canonical. None of this code
// is shared with the solver pipeline.

#include "listalloc/la_model.hpp"
#include "listalloc/problems.hpp"

#include <cstdint>
#include <optional>

namespace listalloc {

inline constexpr std::uint64_t default_oracle_cap = 10'000'000;

/// Throws CapExceeded when r^n > cap.
std::optional<Allocation> oracle_la(const LAInstance& inst, std::uint64_t cap = default_oracle_cap);

std::optional<Partition> oracle_minmax(const MMWCInstance& inst,
                                       std::uint64_t cap = default_oracle_cap);

std::optional<HomMapping> oracle_bldh(const BLDHInstance& inst,
                                      std::uint64_t cap = default_oracle_cap);

std::optional<HomMapping> oracle_asldh(const ASLDHInstance& inst,
                                       std::uint64_t cap = default_oracle_cap);

std::optional<HomMapping> oracle_mbldh(const BLDHInstance& inst,
                                       std::uint64_t cap = default_oracle_cap);

} // namespace listalloc
