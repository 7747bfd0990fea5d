#pragma once

// Seeded random instances. Output depends only on the parameters and the
// seed (std::mt19937_64), so a fixed seed reproduces byte-identical files.

#include "listalloc/la_model.hpp"
#include "listalloc/problems.hpp"

#include <cstdint>

namespace listalloc {

struct GenParams {
    int n = 6;
    int r = 3;          // boxes (la) or terminals (minmax)
    int h = 2;          // host vertices
    long w = 2;         // total weight (la, asldh)
    long ell = 2;       // budget (minmax, bldh)
    double edge_density = 0.5;
    double list_density = 0.7;
    double host_density = 0.5; // host arcs and loops
    long max_mult = 2;
    bool connected = false; // la/minmax: add a random spanning tree first
    bool planted = false;   // la/asldh: weights read off a random hidden solution
};

LAInstance generate_la(const GenParams& p, std::uint64_t seed);
MMWCInstance generate_minmax(const GenParams& p, std::uint64_t seed);
BLDHInstance generate_bldh(const GenParams& p, std::uint64_t seed);
ASLDHInstance generate_asldh(const GenParams& p, std::uint64_t seed);

} // namespace listalloc
