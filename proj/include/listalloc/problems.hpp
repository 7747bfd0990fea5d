#pragma once

#include "listalloc/la_model.hpp"
#include "listalloc/multigraph.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace listalloc {

/// Min-Max Multiway Cut: split the graph into r parts, one terminal each,
/// so that every part has at most `ell` outgoing edges.
struct MMWCInstance {
    MultiGraph graph;
    long ell = 0;
    std::vector<Vertex> terminals; // terminal k owns part k

    int r() const { return static_cast<int>(terminals.size()); }

    friend bool operator==(const MMWCInstance&, const MMWCInstance&) = default;
};

void validate(const MMWCInstance& inst);

/// part_of[v] is the part index of v; part k holds terminal k.
struct Partition {
    std::vector<int> part_of;

    std::vector<VertexSet> parts(int r) const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

/// Empty string when the partition is a solution, otherwise the reason.
std::string check_partition(const MMWCInstance& inst, const Partition& p);

/// Host vertex list per guest vertex.
using HostSet = boost::dynamic_bitset<>;

/// Bounded List Digraph Homomorphism: total charge on non-loop host arcs <= ell.
struct BLDHInstance {
    Digraph guest;
    Digraph host;
    std::vector<HostSet> lists;
    long ell = 0;

    friend bool operator==(const BLDHInstance&, const BLDHInstance&) = default;
};

/// Arc-Specified List Digraph Homomorphism: exact charge per non-loop host arc.
struct ASLDHInstance {
    Digraph guest;
    Digraph host;
    std::vector<HostSet> lists;
    std::map<Arc, long> alpha; // keyed by every non-loop host arc

    long d() const;

    friend bool operator==(const ASLDHInstance&, const ASLDHInstance&) = default;
};

void validate(const BLDHInstance& inst);
void validate(const ASLDHInstance& inst);

/// Image of each guest vertex in the host.
struct HomMapping {
    std::vector<Vertex> image;

    friend bool operator==(const HomMapping&, const HomMapping&) = default;
};

/// Number of guest arcs mapped onto each non-loop host arc.
std::map<Arc, long> arc_charges(const Digraph& guest, const Digraph& host, const HomMapping& chi);

/// Empty string when chi is a list homomorphism, otherwise the reason.
std::string check_list_homomorphism(const Digraph& guest, const Digraph& host,
                                    const std::vector<HostSet>& lists, const HomMapping& chi);

std::string check_bldh(const BLDHInstance& inst, const HomMapping& chi);
std::string check_asldh(const ASLDHInstance& inst, const HomMapping& chi);

/// Max variant: for every host vertex, the charge over incident non-loop arcs is <= ell.
std::string check_mbldh(const BLDHInstance& inst, const HomMapping& chi);

} // namespace listalloc
