#pragma once

// File formats. Instances and witnesses are single JSON documents; bare
// graphs may also be given as a DIMACS-like edge list. Box indices are
// 1-based in files, vertex and host-vertex ids are 0-based. Malformed input
// raises FormatError.

#include "listalloc/la_model.hpp"
#include "listalloc/problems.hpp"

#include <istream>
#include <string>

namespace listalloc {

LAInstance parse_la(const std::string& text);
std::string serialize(const LAInstance& inst);

MMWCInstance parse_minmax(const std::string& text);
std::string serialize(const MMWCInstance& inst);

/// Homomorphism instances carry either "ell" (BLDH) or "alpha_arcs" (ASLDH).
BLDHInstance parse_bldh(const std::string& text);
ASLDHInstance parse_asldh(const std::string& text);
std::string serialize(const BLDHInstance& inst);
std::string serialize(const ASLDHInstance& inst);

Allocation parse_allocation(const std::string& text);
std::string serialize(const Allocation& alloc);

Partition parse_partition(const std::string& text);
std::string serialize(const Partition& p);

HomMapping parse_hom(const std::string& text);
std::string serialize(const HomMapping& chi);

/// `p edge n m` header, then `e u v [mult]` lines with 1-based vertices;
/// lines starting with `c` are comments.
MultiGraph parse_dimacs(std::istream& in);
std::string serialize_dimacs(const MultiGraph& g);

/// Whole file as a string; FormatError when unreadable.
std::string read_file(const std::string& path);

} // namespace listalloc
