#include "listalloc/problems.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace listalloc {

void validate(const MMWCInstance& inst)
{
    const int n = inst.graph.num_vertices();
    if (inst.ell < 0)
        throw std::invalid_argument("ell must be non-negative");
    std::set<Vertex> seen;
    for (Vertex t : inst.terminals) {
        if (t < 0 || t >= n)
            throw std::invalid_argument("terminal out of range");
        if (!seen.insert(t).second)
            throw std::invalid_argument("duplicate terminal");
    }
}

std::vector<VertexSet> Partition::parts(int r) const
{
    std::vector<VertexSet> out(r);
    for (Vertex v = 0; v < static_cast<Vertex>(part_of.size()); ++v)
        out[part_of[v]].push_back(v);
    return out;
}

std::string check_partition(const MMWCInstance& inst, const Partition& p)
{
    const int n = inst.graph.num_vertices();
    const int r = inst.r();
    if (static_cast<int>(p.part_of.size()) != n)
        return "partition is not total";
    for (Vertex v = 0; v < n; ++v)
        if (p.part_of[v] < 0 || p.part_of[v] >= r)
            return "vertex " + std::to_string(v) + " has no valid part";
    std::vector<int> terminals_in(r, 0);
    for (int k = 0; k < r; ++k)
        ++terminals_in[p.part_of[inst.terminals[k]]];
    for (int k = 0; k < r; ++k)
        if (terminals_in[k] != 1)
            return "part " + std::to_string(k) + " holds " + std::to_string(terminals_in[k]) +
                   " terminals";
    std::vector<long> outgoing(r, 0);
    for (const auto& e : inst.graph.edges())
        if (p.part_of[e.u] != p.part_of[e.v]) {
            outgoing[p.part_of[e.u]] += e.mult;
            outgoing[p.part_of[e.v]] += e.mult;
        }
    for (int k = 0; k < r; ++k)
        if (outgoing[k] > inst.ell)
            return "part " + std::to_string(k) + " has " + std::to_string(outgoing[k]) +
                   " outgoing edges";
    return {};
}

long ASLDHInstance::d() const
{
    long total = 0;
    for (const auto& [arc, value] : alpha)
        total += value;
    return total;
}

namespace {

void validate_hom(const Digraph& guest, const Digraph& host, const std::vector<HostSet>& lists)
{
    if (guest.loops_allowed())
        throw std::invalid_argument("guest digraph must be loopless");
    if (static_cast<int>(lists.size()) != guest.num_vertices())
        throw std::invalid_argument("list count differs from guest vertex count");
    for (const auto& l : lists)
        if (static_cast<int>(l.size()) != host.num_vertices())
            throw std::invalid_argument("list width differs from host vertex count");
}

} // namespace

void validate(const BLDHInstance& inst)
{
    validate_hom(inst.guest, inst.host, inst.lists);
    if (inst.ell < 0)
        throw std::invalid_argument("ell must be non-negative");
}

void validate(const ASLDHInstance& inst)
{
    validate_hom(inst.guest, inst.host, inst.lists);
    const auto proper = inst.host.proper_arcs();
    if (inst.alpha.size() != proper.size())
        throw std::invalid_argument("alpha must be defined exactly on the non-loop host arcs");
    for (const auto& a : proper) {
        auto it = inst.alpha.find(a);
        if (it == inst.alpha.end() || it->second < 0)
            throw std::invalid_argument("alpha must be defined exactly on the non-loop host arcs");
    }
}

std::map<Arc, long> arc_charges(const Digraph& guest, const Digraph& host, const HomMapping& chi)
{
    std::map<Arc, long> charges;
    for (const auto& a : host.proper_arcs())
        charges[a] = 0;
    for (const auto& a : guest.arcs()) {
        Arc image{chi.image[a.tail], chi.image[a.head]};
        auto it = charges.find(image);
        if (it != charges.end())
            ++it->second;
    }
    return charges;
}

std::string check_list_homomorphism(const Digraph& guest, const Digraph& host,
                                    const std::vector<HostSet>& lists, const HomMapping& chi)
{
    const int n = guest.num_vertices();
    if (static_cast<int>(chi.image.size()) != n)
        return "mapping is not total";
    for (Vertex v = 0; v < n; ++v) {
        Vertex x = chi.image[v];
        if (x < 0 || x >= host.num_vertices() || !lists[v].test(x))
            return "vertex " + std::to_string(v) + " mapped outside its list";
    }
    for (const auto& a : guest.arcs())
        if (!host.has_arc(chi.image[a.tail], chi.image[a.head]))
            return "arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) +
                   ") not mapped onto a host arc";
    return {};
}

std::string check_bldh(const BLDHInstance& inst, const HomMapping& chi)
{
    if (auto why = check_list_homomorphism(inst.guest, inst.host, inst.lists, chi); !why.empty())
        return why;
    long total = 0;
    for (const auto& [arc, c] : arc_charges(inst.guest, inst.host, chi))
        total += c;
    if (total > inst.ell)
        return "total charge " + std::to_string(total) + " exceeds " + std::to_string(inst.ell);
    return {};
}

std::string check_asldh(const ASLDHInstance& inst, const HomMapping& chi)
{
    if (auto why = check_list_homomorphism(inst.guest, inst.host, inst.lists, chi); !why.empty())
        return why;
    for (const auto& [arc, c] : arc_charges(inst.guest, inst.host, chi)) {
        long want = inst.alpha.at(arc);
        if (c != want)
            return "arc (" + std::to_string(arc.tail) + "," + std::to_string(arc.head) +
                   ") charged " + std::to_string(c) + ", expected " + std::to_string(want);
    }
    return {};
}

std::string check_mbldh(const BLDHInstance& inst, const HomMapping& chi)
{
    if (auto why = check_list_homomorphism(inst.guest, inst.host, inst.lists, chi); !why.empty())
        return why;
    std::vector<long> incident(inst.host.num_vertices(), 0);
    for (const auto& [arc, c] : arc_charges(inst.guest, inst.host, chi)) {
        incident[arc.tail] += c;
        incident[arc.head] += c;
    }
    for (Vertex x = 0; x < inst.host.num_vertices(); ++x)
        if (incident[x] > inst.ell)
            return "host vertex " + std::to_string(x) + " carries charge " +
                   std::to_string(incident[x]);
    return {};
}

} // namespace listalloc
