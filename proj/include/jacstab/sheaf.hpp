#pragma once
/*
 * Numerical shadow of a rank-1 torsion-free sheaf on a (sub)curve: the set S
 * of nodes where the sheaf fails to be locally free plus the multidegree d of
 * its line-bundle pullback to the partial normalization at S.
 *
 *   chi(i)              = sum d_v + chi(O_ambient) + |S|
 *   chi(i restricted Y) = sum_{v in Y} d_v + sum_{v in Y}(1-g_v) - |E(Y)\S|
 *
 * Restriction keeps d and intersects S with the target's internal edges; the
 * kernel of i ->> i|_Y lives on the complement and loses one unit of degree
 * at the complement endpoint of every FREE linking edge. chi is additive
 * across that pair, which pins every sign in this file.
 */

#include <vector>

#include "jacstab/curve.hpp"

namespace jacstab {

struct CombSheaf {
    Subcurve ambient;            // support, nonempty
    EdgeSet nonfree;             // subset of internal_edges(ambient)
    std::vector<long long> deg;  // canonical vertex order; zero outside ambient

    friend bool operator==(const CombSheaf& a, const CombSheaf& b) {
        return a.ambient == b.ambient && a.nonfree == b.nonfree && a.deg == b.deg;
    }
    friend bool operator!=(const CombSheaf& a, const CombSheaf& b) { return !(a == b); }
};

// Validates and builds. deg must have one entry per graph vertex.
CombSheaf make_sheaf(const DualGraph& g, Subcurve ambient, EdgeSet nonfree,
                     std::vector<long long> deg);

// Sheaf on the full curve with no non-free nodes.
CombSheaf make_invertible(const DualGraph& g, std::vector<long long> deg);

bool is_invertible(const CombSheaf& i);

long long total_degree(const CombSheaf& i);

long long euler_char(const DualGraph& g, const CombSheaf& i);

// chi of the maximal torsion-free quotient supported on y. y nonempty, inside
// the ambient.
long long restricted_euler(const DualGraph& g, const CombSheaf& i, Subcurve y);

CombSheaf restrict_to(const DualGraph& g, const CombSheaf& i, Subcurve y);

// Kernel of i ->> restrict_to(i, y); lives on ambient minus y. y proper.
CombSheaf kernel_to(const DualGraph& g, const CombSheaf& i, Subcurve y);

// True when every linking edge of y inside the ambient carries a non-free
// node, i.e. i splits as a direct sum across that cut.
bool decomposes_at(const DualGraph& g, const CombSheaf& i, Subcurve y);

// No decomposition anywhere: the free subgraph (ambient, internal edges minus
// S) is connected.
bool is_simple(const DualGraph& g, const CombSheaf& i);

// chi(i|_y) + chi(i|_z) - chi(i|_{y u z}) for disjoint nonempty y, z; equals
// the number of free linking edges between them.
long long delta(const DualGraph& g, const CombSheaf& i, Subcurve y, Subcurve z);

long long free_linking_between(const DualGraph& g, const CombSheaf& i, Subcurve y, Subcurve z);

} // namespace jacstab
