#include "jacstab/sheaf.hpp"

#include "jacstab/rational.hpp"

namespace jacstab {

CombSheaf make_sheaf(const DualGraph& g, Subcurve ambient, EdgeSet nonfree,
                     std::vector<long long> deg) {
    if (ambient.empty()) throw InputError("sheaf support is empty");
    if (!ambient.subset_of(g.full())) throw InputError("sheaf support has vertices outside the graph");
    if (!nonfree.subset_of(g.internal_edges(ambient)))
        throw InputError("non-free node set leaves the support's internal edges");
    if (deg.size() != static_cast<size_t>(g.n_vertices()))
        throw InputError("multidegree needs one entry per vertex");
    for (int v = 0; v < g.n_vertices(); ++v)
        if (!ambient.contains(v) && deg[static_cast<size_t>(v)] != 0)
            throw InputError("multidegree nonzero outside the support at '" + g.vertex(v).id + "'");
    return CombSheaf{ambient, nonfree, std::move(deg)};
}

CombSheaf make_invertible(const DualGraph& g, std::vector<long long> deg) {
    return make_sheaf(g, g.full(), EdgeSet{}, std::move(deg));
}

bool is_invertible(const CombSheaf& i) { return i.nonfree.empty(); }

long long total_degree(const CombSheaf& i) {
    long long t = 0;
    for (long long d : i.deg) t = checked_add(t, d);
    return t;
}

long long euler_char(const DualGraph& g, const CombSheaf& i) {
    return checked_add(checked_add(total_degree(i), g.euler_structure(i.ambient)), i.nonfree.size());
}

long long restricted_euler(const DualGraph& g, const CombSheaf& i, Subcurve y) {
    if (y.empty()) throw InputError("restriction to the empty subcurve is undefined");
    if (!y.subset_of(i.ambient)) throw InputError("restriction target leaves the sheaf's support");
    long long chi = 0;
    for (int v : y.members())
        chi = checked_add(chi, checked_add(i.deg[static_cast<size_t>(v)], 1 - g.vertex(v).genus));
    return checked_sub(chi, g.internal_edges(y).minus(i.nonfree).size());
}

CombSheaf restrict_to(const DualGraph& g, const CombSheaf& i, Subcurve y) {
    if (y.empty()) throw InputError("restriction to the empty subcurve is undefined");
    if (!y.subset_of(i.ambient)) throw InputError("restriction target leaves the sheaf's support");
    std::vector<long long> deg(i.deg.size(), 0);
    for (int v : y.members()) deg[static_cast<size_t>(v)] = i.deg[static_cast<size_t>(v)];
    return CombSheaf{y, i.nonfree & g.internal_edges(y), std::move(deg)};
}

CombSheaf kernel_to(const DualGraph& g, const CombSheaf& i, Subcurve y) {
    if (y.empty() || y == i.ambient)
        throw InputError("kernel needs a nonempty proper subcurve of the support");
    if (!y.subset_of(i.ambient)) throw InputError("kernel target leaves the sheaf's support");
    Subcurve z = i.ambient.minus(y);
    std::vector<long long> deg(i.deg.size(), 0);
    for (int v : z.members()) deg[static_cast<size_t>(v)] = i.deg[static_cast<size_t>(v)];
    // Free linking edges die into the quotient's torsion; each costs the
    // kernel one degree on its z endpoint.
    EdgeSet internal = g.internal_edges(i.ambient);
    for (int e : internal.minus(i.nonfree).members()) {
        const Edge& ed = g.edge(e);
        if (y.contains(ed.a) == y.contains(ed.b)) continue;
        int zside = y.contains(ed.a) ? ed.b : ed.a;
        deg[static_cast<size_t>(zside)] = checked_sub(deg[static_cast<size_t>(zside)], 1);
    }
    return CombSheaf{z, i.nonfree & g.internal_edges(z), std::move(deg)};
}

bool decomposes_at(const DualGraph& g, const CombSheaf& i, Subcurve y) {
    if (y.empty() || y == i.ambient)
        throw InputError("decomposition test needs a nonempty proper subcurve of the support");
    if (!y.subset_of(i.ambient)) throw InputError("decomposition test leaves the sheaf's support");
    EdgeSet internal = g.internal_edges(i.ambient);
    for (int e : internal.minus(i.nonfree).members()) {
        const Edge& ed = g.edge(e);
        if (y.contains(ed.a) != y.contains(ed.b)) return false;
    }
    return true;
}

bool is_simple(const DualGraph& g, const CombSheaf& i) {
    return g.connected_within(i.ambient, g.internal_edges(i.ambient).minus(i.nonfree));
}

long long free_linking_between(const DualGraph& g, const CombSheaf& i, Subcurve y, Subcurve z) {
    long long count = 0;
    for (int e : g.internal_edges(i.ambient).minus(i.nonfree).members()) {
        const Edge& ed = g.edge(e);
        if ((y.contains(ed.a) && z.contains(ed.b)) || (z.contains(ed.a) && y.contains(ed.b))) ++count;
    }
    return count;
}

long long delta(const DualGraph& g, const CombSheaf& i, Subcurve y, Subcurve z) {
    if (y.empty() || z.empty()) throw InputError("delta needs nonempty subcurves");
    if (y.intersects(z)) throw InputError("delta needs disjoint subcurves");
    return checked_sub(checked_add(restricted_euler(g, i, y), restricted_euler(g, i, z)),
                       restricted_euler(g, i, y | z));
}

} // namespace jacstab
