#include "jacstab/jordan_holder.hpp"

#include <algorithm>

namespace jacstab {

namespace {

bool edge_lex_less(EdgeSet a, EdgeSet b) {
    uint64_t x = a.bits(), y = b.bits();
    while (x && y) {
        int i = __builtin_ctzll(x), j = __builtin_ctzll(y);
        if (i != j) return i < j;
        x &= x - 1;
        y &= y - 1;
    }
    return x == 0 && y != 0;
}

bool piece_less(const JHPiece& a, const JHPiece& b) {
    if (a.support != b.support) return lex_less(a.support, b.support);
    if (a.piece.nonfree != b.piece.nonfree) return edge_lex_less(a.piece.nonfree, b.piece.nonfree);
    return a.piece.deg < b.piece.deg;
}

// Nonempty proper subcurves of the stage with relative beta zero.
std::vector<Subcurve> tight_subcurves(const DualGraph& g, const CombSheaf& state, const Polarization& pol) {
    std::vector<Subcurve> out;
    std::vector<int> mem = state.ambient.members();
    int k = static_cast<int>(mem.size());
    if (k <= 1) return out;
    require_scan_budget((uint64_t{1} << k) - 2, "filtration stage scan");
    for (uint64_t mask = 1; mask + 1 < (uint64_t{1} << k); ++mask) {
        Subcurve y;
        for (int b = 0; b < k; ++b)
            if ((mask >> b) & 1u) y = y.with(mem[static_cast<size_t>(b)]);
        if (beta(g, state, pol, y).is_zero()) out.push_back(y);
    }
    return out;
}

} // namespace

bool operator==(const JHClass& a, const JHClass& b) { return a.pieces == b.pieces; }

JHClass canonical_class(std::vector<JHPiece> pieces) {
    for (const JHPiece& p : pieces)
        if (p.support != p.piece.ambient)
            throw InputError("class piece support disagrees with its sheaf's support");
    std::sort(pieces.begin(), pieces.end(), piece_less);
    return JHClass{std::move(pieces)};
}

JHFiltration jh_filtration(const DualGraph& g, const CombSheaf& i, const Polarization& pol,
                           ChoiceRule rule) {
    if (!is_semistable(g, i, pol).verdict)
        throw InputError("filtration needs a semistable class");

    JHFiltration out;
    CombSheaf state = i;
    while (true) {
        Subcurve stage = state.ambient;
        // Stages inherit tightness from the peeled beta == 0 subcurves.
        if (checked_mul(euler_char(g, state), pol.rank()) != pol.weight_of(stage))
            throw InvariantError("filtration stage lost the slope normalization");
        if (!out.steps.empty() && !is_semistable(g, state, pol).verdict)
            throw InvariantError("filtration stage lost semistability");

        std::vector<Subcurve> zeros = tight_subcurves(g, state, pol);
        std::vector<Subcurve> minimal;
        for (const Subcurve& y : zeros) {
            bool has_smaller = false;
            for (const Subcurve& z : zeros)
                if (z != y && z.subset_of(y)) { has_smaller = true; break; }
            if (!has_smaller) minimal.push_back(y);
        }

        Subcurve peeled = stage;
        if (!minimal.empty()) {
            peeled = minimal.front();
            for (const Subcurve& y : minimal) {
                bool better = rule == ChoiceRule::MinLex ? lex_less(y, peeled) : lex_less(peeled, y);
                if (better) peeled = y;
            }
        }

        CombSheaf piece = restrict_to(g, state, peeled);
        if (checked_mul(euler_char(g, piece), pol.rank()) != pol.weight_of(peeled))
            throw InvariantError("filtration piece is not tight");
        if (!is_stable(g, piece, pol).verdict)
            throw InvariantError("filtration piece is not stable");
        out.steps.push_back({stage, state, peeled, piece});

        if (peeled == stage) break;
        state = kernel_to(g, state, peeled);
    }
    return out;
}

JHClass gr(const DualGraph& g, const CombSheaf& i, const Polarization& pol, ChoiceRule rule) {
    JHFiltration f = jh_filtration(g, i, pol, rule);
    std::vector<JHPiece> pieces;
    pieces.reserve(f.steps.size());
    for (const JHStep& s : f.steps) pieces.push_back({s.peeled, s.piece});
    return canonical_class(std::move(pieces));
}

bool jh_equivalent(const DualGraph& g, const CombSheaf& i, const CombSheaf& j, const Polarization& pol) {
    return gr(g, i, pol) == gr(g, j, pol);
}

CombSheaf split_representative(const DualGraph& g, const JHClass& cls) {
    if (cls.pieces.empty()) throw InputError("empty class has no representative");
    Subcurve support;
    std::vector<long long> deg(static_cast<size_t>(g.n_vertices()), 0);
    EdgeSet nonfree;
    for (const JHPiece& p : cls.pieces) {
        if (p.support.intersects(support)) throw InputError("class pieces overlap");
        support = support | p.support;
        nonfree = nonfree | p.piece.nonfree;
        for (int v : p.support.members())
            deg[static_cast<size_t>(v)] = p.piece.deg[static_cast<size_t>(v)];
    }
    // Every edge joining two distinct pieces becomes a non-free node.
    EdgeSet cross = g.internal_edges(support);
    for (const JHPiece& p : cls.pieces) cross = cross.minus(g.internal_edges(p.support));
    return make_sheaf(g, support, nonfree | cross, std::move(deg));
}

CombSheaf build_quasistable(const DualGraph& g, const Polarization& pol,
                            const std::vector<JHPiece>& parts, int w) {
    if (parts.empty()) throw InputError("construction needs at least one part");
    if (w < 0 || w >= g.n_vertices()) throw InputError("construction base vertex is out of range");
    Subcurve covered;
    for (const JHPiece& p : parts) {
        if (p.support.empty()) throw InputError("construction part with empty support");
        if (p.support != p.piece.ambient)
            throw InputError("construction part support disagrees with its sheaf's support");
        if (p.support.intersects(covered)) throw InputError("construction parts overlap");
        covered = covered | p.support;
        if (checked_mul(euler_char(g, p.piece), pol.rank()) != pol.weight_of(p.support))
            throw InputError("construction part on " + g.subcurve_to_string(p.support) +
                             " is not tight for the polarization");
        if (!is_stable(g, p.piece, pol).verdict)
            throw InputError("construction part on " + g.subcurve_to_string(p.support) + " is not stable");
    }
    if (covered != g.full()) throw InputError("construction parts must cover the curve");

    // Assembly order: w's part is the deepest; every later part must touch
    // the assembled union (the graph is connected, so this never starves).
    size_t wpart = parts.size();
    for (size_t j = 0; j < parts.size(); ++j)
        if (parts[j].support.contains(w)) wpart = j;
    if (wpart == parts.size()) throw InputError("construction base vertex lies in no part");

    std::vector<size_t> order{wpart};
    std::vector<bool> used(parts.size(), false);
    used[wpart] = true;
    Subcurve acc = parts[wpart].support;
    for (size_t round = 1; round < parts.size(); ++round) {
        size_t best = parts.size();
        for (size_t j = 0; j < parts.size(); ++j) {
            if (used[j]) continue;
            bool touches = false;
            for (int e : g.linking_edges(acc).members()) {
                const Edge& ed = g.edge(e);
                if (parts[j].support.contains(ed.a) || parts[j].support.contains(ed.b)) { touches = true; break; }
            }
            if (!touches) continue;
            if (best == parts.size() || lex_less(parts[j].support, parts[best].support)) best = j;
        }
        if (best == parts.size()) throw InvariantError("construction found no adjacent part on a connected curve");
        used[best] = true;
        order.push_back(best);
        acc = acc | parts[best].support;
    }

    CombSheaf state = parts[wpart].piece;
    for (size_t k = 1; k < order.size(); ++k) {
        const JHPiece& p = parts[order[k]];
        Subcurve prev = state.ambient;
        EdgeSet linking;
        for (int e : g.internal_edges(prev | p.support).members()) {
            const Edge& ed = g.edge(e);
            if (prev.contains(ed.a) != prev.contains(ed.b)) linking = linking.with(e);
        }
        if (linking.empty()) throw InvariantError("gluing step with no linking edge");
        int free_edge = linking.members().front(); // canonical order: smallest index
        // The assembled side is the sub-object of the extension; the one free
        // edge puts the extension's degree unit on its endpoint there.
        std::vector<long long> deg = state.deg;
        for (int v : p.support.members()) deg[static_cast<size_t>(v)] = p.piece.deg[static_cast<size_t>(v)];
        int deeper = prev.contains(g.edge(free_edge).a) ? g.edge(free_edge).a : g.edge(free_edge).b;
        deg[static_cast<size_t>(deeper)] = checked_add(deg[static_cast<size_t>(deeper)], 1);
        state = make_sheaf(g, prev | p.support,
                           state.nonfree | p.piece.nonfree | linking.without(free_edge), std::move(deg));
    }

    std::vector<JHPiece> expected(parts);
    if (gr(g, state, pol) != canonical_class(std::move(expected)))
        throw InvariantError("constructed class grades to a different piece multiset");
    if (!is_W_quasistable(g, state, pol, w).verdict)
        throw InvariantError("constructed class failed its quasistability re-verification");
    return state;
}

} // namespace jacstab
