#include "jacstab/enumeration.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace jacstab {

namespace {

struct Window {
    long long lo = 0;
    long long hi = -1;
    long long width() const { return hi - lo + 1; }
};

// Degree bounds for one vertex at a fixed non-free set. Complete for every
// predicate here because each implies semistability.
Window vertex_window(const DualGraph& g, const Polarization& pol, EdgeSet nonfree, int v) {
    long long free_loops = 0, free_nonloop = 0;
    for (int e = 0; e < g.n_edges(); ++e) {
        if (nonfree.contains(e)) continue;
        const Edge& ed = g.edge(e);
        if (ed.a == v && ed.b == v) ++free_loops;
        else if (ed.a == v || ed.b == v) ++free_nonloop;
    }
    Window w;
    w.lo = checked_add(checked_add(pol.slope(v).ceil(), g.vertex(v).genus - 1), free_loops);
    w.hi = checked_add(checked_add(checked_add(pol.slope(v).floor(), g.vertex(v).genus - 1), free_loops),
                       free_nonloop);
    return w;
}

struct PredicateCall {
    EnumPredicate pred;
    int w;
};

bool evaluate(const DualGraph& g, const CombSheaf& i, const Polarization& pol, PredicateCall call,
              Rational* beta_min, Subcurve* witness) {
    StabilityReport rep;
    bool extra = true;
    switch (call.pred) {
        case EnumPredicate::Semistable: rep = is_semistable(g, i, pol); break;
        case EnumPredicate::Stable: rep = is_stable(g, i, pol); break;
        case EnumPredicate::Quasistable: rep = is_quasistable(g, i, pol); break;
        case EnumPredicate::WQuasistable:
        case EnumPredicate::SigmaQuasistable: rep = is_W_quasistable(g, i, pol, call.w); break;
        case EnumPredicate::SimpleSemistable:
            rep = is_semistable(g, i, pol);
            extra = is_simple(g, i);
            break;
    }
    *beta_min = rep.beta_min;
    *witness = rep.witness;
    return rep.verdict && extra;
}

// All predicate matches for one non-free set, multidegrees ascending.
void sweep_nonfree(const DualGraph& g, const Polarization& pol, long long chi, PredicateCall call,
                   EdgeSet nonfree, std::vector<EnumeratedClass>* out) {
    int n = g.n_vertices();
    long long required = checked_sub(checked_sub(chi, g.euler_structure(g.full())),
                                     nonfree.size());
    if (n == 1) {
        CombSheaf i = make_sheaf(g, g.full(), nonfree, {required});
        Rational bm;
        Subcurve wit;
        if (evaluate(g, i, pol, call, &bm, &wit)) out->push_back({i, bm, wit});
        return;
    }
    std::vector<Window> win(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        win[static_cast<size_t>(v)] = vertex_window(g, pol, nonfree, v);
        if (win[static_cast<size_t>(v)].width() <= 0) return;
    }
    std::vector<long long> d(static_cast<size_t>(n), 0);
    for (int v = 0; v + 1 < n; ++v) d[static_cast<size_t>(v)] = win[static_cast<size_t>(v)].lo;
    while (true) {
        long long head = 0;
        for (int v = 0; v + 1 < n; ++v) head = checked_add(head, d[static_cast<size_t>(v)]);
        long long last = checked_sub(required, head);
        if (last >= win[static_cast<size_t>(n - 1)].lo && last <= win[static_cast<size_t>(n - 1)].hi) {
            d[static_cast<size_t>(n - 1)] = last;
            CombSheaf i = make_sheaf(g, g.full(), nonfree, d);
            Rational bm;
            Subcurve wit;
            if (evaluate(g, i, pol, call, &bm, &wit)) out->push_back({i, bm, wit});
        }
        int v = n - 2;
        while (v >= 0 && d[static_cast<size_t>(v)] == win[static_cast<size_t>(v)].hi) {
            d[static_cast<size_t>(v)] = win[static_cast<size_t>(v)].lo;
            --v;
        }
        if (v < 0) break;
        ++d[static_cast<size_t>(v)];
    }
}

} // namespace

std::string enum_predicate_name(EnumPredicate p) {
    switch (p) {
        case EnumPredicate::Semistable: return "semistable";
        case EnumPredicate::Stable: return "stable";
        case EnumPredicate::Quasistable: return "quasistable";
        case EnumPredicate::WQuasistable: return "w-quasistable";
        case EnumPredicate::SigmaQuasistable: return "sigma-quasistable";
        case EnumPredicate::SimpleSemistable: return "simple-semistable";
    }
    return "?";
}

EnumerationResult enumerate_classes(const DualGraph& g, const Polarization& pol, long long chi,
                                    EnumPredicate pred, int w, const EnumOptions& opts) {
    if (chi != pol.target_chi())
        throw InputError("requested euler characteristic " + std::to_string(chi) +
                         " disagrees with the polarization target " + std::to_string(pol.target_chi()));
    bool needs_w = pred == EnumPredicate::WQuasistable || pred == EnumPredicate::SigmaQuasistable;
    if (needs_w && (w < 0 || w >= g.n_vertices()))
        throw InputError("predicate needs a base vertex");
    if (!needs_w) w = -1;
    if (opts.jobs < 1) throw InputError("job count must be positive");
    PredicateCall call{pred, w};

    int ne = g.n_edges();
    uint64_t subsets = opts.invertible_only ? 1 : (uint64_t{1} << ne);
    if (!opts.invertible_only && ne >= 62)
        throw InputError("too many edges for a full non-free sweep");
    // Cost model: one odometer pass per S over the first n-1 degree windows.
    long long cells = 0;
    for (uint64_t mask = 0; mask < subsets; ++mask) {
        require_scan_budget(checked_add(cells, static_cast<long long>(mask >> 10)), "enumeration");
        long long prod = 1;
        for (int v = 0; v + 1 < g.n_vertices() && prod > 0; ++v) {
            Window win = vertex_window(g, pol, EdgeSet(mask), v);
            prod = win.width() <= 0 ? 0 : checked_mul(prod, win.width());
        }
        cells = checked_add(cells, prod);
    }
    require_scan_budget(cells, "enumeration");

    int jobs = std::min<int>(opts.jobs, static_cast<int>(subsets));
    std::vector<std::vector<EnumeratedClass>> found(static_cast<size_t>(jobs));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));
    uint64_t chunk = subsets / static_cast<uint64_t>(jobs);
    uint64_t extra = subsets % static_cast<uint64_t>(jobs);
    auto run_range = [&](int tid, uint64_t from, uint64_t to) {
        try {
            for (uint64_t mask = from; mask < to; ++mask)
                sweep_nonfree(g, pol, chi, call, EdgeSet(mask), &found[static_cast<size_t>(tid)]);
        } catch (...) {
            errors[static_cast<size_t>(tid)] = std::current_exception();
        }
    };
    if (jobs == 1) {
        run_range(0, 0, subsets);
    } else {
        // Contiguous mask ranges keep the merge a plain concatenation.
        std::vector<std::thread> pool;
        uint64_t from = 0;
        for (int t = 0; t < jobs; ++t) {
            uint64_t to = from + chunk + (static_cast<uint64_t>(t) < extra ? 1 : 0);
            pool.emplace_back(run_range, t, from, to);
            from = to;
        }
        for (std::thread& th : pool) th.join();
    }
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);

    EnumerationResult out;
    out.count_by_nonfree_size.assign(static_cast<size_t>(ne) + 1, 0);
    for (std::vector<EnumeratedClass>& part : found) {
        for (EnumeratedClass& c : part) {
            ++out.count_by_nonfree_size[static_cast<size_t>(c.sheaf.nonfree.size())];
            out.classes.push_back(std::move(c));
        }
    }
    return out;
}

long long count_jh_classes(const DualGraph& g, const Polarization& pol, long long chi) {
    EnumerationResult all = enumerate_classes(g, pol, chi, EnumPredicate::Semistable, -1);
    std::set<std::string> seen;
    for (const EnumeratedClass& c : all.classes) {
        JHClass cls = gr(g, c.sheaf, pol);
        std::string token;
        for (const JHPiece& p : cls.pieces) {
            token += "s" + std::to_string(p.support.bits()) + "n" + std::to_string(p.piece.nonfree.bits()) + "d";
            for (int v : p.support.members())
                token += std::to_string(p.piece.deg[static_cast<size_t>(v)]) + ",";
            token += ";";
        }
        seen.insert(token);
    }
    return static_cast<long long>(seen.size());
}

long long spanning_tree_count(const DualGraph& g) {
    std::vector<std::vector<long long>> m = g.reduced_laplacian();
    size_t dim = m.size();
    if (dim == 0) return 1;
    // Bareiss: fraction-free, every division exact.
    long long sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < dim; ++k) {
        if (m[k][k] == 0) {
            size_t swap_row = k + 1;
            while (swap_row < dim && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == dim) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < dim; ++i)
            for (size_t j = k + 1; j < dim; ++j)
                m[i][j] = checked_sub(checked_mul(m[i][j], m[k][k]), checked_mul(m[i][k], m[k][j])) / prev;
        prev = m[k][k];
    }
    return checked_mul(sign, m[dim - 1][dim - 1]);
}

Genus1Report genus1_stratification(const DualGraph& g, const Polarization& pol, int mark_vertex) {
    if (mark_vertex < 0 || mark_vertex >= g.n_vertices())
        throw InputError("stratification mark vertex is out of range");
    if (g.genus() != 1) throw InputError("stratification needs a curve of arithmetic genus 1");
    for (int v = 0; v < g.n_vertices(); ++v) {
        if (g.vertex(v).genus != 0)
            throw InputError("stratification needs all component genera zero");
        if (g.degree(v) != 2)
            throw InputError("stratification needs a cycle; vertex '" + g.vertex(v).id +
                             "' has degree " + std::to_string(g.degree(v)));
    }
    for (int v = 0; v < g.n_vertices(); ++v)
        if (!pol.slope(v).is_integer())
            throw InputError("stratification needs integral slopes, got " + pol.slope(v).to_string() +
                             " at '" + g.vertex(v).id + "'");

    EnumerationResult res =
        enumerate_classes(g, pol, pol.target_chi(), EnumPredicate::SigmaQuasistable, mark_vertex);
    Genus1Report rep;
    rep.per_edge.assign(static_cast<size_t>(g.n_edges()), 0);
    for (const EnumeratedClass& c : res.classes) {
        int depth = c.sheaf.nonfree.size();
        if (depth == 0) ++rep.invertible;
        else if (depth == 1) ++rep.per_edge[static_cast<size_t>(c.sheaf.nonfree.members().front())];
        else ++rep.deeper;
    }
    rep.matches_expected = rep.invertible == g.n_vertices() && rep.deeper == 0;
    for (long long k : rep.per_edge) rep.matches_expected = rep.matches_expected && k == 1;
    return rep;
}

} // namespace jacstab
