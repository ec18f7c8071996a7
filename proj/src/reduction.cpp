#include "jacstab/reduction.hpp"

#include <algorithm>

namespace jacstab {

namespace {

void require_invertible_on_full(const DualGraph& g, const CombSheaf& i, const char* op) {
    if (i.ambient != g.full()) throw InputError(std::string(op) + " expects a sheaf on the full curve");
    if (!is_invertible(i)) throw InputError(std::string(op) + " is defined for invertible classes only");
}

struct BetaScan {
    bool any = false;
    Rational min = Rational(0);
    Subcurve union_of_minimizers;                  // of the minimum
    std::vector<Subcurve> zeros_containing_w;      // only filled when w >= 0
};

BetaScan scan_proper(const DualGraph& g, const CombSheaf& i, const Polarization& pol, int w) {
    BetaScan out;
    int n = g.n_vertices();
    if (n <= 1) return out;
    require_scan_budget((uint64_t{1} << n) - 2, "reduction scan");
    uint64_t fullbits = g.full().bits();
    for (uint64_t mask = 1; mask < fullbits; ++mask) {
        Subcurve y(mask);
        Rational b = beta(g, i, pol, y);
        if (!out.any || b < out.min) {
            out.min = b;
            out.union_of_minimizers = y;
            out.any = true;
        } else if (b == out.min) {
            out.union_of_minimizers = out.union_of_minimizers | y;
        }
        if (w >= 0 && b.is_zero() && y.contains(w)) out.zeros_containing_w.push_back(y);
    }
    return out;
}

} // namespace

CombSheaf twist(const DualGraph& g, const CombSheaf& i, Subcurve z) {
    require_invertible_on_full(g, i, "twist");
    if (z.empty() || z == g.full())
        throw InputError("twist needs a nonempty proper subcurve; the full-curve twist is the identity");
    if (!z.subset_of(g.full())) throw InputError("twist subcurve has vertices outside the graph");
    std::vector<long long> deg = i.deg;
    for (int e = 0; e < g.n_edges(); ++e) {
        const Edge& ed = g.edge(e);
        if (z.contains(ed.a) == z.contains(ed.b)) continue;
        int in = z.contains(ed.a) ? ed.a : ed.b;
        int outv = z.contains(ed.a) ? ed.b : ed.a;
        deg[static_cast<size_t>(in)] = checked_add(deg[static_cast<size_t>(in)], 1);
        deg[static_cast<size_t>(outv)] = checked_sub(deg[static_cast<size_t>(outv)], 1);
    }
    return make_invertible(g, std::move(deg));
}

long long reduction_cap(const DualGraph& g, const CombSheaf& i, const Polarization& pol) {
    // 10 * (1 + |V| * (2 * sum_v |r * beta({v})| + 2)) dominates the count of
    // strict steps the termination measure allows: min beta lives in (1/r)Z,
    // is bounded below by -(sum_v |beta({v})| + #nonloop edges), and the fired
    // subcurve shrinks strictly between equal-minimum steps.
    long long sum = 0;
    for (int v = 0; v < g.n_vertices(); ++v) {
        Rational b = beta(g, i, pol, g.singleton(v));
        sum = checked_add(sum, (b * Rational(pol.rank())).abs().as_integer());
    }
    return checked_mul(10, checked_add(1, checked_mul(g.n_vertices(), checked_add(checked_mul(2, sum), 2))));
}

TwistTrace semistable_reduce(const DualGraph& g, const CombSheaf& i, const Polarization& pol) {
    require_invertible_on_full(g, i, "reduction");
    TwistTrace trace{i, {}, i};
    long long cap = reduction_cap(g, i, pol);
    bool have_prev = false;
    Rational prev_min(0);
    int prev_size = 0;
    CombSheaf cur = i;
    while (true) {
        BetaScan scan = scan_proper(g, cur, pol, -1);
        if (!scan.any || scan.min >= Rational(0)) break;
        Subcurve z = scan.union_of_minimizers;
        if (beta(g, cur, pol, z) != scan.min)
            throw InvariantError("union of beta minimizers is not a minimizer");
        if (have_prev) {
            bool grew = scan.min > prev_min || (scan.min == prev_min && z.size() < prev_size);
            if (!grew) throw InvariantError("reduction measure failed to grow");
        }
        have_prev = true;
        prev_min = scan.min;
        prev_size = z.size();
        trace.steps.push_back({z, scan.min});
        cur = twist(g, cur, z);
        if (static_cast<long long>(trace.steps.size()) > cap)
            throw ReductionCapError("reduction exceeded its iteration cap of " + std::to_string(cap));
    }
    trace.final = cur;
    return trace;
}

TwistTrace sigma_reduce(const DualGraph& g, const CombSheaf& i, const Polarization& pol, int w) {
    require_invertible_on_full(g, i, "reduction");
    if (w < 0 || w >= g.n_vertices()) throw InputError("marked vertex is out of range");
    if (!is_semistable(g, i, pol).verdict)
        throw InputError("sigma reduction needs a semistable class");
    TwistTrace trace{i, {}, i};
    long long cap = reduction_cap(g, i, pol);
    CombSheaf cur = i;
    bool have_prev = false;
    Subcurve prev;
    while (true) {
        BetaScan scan = scan_proper(g, cur, pol, w);
        if (scan.zeros_containing_w.empty()) break; // minimum such subcurve is the whole curve
        Subcurve z = g.full();
        for (const Subcurve& y : scan.zeros_containing_w) z = z & y;
        if (z.empty() || !beta(g, cur, pol, z).is_zero())
            throw InvariantError("tight subcurves through the mark are not closed under intersection");
        if (have_prev && !(prev.subset_of(z) && prev != z))
            throw InvariantError("fired subcurves failed to grow strictly");
        have_prev = true;
        prev = z;
        trace.steps.push_back({z, Rational(0)});
        cur = twist(g, cur, z);
        if (!is_semistable(g, cur, pol).verdict)
            throw InvariantError("sigma reduction left the semistable region");
        if (static_cast<long long>(trace.steps.size()) > cap)
            throw ReductionCapError("reduction exceeded its iteration cap of " + std::to_string(cap));
    }
    trace.final = cur;
    return trace;
}

namespace {

// Lower-triangular column echelon form of an integer matrix via unimodular
// column operations; the columns span the same lattice.
std::vector<std::vector<long long>> column_echelon(std::vector<std::vector<long long>> m) {
    size_t dim = m.size();
    auto col_sub = [&](size_t dst, size_t src, long long q) {
        for (size_t r = 0; r < dim; ++r)
            m[r][dst] = checked_sub(m[r][dst], checked_mul(q, m[r][src]));
    };
    auto col_swap = [&](size_t a, size_t b) {
        for (size_t r = 0; r < dim; ++r) std::swap(m[r][a], m[r][b]);
    };
    for (size_t r = 0; r < dim; ++r) {
        size_t pivot = r;
        while (pivot < dim && m[r][pivot] == 0) ++pivot;
        if (pivot == dim) throw InvariantError("reduced laplacian is singular on a connected graph");
        if (pivot != r) col_swap(r, pivot);
        for (size_t c = r + 1; c < dim; ++c) {
            while (m[r][c] != 0) {
                long long q = m[r][r] / m[r][c];
                col_sub(r, c, q);
                col_swap(r, c);
            }
        }
        if (m[r][r] < 0)
            for (size_t row = 0; row < dim; ++row) m[row][r] = checked_mul(m[row][r], -1);
    }
    return m;
}

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

std::vector<long long> coset_representative(const DualGraph& g, const std::vector<long long>& deg) {
    if (deg.size() != static_cast<size_t>(g.n_vertices()))
        throw InputError("multidegree needs one entry per vertex");
    size_t dim = static_cast<size_t>(g.n_vertices()) - 1;
    long long total = 0;
    for (long long d : deg) total = checked_add(total, d);
    if (dim == 0) return deg;
    std::vector<std::vector<long long>> h = column_echelon(g.reduced_laplacian());
    std::vector<long long> x(deg.begin(), deg.begin() + static_cast<long>(dim));
    for (size_t c = 0; c < dim; ++c) {
        long long q = floor_div(x[c], h[c][c]);
        for (size_t r = c; r < dim; ++r)
            x[r] = checked_sub(x[r], checked_mul(q, h[r][c]));
    }
    long long head = 0;
    for (long long v : x) head = checked_add(head, v);
    x.push_back(checked_sub(total, head));
    return x;
}

std::string class_id(const DualGraph& g, const CombSheaf& i) {
    require_invertible_on_full(g, i, "class identification");
    std::vector<long long> rep = coset_representative(g, i.deg);
    long long total = total_degree(i);
    std::string out = "t" + std::to_string(total);
    for (size_t k = 0; k + 1 < rep.size(); ++k)
        out += (k == 0 ? ":" : ",") + std::to_string(rep[k]);
    return out;
}

} // namespace jacstab
