// Acceptance gate: nine end-to-end checks, one pass/fail line each.
// Every tolerance and census value is pinned here; a FAIL line plus a
// nonzero exit is the only failure mode.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jacstab/reduction.hpp"
#include "support.hpp"

using namespace jacstab;
using namespace fixtures;

namespace {

constexpr long long kLadderMillisPerDelta = 1000;
constexpr long long kTorsorMillisTotal = 30000;

struct CheckFailure : std::runtime_error {
    explicit CheckFailure(const std::string& what) : std::runtime_error(what) {}
};

void need(bool cond, const std::string& what) {
    if (!cond) throw CheckFailure(what);
}

long long ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 t0)
        .count();
}

// 1. Invertible class counts on two-vertex graphs with delta nodes follow the
// closed forms: integral slope gives delta+1 / delta-1 / delta for the
// semistable / stable / anchored windows, half-integral slope collapses all
// three to delta. Each delta must finish within the pinned time budget.
std::string ladders() {
    long long slowest = 0;
    for (int delta = 1; delta <= 5; ++delta) {
        auto t0 = std::chrono::steady_clock::now();
        DualGraph g = g2(delta);
        EnumOptions inv{1, true};
        Polarization even(g, 1, {1, 1});
        long long ss = static_cast<long long>(
            enumerate_classes(g, even, 2, EnumPredicate::Semistable, -1, inv).classes.size());
        long long st = static_cast<long long>(
            enumerate_classes(g, even, 2, EnumPredicate::Stable, -1, inv).classes.size());
        long long wq = static_cast<long long>(
            enumerate_classes(g, even, 2, EnumPredicate::WQuasistable, 0, inv).classes.size());
        need(ss == delta + 1, "integral slope semistable count off at delta " + std::to_string(delta));
        need(st == delta - 1, "integral slope stable count off at delta " + std::to_string(delta));
        need(wq == delta, "integral slope anchored count off at delta " + std::to_string(delta));
        Polarization odd(g, 2, {1, 3});
        long long oss = static_cast<long long>(
            enumerate_classes(g, odd, 2, EnumPredicate::Semistable, -1, inv).classes.size());
        long long ost = static_cast<long long>(
            enumerate_classes(g, odd, 2, EnumPredicate::Stable, -1, inv).classes.size());
        long long owq = static_cast<long long>(
            enumerate_classes(g, odd, 2, EnumPredicate::WQuasistable, 0, inv).classes.size());
        need(oss == delta && ost == delta && owq == delta,
             "half-integral slope counts off at delta " + std::to_string(delta));
        long long took = ms_since(t0);
        slowest = std::max(slowest, took);
        need(took < kLadderMillisPerDelta,
             "delta " + std::to_string(delta) + " took " + std::to_string(took) + " ms");
    }
    return "deltas 1..5, both slope parities, slowest " + std::to_string(slowest) + " ms";
}

// 2. For every fixture and 50 random graphs, across a window of five totals:
// the invertible marked-quasistable classes number exactly the spanning
// trees, and their twist-class tokens are pairwise distinct. One canonical
// representative per class, found by exhaustion.
std::string torsor_counts() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<DualGraph> graphs = {g2(1), g2(2), g2(3), g2(4), p3(), cycle(1), cycle(2), cycle(3)};
    std::mt19937_64 rng(101);
    while (graphs.size() < 58) graphs.push_back(random_connected_multigraph(rng, 5, 7));
    long long checked = 0;
    for (const DualGraph& g : graphs) {
        int n = g.n_vertices();
        long long trees = spanning_tree_count(g);
        int w = static_cast<int>(rng() % static_cast<uint64_t>(n));
        long long chi_o = g.euler_structure(g.full());
        for (long long total = -2; total <= 2; ++total) {
            long long chi = total + chi_o;
            long long base = chi / n;
            std::vector<long long> e(static_cast<size_t>(n), base);
            e[0] = chi - base * (n - 1);
            Polarization pol(g, 1, e);
            EnumOptions inv{1, true};
            auto res = enumerate_classes(g, pol, chi, EnumPredicate::SigmaQuasistable, w, inv);
            need(static_cast<long long>(res.classes.size()) == trees,
                 "marked census has " + std::to_string(res.classes.size()) + " classes but " +
                     std::to_string(trees) + " spanning trees");
            std::set<std::string> ids;
            for (const EnumeratedClass& c : res.classes) ids.insert(class_id(g, c.sheaf));
            need(static_cast<long long>(ids.size()) == trees,
                 "marked census repeats a twist class");
            ++checked;
        }
    }
    long long took = ms_since(t0);
    need(took < kTorsorMillisTotal, "torsor sweep took " + std::to_string(took) + " ms");
    return std::to_string(graphs.size()) + " graphs x 5 totals, " + std::to_string(took) + " ms";
}

// 3. 500 random reduction walks stay under their iteration ceiling, end
// semistable in the same twist class, replay exactly with the measure
// (min beta, -|fired|) strictly increasing, and the marked continuation
// lands on the same representative from twist-equivalent starts.
std::string reduction_walks() {
    std::mt19937_64 rng(103);
    long long walks = 0, paired = 0;
    while (walks < 500) {
        DualGraph g = random_connected_multigraph(rng, 5, 7);
        std::vector<long long> d(static_cast<size_t>(g.n_vertices()));
        for (auto& x : d) x = small(rng, 6);
        CombSheaf i = make_invertible(g, d);
        Polarization pol = matching_polarization(g, i, rng);
        TwistTrace tr = semistable_reduce(g, i, pol);
        need(static_cast<long long>(tr.steps.size()) <= reduction_cap(g, i, pol),
             "walk exceeded its ceiling");
        need(is_semistable(g, tr.final, pol).verdict, "walk ended outside the semistable region");
        need(class_id(g, tr.final) == class_id(g, i), "walk left the twist class");
        CombSheaf cur = tr.start;
        bool have_prev = false;
        Rational prev_beta(0);
        int prev_size = 0;
        for (const TwistStep& st : tr.steps) {
            StabilityReport rep = is_semistable(g, cur, pol);
            need(rep.beta_min == st.beta_min_before, "recorded beta_min disagrees with replay");
            need(st.beta_min_before < Rational(0), "walk fired inside the semistable region");
            if (have_prev)
                need(prev_beta < st.beta_min_before ||
                         (prev_beta == st.beta_min_before && st.fired.size() < prev_size),
                     "walk measure failed to increase");
            have_prev = true;
            prev_beta = st.beta_min_before;
            prev_size = st.fired.size();
            cur = twist(g, cur, st.fired);
        }
        need(cur == tr.final, "trace does not replay to its final class");
        ++walks;

        if (g.n_vertices() < 2 || walks % 3 != 0) continue;
        uint64_t all = g.full().bits();
        CombSheaf sibling = i;
        for (int k = 0; k < 3; ++k) sibling = twist(g, sibling, Subcurve(1 + rng() % (all - 1)));
        int w = static_cast<int>(rng() % static_cast<uint64_t>(g.n_vertices()));
        CombSheaf ra = sigma_reduce(g, semistable_reduce(g, i, pol).final, pol, w).final;
        CombSheaf rb = sigma_reduce(g, semistable_reduce(g, sibling, pol).final, pol, w).final;
        need(ra == rb, "marked walk depends on the start within a twist class");
        ++paired;
    }
    return "500 walks, " + std::to_string(paired) + " twin-start continuations";
}

// 4. Restricted chi is submodular over every subcurve pair, and the free
// cross count is nonnegative and monotone, exhaustively on all connected
// simple graphs with up to five vertices plus random multigraph data.
std::string submodularity() {
    std::mt19937_64 rng(107);
    long long pairs = 0;
    auto sweep = [&](const DualGraph& g, const CombSheaf& i) {
        auto chi = [&](Subcurve y) { return y.empty() ? 0 : restricted_euler(g, i, y); };
        uint64_t all = g.full().bits();
        for (uint64_t ym = 0; ym <= all; ++ym)
            for (uint64_t zm = 0; zm <= all; ++zm) {
                Subcurve y(ym), z(zm);
                need(chi(y | z) + chi(y & z) <= chi(y) + chi(z), "submodularity failed");
                ++pairs;
                if (ym == 0 || zm == 0 || y.intersects(z)) continue;
                long long cross = delta(g, i, y, z);
                need(cross >= 0, "free cross count went negative");
                Subcurve grown = z | Subcurve(rng() & all & ~ym);
                if (grown != z) need(delta(g, i, y, grown) >= cross, "free cross count shrank");
            }
    };
    for (const DualGraph& g : all_connected_simple(5))
        for (int t = 0; t < 3; ++t) {
            EdgeSet s(rng() & g.all_edges().bits());
            sweep(g, random_sheaf(g, rng, s));
        }
    for (int t = 0; t < 200; ++t) {
        DualGraph g = random_connected_multigraph(rng, 5, 8);
        EdgeSet s(rng() & g.all_edges().bits());
        sweep(g, random_sheaf(g, rng, s));
    }
    return std::to_string(pairs) + " subcurve pairs";
}

// 5. Simplicity, free-subgraph connectivity, and the absence of a
// decomposing subcurve agree on every non-free set of every connected
// multigraph with up to five nodes; non-free sets below the minimum cut are
// always simple and some set of exactly that size is not.
std::string simplicity() {
    long long graphs = 0, masks = 0;
    for (const DualGraph& g : all_connected_multigraphs(5)) {
        ++graphs;
        std::optional<long long> cut = g.min_cut();
        need(cut == oracle_min_cut(g), "minimum cut disagrees with the subset oracle");
        std::vector<long long> zero(static_cast<size_t>(g.n_vertices()), 0);
        for (uint64_t mask = 0; mask < (uint64_t{1} << g.n_edges()); ++mask) {
            CombSheaf i = make_sheaf(g, g.full(), EdgeSet(mask), zero);
            bool simple = is_simple(g, i);
            need(simple == oracle_free_connected(g, EdgeSet(mask)),
                 "simplicity disagrees with free-subgraph connectivity");
            bool decomposes = false;
            for (uint64_t y = 1; y + 1 < (uint64_t{1} << g.n_vertices()); ++y)
                if (decomposes_at(g, i, Subcurve(y))) { decomposes = true; break; }
            need(simple == !decomposes, "simplicity disagrees with the decomposing-subcurve scan");
            if (cut && EdgeSet(mask).size() < *cut)
                need(simple, "a non-free set below the minimum cut broke simplicity");
            ++masks;
        }
        if (!cut) continue;
        // A witness at the cut itself: the linking edges of a minimizer.
        for (uint64_t ym = 1; ym + 1 < (uint64_t{1} << g.n_vertices()); ++ym) {
            EdgeSet linking = g.linking_edges(Subcurve(ym));
            if (linking.size() != *cut) continue;
            need(!is_simple(g, make_sheaf(g, g.full(), linking, zero)),
                 "the minimum cut's own linking set failed to decompose");
            break;
        }
    }
    return std::to_string(graphs) + " graphs, " + std::to_string(masks) + " non-free sets";
}

// 6. Over four full censuses: the graded pieces of every semistable class
// glue back, for every anchor vertex, to a certified quasistable class with
// the same graded data; the all-non-free split representative of every
// multi-piece class is quasistable for no anchor.
std::string glue_round_trip() {
    struct Fixture {
        DualGraph g;
        Polarization pol;
    };
    std::vector<Fixture> fixtures_list;
    {
        DualGraph a = g2(2);
        Polarization pa(a, 1, {1, 1});
        fixtures_list.push_back({a, pa});
        DualGraph b = g2(3);
        Polarization pb(b, 1, {0, 0});
        fixtures_list.push_back({b, pb});
        DualGraph c = p3();
        Polarization pc(c, 1, {1, 1, 1});
        fixtures_list.push_back({c, pc});
        DualGraph d = cycle(3);
        Polarization pd(d, 1, {1, 1, 1});
        fixtures_list.push_back({d, pd});
    }
    long long classes = 0, splits = 0;
    for (const Fixture& f : fixtures_list) {
        auto res = enumerate_classes(f.g, f.pol, f.pol.target_chi(), EnumPredicate::Semistable, -1);
        for (const EnumeratedClass& c : res.classes) {
            JHClass cls = gr(f.g, c.sheaf, f.pol);
            for (int w = 0; w < f.g.n_vertices(); ++w) {
                CombSheaf built = build_quasistable(f.g, f.pol, cls.pieces, w);
                need(is_W_quasistable(f.g, built, f.pol, w).verdict,
                     "glued class failed its anchored certificate");
                need(gr(f.g, built, f.pol) == cls, "glued class grades to different pieces");
            }
            ++classes;
            if (cls.pieces.size() < 2) continue;
            CombSheaf split = split_representative(f.g, cls);
            for (int w = 0; w < f.g.n_vertices(); ++w)
                need(!is_W_quasistable(f.g, split, f.pol, w).verdict,
                     "split representative is anchored-quasistable somewhere");
            ++splits;
        }
    }
    return std::to_string(classes) + " classes, " + std::to_string(splits) + " split representatives";
}

// 7. With every vertex weight tight, the three-component chain carries a
// simple semistable class that no anchor vertex makes quasistable.
std::string quasistability_gap() {
    DualGraph g = p3();
    Polarization pol(g, 1, {1, 1, 1});
    auto res = enumerate_classes(g, pol, 3, EnumPredicate::SimpleSemistable, -1);
    long long gaps = 0;
    bool found_known = false;
    for (const EnumeratedClass& c : res.classes) {
        if (is_quasistable(g, c.sheaf, pol).verdict) continue;
        ++gaps;
        if (c.sheaf.nonfree.empty() && c.sheaf.deg == std::vector<long long>{1, 0, 1})
            found_known = true;
    }
    need(gaps >= 1, "every simple semistable class was quasistable somewhere");
    need(found_known, "the expected blocked class is missing from the census");
    return std::to_string(gaps) + " of " + std::to_string(res.classes.size()) +
           " simple semistable classes blocked everywhere";
}

// 8. Genus-one cycles with one to three components stratify their marked
// classes exactly as expected: one invertible class per vertex, one class
// per node, nothing deeper.
std::string genus_one() {
    for (int n = 1; n <= 3; ++n) {
        DualGraph g = cycle(n);
        Polarization pol(g, 1, std::vector<long long>(static_cast<size_t>(n), 1));
        Genus1Report rep = genus1_stratification(g, pol, 0);
        need(rep.matches_expected, "stratification off on the " + std::to_string(n) + "-cycle");
    }
    DualGraph g = cycle(3);
    Genus1Report rep = genus1_stratification(g, Polarization(g, 1, {1, 1, 1}), 2);
    need(rep.matches_expected, "stratification off for a non-default mark");
    return "cycles of length 1..3, two marks";
}

// 9. Weight fractions with denominators up to six judge every candidate
// exactly as their converted integer polarization, for semistability and
// stability alike.
std::string fraction_grid() {
    std::vector<DualGraph> graphs = {g2(1), g2(2), g2(3), p3()};
    long long compared = 0;
    for (const DualGraph& g : graphs) {
        int n = g.n_vertices();
        long long chi_o = g.euler_structure(g.full());
        for (int den = 2; den <= 6; ++den) {
            std::vector<std::vector<Rational>> grid;
            std::vector<long long> parts(static_cast<size_t>(n), 0);
            auto compose = [&](auto&& self, int v, long long left) -> void {
                if (v == n - 1) {
                    if (left < 1) return;
                    parts[static_cast<size_t>(v)] = left;
                    std::vector<Rational> a;
                    for (long long k : parts) a.push_back(Rational(k, den));
                    grid.push_back(std::move(a));
                    return;
                }
                for (long long k = 1; left - k >= n - 1 - v; ++k) {
                    parts[static_cast<size_t>(v)] = k;
                    self(self, v + 1, left - k);
                }
            };
            compose(compose, 0, den);
            for (const std::vector<Rational>& a : grid) {
                for (long long chi = 0; chi <= 3; ++chi) {
                    Polarization pol = seshadri_convert(g, a, chi);
                    need(pol.target_chi() == chi, "conversion changed the target");
                    for (uint64_t mask = 0; mask < (uint64_t{1} << g.n_edges()); ++mask) {
                        EdgeSet s(mask);
                        long long required = chi - chi_o - s.size();
                        std::vector<long long> d(static_cast<size_t>(n), 0);
                        auto scan = [&](auto&& self, int v, long long sum) -> void {
                            if (v == n - 1) {
                                long long last = required - sum;
                                if (last < -6 || last > 8) return;
                                d[static_cast<size_t>(v)] = last;
                                CombSheaf i = make_sheaf(g, g.full(), s, d);
                                bool ss = true, st = true;
                                for (uint64_t ym = 1; ym + 1 < (uint64_t{1} << n); ++ym) {
                                    Subcurve y(ym);
                                    Rational ay(0);
                                    for (int v2 : y.members()) ay = ay + a[static_cast<size_t>(v2)];
                                    Rational b = Rational(restricted_euler(g, i, y)) - ay * Rational(chi);
                                    if (b < Rational(0)) ss = false;
                                    if (!(b > Rational(0))) st = false;
                                }
                                need(is_semistable(g, i, pol).verdict == ss,
                                     "semistable verdict disagrees with the fraction scan");
                                need(is_stable(g, i, pol).verdict == st,
                                     "stable verdict disagrees with the fraction scan");
                                ++compared;
                                return;
                            }
                            for (long long x = -6; x <= 8; ++x) {
                                d[static_cast<size_t>(v)] = x;
                                self(self, v + 1, sum + x);
                            }
                        };
                        scan(scan, 0, 0);
                    }
                }
            }
        }
    }
    return std::to_string(compared) + " candidate classes compared";
}

} // namespace

int main() {
    struct Criterion {
        const char* what;
        std::function<std::string()> check;
    };
    std::vector<Criterion> criteria = {
        {"invertible ladders on two-component graphs match closed forms", ladders},
        {"marked class counts equal spanning tree counts with distinct twist tokens", torsor_counts},
        {"reduction walks terminate, replay, and are start-independent", reduction_walks},
        {"restricted chi is submodular with monotone free cross counts", submodularity},
        {"simplicity coincides with free connectivity and decomposing scans", simplicity},
        {"graded pieces glue back to certified classes for every anchor", glue_round_trip},
        {"a simple semistable class can be quasistable nowhere", quasistability_gap},
        {"genus-one cycles stratify one class per vertex and per node", genus_one},
        {"fraction weights and integer polarizations judge identically", fraction_grid},
    };
    int failed = 0;
    for (size_t k = 0; k < criteria.size(); ++k) {
        try {
            std::string summary = criteria[k].check();
            std::cout << "PASS criterion " << k + 1 << ": " << criteria[k].what << " (" << summary
                      << ")\n";
        } catch (const std::exception& e) {
            ++failed;
            std::cout << "FAIL criterion " << k + 1 << ": " << criteria[k].what << ": " << e.what()
                      << "\n";
        }
    }
    return failed == 0 ? 0 : 1;
}
