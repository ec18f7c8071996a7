#pragma once
/*
 * Slope data and the stability predicates.
 *
 * A polarization assigns every vertex an integer weight e_v with a common
 * positive rank r and r | sum(e_v). Slopes are q_v = e_v / r, and a sheaf i
 * competes only when chi(i) equals the target (sum e_v)/r; the comparison
 * function is
 *
 *   beta(Y) = chi(i restricted Y) - e_Y / r,
 *
 * computed exactly. Semistable means beta >= 0 on every nonempty proper
 * subcurve, stable means beta > 0, W-quasistable means semistable with
 * beta > 0 on every proper subcurve containing the vertex W. All scans run
 * over the sheaf's own support, so the same predicates serve the relative
 * checks inside filtrations.
 */

#include <vector>

#include "jacstab/rational.hpp"
#include "jacstab/sheaf.hpp"

namespace jacstab {

class Polarization {
public:
    Polarization(const DualGraph& g, long long rank, std::vector<long long> weights);

    long long rank() const { return rank_; }
    const std::vector<long long>& weights() const { return weights_; }
    long long weight(int v) const { return weights_[static_cast<size_t>(v)]; }
    long long weight_of(Subcurve y) const;

    Rational slope(int v) const { return Rational(weight(v), rank_); }
    Rational slope_of(Subcurve y) const { return Rational(weight_of(y), rank_); }

    // (sum e_v)/r, an integer by construction.
    long long target_chi() const;

private:
    long long rank_;
    std::vector<long long> weights_;
};

Rational beta(const DualGraph& g, const CombSheaf& i, const Polarization& pol, Subcurve y);

enum class Predicate {
    Semistable,
    Stable,
    Quasistable,
    WQuasistable,
    PQuasistable,
};

std::string predicate_name(Predicate p);

struct StabilityReport {
    Predicate predicate = Predicate::Semistable;
    bool verdict = false;
    int w = -1; // vertex parameter of W/P-quasistability, else -1

    // Minimum of beta over nonempty proper subcurves of the support and the
    // lexicographically smallest subcurve attaining it. Undefined (beta_min 0,
    // witness empty) when the support is a single vertex.
    Rational beta_min = Rational(0);
    Subcurve witness;

    // Subcurves certifying a false verdict, canonically sorted.
    std::vector<std::pair<Subcurve, Rational>> violations;
    // Proper subcurves with beta == 0, canonically sorted (diagnostic).
    std::vector<Subcurve> tight;
    // Quasistable only: vertices W whose W-quasistability holds.
    std::vector<int> qualifying;
};

StabilityReport is_semistable(const DualGraph& g, const CombSheaf& i, const Polarization& pol);
StabilityReport is_stable(const DualGraph& g, const CombSheaf& i, const Polarization& pol);
// Checks semistability first; w must lie in the support.
StabilityReport is_W_quasistable(const DualGraph& g, const CombSheaf& i, const Polarization& pol, int w);
StabilityReport is_quasistable(const DualGraph& g, const CombSheaf& i, const Polarization& pol);
// Delegates to W-quasistability at the marked vertex.
StabilityReport is_p_quasistable(const DualGraph& g, const CombSheaf& i, const Polarization& pol,
                                 const std::string& marking_id);

// Semistability decided by scanning only subcurves whose two sides are both
// connected in the ambient graph. Agrees with the full scan; kept as a
// separately exercised code path.
bool semistable_pruned(const DualGraph& g, const CombSheaf& i, const Polarization& pol);

// Vertex weights a_v > 0 with sum 1 and a target euler characteristic turn
// into the equivalent weight/rank datum: q_v = a_v * chi, r = lcm of the
// slope denominators, e_v = q_v * r.
Polarization seshadri_convert(const DualGraph& g, const std::vector<Rational>& a, long long chi);

// For a simple sheaf on the full curve, produces a polarization making it
// W-quasistable at the given vertex. Averages greedy vertices of the base
// polytope of Y -> chi(i restricted Y), one per proper subcurve containing w;
// simplicity gives every strict constraint positive slack. The result is
// re-verified before it is returned.
Polarization find_polarization(const DualGraph& g, const CombSheaf& i, int w);

} // namespace jacstab
