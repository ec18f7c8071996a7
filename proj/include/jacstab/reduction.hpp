#pragma once
/*
 * Twists and reduction walks for invertible classes.
 *
 * Twisting at a subcurve z moves the multidegree by the graph Laplacian
 * applied to z's indicator: every non-loop edge across the cut moves one
 * degree unit from its outside endpoint to its inside endpoint. chi is
 * preserved; loops never matter. The two walks are
 *
 *   semistable_reduce: while some beta < 0, fire the largest subcurve
 *     attaining the minimum; the pair (min beta, -|fired|) strictly grows
 *     lexicographically, which forces termination,
 *   sigma_reduce: from a semistable class, fire the smallest beta == 0
 *     subcurve containing the marked vertex until that subcurve is the whole
 *     curve; the fired subcurves strictly grow.
 *
 * Both walks carry a hard iteration cap derived from the starting betas;
 * exceeding it is reported as a defect, never as a silent stop.
 */

#include <string>
#include <vector>

#include "jacstab/stability.hpp"

namespace jacstab {

struct ReductionCapError : InvariantError {
    explicit ReductionCapError(const std::string& what) : InvariantError(what) {}
};

struct TwistStep {
    Subcurve fired;
    Rational beta_min_before;
};

struct TwistTrace {
    CombSheaf start;
    std::vector<TwistStep> steps;
    CombSheaf final;
};

// Laplacian move at z. Needs an invertible class on the full curve and a
// nonempty proper z (the full-curve twist is the identity and is rejected).
CombSheaf twist(const DualGraph& g, const CombSheaf& i, Subcurve z);

// Iteration ceiling used by both walks, computed from the starting class.
long long reduction_cap(const DualGraph& g, const CombSheaf& i, const Polarization& pol);

TwistTrace semistable_reduce(const DualGraph& g, const CombSheaf& i, const Polarization& pol);

// w is the marked vertex; the input must already be semistable.
TwistTrace sigma_reduce(const DualGraph& g, const CombSheaf& i, const Polarization& pol, int w);

// Canonical representative of deg modulo the lattice spanned by the Laplacian
// columns, reduced coordinatewise against a triangular lattice basis. Two
// multidegrees of equal total degree are twist-equivalent iff their
// representatives agree.
std::vector<long long> coset_representative(const DualGraph& g, const std::vector<long long>& deg);

// Stable token naming the twist class of an invertible sheaf.
std::string class_id(const DualGraph& g, const CombSheaf& i);

} // namespace jacstab
