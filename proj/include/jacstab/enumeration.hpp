#pragma once
/*
 * Exhaustive class listings at a fixed polarization and euler characteristic.
 *
 * The non-free node set S ranges over all edge subsets; for each S the
 * multidegree lives in a finite box: semistability pins every vertex degree
 * between the bounds forced by beta({v}) >= 0 and by beta({v}) being at most
 * the number of free non-loop edges at v, and the total degree is determined.
 * Every candidate inside the box is then judged by the stability module
 * itself, so the windows only have to be complete, never sharp.
 */

#include <string>
#include <vector>

#include "jacstab/jordan_holder.hpp"
#include "jacstab/stability.hpp"

namespace jacstab {

enum class EnumPredicate {
    Semistable,
    Stable,
    Quasistable,
    WQuasistable,
    SigmaQuasistable,
    SimpleSemistable,
};

std::string enum_predicate_name(EnumPredicate p);

struct EnumOptions {
    int jobs = 1;
    bool invertible_only = false; // restrict to S empty
};

struct EnumeratedClass {
    CombSheaf sheaf;
    Rational beta_min;
    Subcurve witness;
};

struct EnumerationResult {
    // Canonical order: S bitmasks ascending in canonical edge order, then the
    // multidegree ascending lexicographically.
    std::vector<EnumeratedClass> classes;
    std::vector<long long> count_by_nonfree_size; // indexed by |S|
};

// w parametrizes WQuasistable (a vertex) and SigmaQuasistable (the marked
// vertex); pass -1 for the other predicates. chi must agree with the
// polarization target; the redundancy is a deliberate consistency check.
EnumerationResult enumerate_classes(const DualGraph& g, const Polarization& pol, long long chi,
                                    EnumPredicate pred, int w, const EnumOptions& opts = {});

// Number of distinct graded multisets among all semistable classes.
long long count_jh_classes(const DualGraph& g, const Polarization& pol, long long chi);

// Kirchhoff count via an integer determinant of the reduced Laplacian; loops
// never count. A single vertex has exactly one spanning tree.
long long spanning_tree_count(const DualGraph& g);

struct Genus1Report {
    long long invertible = 0;          // expected: one per vertex
    std::vector<long long> per_edge;   // |S| = 1 classes by edge; expected: one each
    long long deeper = 0;              // |S| >= 2 classes; expected: none
    bool matches_expected = false;
};

// For a genus-1 cycle (all vertex genera zero, every vertex of degree two)
// with integral slopes, counts the marked-quasistable classes by depth of
// their non-free node set.
Genus1Report genus1_stratification(const DualGraph& g, const Polarization& pol, int mark_vertex);

} // namespace jacstab
