#pragma once
/*
 * Filtrations of semistable classes by stable pieces, their associated graded
 * multiset, and the reverse construction that glues a multiset of tight
 * stable pieces back into a quasistable class.
 *
 * One filtration step peels an inclusion-minimal subcurve with beta == 0 off
 * the current stage (minimality makes the restricted piece stable) and
 * continues on the kernel. Which minimal subcurve is peeled is a tie-break;
 * the graded multiset does not depend on it, and both tie-break rules are
 * kept so that independence stays an executable check.
 */

#include <vector>

#include "jacstab/stability.hpp"

namespace jacstab {

// Tie-break among the inclusion-minimal beta == 0 subcurves of a stage.
enum class ChoiceRule { MinLex, MaxLex };

struct JHPiece {
    Subcurve support;
    CombSheaf piece; // piece.ambient == support

    friend bool operator==(const JHPiece& a, const JHPiece& b) {
        return a.support == b.support && a.piece == b.piece;
    }
    friend bool operator!=(const JHPiece& a, const JHPiece& b) { return !(a == b); }
};

struct JHStep {
    Subcurve stage;    // where the running kernel lives
    CombSheaf state;   // the running kernel itself
    Subcurve peeled;   // subcurve peeled at this step
    CombSheaf piece;   // stable quotient supported on peeled
};

struct JHFiltration {
    std::vector<JHStep> steps; // last step peels its whole stage
};

// Canonically sorted multiset of (support, piece). Equality is numerical
// equality of the sorted data.
struct JHClass {
    std::vector<JHPiece> pieces;

    friend bool operator==(const JHClass& a, const JHClass& b);
    friend bool operator!=(const JHClass& a, const JHClass& b) { return !(a == b); }
};

JHClass canonical_class(std::vector<JHPiece> pieces);

// Requires a semistable input; stages and pieces are re-checked against the
// theorems backing the procedure and failures raise InvariantError.
JHFiltration jh_filtration(const DualGraph& g, const CombSheaf& i, const Polarization& pol,
                           ChoiceRule rule = ChoiceRule::MinLex);

JHClass gr(const DualGraph& g, const CombSheaf& i, const Polarization& pol,
           ChoiceRule rule = ChoiceRule::MinLex);

bool jh_equivalent(const DualGraph& g, const CombSheaf& i, const CombSheaf& j, const Polarization& pol);

// Direct sum of the class's pieces: every edge between two distinct supports
// becomes a non-free node. gr of the result is the class again.
CombSheaf split_representative(const DualGraph& g, const JHClass& cls);

// Glues tight stable pieces covering the full curve into a single class that
// is W-quasistable at w: parts are ordered so that w's part is deepest and
// every later part touches the union of the earlier ones; each gluing step
// keeps exactly one linking edge free (the canonically smallest) and raises
// the degree at its deeper-side endpoint. Postconditions (gr equals the input
// multiset, W-quasistability) are checked.
CombSheaf build_quasistable(const DualGraph& g, const Polarization& pol,
                            const std::vector<JHPiece>& parts, int w);

} // namespace jacstab
