#pragma once
/*
 * JSON document formats.
 *
 * graph         {"vertices":[{"id":"u","genus":0},...],
 *                "edges":[["u","v"],...],
 *                "markings":[{"id":"sigma","on":"u"}]}
 * sheaf         {"nonfree":[["u","v",0],...],"multidegree":{"u":1,"v":0}}
 * polarization  {"rank":2,"weights":{"u":1,"v":-1}}
 * seshadri      {"a":{"u":"1/3","v":"2/3"},"chi":3}
 * parts         {"parts":[{"support":["u"],"nonfree":[],"multidegree":{"u":0}},...]}
 *
 * Edges are addressed by endpoint ids plus the parallel index among equal
 * endpoint pairs; a two-element edge array means parallel index 0. Rationals
 * are "p/q" strings. Objects keyed by vertex id must name every vertex of
 * their scope, and renderers emit keys in canonical order so that equal data
 * produces identical bytes.
 */

#include <json.hpp>

#include "jacstab/enumeration.hpp"
#include "jacstab/jordan_holder.hpp"
#include "jacstab/reduction.hpp"

namespace jacstab {

using ordered_json = nlohmann::ordered_json;

// All parsers throw InputError with a one-line diagnostic naming the
// offending object.
DualGraph parse_graph(const ordered_json& doc);
CombSheaf parse_sheaf(const DualGraph& g, const ordered_json& doc);
Polarization parse_polarization(const DualGraph& g, const ordered_json& doc);
Polarization parse_seshadri(const DualGraph& g, const ordered_json& doc);
std::vector<JHPiece> parse_parts(const DualGraph& g, const ordered_json& doc);

ordered_json render_subcurve(const DualGraph& g, Subcurve y);
ordered_json render_edge(const DualGraph& g, int e);
ordered_json render_edge_set(const DualGraph& g, EdgeSet s);
// Support key only when the sheaf lives on a proper subcurve.
ordered_json render_sheaf(const DualGraph& g, const CombSheaf& i);
ordered_json render_polarization(const DualGraph& g, const Polarization& pol);
// mark: marking id to attach to a P-quasistability report, empty otherwise.
ordered_json render_report(const DualGraph& g, const StabilityReport& rep,
                           const std::string& mark = "");
ordered_json render_filtration(const DualGraph& g, const JHFiltration& f);
ordered_json render_class(const DualGraph& g, const JHClass& cls);
ordered_json render_trace(const DualGraph& g, const TwistTrace& t);
ordered_json render_enumeration(const DualGraph& g, const EnumerationResult& res,
                                EnumPredicate pred, long long chi);

} // namespace jacstab
