#include "jacstab/json_io.hpp"

#include <algorithm>

namespace jacstab {

namespace {

const ordered_json& field(const ordered_json& doc, const char* key, const char* object) {
    auto it = doc.find(key);
    if (it == doc.end())
        throw InputError(std::string(object) + " document is missing the '" + key + "' field");
    return *it;
}

long long int_field(const ordered_json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw InputError(where + " must be an integer");
    return j.get<long long>();
}

Rational rational_field(const ordered_json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    throw InputError(where + " must be an integer or a \"p/q\" string");
}

std::string id_field(const ordered_json& j, const std::string& where) {
    if (!j.is_string() || j.get<std::string>().empty())
        throw InputError(where + " must be a nonempty string");
    return j.get<std::string>();
}

// Edge by ["u","v"] or ["u","v",k]; k counts parallels in canonical order.
int edge_field(const DualGraph& g, const ordered_json& j, const std::string& where) {
    if (!j.is_array() || j.size() < 2 || j.size() > 3)
        throw InputError(where + " must be [\"u\",\"v\"] or [\"u\",\"v\",k]");
    int a = g.vertex_index(id_field(j[0], where + " endpoint"));
    int b = g.vertex_index(id_field(j[1], where + " endpoint"));
    if (a > b) std::swap(a, b);
    long long k = j.size() == 3 ? int_field(j[2], where + " parallel index") : 0;
    for (int e = 0; e < g.n_edges(); ++e)
        if (g.edge(e).a == a && g.edge(e).b == b && g.edge(e).parallel == k) return e;
    throw InputError(where + " names no edge: (" + g.vertex(a).id + "," + g.vertex(b).id + "," +
                     std::to_string(k) + ")");
}

// Integer map keyed by vertex id, one entry per member of scope, no strays.
std::vector<long long> vertex_map(const DualGraph& g, Subcurve scope, const ordered_json& j,
                                  const std::string& what) {
    if (!j.is_object()) throw InputError(what + " must be an object keyed by vertex id");
    std::vector<long long> out(static_cast<size_t>(g.n_vertices()), 0);
    for (const auto& [key, value] : j.items()) {
        int v = g.vertex_index(key);
        if (!scope.contains(v))
            throw InputError(what + " names vertex '" + key + "' outside its support");
        out[static_cast<size_t>(v)] = int_field(value, what + " entry '" + key + "'");
    }
    for (int v : scope.members())
        if (j.find(g.vertex(v).id) == j.end())
            throw InputError(what + " is missing vertex '" + g.vertex(v).id + "'");
    return out;
}

} // namespace

DualGraph parse_graph(const ordered_json& doc) {
    if (!doc.is_object()) throw InputError("graph document must be an object");
    const ordered_json& vs = field(doc, "vertices", "graph");
    if (!vs.is_array() || vs.empty())
        throw InputError("graph 'vertices' must be a nonempty array");
    std::vector<Vertex> vertices;
    for (const ordered_json& v : vs) {
        if (!v.is_object()) throw InputError("graph vertex entries must be objects");
        Vertex vx;
        vx.id = id_field(field(v, "id", "graph vertex"), "graph vertex id");
        vx.genus = int_field(field(v, "genus", "graph vertex"), "genus of '" + vx.id + "'");
        vertices.push_back(vx);
    }
    std::vector<std::pair<std::string, std::string>> edges;
    if (auto it = doc.find("edges"); it != doc.end()) {
        if (!it->is_array()) throw InputError("graph 'edges' must be an array");
        for (const ordered_json& e : *it) {
            if (!e.is_array() || e.size() != 2)
                throw InputError("graph edges must be [\"u\",\"v\"] pairs");
            edges.emplace_back(id_field(e[0], "graph edge endpoint"),
                               id_field(e[1], "graph edge endpoint"));
        }
    }
    std::vector<std::pair<std::string, std::string>> markings;
    if (auto it = doc.find("markings"); it != doc.end()) {
        if (!it->is_array()) throw InputError("graph 'markings' must be an array");
        for (const ordered_json& m : *it) {
            if (!m.is_object()) throw InputError("graph marking entries must be objects");
            markings.emplace_back(id_field(field(m, "id", "marking"), "marking id"),
                                  id_field(field(m, "on", "marking"), "marking vertex"));
        }
    }
    return DualGraph(std::move(vertices), std::move(edges), std::move(markings));
}

CombSheaf parse_sheaf(const DualGraph& g, const ordered_json& doc) {
    if (!doc.is_object()) throw InputError("sheaf document must be an object");
    EdgeSet nonfree;
    if (auto it = doc.find("nonfree"); it != doc.end()) {
        if (!it->is_array()) throw InputError("sheaf 'nonfree' must be an array of edges");
        for (const ordered_json& e : *it) {
            int idx = edge_field(g, e, "sheaf non-free edge");
            if (nonfree.contains(idx))
                throw InputError("sheaf lists non-free edge " + g.edge_to_string(idx) + " twice");
            nonfree = nonfree.with(idx);
        }
    }
    std::vector<long long> deg =
        vertex_map(g, g.full(), field(doc, "multidegree", "sheaf"), "sheaf multidegree");
    return make_sheaf(g, g.full(), nonfree, deg);
}

Polarization parse_polarization(const DualGraph& g, const ordered_json& doc) {
    if (!doc.is_object()) throw InputError("polarization document must be an object");
    long long rank = int_field(field(doc, "rank", "polarization"), "polarization rank");
    std::vector<long long> weights =
        vertex_map(g, g.full(), field(doc, "weights", "polarization"), "polarization weights");
    return Polarization(g, rank, std::move(weights));
}

Polarization parse_seshadri(const DualGraph& g, const ordered_json& doc) {
    if (!doc.is_object()) throw InputError("seshadri document must be an object");
    const ordered_json& amap = field(doc, "a", "seshadri");
    if (!amap.is_object()) throw InputError("seshadri 'a' must be an object keyed by vertex id");
    std::vector<Rational> a(static_cast<size_t>(g.n_vertices()), Rational(0));
    for (const auto& [key, value] : amap.items()) {
        int v = g.vertex_index(key);
        a[static_cast<size_t>(v)] = rational_field(value, "seshadri weight '" + key + "'");
    }
    for (int v = 0; v < g.n_vertices(); ++v)
        if (amap.find(g.vertex(v).id) == amap.end())
            throw InputError("seshadri weights are missing vertex '" + g.vertex(v).id + "'");
    long long chi = int_field(field(doc, "chi", "seshadri"), "seshadri chi");
    return seshadri_convert(g, a, chi);
}

std::vector<JHPiece> parse_parts(const DualGraph& g, const ordered_json& doc) {
    if (!doc.is_object()) throw InputError("parts document must be an object");
    const ordered_json& arr = field(doc, "parts", "parts");
    if (!arr.is_array() || arr.empty())
        throw InputError("parts document needs a nonempty 'parts' array");
    std::vector<JHPiece> out;
    for (const ordered_json& p : arr) {
        if (!p.is_object()) throw InputError("part entries must be objects");
        const ordered_json& sup = field(p, "support", "part");
        if (!sup.is_array() || sup.empty())
            throw InputError("part 'support' must be a nonempty array of vertex ids");
        Subcurve support;
        for (const ordered_json& id : sup)
            support = support.with(g.vertex_index(id_field(id, "part support entry")));
        EdgeSet nonfree;
        if (auto it = p.find("nonfree"); it != p.end()) {
            if (!it->is_array()) throw InputError("part 'nonfree' must be an array of edges");
            for (const ordered_json& e : *it) nonfree = nonfree.with(edge_field(g, e, "part non-free edge"));
        }
        std::vector<long long> deg =
            vertex_map(g, support, field(p, "multidegree", "part"), "part multidegree");
        out.push_back({support, make_sheaf(g, support, nonfree, deg)});
    }
    return out;
}

ordered_json render_subcurve(const DualGraph& g, Subcurve y) {
    ordered_json out = ordered_json::array();
    for (int v : y.members()) out.push_back(g.vertex(v).id);
    return out;
}

ordered_json render_edge(const DualGraph& g, int e) {
    return ordered_json::array(
        {g.vertex(g.edge(e).a).id, g.vertex(g.edge(e).b).id, g.edge(e).parallel});
}

ordered_json render_edge_set(const DualGraph& g, EdgeSet s) {
    ordered_json out = ordered_json::array();
    for (int e : s.members()) out.push_back(render_edge(g, e));
    return out;
}

namespace {

ordered_json render_multidegree(const DualGraph& g, Subcurve scope, const std::vector<long long>& deg) {
    ordered_json out = ordered_json::object();
    for (int v : scope.members()) out[g.vertex(v).id] = deg[static_cast<size_t>(v)];
    return out;
}

} // namespace

ordered_json render_sheaf(const DualGraph& g, const CombSheaf& i) {
    ordered_json out = ordered_json::object();
    if (i.ambient != g.full()) out["support"] = render_subcurve(g, i.ambient);
    out["nonfree"] = render_edge_set(g, i.nonfree);
    out["multidegree"] = render_multidegree(g, i.ambient, i.deg);
    return out;
}

ordered_json render_polarization(const DualGraph& g, const Polarization& pol) {
    ordered_json out = ordered_json::object();
    out["rank"] = pol.rank();
    ordered_json w = ordered_json::object();
    for (int v = 0; v < g.n_vertices(); ++v) w[g.vertex(v).id] = pol.weight(v);
    out["weights"] = w;
    return out;
}

ordered_json render_report(const DualGraph& g, const StabilityReport& rep, const std::string& mark) {
    ordered_json out = ordered_json::object();
    out["predicate"] = predicate_name(rep.predicate);
    out["verdict"] = rep.verdict;
    if (!mark.empty()) out["mark"] = mark;
    if (rep.w >= 0) out["w"] = g.vertex(rep.w).id;
    out["beta_min"] = rep.beta_min.to_string();
    out["witness"] = render_subcurve(g, rep.witness);
    ordered_json viol = ordered_json::array();
    for (const auto& [y, b] : rep.violations)
        viol.push_back({{"subcurve", render_subcurve(g, y)}, {"beta", b.to_string()}});
    out["violations"] = viol;
    ordered_json tight = ordered_json::array();
    for (Subcurve y : rep.tight) tight.push_back(render_subcurve(g, y));
    out["tight"] = tight;
    if (rep.predicate == Predicate::Quasistable) {
        ordered_json q = ordered_json::array();
        for (int v : rep.qualifying) q.push_back(g.vertex(v).id);
        out["qualifying"] = q;
    }
    return out;
}

ordered_json render_filtration(const DualGraph& g, const JHFiltration& f) {
    ordered_json out = ordered_json::array();
    for (const JHStep& s : f.steps) {
        ordered_json step = ordered_json::object();
        step["stage"] = render_subcurve(g, s.stage);
        step["state"] = render_sheaf(g, s.state);
        step["peeled"] = render_subcurve(g, s.peeled);
        step["piece"] = render_sheaf(g, s.piece);
        out.push_back(step);
    }
    return out;
}

ordered_json render_class(const DualGraph& g, const JHClass& cls) {
    ordered_json out = ordered_json::array();
    for (const JHPiece& p : cls.pieces) {
        ordered_json piece = ordered_json::object();
        piece["support"] = render_subcurve(g, p.support);
        piece["nonfree"] = render_edge_set(g, p.piece.nonfree);
        piece["multidegree"] = render_multidegree(g, p.support, p.piece.deg);
        out.push_back(piece);
    }
    return out;
}

ordered_json render_trace(const DualGraph& g, const TwistTrace& t) {
    ordered_json out = ordered_json::object();
    out["start"] = render_sheaf(g, t.start);
    ordered_json steps = ordered_json::array();
    for (const TwistStep& s : t.steps)
        steps.push_back({{"fired", render_subcurve(g, s.fired)},
                         {"beta_min", s.beta_min_before.to_string()}});
    out["steps"] = steps;
    out["final"] = render_sheaf(g, t.final);
    return out;
}

ordered_json render_enumeration(const DualGraph& g, const EnumerationResult& res,
                                EnumPredicate pred, long long chi) {
    ordered_json out = ordered_json::object();
    out["predicate"] = enum_predicate_name(pred);
    out["chi"] = chi;
    out["total"] = res.classes.size();
    out["count_by_nonfree_size"] = res.count_by_nonfree_size;
    ordered_json classes = ordered_json::array();
    for (const EnumeratedClass& c : res.classes) {
        ordered_json cls = render_sheaf(g, c.sheaf);
        cls["beta_min"] = c.beta_min.to_string();
        cls["witness"] = render_subcurve(g, c.witness);
        classes.push_back(cls);
    }
    out["classes"] = classes;
    return out;
}

} // namespace jacstab
