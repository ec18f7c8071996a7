#include "jacstab/curve.hpp"

#include <algorithm>
#include <cstdlib>

#include "jacstab/rational.hpp"

namespace jacstab {

namespace {

constexpr int kMaxVertices = 62;
constexpr int kMaxEdges = 62;
constexpr long long kDefaultScanBudget = 4'000'000;

} // namespace

long long scan_budget() {
    if (const char* env = std::getenv("JACSTAB_MAX_SUBSETS")) {
        try {
            size_t used = 0;
            long long v = std::stoll(env, &used);
            if (used == std::string(env).size() && v > 0) return v;
        } catch (const std::exception&) {
            // fall through to the rejection below
        }
        throw InputError("JACSTAB_MAX_SUBSETS must be a positive integer, got '" + std::string(env) + "'");
    }
    return kDefaultScanBudget;
}

void require_scan_budget(long long need, const std::string& what) {
    long long budget = scan_budget();
    if (need > budget)
        throw InputError(what + " needs " + std::to_string(need) + " subset visits, over the budget of " +
                         std::to_string(budget) + " (raise JACSTAB_MAX_SUBSETS to allow it)");
}

DualGraph::DualGraph(std::vector<Vertex> vertices,
                     std::vector<std::pair<std::string, std::string>> edges,
                     std::vector<std::pair<std::string, std::string>> markings) {
    if (vertices.empty()) throw InputError("graph needs at least one vertex");
    if (vertices.size() > kMaxVertices)
        throw InputError("graph exceeds the supported vertex count (" + std::to_string(kMaxVertices) + ")");
    if (edges.size() > kMaxEdges)
        throw InputError("graph exceeds the supported edge count (" + std::to_string(kMaxEdges) + ")");

    std::sort(vertices.begin(), vertices.end(),
              [](const Vertex& l, const Vertex& r) { return l.id < r.id; });
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i].id.empty()) throw InputError("vertex with empty id");
        if (i > 0 && vertices[i].id == vertices[i - 1].id)
            throw InputError("duplicate vertex id '" + vertices[i].id + "'");
        if (vertices[i].genus < 0)
            throw InputError("vertex '" + vertices[i].id + "' has negative genus");
    }
    vertices_ = std::move(vertices);

    auto index_of = [&](const std::string& id) {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                                   [](const Vertex& v, const std::string& key) { return v.id < key; });
        if (it == vertices_.end() || it->id != id)
            throw InputError("edge endpoint '" + id + "' is not a vertex");
        return static_cast<int>(it - vertices_.begin());
    };

    struct Raw { int a, b; size_t pos; };
    std::vector<Raw> raw;
    raw.reserve(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) {
        int a = index_of(edges[i].first);
        int b = index_of(edges[i].second);
        if (a > b) std::swap(a, b);
        raw.push_back({a, b, i});
    }
    std::sort(raw.begin(), raw.end(), [](const Raw& l, const Raw& r) {
        if (l.a != r.a) return l.a < r.a;
        if (l.b != r.b) return l.b < r.b;
        return l.pos < r.pos;
    });
    edges_.reserve(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) {
        int parallel = 0;
        if (i > 0 && raw[i].a == raw[i - 1].a && raw[i].b == raw[i - 1].b)
            parallel = edges_.back().parallel + 1;
        edges_.push_back({raw[i].a, raw[i].b, parallel});
    }

    degree_.assign(vertices_.size(), 0);
    loops_.assign(vertices_.size(), 0);
    for (const Edge& e : edges_) {
        degree_[static_cast<size_t>(e.a)] += 1;
        degree_[static_cast<size_t>(e.b)] += 1;
        if (e.a == e.b) loops_[static_cast<size_t>(e.a)] += 1;
    }

    for (const auto& [id, on] : markings) {
        if (id.empty()) throw InputError("marking with empty id");
        for (const Marking& m : markings_)
            if (m.id == id) throw InputError("duplicate marking id '" + id + "'");
        int v = 0;
        try {
            v = index_of(on);
        } catch (const InputError&) {
            throw InputError("marking '" + id + "' sits on unknown vertex '" + on + "'");
        }
        markings_.push_back({id, v});
    }

    if (!connected(full())) {
        std::string parts;
        for (const Subcurve& c : components_within(full(), all_edges())) {
            if (!parts.empty()) parts += " ";
            parts += subcurve_to_string(c);
        }
        throw InputError("graph is disconnected; components: " + parts);
    }
}

int DualGraph::vertex_index(const std::string& id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                               [](const Vertex& v, const std::string& key) { return v.id < key; });
    if (it == vertices_.end() || it->id != id) throw InputError("unknown vertex id '" + id + "'");
    return static_cast<int>(it - vertices_.begin());
}

int DualGraph::marking_vertex(const std::string& id) const {
    for (const Marking& m : markings_)
        if (m.id == id) return m.vertex;
    throw InputError("unknown marking id '" + id + "'");
}

long long DualGraph::genus() const {
    long long g = 0;
    for (const Vertex& v : vertices_) g = checked_add(g, v.genus);
    return checked_add(g, n_edges() - n_vertices() + 1);
}

EdgeSet DualGraph::internal_edges(Subcurve y) const {
    EdgeSet out;
    for (int e = 0; e < n_edges(); ++e)
        if (y.contains(edges_[static_cast<size_t>(e)].a) && y.contains(edges_[static_cast<size_t>(e)].b))
            out = out.with(e);
    return out;
}

EdgeSet DualGraph::linking_edges(Subcurve y) const {
    EdgeSet out;
    for (int e = 0; e < n_edges(); ++e)
        if (y.contains(edges_[static_cast<size_t>(e)].a) != y.contains(edges_[static_cast<size_t>(e)].b))
            out = out.with(e);
    return out;
}

long long DualGraph::euler_structure(Subcurve y) const {
    if (y.empty()) throw InputError("euler characteristic of the empty subcurve is undefined");
    if (!y.subset_of(full())) throw InputError("subcurve has vertices outside the graph");
    long long chi = 0;
    for (int v : y.members()) chi = checked_add(chi, 1 - vertices_[static_cast<size_t>(v)].genus);
    return checked_sub(chi, internal_edges(y).size());
}

std::optional<long long> DualGraph::min_cut() const {
    int n = n_vertices();
    if (n == 1) return std::nullopt;
    // Every cut is seen from the side containing vertex 0.
    long long best = -1;
    uint64_t fullbits = full().bits();
    for (uint64_t m = 1; m < fullbits; m += 2) {
        long long cut = linking_edges(Subcurve(m)).size();
        if (best < 0 || cut < best) best = cut;
    }
    return best;
}

bool DualGraph::connected_within(Subcurve y, EdgeSet allowed) const {
    if (y.empty()) return false;
    return components_within(y, allowed).size() == 1;
}

std::vector<Subcurve> DualGraph::components_within(Subcurve y, EdgeSet allowed) const {
    std::vector<Subcurve> comps;
    uint64_t left = y.bits();
    while (left) {
        int seed = __builtin_ctzll(left);
        uint64_t comp = uint64_t{1} << seed;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int e : allowed.members()) {
                const Edge& ed = edges_[static_cast<size_t>(e)];
                if (!y.contains(ed.a) || !y.contains(ed.b)) continue;
                uint64_t abit = uint64_t{1} << ed.a, bbit = uint64_t{1} << ed.b;
                if ((comp & abit) && !(comp & bbit)) { comp |= bbit; grew = true; }
                if ((comp & bbit) && !(comp & abit)) { comp |= abit; grew = true; }
            }
        }
        comps.emplace_back(comp);
        left &= ~comp;
    }
    std::sort(comps.begin(), comps.end(), lex_less);
    return comps;
}

std::vector<std::vector<long long>> DualGraph::reduced_laplacian() const {
    int n = n_vertices();
    std::vector<std::vector<long long>> lap(static_cast<size_t>(n), std::vector<long long>(static_cast<size_t>(n), 0));
    for (const Edge& e : edges_) {
        if (e.a == e.b) continue;
        lap[static_cast<size_t>(e.a)][static_cast<size_t>(e.a)] += 1;
        lap[static_cast<size_t>(e.b)][static_cast<size_t>(e.b)] += 1;
        lap[static_cast<size_t>(e.a)][static_cast<size_t>(e.b)] -= 1;
        lap[static_cast<size_t>(e.b)][static_cast<size_t>(e.a)] -= 1;
    }
    lap.pop_back();
    for (auto& row : lap) row.pop_back();
    return lap;
}

std::string DualGraph::subcurve_to_string(Subcurve y) const {
    std::string out = "{";
    bool first = true;
    for (int v : y.members()) {
        if (!first) out += ",";
        out += vertices_[static_cast<size_t>(v)].id;
        first = false;
    }
    return out + "}";
}

std::string DualGraph::edge_to_string(int e) const {
    const Edge& ed = edges_[static_cast<size_t>(e)];
    return "(" + vertices_[static_cast<size_t>(ed.a)].id + "," + vertices_[static_cast<size_t>(ed.b)].id + "," +
           std::to_string(ed.parallel) + ")";
}

} // namespace jacstab
