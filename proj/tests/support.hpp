#pragma once
// Shared fixtures, exhaustive graph generators, and independent oracles.
// The oracles deliberately avoid the library's own subset machinery: they
// walk edges directly and use union-find for connectivity, so agreement with
// the library is a two-route check rather than a tautology.

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "jacstab/enumeration.hpp"

namespace fixtures {

using namespace jacstab;

// Two genus-0 vertices u, v joined by delta parallel edges.
inline DualGraph g2(int delta) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (int k = 0; k < delta; ++k) edges.emplace_back("u", "v");
    return DualGraph({{"u", 0}, {"v", 0}}, edges);
}

// Path v1 - v2 - v3, all genus 0.
inline DualGraph p3() {
    return DualGraph({{"v1", 0}, {"v2", 0}, {"v3", 0}}, {{"v1", "v2"}, {"v2", "v3"}});
}

// Cycle on n genus-0 vertices: a loop for n = 1, a banana for n = 2.
inline DualGraph cycle(int n) {
    std::vector<Vertex> vs;
    for (int v = 1; v <= n; ++v) vs.push_back({"v" + std::to_string(v), 0});
    std::vector<std::pair<std::string, std::string>> edges;
    if (n == 1) {
        edges.emplace_back("v1", "v1");
    } else {
        for (int v = 1; v <= n; ++v)
            edges.emplace_back("v" + std::to_string(v), "v" + std::to_string(v % n + 1));
    }
    return DualGraph(std::move(vs), std::move(edges));
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
    bool all_joined(int n) {
        for (int v = 1; v < n; ++v)
            if (find(v) != find(0)) return false;
        return true;
    }
};

inline bool connected_pairs(int n, const std::vector<std::pair<int, int>>& edges) {
    UnionFind uf(n);
    for (auto [a, b] : edges) uf.unite(a, b);
    return uf.all_joined(n);
}

inline DualGraph build(int n, const std::vector<std::pair<int, int>>& edges, long long genus = 0) {
    std::vector<Vertex> vs;
    for (int v = 0; v < n; ++v) vs.push_back({"v" + std::to_string(v + 1), genus});
    std::vector<std::pair<std::string, std::string>> es;
    for (auto [a, b] : edges)
        es.emplace_back("v" + std::to_string(a + 1), "v" + std::to_string(b + 1));
    return DualGraph(std::move(vs), std::move(es));
}

// Every connected simple graph on 1..max_n labeled vertices.
inline std::vector<DualGraph> all_connected_simple(int max_n) {
    std::vector<DualGraph> out;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
        for (uint64_t mask = 0; mask < (uint64_t{1} << pairs.size()); ++mask) {
            std::vector<std::pair<int, int>> edges;
            for (size_t k = 0; k < pairs.size(); ++k)
                if ((mask >> k) & 1) edges.push_back(pairs[k]);
            if (connected_pairs(n, edges)) out.push_back(build(n, edges));
        }
    }
    return out;
}

// Every connected multigraph (loops allowed) with at most max_edges edges,
// over labeled vertex counts that such an edge budget can connect.
inline std::vector<DualGraph> all_connected_multigraphs(int max_edges) {
    std::vector<DualGraph> out;
    for (int n = 1; n <= max_edges + 1; ++n) {
        std::vector<std::pair<int, int>> types;
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) types.emplace_back(a, b);
        for (int e = n - 1; e <= max_edges; ++e) {
            std::vector<std::pair<int, int>> current;
            auto exact = [&](auto&& self, size_t type, int remaining) -> void {
                if (remaining == 0) {
                    if (connected_pairs(n, current)) out.push_back(build(n, current));
                    return;
                }
                for (size_t t = type; t < types.size(); ++t) {
                    current.push_back(types[t]);
                    self(self, t, remaining - 1);
                    current.pop_back();
                }
            };
            exact(exact, 0, e);
        }
    }
    return out;
}

// Random tree plus extra edges (loops allowed), vertex genera in {0, 1}.
inline DualGraph random_connected_multigraph(std::mt19937_64& rng, int max_v, int max_e) {
    int n = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_v));
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v)
        edges.emplace_back(static_cast<int>(rng() % static_cast<uint64_t>(v)), v);
    int room = max_e - (n - 1);
    int extra = room > 0 ? static_cast<int>(rng() % static_cast<uint64_t>(room + 1)) : 0;
    for (int t = 0; t < extra; ++t)
        edges.emplace_back(static_cast<int>(rng() % static_cast<uint64_t>(n)),
                           static_cast<int>(rng() % static_cast<uint64_t>(n)));
    return build(n, edges, static_cast<long long>(rng() % 2));
}

// Minimum cut by direct edge-walk over every proper vertex subset.
inline std::optional<long long> oracle_min_cut(const DualGraph& g) {
    int n = g.n_vertices();
    if (n < 2) return std::nullopt;
    std::optional<long long> best;
    for (uint64_t mask = 1; mask + 1 < (uint64_t{1} << n); ++mask) {
        long long cut = 0;
        for (int e = 0; e < g.n_edges(); ++e) {
            bool a = (mask >> g.edge(e).a) & 1, b = (mask >> g.edge(e).b) & 1;
            if (a != b) ++cut;
        }
        if (!best || cut < *best) best = cut;
    }
    return best;
}

// Spanning trees by explicit enumeration of (n-1)-edge subsets.
inline long long oracle_spanning_trees(const DualGraph& g) {
    int n = g.n_vertices(), m = g.n_edges();
    if (n == 1) return 1;
    long long count = 0;
    for (uint64_t mask = 0; mask < (uint64_t{1} << m); ++mask) {
        if (__builtin_popcountll(mask) != n - 1) continue;
        UnionFind uf(n);
        bool loopy = false;
        for (int e = 0; e < m; ++e)
            if ((mask >> e) & 1) {
                if (g.is_loop(e)) loopy = true;
                uf.unite(g.edge(e).a, g.edge(e).b);
            }
        if (!loopy && uf.all_joined(n)) ++count;
    }
    return count;
}

// Free-subgraph connectivity by union-find, the oracle side of is_simple.
inline bool oracle_free_connected(const DualGraph& g, EdgeSet nonfree) {
    UnionFind uf(g.n_vertices());
    for (int e = 0; e < g.n_edges(); ++e)
        if (!nonfree.contains(e)) uf.unite(g.edge(e).a, g.edge(e).b);
    return uf.all_joined(g.n_vertices());
}

inline long long small(std::mt19937_64& rng, long long span = 3) {
    return static_cast<long long>(rng() % static_cast<uint64_t>(2 * span + 1)) - span;
}

// Any sheaf with the given non-free set; invertible when s is empty.
inline CombSheaf random_sheaf(const DualGraph& g, std::mt19937_64& rng, EdgeSet s) {
    std::vector<long long> d(static_cast<size_t>(g.n_vertices()));
    for (auto& x : d) x = small(rng);
    return make_sheaf(g, g.full(), s, d);
}

// Polarization whose target matches chi(i), so the stability scans accept it.
inline Polarization matching_polarization(const DualGraph& g, const CombSheaf& i,
                                          std::mt19937_64& rng, long long rank = 1) {
    std::vector<long long> e(static_cast<size_t>(g.n_vertices()));
    long long head = 0;
    for (int v = 0; v + 1 < g.n_vertices(); ++v) {
        e[static_cast<size_t>(v)] = small(rng);
        head += e[static_cast<size_t>(v)];
    }
    e[static_cast<size_t>(g.n_vertices() - 1)] = rank * euler_char(g, i) - head;
    return Polarization(g, rank, e);
}

} // namespace fixtures
