#pragma once
/*
 * Dual graph of a nodal curve. Vertices are irreducible components and carry
 * the component's geometric genus; edges are nodes, self-loops model nodes of
 * an irreducible component. Loops count in internal edge sets and in chi(O_Y)
 * but never appear in the cut between disjoint subcurves.
 *
 * Canonical order, fixed once at construction and used by every report and
 * every lexicographic tie-break: vertices ascending by id string, edges
 * ascending by (smaller endpoint id, larger endpoint id, input position).
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jacstab {

// Malformed or out-of-contract input. CLI exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A theorem-backed internal check failed. CLI exit code 3.
struct InvariantError : std::logic_error {
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

// Subset of the vertices of one fixed graph, as a bitmask in canonical order.
class Subcurve {
public:
    Subcurve() = default;
    explicit Subcurve(uint64_t bits) : bits_(bits) {}

    uint64_t bits() const { return bits_; }
    bool empty() const { return bits_ == 0; }
    int size() const { return __builtin_popcountll(bits_); }
    bool contains(int v) const { return (bits_ >> v) & 1u; }

    Subcurve with(int v) const { return Subcurve(bits_ | (uint64_t{1} << v)); }
    Subcurve without(int v) const { return Subcurve(bits_ & ~(uint64_t{1} << v)); }

    friend Subcurve operator|(Subcurve a, Subcurve b) { return Subcurve(a.bits_ | b.bits_); }
    friend Subcurve operator&(Subcurve a, Subcurve b) { return Subcurve(a.bits_ & b.bits_); }
    Subcurve minus(Subcurve o) const { return Subcurve(bits_ & ~o.bits_); }
    bool subset_of(Subcurve o) const { return (bits_ & ~o.bits_) == 0; }
    bool intersects(Subcurve o) const { return (bits_ & o.bits_) != 0; }

    friend bool operator==(Subcurve a, Subcurve b) { return a.bits_ == b.bits_; }
    friend bool operator!=(Subcurve a, Subcurve b) { return a.bits_ != b.bits_; }

    std::vector<int> members() const {
        std::vector<int> out;
        for (uint64_t m = bits_; m; m &= m - 1) out.push_back(__builtin_ctzll(m));
        return out;
    }

private:
    uint64_t bits_ = 0;
};

// Total order on subcurves: compare member index sequences lexicographically,
// a strict prefix sorting first. {v0} < {v0,v1} < {v1}. Reports use it to pick
// deterministic witnesses.
inline bool lex_less(Subcurve a, Subcurve b) {
    uint64_t x = a.bits(), y = b.bits();
    while (x && y) {
        int i = __builtin_ctzll(x), j = __builtin_ctzll(y);
        if (i != j) return i < j;
        x &= x - 1;
        y &= y - 1;
    }
    return x == 0 && y != 0;
}

// Subset of the edges of one fixed graph, as a bitmask in canonical order.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(uint64_t bits) : bits_(bits) {}

    uint64_t bits() const { return bits_; }
    bool empty() const { return bits_ == 0; }
    int size() const { return __builtin_popcountll(bits_); }
    bool contains(int e) const { return (bits_ >> e) & 1u; }

    EdgeSet with(int e) const { return EdgeSet(bits_ | (uint64_t{1} << e)); }
    EdgeSet without(int e) const { return EdgeSet(bits_ & ~(uint64_t{1} << e)); }

    friend EdgeSet operator|(EdgeSet a, EdgeSet b) { return EdgeSet(a.bits_ | b.bits_); }
    friend EdgeSet operator&(EdgeSet a, EdgeSet b) { return EdgeSet(a.bits_ & b.bits_); }
    EdgeSet minus(EdgeSet o) const { return EdgeSet(bits_ & ~o.bits_); }
    bool subset_of(EdgeSet o) const { return (bits_ & ~o.bits_) == 0; }

    friend bool operator==(EdgeSet a, EdgeSet b) { return a.bits_ == b.bits_; }
    friend bool operator!=(EdgeSet a, EdgeSet b) { return a.bits_ != b.bits_; }

    std::vector<int> members() const {
        std::vector<int> out;
        for (uint64_t m = bits_; m; m &= m - 1) out.push_back(__builtin_ctzll(m));
        return out;
    }

private:
    uint64_t bits_ = 0;
};

// Hard ceiling on exponential subset sweeps. The environment variable
// JACSTAB_MAX_SUBSETS overrides the built-in default; sweeps that would
// exceed it fail with an explicit InputError instead of running away.
long long scan_budget();
void require_scan_budget(long long need, const std::string& what);

struct Vertex {
    std::string id;
    long long genus = 0;
};

// Endpoints are canonical vertex indices with a <= b; parallel numbers the
// edges sharing the same endpoint pair, in input order, from 0.
struct Edge {
    int a = 0;
    int b = 0;
    int parallel = 0;
};

struct Marking {
    std::string id;
    int vertex = 0;
};

class DualGraph {
public:
    DualGraph(std::vector<Vertex> vertices,
              std::vector<std::pair<std::string, std::string>> edges,
              std::vector<std::pair<std::string, std::string>> markings = {});

    int n_vertices() const { return static_cast<int>(vertices_.size()); }
    int n_edges() const { return static_cast<int>(edges_.size()); }
    const Vertex& vertex(int v) const { return vertices_[static_cast<size_t>(v)]; }
    const Edge& edge(int e) const { return edges_[static_cast<size_t>(e)]; }
    bool is_loop(int e) const { return edges_[static_cast<size_t>(e)].a == edges_[static_cast<size_t>(e)].b; }

    int vertex_index(const std::string& id) const; // throws InputError on unknown id
    const std::vector<Marking>& markings() const { return markings_; }
    int marking_vertex(const std::string& id) const; // throws InputError on unknown id

    Subcurve full() const { return Subcurve((uint64_t{1} << n_vertices()) - 1); }
    Subcurve singleton(int v) const { return Subcurve(uint64_t{1} << v); }
    EdgeSet all_edges() const {
        return EdgeSet(n_edges() == 0 ? 0 : (uint64_t{1} << n_edges()) - 1);
    }

    long long degree(int v) const { return degree_[static_cast<size_t>(v)]; } // loops count twice
    long long loops_at(int v) const { return loops_[static_cast<size_t>(v)]; }
    long long nonloop_degree(int v) const { return degree(v) - 2 * loops_at(v); }

    // Arithmetic genus: sum of vertex genera + |E| - |V| + 1.
    long long genus() const;

    // Edges with both endpoints in y; loops at members included.
    EdgeSet internal_edges(Subcurve y) const;
    // Edges with exactly one endpoint in y; loops never qualify.
    EdgeSet linking_edges(Subcurve y) const;

    // chi(O_Y) = sum_{v in y} (1 - genus(v)) - |internal_edges(y)|. y nonempty.
    long long euler_structure(Subcurve y) const;

    // Minimum over nonempty proper y of |linking_edges(y)|; nullopt when the
    // graph has a single vertex (the conventional infinite value).
    std::optional<long long> min_cut() const;

    bool connected(Subcurve y) const { return connected_within(y, all_edges()); }
    // Connectivity of the subgraph induced on y using only the given edges.
    bool connected_within(Subcurve y, EdgeSet allowed) const;
    std::vector<Subcurve> components_within(Subcurve y, EdgeSet allowed) const;

    // Graph Laplacian with the row and column of the last canonical vertex
    // removed; loops ignored. Size (n-1) x (n-1).
    std::vector<std::vector<long long>> reduced_laplacian() const;

    std::string subcurve_to_string(Subcurve y) const;
    std::string edge_to_string(int e) const;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<Marking> markings_;
    std::vector<long long> degree_;
    std::vector<long long> loops_;
};

} // namespace jacstab
