#ifndef BRACELET_WITNESS_HPP
#define BRACELET_WITNESS_HPP

#include <string>
#include <utility>
#include <vector>

#include "bracelet/graph.hpp"

namespace bracelet {

// Ordered distinct vertices a cycle must visit in (cyclic) order.
struct MarkSequence {
    std::vector<VertexId> vertices;

    int size() const { return static_cast<int>(vertices.size()); }
    bool valid_in(const Graph& g, std::string* why = nullptr) const;
};

// Ordered distinct edges a tour must traverse in (cyclic) order. Pairs are
// unordered for undirected graphs and arcs for digraphs.
struct EdgeSequence {
    std::vector<std::pair<VertexId, VertexId>> edges;

    int size() const { return static_cast<int>(edges.size()); }
    bool valid_in(const Graph& g, std::string* why = nullptr) const;
};

// A cycle given as its cyclic vertex sequence (all distinct, length >= 3).
// marked_positions, when filled by a producer, are the positions of the mark
// sequence inside `vertices`; verifiers recompute rather than trust them.
struct OrderedCycle {
    std::vector<VertexId> vertices;
    std::vector<int> marked_positions;

    int length() const { return static_cast<int>(vertices.size()); }
};

// A closed walk as traversal steps (u,v); consecutive steps chain and the
// last closes to the first. Edges are all distinct, vertices may repeat.
struct Tour {
    std::vector<std::pair<VertexId, VertexId>> steps;

    int length() const { return static_cast<int>(steps.size()); }
};

// Verification outcome: converts to bool; `reason` is a short stable token
// ("order_violated", "not_hamiltonian", ...) when the check fails.
struct Check {
    bool ok = true;
    std::string reason;

    explicit operator bool() const { return ok; }
    static Check failure(std::string r) { return Check{false, std::move(r)}; }
};

// True iff `cycle` is a simple cycle of g (length >= 3, consecutive vertices
// adjacent cyclically, arcs followed forward in digraphs) that visits the
// marks in the given cyclic order. Undirected cycles may be traversed in
// either direction; digraphs only along the arcs. With require_hamiltonian
// the cycle must cover every vertex of g.
Check verify_ordered_cycle(const Graph& g, const OrderedCycle& cycle,
                           const MarkSequence& marks, bool require_hamiltonian);

// True iff `tour` is a closed walk in g with no repeated edge that traverses
// the marked edges in the given cyclic order (either direction per edge and,
// for undirected graphs, either direction around the whole tour).
Check verify_tour(const Graph& g, const Tour& tour, const EdgeSequence& edge_marks);

// Canonical undirected edge key (u<v); identity for directed use.
inline std::pair<VertexId, VertexId> edge_key(const Graph& g, VertexId u, VertexId v) {
    if (!g.directed() && u > v) return {v, u};
    return {u, v};
}

}  // namespace bracelet

#endif
