#ifndef BRACELET_GRAPH_HPP
#define BRACELET_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace bracelet {

using VertexId = int;

// Simple finite graph or digraph. Vertex ids are dense in [0, n).
// Undirected: adjacency is kept symmetric. Directed: adj() holds
// out-neighbors and in_adj() in-neighbors. No loops, no multi-edges.
// Immutable by convention once populated; all readers are const.
class Graph {
public:
    Graph() = default;
    Graph(int n, bool directed);

    int order() const { return n_; }
    bool directed() const { return directed_; }
    int edge_count() const { return edge_count_; }

    // Adds edge {u,v} (undirected) or arc u->v (directed). Loops and
    // duplicates are rejected.
    void add_edge(VertexId u, VertexId v);
    bool has_edge(VertexId u, VertexId v) const;  // directed: arc u->v

    const std::vector<VertexId>& adj(VertexId u) const { return out_[u]; }
    const std::vector<VertexId>& in_adj(VertexId u) const;

    int degree(VertexId u) const { return static_cast<int>(out_[u].size()); }
    int out_degree(VertexId u) const { return degree(u); }
    int in_degree(VertexId u) const;

    // Edges as (u,v) with u < v for undirected graphs, arcs as stored for
    // digraphs; sorted lexicographically.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    bool valid_vertex(VertexId v) const { return v >= 0 && v < n_; }

private:
    int n_ = 0;
    bool directed_ = false;
    int edge_count_ = 0;
    std::vector<std::vector<VertexId>> out_;
    std::vector<std::vector<VertexId>> in_;  // directed only
};

// Cyclic partition sizes for a bracelet graph: m >= 3 parts, all nonempty.
struct BraceletSpec {
    std::vector<int> part_sizes;

    int part_count() const { return static_cast<int>(part_sizes.size()); }
    int vertex_count() const;
    void validate() const;  // throws std::invalid_argument
};

// A (di)graph together with its bracelet partition. Vertices 0..n-1 are
// assigned to parts in spec order, each part a contiguous block.
struct BraceletGraph {
    Graph graph;
    std::vector<int> part_of;                // vertex -> part index
    std::vector<std::vector<VertexId>> parts;

    int part_count() const { return static_cast<int>(parts.size()); }
    int part_size(int i) const { return static_cast<int>(parts[i].size()); }

    // True when all parts have the same size (reported through k).
    bool uniform(int* k = nullptr) const;

    // Checks the structural invariants: parts partition [0,n); u~v iff the
    // part indices differ by +-1 mod m (directed: arcs V_i -> V_{i+1} only).
    bool check_invariants(std::string* why = nullptr) const;
};

// Builds the bracelet graph of `spec`. Undirected: complete bipartite
// between cyclically consecutive parts. Directed: all arcs V_i -> V_{i+1}.
BraceletGraph build_bracelet(const BraceletSpec& spec, bool directed);

// K_n, or the complete digraph (all ordered pairs) when directed.
Graph complete_graph(int n, bool directed);

// --- interchange formats -------------------------------------------------
//
// Edge list:          "n m directed:{0|1}" header, then one "u v" per line.
// Bracelet structured: "bracelet m directed:{0|1}" header, then the m part
// sizes on one line; carries the partition so the structure round-trips.

void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);  // throws std::runtime_error on malformed input

void write_bracelet(std::ostream& os, const BraceletGraph& bg);
BraceletGraph read_bracelet(std::istream& is);

}  // namespace bracelet

#endif
