#ifndef BRACELET_METRICS_HPP
#define BRACELET_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "bracelet/graph.hpp"

namespace bracelet::metrics {

struct ConnectivityReport {
    int vertex_connectivity = 0;
    int edge_connectivity = 0;
    int min_degree = 0;    // undirected
    int min_indegree = 0;  // directed
    int min_outdegree = 0;
    std::optional<int> diameter;  // empty when not (strongly) connected
};

// Exact values via unit-capacity max-flow (Menger): edge version over
// terminal pairs, vertex version with the standard vertex-split transform.
// Diameter by BFS over all pairs.
ConnectivityReport connectivity(const Graph& g);

std::optional<int> diameter(const Graph& g);
int distance(const Graph& g, VertexId s, VertexId t);  // -1 when unreachable

// Unit-capacity max-flow value between two vertices (edge-disjoint paths).
int max_flow_edges(const Graph& g, VertexId s, VertexId t);
// Internally vertex-disjoint paths between non-adjacent s, t.
int max_flow_vertices(const Graph& g, VertexId s, VertexId t);

// Brute-force comparison oracles: vertex connectivity by deleting every
// vertex subset, edge connectivity by scanning every bipartition cut.
// Independent of the flow implementation; intended for n <= ~12.
int exhaustive_vertex_connectivity(const Graph& g);
int exhaustive_edge_connectivity(const Graph& g);

struct DiameterBoundReport {
    int n = 0;
    int k = 0;  // the graph is known 2k-ordered (or (2k+1)-ordered)
    std::optional<int> diameter;
    int bound = 0;  // floor((n-3)/2k) + 2
    bool orderedness_certified = false;
    bool holds = true;  // vacuous when not certified or disconnected
    int slack = 0;      // bound - diameter
};

// Checks the diameter bound d <= floor((n-3)/2k)+2 that 2k-orderedness
// forces. `certified` says whether the caller verified the orderedness.
DiameterBoundReport check_diameter_bound(const Graph& g, int k, bool certified);

struct DegreeViolation {
    VertexId vertex;
    int indegree;
    int outdegree;
};

struct DirectedNecessaryReport {
    int k = 0;
    std::vector<DegreeViolation> degree_violations;  // indeg or outdeg < k-1
    int vertex_connectivity = 0;
    bool connectivity_ok = false;  // kappa >= k-1
    bool ok = false;
};

// Necessary conditions for a k-ordered digraph: every vertex cut has at
// least k-1 vertices, hence indeg, outdeg >= k-1 everywhere.
DirectedNecessaryReport check_directed_necessary(const Graph& d, int k);

struct Screen {
    std::string name;
    bool pass;
    std::string detail;
};

struct BraceletDegreeAudit {
    int k = 0;
    std::vector<int> part_sizes;
    int min_degree = 0;
    int max_degree = 0;
    int min_part_size = 0;
    std::vector<Screen> screens;
    bool all_pass = false;
};

// Structural screens a 2k-ordered bracelet must pass: no part smaller than
// k-1, the part-neighborhood conditions |N(B)| >= 2|B| (|B| <= k) and
// |N(B')| >= 2k (|B'| > k), minimum degree and vertex connectivity >= 2k-1.
BraceletDegreeAudit bracelet_degree_audit(const BraceletGraph& bg, int k);

}  // namespace bracelet::metrics

#endif
