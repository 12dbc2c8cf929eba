#ifndef BRACELET_LINKAGE_HPP
#define BRACELET_LINKAGE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bracelet/graph.hpp"
#include "bracelet/oracle.hpp"
#include "bracelet/witness.hpp"

namespace bracelet::linkage {

// Terminal pairs (s_i, t_i); vertices need not be distinct across pairs.
struct TerminalPairs {
    std::vector<std::pair<VertexId, VertexId>> pairs;

    int size() const { return static_cast<int>(pairs.size()); }
};

// paths[i] is the traversal s_i -> t_i as steps (empty when s_i == t_i).
// Pairwise edge-disjoint; each path edge-simple (vertices may repeat after
// repair splices).
struct PathSystem {
    std::vector<std::vector<std::pair<VertexId, VertexId>>> paths;
};

Check verify_path_system(const Graph& g, const TerminalPairs& pairs, const PathSystem& sys);

struct LinkageSearch {
    oracle::Outcome outcome = oracle::Outcome::none;
    PathSystem system;
    std::uint64_t nodes = 0;
};

// Exhaustive backtracking for pairwise edge-disjoint connecting paths, pair
// by pair with a shared used-edge set. `none` means the completed search
// found no system.
LinkageSearch find_edge_disjoint_paths(const Graph& g, const TerminalPairs& pairs,
                                       std::uint64_t budget = oracle::kDefaultBudget);

struct RepairResult {
    Tour tour;
    int swaps = 0;
};

// Turns a path system for the round-robin pairs v_1->u_1, u_1->v_2, ...,
// u_k->v_1 into a tour traversing the marked edges (v_i,u_i) in order: while
// some marked edge is not its own connecting path, swap it into place
// (splicing the displaced path into wherever the edge was used). Each swap
// fixes one marked edge, so at most k swaps run.
RepairResult linkage_to_edge_tour(const Graph& g, const EdgeSequence& edge_marks,
                                  const PathSystem& system);

struct Gate {
    bool passed = false;
    int measured = 0;   // connectivity of the relevant kind
    int required = 0;
    std::optional<int> diameter;
    std::string detail;
};

enum class BuildStatus { built, refused, round_failed };

struct TourBuild {
    BuildStatus status = BuildStatus::refused;
    Gate gate;
    std::vector<std::vector<std::pair<VertexId, VertexId>>> round_paths;
    Tour tour;
    int swaps = 0;
    std::string detail;
};

struct CycleBuild {
    BuildStatus status = BuildStatus::refused;
    Gate gate;
    std::vector<std::vector<std::pair<VertexId, VertexId>>> round_paths;
    OrderedCycle cycle;
    std::string detail;
};

// Edge-ordered tour on a digraph with edge connectivity at least
// (2k-1)*ceil(d/2)+1: 2k rounds of shortest-path search, deleting each
// path's edges, then the swap repair. The gate is measured on the input and
// refused honestly when it fails; round_failed reports the (theoretically
// impossible) event of a round finding no path.
TourBuild greedy_edge_tour(const Graph& d, const EdgeSequence& edge_marks);

// Ordered cycle on a digraph with vertex connectivity at least (k-1)*d:
// k rounds of shortest paths avoiding the remaining marks, deleting interior
// vertices between rounds.
CycleBuild greedy_vertex_cycle(const Graph& d, const MarkSequence& marks);

// Undirected analogues; both gates are connectivity >= (2k-1)*d + 1.
TourBuild greedy_undirected_edge(const Graph& g, const EdgeSequence& edge_marks);
CycleBuild greedy_undirected_cycle(const Graph& g, const MarkSequence& marks);

enum class ExtractStatus { found, refused, not_found, budget_exceeded };

struct LinkageExtract {
    ExtractStatus status = ExtractStatus::not_found;
    PathSystem system;
    EdgeSequence chosen_edges;
    std::string detail;
};

using TourProvider = std::function<oracle::TourSearch(const Graph&, const EdgeSequence&)>;

// Weak-linkage extraction from edge-orderedness: choose an incident edge per
// terminal occurrence with its far endpoint outside the terminal set, obtain
// a tour through those 2k edges in alternating order, and cut it at the
// marked edges into edge-disjoint s_i -> t_i paths. Requires minimum degree
// >= 2k. The default provider is the exhaustive tour oracle.
LinkageExtract tour_to_linkage(const Graph& g, const TerminalPairs& terminals,
                               const TourProvider& provider = {});

}  // namespace bracelet::linkage

#endif
