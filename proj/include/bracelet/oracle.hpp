#ifndef BRACELET_ORACLE_HPP
#define BRACELET_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "bracelet/graph.hpp"
#include "bracelet/witness.hpp"

namespace bracelet::oracle {

// Backtrack-node budget per searched sequence. Exhaustion is reported as its
// own outcome, never folded into "fails".
constexpr std::uint64_t kDefaultBudget = 100'000'000;

enum class Outcome { found, none, budget_exceeded };

struct CycleSearch {
    Outcome outcome = Outcome::none;
    OrderedCycle cycle;  // meaningful when outcome == found
    std::uint64_t nodes = 0;
};

// Exhaustive backtracking for a simple cycle visiting the marks in order:
// vertex-disjoint path segments mark_i -> mark_{i+1} grown depth-first over a
// shared used set; marks may only be stepped on in turn. `none` certifies
// that no such cycle exists (the search completed). Requires n <= 64.
CycleSearch find_ordered_cycle(const Graph& g, const MarkSequence& marks,
                               bool require_hamiltonian,
                               std::uint64_t budget = kDefaultBudget);

struct TourSearch {
    Outcome outcome = Outcome::none;
    Tour tour;
    std::uint64_t nodes = 0;
};

// Exhaustive search for a closed walk with distinct edges traversing the
// marked edges in order. Reduces to pairwise edge-disjoint connector paths
// between consecutive marked-edge endpoints (over all orientation choices
// for undirected marks); completeness follows because any tour decomposes
// at its marked edges into such a system.
TourSearch find_ordered_tour(const Graph& g, const EdgeSequence& edge_marks,
                             std::uint64_t budget = kDefaultBudget);

enum class Status { holds, fails, resource_exceeded };

struct SweepStats {
    std::uint64_t nodes = 0;      // backtrack nodes over all examined sequences
    std::uint64_t sequences = 0;  // sequences examined (in canonical order)
    std::uint64_t total = 0;      // sequences the sweep would examine in all
    double seconds = 0.0;         // wall time; excluded from structured reports
};

// Three-valued verdict of a sweep. holds carries a verifying witness for the
// last sequence examined; fails carries the first counterexample sequence in
// canonical enumeration order; resource_exceeded carries the sequence that
// was in progress.
struct Verdict {
    Status status = Status::holds;
    std::optional<OrderedCycle> witness_cycle;
    std::optional<Tour> witness_tour;
    std::optional<MarkSequence> counterexample_marks;
    std::optional<EdgeSequence> counterexample_edges;
    std::size_t fail_index = 0;  // canonical index of the non-holding sequence
    SweepStats stats;
};

struct SweepOptions {
    std::uint64_t budget = kDefaultBudget;  // per sequence
    int jobs = 1;
    bool symmetry_reduction = true;
};

// Every mark sequence of length k admits an ordered (hamiltonian) cycle.
// Sequences are enumerated lexicographically up to rotation (smallest mark
// anchored first) and, for undirected graphs, reflection.
Verdict is_k_ordered(const Graph& g, int k, bool require_hamiltonian,
                     const SweepOptions& opt = {});

// Edge analogue: every sequence of k distinct edges admits an ordered tour.
Verdict is_k_edge_ordered(const Graph& g, int k, const SweepOptions& opt = {});

// Canonical enumeration used by the sweeps (exposed for cross-checks).
std::vector<std::vector<VertexId>> enumerate_mark_sequences(int n, int k, bool directed,
                                                            bool reduced);
std::vector<std::vector<int>> enumerate_index_sequences(int count, int k, bool directed,
                                                        bool reduced);

// A subset V1 with |V1| = s <= k, |N(V1)| < 2s and at least s vertices
// outside N(V1) u V1. Such a certificate proves the graph is not 2s-ordered
// (each marked V1 vertex on a cycle alternating with outside vertices would
// need two private neighbors in N(V1)).
struct ObstructionCertificate {
    std::vector<VertexId> subset;
    int neighborhood_size = 0;
    int outside_count = 0;
};

// parts_only scope: each part B as the subset (its k lowest vertices when
// |B| > k). Undirected bracelets only.
std::optional<ObstructionCertificate> neighborhood_obstruction(const BraceletGraph& bg, int k);

// all-subsets scope: every subset of size s <= min(k, max_subset_size),
// enumerated by size then lexicographically. Undirected graphs only.
std::optional<ObstructionCertificate> neighborhood_obstruction(const Graph& g, int k,
                                                               int max_subset_size);

struct ParityAudit {
    int parts = 0;
    int n = 0;
    bool applicable = false;         // even number of parts
    bool bipartite = false;          // BFS-checked when applicable
    bool odd_vertex_count = false;
    bool hamiltonian_searched = false;
    bool hamiltonian_found = false;  // exhaustive result when searched
};

// Even-part bracelets are bipartite, so all cycles have even length and odd
// order rules out hamiltonicity; the audit re-derives both facts from the
// graph itself (2-coloring plus an exhaustive hamiltonian-cycle search when
// the order is odd).
ParityAudit parity_audit(const BraceletGraph& bg, std::uint64_t budget = kDefaultBudget);

}  // namespace bracelet::oracle

#endif
