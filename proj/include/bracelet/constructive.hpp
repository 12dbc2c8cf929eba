#ifndef BRACELET_CONSTRUCTIVE_HPP
#define BRACELET_CONSTRUCTIVE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bracelet/graph.hpp"
#include "bracelet/oracle.hpp"
#include "bracelet/witness.hpp"

namespace bracelet::constructive {

// Thrown when a bounded-search fallback branch runs out of budget.
struct ResourceExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A transversal of the parts (one vertex each) that contains exactly one
// consecutive marked pair and no other marks. Peeling it off a uniform
// bracelet leaves the next-smaller uniform bracelet.
struct FreeVertexSelection {
    std::vector<VertexId> free_of_part;  // part index -> vertex
    int pair_position = 0;  // marks[pair_position], marks[pair_position+1 mod] are the marked frees
};

// Requires a uniform undirected bracelet with part size k >= 2 and exactly
// 2k+1 marks. Deterministic: smallest pair position, lowest vertex ids.
FreeVertexSelection select_free_vertices(const BraceletGraph& bg, const MarkSequence& marks);

// One cycle edge crossing each adjacent part pair (i, i+1 mod m).
struct StarCertificate {
    std::vector<std::pair<VertexId, VertexId>> crossing;  // indexed by lower part
};

// Scans the cycle; nullopt when some adjacent part pair has no crossing edge.
std::optional<StarCertificate> star_certificate(const BraceletGraph& bg,
                                                const OrderedCycle& cycle);

// Replaces cycle edge (a,b) by the detour a-d-c-b through two off-cycle
// vertices; grows the cycle by 2 and preserves the relative order of all
// previous vertices. Preconditions (edges ad, dc, cb present; c, d not on the
// cycle) are checked and violations throw.
OrderedCycle reroute_alpha(const Graph& g, const OrderedCycle& cycle, VertexId a, VertexId b,
                           VertexId c, VertexId d);

struct GHamiltonianWitness {
    OrderedCycle cycle;
    StarCertificate star;
};

// Uniform bracelet, even part count >= 4, part size k, 2k+1 marks: builds a
// hamiltonian cycle through the marks in order that crosses every adjacent
// part pair. Recursion on k: peel a free transversal, build in the remaining
// uniform bracelet, splice the free cycle back in (rerouting through the
// paired-up spare parts where the splice alone would skip them).
GHamiltonianWitness construct_G_hamiltonian(const BraceletGraph& bg, const MarkSequence& marks);

// Any bracelet with >= 4 parts, >= k vertices per part and >= 2k+1 vertices
// in every pair of parts at cyclic distance 2: ordered (not necessarily
// hamiltonian) cycle through 2k+1 marks. Reduces to the uniform construction
// when no part holds more than k marks.
OrderedCycle construct_bracelet_cycle(const BraceletGraph& bg, const MarkSequence& marks);

// The low-degree family from gen_P: ordered cycle through 2k marks. Proof
// branches without stated routings fall back to bounded exhaustive search
// (budget-guarded; overruns throw ResourceExceeded).
OrderedCycle construct_P_cycle(const BraceletGraph& bg, const MarkSequence& marks,
                               std::uint64_t fallback_budget = oracle::kDefaultBudget);

// Directed uniform bracelet with part size |marks|-1: directed hamiltonian
// cycle through the marks in order, by arranging each part into a grid
// column with the marks pinned to prescribed rows and traversing rows
// serpentine-fashion.
OrderedCycle construct_directed_hamiltonian(const BraceletGraph& bg, const MarkSequence& marks);

}  // namespace bracelet::constructive

#endif
