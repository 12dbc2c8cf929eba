#ifndef BRACELET_GENERATORS_HPP
#define BRACELET_GENERATORS_HPP

#include <string>
#include <vector>

#include "bracelet/graph.hpp"

namespace bracelet::gen {

// The named graph families.
enum class FamilyId {
    G_uniform,                    // uniform bracelet, 2k-regular
    H_pattern,                    // (k-1,k-1,k,k) repeating, (2k-1)-regular
    P_lowdeg,                     // (k-1,k-1,k,k+1,...,k+1), degrees 2k-1..2k+2
    directed_bracelet,            // l parts of k-1, arcs forward, (k-1)-diregular
    counterexample_neighborhood,  // three parts k, 2k+1, k plus fillers
};

const char* family_name(FamilyId id);
bool parse_family(const std::string& name, FamilyId& out);

// Uniform bracelet with `parts` parts (even, >= 4) of size k. 2k-regular.
BraceletGraph gen_G(int k, int parts);

// 4m parts sized (k-1, k-1, k, k) repeating; (2k-1)-regular. gen_H(k,1) is
// the complete bipartite K_{2k-1,2k-1}.
BraceletGraph gen_H(int k, int m);

// m >= 5 parts sized (k-1, k-1, k, k+1, ..., k+1); minimum degree 2k-1,
// maximum degree 2k+1 at m = 5 and 2k+2 for m >= 6.
BraceletGraph gen_P(int k, int m);

// Directed bracelet: l >= 3 parts of size k-1, arcs V_i -> V_{i+1} only;
// (k-1)-diregular.
BraceletGraph gen_directed(int k, int l);

struct Counterexample {
    BraceletGraph bg;
    int big_part_index;  // the part of size 2k+1
};

// Bracelet with three consecutive parts sized (k, 2k+1, k) followed by the
// given filler parts (each >= k). The 2k+1 vertices of the middle part have
// a joint neighborhood of only 2k vertices.
Counterexample gen_counterexample(int k, const std::vector<int>& filler_parts);

}  // namespace bracelet::gen

#endif
