#include "bracelet/generators.hpp"

#include <stdexcept>

namespace bracelet::gen {

const char* family_name(FamilyId id) {
    switch (id) {
        case FamilyId::G_uniform: return "G";
        case FamilyId::H_pattern: return "H";
        case FamilyId::P_lowdeg: return "P";
        case FamilyId::directed_bracelet: return "directed";
        case FamilyId::counterexample_neighborhood: return "counterexample";
    }
    return "?";
}

bool parse_family(const std::string& name, FamilyId& out) {
    if (name == "G") out = FamilyId::G_uniform;
    else if (name == "H") out = FamilyId::H_pattern;
    else if (name == "P") out = FamilyId::P_lowdeg;
    else if (name == "directed") out = FamilyId::directed_bracelet;
    else if (name == "counterexample") out = FamilyId::counterexample_neighborhood;
    else return false;
    return true;
}

BraceletGraph gen_G(int k, int parts) {
    if (k < 1) throw std::invalid_argument("gen_G: k must be >= 1");
    if (parts < 4) throw std::invalid_argument("gen_G: need at least 4 parts");
    if (parts % 2 != 0) throw std::invalid_argument("gen_G: part count must be even");
    BraceletSpec spec;
    spec.part_sizes.assign(parts, k);
    return build_bracelet(spec, false);
}

BraceletGraph gen_H(int k, int m) {
    if (k < 2) throw std::invalid_argument("gen_H: k must be >= 2");
    if (m < 1) throw std::invalid_argument("gen_H: m must be >= 1");
    BraceletSpec spec;
    for (int i = 0; i < m; ++i) {
        spec.part_sizes.push_back(k - 1);
        spec.part_sizes.push_back(k - 1);
        spec.part_sizes.push_back(k);
        spec.part_sizes.push_back(k);
    }
    return build_bracelet(spec, false);
}

BraceletGraph gen_P(int k, int m) {
    if (k < 2) throw std::invalid_argument("gen_P: k must be >= 2");
    if (m < 5) throw std::invalid_argument("gen_P: m must be >= 5");
    BraceletSpec spec;
    spec.part_sizes = {k - 1, k - 1, k};
    for (int i = 3; i < m; ++i) spec.part_sizes.push_back(k + 1);
    return build_bracelet(spec, false);
}

BraceletGraph gen_directed(int k, int l) {
    if (k < 2) throw std::invalid_argument("gen_directed: k must be >= 2");
    if (l < 3) throw std::invalid_argument("gen_directed: l must be >= 3");
    BraceletSpec spec;
    spec.part_sizes.assign(l, k - 1);
    return build_bracelet(spec, true);
}

Counterexample gen_counterexample(int k, const std::vector<int>& filler_parts) {
    if (k < 1) throw std::invalid_argument("gen_counterexample: k must be >= 1");
    for (int s : filler_parts)
        if (s < k) throw std::invalid_argument("gen_counterexample: filler parts must have >= k vertices");
    BraceletSpec spec;
    spec.part_sizes = {k, 2 * k + 1, k};
    for (int s : filler_parts) spec.part_sizes.push_back(s);
    return Counterexample{build_bracelet(spec, false), 1};
}

}  // namespace bracelet::gen
