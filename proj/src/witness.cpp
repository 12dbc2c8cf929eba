#include "bracelet/witness.hpp"

#include <algorithm>
#include <set>

namespace bracelet {

bool MarkSequence::valid_in(const Graph& g, std::string* why) const {
    std::set<VertexId> seen;
    for (VertexId v : vertices) {
        if (!g.valid_vertex(v)) {
            if (why) *why = "mark_out_of_range";
            return false;
        }
        if (!seen.insert(v).second) {
            if (why) *why = "duplicate_mark";
            return false;
        }
    }
    return true;
}

bool EdgeSequence::valid_in(const Graph& g, std::string* why) const {
    std::set<std::pair<VertexId, VertexId>> seen;
    for (auto [u, v] : edges) {
        bool present = g.directed() ? g.has_edge(u, v)
                                    : (g.has_edge(u, v) || g.has_edge(v, u));
        if (!present) {
            if (why) *why = "marked_edge_absent";
            return false;
        }
        if (!seen.insert(edge_key(g, u, v)).second) {
            if (why) *why = "duplicate_marked_edge";
            return false;
        }
    }
    return true;
}

namespace {

// Positions strictly increase when measured from the first one around a
// cycle of length len; that is exactly "met in this order going forward".
bool in_forward_order(const std::vector<int>& pos, int len) {
    for (size_t i = 1; i + 1 < pos.size(); ++i) {
        int a = ((pos[i] - pos[0]) % len + len) % len;
        int b = ((pos[i + 1] - pos[0]) % len + len) % len;
        if (a >= b) return false;
    }
    return true;
}

bool in_backward_order(const std::vector<int>& pos, int len) {
    for (size_t i = 1; i + 1 < pos.size(); ++i) {
        int a = ((pos[0] - pos[i]) % len + len) % len;
        int b = ((pos[0] - pos[i + 1]) % len + len) % len;
        if (a >= b) return false;
    }
    return true;
}

}  // namespace

Check verify_ordered_cycle(const Graph& g, const OrderedCycle& cycle,
                           const MarkSequence& marks, bool require_hamiltonian) {
    const int len = cycle.length();
    if (len < 3) return Check::failure("cycle_too_short");

    std::vector<int> pos_of(g.order(), -1);
    for (int i = 0; i < len; ++i) {
        VertexId v = cycle.vertices[i];
        if (!g.valid_vertex(v)) return Check::failure("vertex_out_of_range");
        if (pos_of[v] != -1) return Check::failure("duplicate_vertex");
        pos_of[v] = i;
    }
    for (int i = 0; i < len; ++i) {
        VertexId u = cycle.vertices[i];
        VertexId v = cycle.vertices[(i + 1) % len];
        if (!g.has_edge(u, v)) return Check::failure("not_adjacent");
    }
    if (require_hamiltonian && len != g.order()) return Check::failure("not_hamiltonian");

    std::string why;
    if (!marks.valid_in(g, &why)) return Check::failure(why);
    std::vector<int> pos;
    pos.reserve(marks.size());
    for (VertexId v : marks.vertices) {
        if (pos_of[v] == -1) return Check::failure("mark_not_on_cycle");
        pos.push_back(pos_of[v]);
    }
    if (pos.size() > 2) {
        bool fwd = in_forward_order(pos, len);
        bool bwd = !g.directed() && in_backward_order(pos, len);
        if (!fwd && !bwd) return Check::failure("order_violated");
    }
    return Check{};
}

Check verify_tour(const Graph& g, const Tour& tour, const EdgeSequence& edge_marks) {
    const int len = tour.length();
    if (len == 0) return Check::failure("empty_tour");

    std::set<std::pair<VertexId, VertexId>> used;
    for (int i = 0; i < len; ++i) {
        auto [u, v] = tour.steps[i];
        if (!g.has_edge(u, v)) return Check::failure("step_not_an_edge");
        if (tour.steps[(i + 1) % len].first != v) return Check::failure("steps_do_not_chain");
        if (!used.insert(edge_key(g, u, v)).second) return Check::failure("edge_repeated");
    }

    std::string why;
    if (!edge_marks.valid_in(g, &why)) return Check::failure(why);
    std::vector<int> pos;
    pos.reserve(edge_marks.size());
    for (auto [u, v] : edge_marks.edges) {
        auto key = edge_key(g, u, v);
        int at = -1;
        for (int i = 0; i < len; ++i) {
            if (edge_key(g, tour.steps[i].first, tour.steps[i].second) == key) {
                at = i;
                break;
            }
        }
        if (at == -1) return Check::failure("marked_edge_not_traversed");
        pos.push_back(at);
    }
    if (pos.size() > 2) {
        bool fwd = in_forward_order(pos, len);
        bool bwd = !g.directed() && in_backward_order(pos, len);
        if (!fwd && !bwd) return Check::failure("order_violated");
    }
    return Check{};
}

}  // namespace bracelet
