#include "bracelet/linkage.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bracelet/metrics.hpp"

namespace bracelet::linkage {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::vector<std::pair<VertexId, VertexId>> reversed_steps(
    const std::vector<std::pair<VertexId, VertexId>>& steps) {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
        out.emplace_back(it->second, it->first);
    return out;
}

}  // namespace

Check verify_path_system(const Graph& g, const TerminalPairs& pairs, const PathSystem& sys) {
    if (sys.paths.size() != static_cast<size_t>(pairs.size()))
        return Check::failure("path_count_mismatch");
    std::set<std::pair<VertexId, VertexId>> used;
    for (int i = 0; i < pairs.size(); ++i) {
        auto [s, t] = pairs.pairs[i];
        const auto& steps = sys.paths[i];
        if (steps.empty()) {
            if (s != t) return Check::failure("empty_path_for_distinct_pair");
            continue;
        }
        if (steps.front().first != s || steps.back().second != t)
            return Check::failure("endpoints_mismatch");
        for (size_t j = 0; j < steps.size(); ++j) {
            auto [u, v] = steps[j];
            if (!g.has_edge(u, v)) return Check::failure("step_not_an_edge");
            if (j + 1 < steps.size() && steps[j + 1].first != v)
                return Check::failure("steps_do_not_chain");
            if (!used.insert(edge_key(g, u, v)).second) return Check::failure("edge_shared");
        }
    }
    return Check{};
}

namespace {

struct DisjointPathsEngine {
    const Graph& g;
    const std::vector<std::pair<VertexId, VertexId>>& pairs;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exceeded = false;
    std::set<std::pair<VertexId, VertexId>> used;
    std::vector<std::vector<std::pair<VertexId, VertexId>>> paths;

    DisjointPathsEngine(const Graph& gr, const std::vector<std::pair<VertexId, VertexId>>& p,
                        std::uint64_t b)
        : g(gr), pairs(p), budget(b), paths(p.size()) {}

    bool route(size_t idx) {
        if (idx == pairs.size()) return true;
        auto [s, t] = pairs[idx];
        if (s == t) {
            paths[idx].clear();
            return route(idx + 1);
        }
        std::vector<std::pair<VertexId, VertexId>> steps;
        std::vector<char> on_path(g.order(), 0);
        on_path[s] = 1;
        return dfs(s, t, idx, steps, on_path);
    }

    bool dfs(VertexId cur, VertexId target, size_t idx,
             std::vector<std::pair<VertexId, VertexId>>& steps, std::vector<char>& on_path) {
        if (++nodes > budget) {
            exceeded = true;
            return false;
        }
        for (VertexId w : g.adj(cur)) {
            if (on_path[w] && w != target) continue;
            auto key = edge_key(g, cur, w);
            if (used.count(key)) continue;
            used.insert(key);
            steps.emplace_back(cur, w);
            if (w == target) {
                paths[idx] = steps;
                if (route(idx + 1)) return true;
            } else {
                on_path[w] = 1;
                if (dfs(w, target, idx, steps, on_path)) return true;
                on_path[w] = 0;
            }
            steps.pop_back();
            used.erase(key);
            if (exceeded) return false;
        }
        return false;
    }
};

}  // namespace

LinkageSearch find_edge_disjoint_paths(const Graph& g, const TerminalPairs& pairs,
                                       std::uint64_t budget) {
    for (auto [s, t] : pairs.pairs)
        require(g.valid_vertex(s) && g.valid_vertex(t), "find_edge_disjoint_paths: bad terminal");
    DisjointPathsEngine eng(g, pairs.pairs, budget);
    LinkageSearch res;
    bool found = eng.route(0);
    res.nodes = eng.nodes;
    if (found) {
        res.outcome = oracle::Outcome::found;
        res.system.paths = std::move(eng.paths);
    } else {
        res.outcome = eng.exceeded ? oracle::Outcome::budget_exceeded : oracle::Outcome::none;
    }
    return res;
}

RepairResult linkage_to_edge_tour(const Graph& g, const EdgeSequence& edge_marks,
                                  const PathSystem& system) {
    const int k = edge_marks.size();
    require(k >= 1, "linkage_to_edge_tour: need at least one marked edge");
    std::string why;
    require(edge_marks.valid_in(g, &why), "linkage_to_edge_tour: invalid edge marks");
    require(static_cast<int>(system.paths.size()) == 2 * k,
            "linkage_to_edge_tour: need 2k round-robin paths");

    // Round-robin endpoints: path 2i is v_i -> u_i, path 2i+1 is u_i -> v_{i+1}.
    TerminalPairs rr;
    for (int i = 0; i < k; ++i) {
        auto [v, u] = edge_marks.edges[i];
        auto [vn, un] = edge_marks.edges[(i + 1) % k];
        (void)un;
        rr.pairs.emplace_back(v, u);
        rr.pairs.emplace_back(u, vn);
    }
    Check chk = verify_path_system(g, rr, system);
    require(chk.ok, "linkage_to_edge_tour: path system invalid");

    std::vector<std::vector<std::pair<VertexId, VertexId>>> paths = system.paths;
    int swaps = 0;
    for (;;) {
        int misplaced = -1;
        for (int i = 0; i < k; ++i) {
            const auto& q = paths[2 * i];
            auto [v, u] = edge_marks.edges[i];
            if (q.size() == 1 && edge_key(g, q[0].first, q[0].second) == edge_key(g, v, u)) continue;
            misplaced = i;
            break;
        }
        if (misplaced < 0) break;
        if (swaps >= k)
            throw std::logic_error("linkage_to_edge_tour: swap repair failed to terminate");

        auto [v, u] = edge_marks.edges[misplaced];
        auto key = edge_key(g, v, u);
        // Locate the marked edge among all paths (at most one place).
        int host = -1, host_step = -1;
        for (size_t p = 0; p < paths.size() && host < 0; ++p) {
            for (size_t j = 0; j < paths[p].size(); ++j) {
                if (edge_key(g, paths[p][j].first, paths[p][j].second) == key) {
                    host = static_cast<int>(p);
                    host_step = static_cast<int>(j);
                    break;
                }
            }
        }
        std::vector<std::pair<VertexId, VertexId>> displaced = std::move(paths[2 * misplaced]);
        paths[2 * misplaced] = {{v, u}};
        if (host >= 0 && host != 2 * misplaced) {
            // Splice the displaced path where the edge was used, matching the
            // traversal direction.
            auto& hp = paths[host];
            bool forward = hp[host_step].first == v;
            auto fill = forward ? displaced : reversed_steps(displaced);
            hp.erase(hp.begin() + host_step);
            hp.insert(hp.begin() + host_step, fill.begin(), fill.end());
        }
        ++swaps;
    }

    RepairResult out;
    out.swaps = swaps;
    for (const auto& p : paths)
        for (auto step : p) out.tour.steps.push_back(step);
    Check final = verify_tour(g, out.tour, edge_marks);
    if (!final)
        throw std::logic_error(std::string("linkage_to_edge_tour: repaired tour invalid: ") +
                               final.reason);
    return out;
}

namespace {

// Erasable working copy of a graph for the greedy round constructions.
struct Working {
    const Graph& g;
    std::set<std::pair<VertexId, VertexId>> dead_edges;  // canonical keys
    std::vector<char> dead_vertex;

    explicit Working(const Graph& gr) : g(gr), dead_vertex(gr.order(), 0) {}

    bool ok(VertexId u, VertexId v) const {
        return !dead_vertex[u] && !dead_vertex[v] && !dead_edges.count(edge_key(g, u, v));
    }

    // BFS shortest path s -> t; ties by ascending discovery. `blocked` marks
    // vertices that may not appear (endpoints exempt), `skip` one forbidden
    // first-step edge.
    std::optional<std::vector<std::pair<VertexId, VertexId>>> shortest_path(
        VertexId s, VertexId t, const std::vector<char>& blocked,
        std::optional<std::pair<VertexId, VertexId>> skip = std::nullopt) const {
        if (s == t) return std::vector<std::pair<VertexId, VertexId>>{};
        std::vector<int> pred(g.order(), -1);
        std::queue<VertexId> q;
        pred[s] = s;
        q.push(s);
        while (!q.empty()) {
            VertexId x = q.front();
            q.pop();
            for (VertexId w : g.adj(x)) {
                if (pred[w] != -1 || !ok(x, w)) continue;
                if (w != t && blocked[w]) continue;
                if (skip && x == skip->first && w == skip->second) continue;
                pred[w] = x;
                if (w == t) {
                    std::vector<std::pair<VertexId, VertexId>> steps;
                    for (VertexId v = t; v != s; v = pred[v]) steps.emplace_back(pred[v], v);
                    std::reverse(steps.begin(), steps.end());
                    return steps;
                }
                q.push(w);
            }
        }
        return std::nullopt;
    }

    void delete_edges(const std::vector<std::pair<VertexId, VertexId>>& steps) {
        for (auto [u, v] : steps) dead_edges.insert(edge_key(g, u, v));
    }

    void delete_interior(const std::vector<std::pair<VertexId, VertexId>>& steps) {
        for (size_t j = 0; j + 1 < steps.size(); ++j) dead_vertex[steps[j].second] = 1;
    }
};

TourBuild edge_tour_impl(const Graph& g, const EdgeSequence& edge_marks, Gate gate) {
    const int k = edge_marks.size();
    TourBuild out;
    out.gate = std::move(gate);
    if (!out.gate.passed) {
        out.status = BuildStatus::refused;
        out.detail = out.gate.detail;
        return out;
    }

    Working w(g);
    std::vector<char> no_blocks(g.order(), 0);
    PathSystem sys;
    for (int i = 0; i < k; ++i) {
        auto [v, u] = edge_marks.edges[i];
        auto [vn, un] = edge_marks.edges[(i + 1) % k];
        (void)un;
        for (auto [s, t] : {std::pair<VertexId, VertexId>{v, u}, {u, vn}}) {
            auto path = w.shortest_path(s, t, no_blocks);
            if (!path) {
                out.status = BuildStatus::round_failed;
                std::ostringstream os;
                os << "no path " << s << " -> " << t << " in round " << sys.paths.size();
                out.detail = os.str();
                return out;
            }
            w.delete_edges(*path);
            sys.paths.push_back(*path);
            out.round_paths.push_back(*path);
        }
    }
    RepairResult rep = linkage_to_edge_tour(g, edge_marks, sys);
    out.status = BuildStatus::built;
    out.tour = std::move(rep.tour);
    out.swaps = rep.swaps;
    return out;
}

CycleBuild vertex_cycle_impl(const Graph& g, const MarkSequence& marks, Gate gate) {
    const int k = marks.size();
    CycleBuild out;
    out.gate = std::move(gate);
    if (!out.gate.passed) {
        out.status = BuildStatus::refused;
        out.detail = out.gate.detail;
        return out;
    }

    Working w(g);
    const auto& mv = marks.vertices;

    auto fail_round = [&](VertexId s, VertexId t) {
        out.status = BuildStatus::round_failed;
        std::ostringstream os;
        os << "no usable path " << s << " -> " << t;
        out.detail = os.str();
        return out;
    };

    if (k == 1) {
        // Shortest cycle of length >= 3 through the mark.
        VertexId v0 = mv[0];
        std::vector<char> blocked(g.order(), 0);
        blocked[v0] = 1;
        for (VertexId w1 : g.adj(v0)) {
            auto path = w.shortest_path(w1, v0, blocked, std::pair<VertexId, VertexId>{w1, v0});
            if (!path) continue;
            out.cycle.vertices.push_back(v0);
            out.cycle.vertices.push_back(w1);
            for (size_t j = 0; j + 1 < path->size(); ++j)
                out.cycle.vertices.push_back((*path)[j].second);
            out.round_paths.push_back(*path);
            out.status = BuildStatus::built;
            break;
        }
        if (out.status != BuildStatus::built) return fail_round(v0, v0);
    } else {
        std::vector<std::vector<std::pair<VertexId, VertexId>>> rounds;
        for (int i = 0; i < k; ++i) {
            VertexId s = mv[i], t = mv[(i + 1) % k];
            std::vector<char> blocked(g.order(), 0);
            for (int j = 0; j < k; ++j)
                if (j != i) blocked[mv[j]] = 1;
            std::optional<std::pair<VertexId, VertexId>> skip;
            if (k == 2 && i == 1) {
                // Closing round: avoid producing a 2-cycle / reusing the
                // direct edge when the first round took it.
                bool first_direct = rounds[0].size() == 1;
                if (first_direct) skip = std::pair<VertexId, VertexId>{s, t};
            }
            auto path = w.shortest_path(s, t, blocked, skip);
            if (!path) return fail_round(s, t);
            w.delete_interior(*path);
            rounds.push_back(*path);
            out.round_paths.push_back(*path);
        }
        for (int i = 0; i < k; ++i) {
            out.cycle.vertices.push_back(mv[i]);
            for (size_t j = 0; j + 1 < rounds[i].size(); ++j)
                out.cycle.vertices.push_back(rounds[i][j].second);
        }
        out.status = BuildStatus::built;
    }

    Check chk = verify_ordered_cycle(g, out.cycle, marks, false);
    if (!chk)
        throw std::logic_error(std::string("greedy vertex cycle failed verification: ") +
                               chk.reason);
    out.cycle.marked_positions.clear();
    for (VertexId v : mv) {
        auto it = std::find(out.cycle.vertices.begin(), out.cycle.vertices.end(), v);
        out.cycle.marked_positions.push_back(
            static_cast<int>(it - out.cycle.vertices.begin()));
    }
    return out;
}

Gate make_gate(int measured, int required, std::optional<int> diam, const char* kind) {
    Gate gate;
    gate.measured = measured;
    gate.required = required;
    gate.diameter = diam;
    std::ostringstream os;
    if (!diam) {
        gate.passed = false;
        os << "graph is not (strongly) connected; " << kind << " construction refused";
    } else {
        gate.passed = measured >= required;
        os << kind << " connectivity " << measured << (gate.passed ? " >= " : " < ") << required
           << " (diameter " << *diam << ")";
    }
    gate.detail = os.str();
    return gate;
}

}  // namespace

TourBuild greedy_edge_tour(const Graph& d, const EdgeSequence& edge_marks) {
    require(d.directed(), "greedy_edge_tour: digraphs only");
    const int k = edge_marks.size();
    require(k >= 1, "greedy_edge_tour: need marked edges");
    std::string why;
    require(edge_marks.valid_in(d, &why), "greedy_edge_tour: invalid edge marks");

    auto rep = metrics::connectivity(d);
    int required = 0;
    if (rep.diameter) required = (2 * k - 1) * ((*rep.diameter + 1) / 2) + 1;
    Gate gate = make_gate(rep.edge_connectivity, required, rep.diameter, "edge");
    return edge_tour_impl(d, edge_marks, std::move(gate));
}

CycleBuild greedy_vertex_cycle(const Graph& d, const MarkSequence& marks) {
    require(d.directed(), "greedy_vertex_cycle: digraphs only");
    require(marks.size() >= 1, "greedy_vertex_cycle: need marks");
    std::string why;
    require(marks.valid_in(d, &why), "greedy_vertex_cycle: invalid marks");

    auto rep = metrics::connectivity(d);
    int required = 0;
    if (rep.diameter) required = (marks.size() - 1) * *rep.diameter;
    Gate gate = make_gate(rep.vertex_connectivity, required, rep.diameter, "vertex");
    if (gate.passed && rep.diameter && *rep.diameter < 1) {
        gate.passed = false;
        gate.detail += "; diameter must be >= 1";
    }
    return vertex_cycle_impl(d, marks, std::move(gate));
}

TourBuild greedy_undirected_edge(const Graph& g, const EdgeSequence& edge_marks) {
    require(!g.directed(), "greedy_undirected_edge: undirected graphs only");
    const int k = edge_marks.size();
    require(k >= 1, "greedy_undirected_edge: need marked edges");
    std::string why;
    require(edge_marks.valid_in(g, &why), "greedy_undirected_edge: invalid edge marks");

    auto rep = metrics::connectivity(g);
    int required = 0;
    if (rep.diameter) required = (2 * k - 1) * *rep.diameter + 1;
    Gate gate = make_gate(rep.edge_connectivity, required, rep.diameter, "edge");
    return edge_tour_impl(g, edge_marks, std::move(gate));
}

CycleBuild greedy_undirected_cycle(const Graph& g, const MarkSequence& marks) {
    require(!g.directed(), "greedy_undirected_cycle: undirected graphs only");
    require(marks.size() >= 1, "greedy_undirected_cycle: need marks");
    std::string why;
    require(marks.valid_in(g, &why), "greedy_undirected_cycle: invalid marks");

    auto rep = metrics::connectivity(g);
    int required = 0;
    if (rep.diameter) required = (2 * marks.size() - 1) * *rep.diameter + 1;
    Gate gate = make_gate(rep.vertex_connectivity, required, rep.diameter, "vertex");
    return vertex_cycle_impl(g, marks, std::move(gate));
}

LinkageExtract tour_to_linkage(const Graph& g, const TerminalPairs& terminals,
                               const TourProvider& provider) {
    require(!g.directed(), "tour_to_linkage: undirected graphs only");
    const int k = terminals.size();
    require(k >= 1, "tour_to_linkage: need terminal pairs");
    for (auto [s, t] : terminals.pairs)
        require(g.valid_vertex(s) && g.valid_vertex(t), "tour_to_linkage: bad terminal");

    LinkageExtract out;
    int min_deg = g.order();
    for (int v = 0; v < g.order(); ++v) min_deg = std::min(min_deg, g.degree(v));
    if (min_deg < 2 * k) {
        out.status = ExtractStatus::refused;
        std::ostringstream os;
        os << "minimum degree " << min_deg << " < " << 2 * k;
        out.detail = os.str();
        return out;
    }

    std::set<VertexId> terminal_set;
    for (auto [s, t] : terminals.pairs) {
        terminal_set.insert(s);
        terminal_set.insert(t);
    }

    std::vector<int> nontrivial;
    for (int i = 0; i < k; ++i)
        if (terminals.pairs[i].first != terminals.pairs[i].second) nontrivial.push_back(i);

    out.system.paths.assign(k, {});
    if (nontrivial.empty()) {
        out.status = ExtractStatus::found;
        return out;
    }

    // One incident edge per terminal occurrence, far endpoint outside the
    // terminal set, all edges distinct.
    std::set<std::pair<VertexId, VertexId>> chosen;
    auto pick_edge = [&](VertexId v) -> std::optional<std::pair<VertexId, VertexId>> {
        for (VertexId w : g.adj(v)) {
            if (terminal_set.count(w)) continue;
            if (chosen.count(edge_key(g, v, w))) continue;
            chosen.insert(edge_key(g, v, w));
            return std::pair<VertexId, VertexId>{v, w};
        }
        return std::nullopt;
    };

    EdgeSequence seq;
    for (int i : nontrivial) {
        auto es = pick_edge(terminals.pairs[i].first);
        auto et = pick_edge(terminals.pairs[i].second);
        if (!es || !et) {
            out.status = ExtractStatus::refused;
            out.detail = "no spare incident edge outside the terminal set";
            return out;
        }
        seq.edges.push_back(*es);
        seq.edges.push_back(*et);
    }
    out.chosen_edges = seq;

    oracle::TourSearch ts = provider ? provider(g, seq)
                                     : oracle::find_ordered_tour(g, seq, oracle::kDefaultBudget);
    if (ts.outcome == oracle::Outcome::budget_exceeded) {
        out.status = ExtractStatus::budget_exceeded;
        return out;
    }
    if (ts.outcome != oracle::Outcome::found) {
        out.status = ExtractStatus::not_found;
        out.detail = "no tour through the chosen incident edges";
        return out;
    }

    // Normalize: rotate to the first chosen edge and orient forward.
    std::vector<std::pair<VertexId, VertexId>> steps = ts.tour.steps;
    auto positions = [&](const std::vector<std::pair<VertexId, VertexId>>& st) {
        std::vector<int> pos;
        for (auto [u, v] : seq.edges) {
            auto key = edge_key(g, u, v);
            for (size_t i = 0; i < st.size(); ++i)
                if (edge_key(g, st[i].first, st[i].second) == key) {
                    pos.push_back(static_cast<int>(i));
                    break;
                }
        }
        return pos;
    };
    auto increasing_from_first = [&](const std::vector<int>& pos) {
        const int L = static_cast<int>(steps.size());
        for (size_t i = 1; i < pos.size(); ++i) {
            int a = ((pos[i - 1] - pos[0]) % L + L) % L;
            int b = ((pos[i] - pos[0]) % L + L) % L;
            if (i > 1 && a >= b) return false;
        }
        return true;
    };
    std::vector<int> pos = positions(steps);
    if (!increasing_from_first(pos)) {
        std::reverse(steps.begin(), steps.end());
        for (auto& st : steps) std::swap(st.first, st.second);
        pos = positions(steps);
    }
    std::rotate(steps.begin(), steps.begin() + pos[0], steps.end());
    pos = positions(steps);

    const int L = static_cast<int>(steps.size());
    for (size_t j = 0; j < nontrivial.size(); ++j) {
        int i = nontrivial[j];
        auto [s, t] = terminals.pairs[i];
        int a = pos[2 * j], b = pos[2 * j + 1];
        std::vector<std::pair<VertexId, VertexId>> path;
        // Start at s: take the s-edge first unless the tour already exits it
        // at s; stop at t, using the t-edge only when the walk arrives at t'.
        if (steps[a].second != s) path.push_back(steps[a]);
        for (int x = (a + 1) % L; x != b; x = (x + 1) % L) path.push_back(steps[x]);
        if (steps[b].first != t) path.emplace_back(steps[b].first, t);
        out.system.paths[i] = std::move(path);
    }

    TerminalPairs tp = terminals;
    Check chk = verify_path_system(g, tp, out.system);
    if (!chk)
        throw std::logic_error(std::string("tour_to_linkage: extracted system invalid: ") +
                               chk.reason);
    out.status = ExtractStatus::found;
    return out;
}

}  // namespace bracelet::linkage
