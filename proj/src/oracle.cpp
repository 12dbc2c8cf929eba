#include "bracelet/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <bit>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace bracelet::oracle {

namespace {

std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

// Depth-first growth of the cycle as consecutive vertex-disjoint segments.
// `next_idx` counts marks already placed; marks[next_idx] is the only marked
// vertex that may be stepped on, and once all marks are placed the walk may
// only close back to marks[0].
struct CycleEngine {
    const Graph& g;
    const std::vector<VertexId>& marks;
    bool ham;
    std::uint64_t budget;

    int n, k;
    std::vector<std::uint64_t> adj;
    std::uint64_t marked_mask = 0, full_mask = 0;
    std::vector<VertexId> path;
    std::uint64_t nodes = 0;
    bool exceeded = false;

    CycleEngine(const Graph& gr, const std::vector<VertexId>& m, bool h, std::uint64_t b)
        : g(gr), marks(m), ham(h), budget(b), n(gr.order()), k(static_cast<int>(m.size())) {
        adj.assign(n, 0);
        for (int u = 0; u < n; ++u)
            for (VertexId v : g.adj(u)) adj[u] |= bit(v);
        for (VertexId v : marks) marked_mask |= bit(v);
        full_mask = (n == 64) ? ~std::uint64_t{0} : (bit(n) - 1);
    }

    bool dfs(VertexId cur, int next_idx, std::uint64_t used) {
        if (++nodes > budget) {
            exceeded = true;
            return false;
        }
        if (next_idx == k && (adj[cur] & bit(marks[0]))) {
            if (path.size() >= 3 && (!ham || used == full_mask)) return true;
        }
        std::uint64_t cand = adj[cur] & ~used;
        while (cand) {
            int w = std::countr_zero(cand);
            cand &= cand - 1;
            if (marked_mask & bit(w)) {
                if (next_idx >= k || w != marks[next_idx]) continue;
                path.push_back(w);
                if (dfs(w, next_idx + 1, used | bit(w))) return true;
                path.pop_back();
            } else {
                path.push_back(w);
                if (dfs(w, next_idx, used | bit(w))) return true;
                path.pop_back();
            }
            if (exceeded) return false;
        }
        return false;
    }
};

}  // namespace

CycleSearch find_ordered_cycle(const Graph& g, const MarkSequence& marks,
                               bool require_hamiltonian, std::uint64_t budget) {
    if (g.order() > 64) throw std::invalid_argument("oracle: graphs up to 64 vertices");
    std::string why;
    if (marks.size() < 1 || !marks.valid_in(g, &why))
        throw std::invalid_argument("find_ordered_cycle: invalid marks" + (why.empty() ? "" : ": " + why));

    CycleEngine eng(g, marks.vertices, require_hamiltonian, budget);
    eng.path.push_back(marks.vertices[0]);
    CycleSearch res;
    bool found = eng.dfs(marks.vertices[0], 1, bit(marks.vertices[0]));
    res.nodes = eng.nodes;
    if (found) {
        res.outcome = Outcome::found;
        res.cycle.vertices = eng.path;
        for (VertexId v : marks.vertices) {
            auto it = std::find(eng.path.begin(), eng.path.end(), v);
            res.cycle.marked_positions.push_back(static_cast<int>(it - eng.path.begin()));
        }
    } else {
        res.outcome = eng.exceeded ? Outcome::budget_exceeded : Outcome::none;
    }
    return res;
}

namespace {

// Edge-disjoint connector paths head(e_i) -> tail(e_{i+1}) in the graph with
// the marked edges removed; each path vertex-simple. Shared used-edge set
// across pairs; exhaustive per orientation assignment.
struct TourEngine {
    const Graph& g;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exceeded = false;

    std::vector<std::pair<VertexId, VertexId>> pairs;
    std::set<std::pair<VertexId, VertexId>> used_edges;  // canonical keys
    std::vector<std::vector<std::pair<VertexId, VertexId>>> paths;  // steps per pair

    explicit TourEngine(const Graph& gr, std::uint64_t b) : g(gr), budget(b) {}

    bool route(size_t idx) {
        if (idx == pairs.size()) return true;
        auto [a, b] = pairs[idx];
        if (a == b) {
            paths[idx].clear();
            return route(idx + 1);
        }
        std::vector<std::pair<VertexId, VertexId>> steps;
        std::vector<char> on_path(g.order(), 0);
        on_path[a] = 1;
        return path_dfs(a, b, idx, steps, on_path);
    }

    bool path_dfs(VertexId cur, VertexId target, size_t idx,
                  std::vector<std::pair<VertexId, VertexId>>& steps,
                  std::vector<char>& on_path) {
        if (++nodes > budget) {
            exceeded = true;
            return false;
        }
        for (VertexId w : g.adj(cur)) {
            if (on_path[w] && w != target) continue;
            auto key = edge_key(g, cur, w);
            if (used_edges.count(key)) continue;
            used_edges.insert(key);
            steps.emplace_back(cur, w);
            if (w == target) {
                paths[idx] = steps;
                if (route(idx + 1)) return true;
            } else {
                on_path[w] = 1;
                if (path_dfs(w, target, idx, steps, on_path)) return true;
                on_path[w] = 0;
            }
            steps.pop_back();
            used_edges.erase(key);
            if (exceeded) return false;
        }
        return false;
    }
};

}  // namespace

TourSearch find_ordered_tour(const Graph& g, const EdgeSequence& edge_marks,
                             std::uint64_t budget) {
    std::string why;
    if (edge_marks.size() < 1 || !edge_marks.valid_in(g, &why))
        throw std::invalid_argument("find_ordered_tour: invalid edge marks" +
                                    (why.empty() ? "" : ": " + why));

    const int k = edge_marks.size();
    TourSearch res;
    std::uint64_t nodes_total = 0;
    const int assignments = g.directed() ? 1 : (1 << k);
    for (int mask = 0; mask < assignments; ++mask) {
        // Orient each undirected marked edge; bit i flips edge i.
        std::vector<std::pair<VertexId, VertexId>> oriented(edge_marks.edges);
        bool ok = true;
        for (int i = 0; i < k; ++i) {
            if (g.directed()) {
                if (!g.has_edge(oriented[i].first, oriented[i].second)) ok = false;
            } else if (mask & (1 << i)) {
                std::swap(oriented[i].first, oriented[i].second);
            }
        }
        if (!ok) continue;

        TourEngine eng(g, budget > nodes_total ? budget - nodes_total : 0);
        for (auto [u, v] : oriented) eng.used_edges.insert(edge_key(g, u, v));
        for (int i = 0; i < k; ++i)
            eng.pairs.emplace_back(oriented[i].second, oriented[(i + 1) % k].first);
        eng.paths.resize(k);
        bool found = eng.route(0);
        nodes_total += eng.nodes;
        if (found) {
            Tour tour;
            for (int i = 0; i < k; ++i) {
                tour.steps.push_back(oriented[i]);
                for (auto step : eng.paths[i]) tour.steps.push_back(step);
            }
            res.outcome = Outcome::found;
            res.tour = std::move(tour);
            res.nodes = nodes_total;
            return res;
        }
        if (eng.exceeded) {
            res.outcome = Outcome::budget_exceeded;
            res.nodes = nodes_total;
            return res;
        }
    }
    res.outcome = Outcome::none;
    res.nodes = nodes_total;
    return res;
}

std::vector<std::vector<int>> enumerate_index_sequences(int count, int k, bool directed,
                                                        bool reduced) {
    std::vector<std::vector<int>> out;
    if (k < 1 || k > count) return out;
    std::vector<int> cur(k);
    std::vector<char> taken(count, 0);
    std::function<void(int)> rec = [&](int depth) {
        if (depth == k) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v < count; ++v) {
            if (taken[v]) continue;
            if (reduced) {
                if (depth > 0 && v < cur[0]) continue;  // rotation: anchor the minimum first
                if (!directed && k >= 3 && depth == k - 1 && cur[1] > v)
                    continue;  // reflection: second < last
            }
            taken[v] = 1;
            cur[depth] = v;
            rec(depth + 1);
            taken[v] = 0;
        }
    };
    rec(0);
    return out;
}

std::vector<std::vector<VertexId>> enumerate_mark_sequences(int n, int k, bool directed,
                                                            bool reduced) {
    return enumerate_index_sequences(n, k, directed, reduced);
}

namespace {

// Deterministic sweep: sequences are split into fixed blocks processed by
// `jobs` workers; the merge walks blocks in order and takes the first
// non-holding sequence, so the verdict and its stats never depend on thread
// scheduling.
struct BlockResult {
    std::uint64_t nodes = 0;
    std::int64_t fail_local = -1;  // index within block of first non-holding sequence
    Outcome fail_outcome = Outcome::found;
    std::optional<OrderedCycle> last_cycle;
    std::optional<Tour> last_tour;
    bool done = false;
};

template <typename SearchFn>
Verdict run_sweep(const std::vector<std::vector<int>>& sequences, int jobs, SearchFn search) {
    constexpr std::size_t kBlock = 64;
    const std::size_t nseq = sequences.size();
    const std::size_t nblocks = (nseq + kBlock - 1) / kBlock;
    std::vector<BlockResult> blocks(nblocks);
    std::atomic<std::size_t> next_block{0};
    std::atomic<std::size_t> first_fail_block{nblocks};

    auto worker = [&]() {
        for (;;) {
            std::size_t b = next_block.fetch_add(1);
            if (b >= nblocks) return;
            if (b > first_fail_block.load()) {
                blocks[b].done = true;
                continue;  // a strictly earlier block already failed
            }
            BlockResult& res = blocks[b];
            std::size_t lo = b * kBlock, hi = std::min(nseq, lo + kBlock);
            for (std::size_t i = lo; i < hi; ++i) {
                auto [outcome, nodes, cycle, tour] = search(sequences[i]);
                res.nodes += nodes;
                if (outcome != Outcome::found) {
                    res.fail_local = static_cast<std::int64_t>(i - lo);
                    res.fail_outcome = outcome;
                    std::size_t cur = first_fail_block.load();
                    while (b < cur && !first_fail_block.compare_exchange_weak(cur, b)) {
                    }
                    break;
                }
                res.last_cycle = std::move(cycle);
                res.last_tour = std::move(tour);
            }
            res.done = true;
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Verdict v;
    v.stats.total = nseq;
    for (std::size_t b = 0; b < nblocks; ++b) {
        const BlockResult& res = blocks[b];
        v.stats.nodes += res.nodes;
        if (res.fail_local >= 0) {
            v.stats.sequences += static_cast<std::uint64_t>(res.fail_local) + 1;
            v.status = res.fail_outcome == Outcome::budget_exceeded ? Status::resource_exceeded
                                                                    : Status::fails;
            v.fail_index = b * kBlock + static_cast<std::size_t>(res.fail_local);
            return v;
        }
        v.stats.sequences += std::min(nseq - b * kBlock, kBlock);
        if (res.last_cycle) v.witness_cycle = res.last_cycle;
        if (res.last_tour) v.witness_tour = res.last_tour;
    }
    v.status = Status::holds;
    return v;
}

}  // namespace

Verdict is_k_ordered(const Graph& g, int k, bool require_hamiltonian, const SweepOptions& opt) {
    if (k < 1 || k > g.order()) throw std::invalid_argument("is_k_ordered: need 1 <= k <= n");
    auto t0 = std::chrono::steady_clock::now();
    auto sequences =
        enumerate_mark_sequences(g.order(), k, g.directed(), opt.symmetry_reduction);

    auto search = [&](const std::vector<int>& seq) {
        MarkSequence marks{seq};
        CycleSearch s = find_ordered_cycle(g, marks, require_hamiltonian, opt.budget);
        return std::tuple<Outcome, std::uint64_t, std::optional<OrderedCycle>,
                          std::optional<Tour>>{
            s.outcome, s.nodes,
            s.outcome == Outcome::found ? std::optional<OrderedCycle>(std::move(s.cycle))
                                        : std::nullopt,
            std::nullopt};
    };
    Verdict v = run_sweep(sequences, opt.jobs, search);
    if (v.status != Status::holds)
        v.counterexample_marks = MarkSequence{sequences[v.fail_index]};
    v.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return v;
}

Verdict is_k_edge_ordered(const Graph& g, int k, const SweepOptions& opt) {
    auto all_edges = g.edges();
    if (k < 1 || k > static_cast<int>(all_edges.size()))
        throw std::invalid_argument("is_k_edge_ordered: need 1 <= k <= edge count");
    auto t0 = std::chrono::steady_clock::now();
    auto sequences = enumerate_index_sequences(static_cast<int>(all_edges.size()), k,
                                               g.directed(), opt.symmetry_reduction);

    auto to_edge_sequence = [&](const std::vector<int>& seq) {
        EdgeSequence es;
        for (int idx : seq) es.edges.push_back(all_edges[idx]);
        return es;
    };
    auto search = [&](const std::vector<int>& seq) {
        TourSearch s = find_ordered_tour(g, to_edge_sequence(seq), opt.budget);
        return std::tuple<Outcome, std::uint64_t, std::optional<OrderedCycle>,
                          std::optional<Tour>>{
            s.outcome, s.nodes, std::nullopt,
            s.outcome == Outcome::found ? std::optional<Tour>(std::move(s.tour)) : std::nullopt};
    };
    Verdict v = run_sweep(sequences, opt.jobs, search);
    if (v.status != Status::holds)
        v.counterexample_edges = to_edge_sequence(sequences[v.fail_index]);
    v.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return v;
}

namespace {

std::optional<ObstructionCertificate> certify_subset(const Graph& g,
                                                     const std::vector<VertexId>& subset) {
    std::vector<char> in_subset(g.order(), 0), in_nbhd(g.order(), 0);
    for (VertexId v : subset) in_subset[v] = 1;
    for (VertexId v : subset)
        for (VertexId w : g.adj(v))
            if (!in_subset[w]) in_nbhd[w] = 1;
    int nbhd = 0;
    for (int v = 0; v < g.order(); ++v) nbhd += in_nbhd[v];
    int outside = g.order() - static_cast<int>(subset.size()) - nbhd;
    int s = static_cast<int>(subset.size());
    if (nbhd < 2 * s && outside >= s)
        return ObstructionCertificate{subset, nbhd, outside};
    return std::nullopt;
}

}  // namespace

std::optional<ObstructionCertificate> neighborhood_obstruction(const BraceletGraph& bg, int k) {
    if (bg.graph.directed())
        throw std::invalid_argument("neighborhood_obstruction: undirected bracelets only");
    if (k < 1) throw std::invalid_argument("neighborhood_obstruction: k >= 1");
    for (int i = 0; i < bg.part_count(); ++i) {
        std::vector<VertexId> subset = bg.parts[i];
        if (static_cast<int>(subset.size()) > k) subset.resize(k);
        if (auto cert = certify_subset(bg.graph, subset)) return cert;
    }
    return std::nullopt;
}

std::optional<ObstructionCertificate> neighborhood_obstruction(const Graph& g, int k,
                                                               int max_subset_size) {
    if (g.directed())
        throw std::invalid_argument("neighborhood_obstruction: undirected graphs only");
    if (k < 1) throw std::invalid_argument("neighborhood_obstruction: k >= 1");
    const int cap = std::min(k, max_subset_size);
    std::vector<VertexId> subset;
    std::function<std::optional<ObstructionCertificate>(int, int)> rec =
        [&](int start, int remaining) -> std::optional<ObstructionCertificate> {
        if (remaining == 0) return certify_subset(g, subset);
        for (int v = start; v <= g.order() - remaining; ++v) {
            subset.push_back(v);
            if (auto cert = rec(v + 1, remaining - 1)) return cert;
            subset.pop_back();
        }
        return std::nullopt;
    };
    for (int s = 1; s <= cap; ++s) {
        subset.clear();
        if (auto cert = rec(0, s)) return cert;
    }
    return std::nullopt;
}

ParityAudit parity_audit(const BraceletGraph& bg, std::uint64_t budget) {
    if (bg.graph.directed()) throw std::invalid_argument("parity_audit: undirected bracelets only");
    ParityAudit a;
    a.parts = bg.part_count();
    a.n = bg.graph.order();
    a.applicable = a.parts % 2 == 0;
    a.odd_vertex_count = a.n % 2 == 1;
    if (!a.applicable) return a;

    // 2-colorability checked on the graph itself, not inferred from parts.
    std::vector<int> color(a.n, -1);
    a.bipartite = true;
    for (int s = 0; s < a.n && a.bipartite; ++s) {
        if (color[s] != -1) continue;
        std::queue<int> q;
        color[s] = 0;
        q.push(s);
        while (!q.empty() && a.bipartite) {
            int u = q.front();
            q.pop();
            for (VertexId w : bg.graph.adj(u)) {
                if (color[w] == -1) {
                    color[w] = color[u] ^ 1;
                    q.push(w);
                } else if (color[w] == color[u]) {
                    a.bipartite = false;
                    break;
                }
            }
        }
    }

    if (a.odd_vertex_count) {
        MarkSequence any_vertex{{0}};
        CycleSearch s = find_ordered_cycle(bg.graph, any_vertex, true, budget);
        a.hamiltonian_searched = s.outcome != Outcome::budget_exceeded;
        a.hamiltonian_found = s.outcome == Outcome::found;
    }
    return a;
}

}  // namespace bracelet::oracle
