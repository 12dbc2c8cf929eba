#include "bracelet/metrics.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace bracelet::metrics {

namespace {

// Unit/small-capacity max-flow via BFS augmenting paths (Edmonds-Karp).
// Sized for desk-scale graphs.
struct FlowNet {
    struct Arc {
        int to;
        int cap;
    };
    std::vector<Arc> arcs;             // arc 2i and its reverse 2i+1
    std::vector<std::vector<int>> at;  // vertex -> arc indices

    explicit FlowNet(int n) : at(n) {}

    void add(int u, int v, int cap) {
        at[u].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({v, cap});
        at[v].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({u, 0});
    }

    int max_flow(int s, int t, int stop_at = std::numeric_limits<int>::max()) {
        int flow = 0;
        std::vector<int> pred(at.size());
        while (flow < stop_at) {
            std::fill(pred.begin(), pred.end(), -1);
            std::queue<int> q;
            q.push(s);
            pred[s] = -2;
            while (!q.empty() && pred[t] == -1) {
                int u = q.front();
                q.pop();
                for (int a : at[u]) {
                    if (arcs[a].cap > 0 && pred[arcs[a].to] == -1) {
                        pred[arcs[a].to] = a;
                        q.push(arcs[a].to);
                    }
                }
            }
            if (pred[t] == -1) break;
            for (int v = t; v != s;) {
                int a = pred[v];
                arcs[a].cap -= 1;
                arcs[a ^ 1].cap += 1;
                v = arcs[a ^ 1].to;
            }
            ++flow;
        }
        return flow;
    }
};

}  // namespace

int max_flow_edges(const Graph& g, VertexId s, VertexId t) {
    FlowNet net(g.order());
    if (g.directed()) {
        for (auto [u, v] : g.edges()) net.add(u, v, 1);
    } else {
        // One unit each way models an undirected unit-capacity edge.
        for (auto [u, v] : g.edges()) {
            net.add(u, v, 1);
            net.add(v, u, 1);
        }
    }
    return net.max_flow(s, t);
}

int max_flow_vertices(const Graph& g, VertexId s, VertexId t) {
    // Split every vertex except s,t: in-node v, out-node v+n, unit arc.
    const int n = g.order();
    const int big = n + 1;  // effectively infinite for unit vertex caps
    FlowNet net(2 * n);
    for (int v = 0; v < n; ++v)
        net.add(v, v + n, (v == s || v == t) ? big : 1);
    for (auto [u, v] : g.edges()) {
        net.add(u + n, v, big);
        if (!g.directed()) net.add(v + n, u, big);
    }
    return net.max_flow(s + n, t, n + 1);
}

std::optional<int> diameter(const Graph& g) {
    const int n = g.order();
    int best = 0;
    for (int s = 0; s < n; ++s) {
        std::vector<int> dist(n, -1);
        std::queue<int> q;
        dist[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (VertexId w : g.adj(u)) {
                if (dist[w] == -1) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        for (int v = 0; v < n; ++v) {
            if (dist[v] == -1) return std::nullopt;
            best = std::max(best, dist[v]);
        }
    }
    return best;
}

int distance(const Graph& g, VertexId s, VertexId t) {
    std::vector<int> dist(g.order(), -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (u == t) return dist[u];
        for (VertexId w : g.adj(u)) {
            if (dist[w] == -1) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
        }
    }
    return dist[t];
}

ConnectivityReport connectivity(const Graph& g) {
    const int n = g.order();
    if (n < 2) throw std::invalid_argument("connectivity: need at least 2 vertices");
    ConnectivityReport r;
    r.diameter = diameter(g);

    r.min_degree = r.min_indegree = r.min_outdegree = n;
    for (int v = 0; v < n; ++v) {
        r.min_outdegree = std::min(r.min_outdegree, g.out_degree(v));
        r.min_indegree = std::min(r.min_indegree, g.in_degree(v));
    }
    r.min_degree = r.min_outdegree;

    // Edge connectivity: a minimum cut separates vertex 0 from some other
    // vertex (in one direction or the other for digraphs).
    int lambda = std::numeric_limits<int>::max();
    for (int v = 1; v < n; ++v) {
        lambda = std::min(lambda, max_flow_edges(g, 0, v));
        if (g.directed()) lambda = std::min(lambda, max_flow_edges(g, v, 0));
    }
    r.edge_connectivity = lambda;

    // Vertex connectivity: minimum over non-adjacent ordered pairs; n-1 when
    // every pair is adjacent.
    int kappa = n - 1;
    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) {
            if (s == t || g.has_edge(s, t)) continue;
            if (!g.directed() && t < s) continue;
            kappa = std::min(kappa, max_flow_vertices(g, s, t));
        }
    }
    r.vertex_connectivity = kappa;
    return r;
}

namespace {

bool connected_without(const Graph& g, const std::vector<char>& removed) {
    const int n = g.order();
    int start = -1, kept = 0;
    for (int v = 0; v < n; ++v) {
        if (!removed[v]) {
            if (start == -1) start = v;
            ++kept;
        }
    }
    if (kept <= 1) return true;

    auto reach_count = [&](int s, bool reverse) {
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        seen[s] = 1;
        q.push(s);
        int cnt = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            const auto& nb = reverse ? g.in_adj(u) : g.adj(u);
            for (VertexId w : nb) {
                if (!removed[w] && !seen[w]) {
                    seen[w] = 1;
                    ++cnt;
                    q.push(w);
                }
            }
        }
        return cnt;
    };

    if (reach_count(start, false) != kept) return false;
    if (g.directed() && reach_count(start, true) != kept) return false;
    return true;
}

}  // namespace

int exhaustive_vertex_connectivity(const Graph& g) {
    const int n = g.order();
    if (n > 20) throw std::invalid_argument("exhaustive_vertex_connectivity: n too large");
    int best = n - 1;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = std::popcount(mask);
        if (size >= best || n - size < 2) continue;
        std::vector<char> removed(n, 0);
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) removed[v] = 1;
        if (!connected_without(g, removed)) best = size;
    }
    return best;
}

int exhaustive_edge_connectivity(const Graph& g) {
    const int n = g.order();
    if (n > 20) throw std::invalid_argument("exhaustive_edge_connectivity: n too large");
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t side = 1; side < (1u << n) - 1; ++side) {
        int cross = 0;
        for (auto [u, v] : g.edges()) {
            bool su = side & (1u << u), sv = side & (1u << v);
            if (g.directed()) {
                if (su && !sv) ++cross;  // arcs leaving the side
            } else if (su != sv) {
                ++cross;
            }
        }
        best = std::min(best, cross);
    }
    return best;
}

DiameterBoundReport check_diameter_bound(const Graph& g, int k, bool certified) {
    if (k < 1) throw std::invalid_argument("check_diameter_bound: k >= 1");
    DiameterBoundReport r;
    r.n = g.order();
    r.k = k;
    r.diameter = diameter(g);
    r.bound = (r.n - 3) / (2 * k) + 2;
    r.orderedness_certified = certified;
    if (certified && r.diameter) {
        r.holds = *r.diameter <= r.bound;
        r.slack = r.bound - *r.diameter;
    }
    return r;
}

DirectedNecessaryReport check_directed_necessary(const Graph& d, int k) {
    if (!d.directed()) throw std::invalid_argument("check_directed_necessary: digraphs only");
    DirectedNecessaryReport r;
    r.k = k;
    for (int v = 0; v < d.order(); ++v)
        if (d.in_degree(v) < k - 1 || d.out_degree(v) < k - 1)
            r.degree_violations.push_back({v, d.in_degree(v), d.out_degree(v)});
    r.vertex_connectivity = connectivity(d).vertex_connectivity;
    r.connectivity_ok = r.vertex_connectivity >= k - 1;
    r.ok = r.degree_violations.empty() && r.connectivity_ok;
    return r;
}

BraceletDegreeAudit bracelet_degree_audit(const BraceletGraph& bg, int k) {
    if (bg.graph.directed())
        throw std::invalid_argument("bracelet_degree_audit: undirected bracelets only");
    BraceletDegreeAudit a;
    a.k = k;
    const int m = bg.part_count();
    for (int i = 0; i < m; ++i) a.part_sizes.push_back(bg.part_size(i));
    a.min_part_size = *std::min_element(a.part_sizes.begin(), a.part_sizes.end());

    a.min_degree = bg.graph.order();
    a.max_degree = 0;
    for (int v = 0; v < bg.graph.order(); ++v) {
        a.min_degree = std::min(a.min_degree, bg.graph.degree(v));
        a.max_degree = std::max(a.max_degree, bg.graph.degree(v));
    }

    auto screen = [&](std::string name, bool pass, std::string detail) {
        a.screens.push_back({std::move(name), pass, std::move(detail)});
    };

    {
        std::ostringstream os;
        os << "min part size " << a.min_part_size << ", need >= " << k - 1;
        screen("part_size_floor", a.min_part_size >= k - 1, os.str());
    }
    {
        // Part-neighborhood conditions; |N(B)| is the two adjacent part sizes.
        bool ok = true;
        std::ostringstream os;
        for (int i = 0; i < m; ++i) {
            int nb = bg.part_size((i + 1) % m) + bg.part_size((i + m - 1) % m);
            int b = bg.part_size(i);
            bool bad = (b <= k && nb < 2 * b) || (b > k && nb < 2 * k);
            if (bad) {
                ok = false;
                os << "part " << i << " size " << b << " has |N| = " << nb << "; ";
            }
        }
        if (ok) os << "all parts pass";
        screen("part_neighborhood", ok, os.str());
    }
    {
        std::ostringstream os;
        os << "min degree " << a.min_degree << ", need >= " << 2 * k - 1;
        screen("min_degree", a.min_degree >= 2 * k - 1, os.str());
    }
    {
        int kappa = connectivity(bg.graph).vertex_connectivity;
        std::ostringstream os;
        os << "vertex connectivity " << kappa << ", need >= " << 2 * k - 1;
        screen("connectivity", kappa >= 2 * k - 1, os.str());
    }

    a.all_pass = std::all_of(a.screens.begin(), a.screens.end(),
                             [](const Screen& s) { return s.pass; });
    return a;
}

}  // namespace bracelet::metrics
