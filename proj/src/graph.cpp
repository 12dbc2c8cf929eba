#include "bracelet/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bracelet {

Graph::Graph(int n, bool directed) : n_(n), directed_(directed), out_(n) {
    if (n < 0) throw std::invalid_argument("graph order must be non-negative");
    if (directed_) in_.resize(n);
}

static void insert_sorted(std::vector<VertexId>& v, VertexId x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

void Graph::add_edge(VertexId u, VertexId v) {
    if (!valid_vertex(u) || !valid_vertex(v))
        throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (has_edge(u, v)) throw std::invalid_argument("duplicate edge");
    insert_sorted(out_[u], v);
    if (directed_) {
        insert_sorted(in_[v], u);
    } else {
        insert_sorted(out_[v], u);
    }
    ++edge_count_;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    if (!valid_vertex(u) || !valid_vertex(v)) return false;
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

const std::vector<VertexId>& Graph::in_adj(VertexId u) const {
    return directed_ ? in_[u] : out_[u];
}

int Graph::in_degree(VertexId u) const {
    return static_cast<int>(in_adj(u).size());
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> es;
    es.reserve(edge_count_);
    for (VertexId u = 0; u < n_; ++u)
        for (VertexId v : out_[u])
            if (directed_ || u < v) es.emplace_back(u, v);
    return es;
}

int BraceletSpec::vertex_count() const {
    return std::accumulate(part_sizes.begin(), part_sizes.end(), 0);
}

void BraceletSpec::validate() const {
    if (part_count() < 3)
        throw std::invalid_argument("bracelet needs at least 3 parts");
    for (int s : part_sizes)
        if (s < 1) throw std::invalid_argument("bracelet parts must be nonempty");
}

bool BraceletGraph::uniform(int* k) const {
    if (parts.empty()) return false;
    int s = part_size(0);
    for (int i = 1; i < part_count(); ++i)
        if (part_size(i) != s) return false;
    if (k) *k = s;
    return true;
}

bool BraceletGraph::check_invariants(std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int m = part_count();
    const int n = graph.order();
    if (m < 3) return fail("fewer than 3 parts");
    if (static_cast<int>(part_of.size()) != n) return fail("part_of size mismatch");
    std::vector<int> seen(n, 0);
    for (int i = 0; i < m; ++i) {
        if (parts[i].empty()) return fail("empty part");
        for (VertexId v : parts[i]) {
            if (!graph.valid_vertex(v) || part_of[v] != i) return fail("inconsistent part assignment");
            if (seen[v]++) return fail("vertex in two parts");
        }
    }
    for (int v = 0; v < n; ++v)
        if (!seen[v]) return fail("vertex in no part");
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            int pu = part_of[u], pv = part_of[v];
            bool expect = graph.directed() ? (pv == (pu + 1) % m)
                                           : (pv == (pu + 1) % m || pu == (pv + 1) % m);
            if (graph.has_edge(u, v) != expect)
                return fail("adjacency does not match part structure");
        }
    }
    return true;
}

BraceletGraph build_bracelet(const BraceletSpec& spec, bool directed) {
    spec.validate();
    const int m = spec.part_count();
    BraceletGraph bg;
    bg.graph = Graph(spec.vertex_count(), directed);
    bg.parts.resize(m);
    bg.part_of.resize(spec.vertex_count());
    int next = 0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < spec.part_sizes[i]; ++j) {
            bg.parts[i].push_back(next);
            bg.part_of[next] = i;
            ++next;
        }
    }
    for (int i = 0; i < m; ++i) {
        int j = (i + 1) % m;
        for (VertexId u : bg.parts[i])
            for (VertexId v : bg.parts[j])
                bg.graph.add_edge(u, v);
    }
    return bg;
}

Graph complete_graph(int n, bool directed) {
    Graph g(n, directed);
    for (int u = 0; u < n; ++u)
        for (int v = directed ? 0 : u + 1; v < n; ++v)
            if (u != v) g.add_edge(u, v);
    return g;
}

void write_edge_list(std::ostream& os, const Graph& g) {
    os << g.order() << ' ' << g.edge_count() << " directed:" << (g.directed() ? 1 : 0) << '\n';
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

namespace {

bool parse_directed_token(const std::string& tok, bool& directed) {
    if (tok == "directed:0") { directed = false; return true; }
    if (tok == "directed:1") { directed = true; return true; }
    return false;
}

}  // namespace

Graph read_edge_list(std::istream& is) {
    int n = -1, m = -1;
    std::string dir_tok;
    if (!(is >> n >> m >> dir_tok)) throw std::runtime_error("edge list: bad header");
    bool directed = false;
    if (!parse_directed_token(dir_tok, directed)) throw std::runtime_error("edge list: bad directed flag");
    if (n < 0 || m < 0) throw std::runtime_error("edge list: negative counts");
    Graph g(n, directed);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(is >> u >> v)) throw std::runtime_error("edge list: truncated");
        g.add_edge(u, v);
    }
    return g;
}

void write_bracelet(std::ostream& os, const BraceletGraph& bg) {
    os << "bracelet " << bg.part_count() << " directed:" << (bg.graph.directed() ? 1 : 0) << '\n';
    for (int i = 0; i < bg.part_count(); ++i)
        os << bg.part_size(i) << (i + 1 == bg.part_count() ? '\n' : ' ');
}

BraceletGraph read_bracelet(std::istream& is) {
    std::string magic, dir_tok;
    int m = -1;
    if (!(is >> magic >> m >> dir_tok) || magic != "bracelet")
        throw std::runtime_error("bracelet: bad header");
    bool directed = false;
    if (!parse_directed_token(dir_tok, directed)) throw std::runtime_error("bracelet: bad directed flag");
    if (m < 3) throw std::runtime_error("bracelet: fewer than 3 parts");
    BraceletSpec spec;
    spec.part_sizes.resize(m);
    for (int i = 0; i < m; ++i)
        if (!(is >> spec.part_sizes[i])) throw std::runtime_error("bracelet: truncated sizes");
    return build_bracelet(spec, directed);
}

}  // namespace bracelet
