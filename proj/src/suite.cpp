#include "bracelet/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <sstream>

#include "bracelet/constructive.hpp"
#include "bracelet/generators.hpp"
#include "bracelet/linkage.hpp"
#include "bracelet/metrics.hpp"

namespace bracelet::suite {

std::vector<int> sample_sequence(std::mt19937_64& rng, int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("sample_sequence: need 0 <= k <= n");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int j = 0; j < k; ++j) {
        int pick = j + static_cast<int>(rng() % static_cast<std::uint64_t>(n - j));
        std::swap(idx[j], idx[pick]);
    }
    idx.resize(k);
    return idx;
}

namespace {

using constructive::construct_directed_hamiltonian;
using constructive::construct_G_hamiltonian;

struct Ctx {
    const Options& opt;
    std::ostringstream detail;
    bool pass = true;
    bool budget_hit = false;

    explicit Ctx(const Options& o) : opt(o) {}

    void check(bool cond, const std::string& msg) {
        if (!cond) {
            pass = false;
            detail << "FAIL: " << msg << "; ";
        }
    }
};

oracle::SweepOptions sweep_opts(const Options& opt, bool reduced = true) {
    oracle::SweepOptions so;
    so.budget = opt.budget;
    so.jobs = opt.jobs;
    so.symmetry_reduction = reduced;
    return so;
}

// Constructor sweep over every canonical 2k+1 sequence of a uniform even
// bracelet; every witness re-verified, with its star certificate.
int construct_sweep_G(Ctx& c, const BraceletGraph& bg, int k, bool oracle_too) {
    auto seqs = oracle::enumerate_mark_sequences(bg.graph.order(), 2 * k + 1, false, true);
    int failures = 0;
    for (const auto& seq : seqs) {
        MarkSequence marks{seq};
        auto witness = construct_G_hamiltonian(bg, marks);
        if (!verify_ordered_cycle(bg.graph, witness.cycle, marks, true)) ++failures;
        if (oracle_too) {
            auto s = oracle::find_ordered_cycle(bg.graph, marks, true, c.opt.budget);
            if (s.outcome == oracle::Outcome::budget_exceeded) c.budget_hit = true;
            if (s.outcome != oracle::Outcome::found) ++failures;
        }
    }
    c.check(failures == 0, "sweep failures");
    return static_cast<int>(seqs.size());
}

// --- criterion rows -------------------------------------------------------

void c01_g24_sweep(Ctx& c) {
    auto bg = gen::gen_G(2, 4);
    int n = construct_sweep_G(c, bg, 2, true);
    c.detail << n << " sequences, constructor + oracle agree";
}

void c02_g26_sweep(Ctx& c) {
    auto bg = gen::gen_G(2, 6);
    int n = construct_sweep_G(c, bg, 2, false);
    std::mt19937_64 rng(c.opt.seed);
    int oracle_checked = 0;
    for (int i = 0; i < 1000; ++i) {
        MarkSequence marks{sample_sequence(rng, bg.graph.order(), 5)};
        auto s = oracle::find_ordered_cycle(bg.graph, marks, true, c.opt.budget);
        if (s.outcome == oracle::Outcome::budget_exceeded) c.budget_hit = true;
        c.check(s.outcome == oracle::Outcome::found, "oracle miss on seeded sequence");
        ++oracle_checked;
    }
    c.detail << n << " constructor sequences, " << oracle_checked << " oracle samples";
}

void c03_counterexample(Ctx& c) {
    auto ce = gen::gen_counterexample(2, {2});
    c.check(ce.bg.graph.order() == 11, "order should be 11");

    // The all-in-big-part sequence admits no cycle.
    MarkSequence big{ce.bg.parts[ce.big_part_index]};
    auto s = oracle::find_ordered_cycle(ce.bg.graph, big, false, c.opt.budget);
    c.check(s.outcome == oracle::Outcome::none, "big-part sequence should have no cycle");

    auto verdict = oracle::is_k_ordered(ce.bg.graph, 5, false, sweep_opts(c.opt));
    c.check(verdict.status == oracle::Status::fails, "graph should fail 5-orderedness");
    if (verdict.status == oracle::Status::resource_exceeded) c.budget_hit = true;

    auto cert = oracle::neighborhood_obstruction(ce.bg, 3);
    c.check(cert.has_value(), "obstruction certificate expected");
    if (cert) c.check(cert->neighborhood_size == 4, "certificate |N| should be 4");
    c.detail << "oracle fails, |N| = " << (cert ? cert->neighborhood_size : -1);
}

void c04_parity(Ctx& c) {
    // Even-part bracelets are bipartite; emitted cycles all have even length.
    std::vector<BraceletGraph> evens;
    evens.push_back(gen::gen_G(2, 4));
    evens.push_back(gen::gen_G(2, 6));
    evens.push_back(gen::gen_H(2, 1));
    evens.push_back(gen::gen_H(2, 2));
    evens.push_back(gen::gen_counterexample(2, {2}).bg);
    for (const auto& bg : evens) {
        auto audit = oracle::parity_audit(bg, c.opt.budget);
        c.check(audit.applicable && audit.bipartite, "even-part bracelet must be bipartite");
    }
    std::mt19937_64 rng(c.opt.seed);
    for (int i = 0; i < 50; ++i) {
        const auto& bg = evens[i % 2];  // the two G instances
        MarkSequence marks{sample_sequence(rng, bg.graph.order(), 5)};
        auto w = construct_G_hamiltonian(bg, marks);
        c.check(w.cycle.length() % 2 == 0, "constructed cycle must have even length");
        auto s = oracle::find_ordered_cycle(bg.graph, marks, false, c.opt.budget);
        c.check(s.outcome == oracle::Outcome::found && s.cycle.length() % 2 == 0,
                "oracle cycle must have even length");
    }

    // 4 parts, odd order: not hamiltonian, by exhaustive search.
    auto odd = build_bracelet(BraceletSpec{{1, 2, 1, 1}}, false);
    auto audit = oracle::parity_audit(odd, c.opt.budget);
    c.check(audit.applicable && audit.odd_vertex_count, "audit applicability");
    c.check(audit.hamiltonian_searched && !audit.hamiltonian_found,
            "odd-order even-part bracelet must be non-hamiltonian");
    c.detail << evens.size() << " even-part graphs bipartite, odd-order instance non-hamiltonian";
}

void c05_diameter(Ctx& c) {
    // K_{3,3}: 4-ordered, diameter exactly at the bound.
    auto k33 = gen::gen_H(2, 1);
    auto v33 = oracle::is_k_ordered(k33.graph, 4, false, sweep_opts(c.opt));
    c.check(v33.status == oracle::Status::holds, "K_{3,3} should be 4-ordered");
    auto r33 = metrics::check_diameter_bound(k33.graph, 2, v33.status == oracle::Status::holds);
    c.check(r33.diameter && *r33.diameter == 2 && r33.bound == 2 && r33.holds,
            "K_{3,3} diameter 2 should equal the bound");

    // G_{2,6}: certified 5-ordered by the verified constructor sweep.
    auto g26 = gen::gen_G(2, 6);
    int seqs = construct_sweep_G(c, g26, 2, false);
    auto r26 = metrics::check_diameter_bound(g26.graph, 2, true);
    c.check(r26.diameter && *r26.diameter == 3, "G_{2,6} diameter should be 3");
    c.check(r26.bound == 4 && r26.holds && r26.slack == 1,
            "G_{2,6} diameter should be bound-1");

    // Never violated on certified corpus instances.
    auto g24 = gen::gen_G(2, 4);
    auto v24 = oracle::is_k_ordered(g24.graph, 5, true, sweep_opts(c.opt));
    c.check(v24.status == oracle::Status::holds, "G_{2,4} should be 5-ordered hamiltonian");
    auto r24 = metrics::check_diameter_bound(g24.graph, 2, true);
    c.check(r24.holds, "bound violated on G_{2,4}");
    c.detail << "K33 tight (d=2), G26 d=3=bound-1, " << seqs << " certifying sequences";
}

void c06_low_degree(Ctx& c) {
    auto h22 = gen::gen_H(2, 2);
    auto vh = oracle::is_k_ordered(h22.graph, 4, false, sweep_opts(c.opt));
    c.check(vh.status == oracle::Status::fails, "H_{2,2} should fail 4-orderedness");

    auto p25 = gen::gen_P(2, 5);
    auto a25 = metrics::bracelet_degree_audit(p25, 2);
    c.check(a25.min_degree == 3 && a25.max_degree == 5, "P_{2,5} degree profile 3..5");
    auto v25 = oracle::is_k_ordered(p25.graph, 4, false, sweep_opts(c.opt));
    c.check(v25.status == oracle::Status::holds, "P_{2,5} should be 4-ordered");

    auto p26 = gen::gen_P(2, 6);
    auto a26 = metrics::bracelet_degree_audit(p26, 2);
    c.check(a26.min_degree == 3 && a26.max_degree == 6, "P_{2,6} degree profile 3..6");
    auto v26 = oracle::is_k_ordered(p26.graph, 4, false, sweep_opts(c.opt));
    c.check(v26.status == oracle::Status::holds, "P_{2,6} should be 4-ordered");

    for (const auto& v : {vh, v25, v26})
        if (v.status == oracle::Status::resource_exceeded) c.budget_hit = true;
    c.detail << "H22 fails, P25/P26 hold by full sweep ("
             << v25.stats.sequences + v26.stats.sequences << " sequences)";
}

void c07_seven_parts(Ctx& c) {
    // All 7-part specs, sizes <= 3, min degree exactly 3, max degree <= 5,
    // up to rotation/reflection: none is 4-ordered.
    const int m = 7;
    std::vector<std::vector<int>> specs;
    std::vector<int> sizes(m, 1);
    auto canonical = [&](const std::vector<int>& s) {
        std::vector<int> best = s;
        for (int refl = 0; refl < 2; ++refl) {
            std::vector<int> t = s;
            if (refl) std::reverse(t.begin(), t.end());
            for (int r = 0; r < m; ++r) {
                std::rotate(t.begin(), t.begin() + 1, t.end());
                if (t < best) best = t;
            }
        }
        return best;
    };
    std::function<void(int)> enumerate = [&](int at) {
        if (at == m) {
            int mind = 99, maxd = 0;
            for (int i = 0; i < m; ++i) {
                int d = sizes[(i + 1) % m] + sizes[(i + m - 1) % m];
                mind = std::min(mind, d);
                maxd = std::max(maxd, d);
            }
            if (mind == 3 && maxd <= 5 && canonical(sizes) == sizes) specs.push_back(sizes);
            return;
        }
        for (int s = 1; s <= 3; ++s) {
            sizes[at] = s;
            enumerate(at + 1);
        }
    };
    enumerate(0);

    int confirmed = 0;
    for (const auto& s : specs) {
        auto bg = build_bracelet(BraceletSpec{s}, false);
        auto v = oracle::is_k_ordered(bg.graph, 4, false, sweep_opts(c.opt));
        if (v.status == oracle::Status::resource_exceeded) c.budget_hit = true;
        c.check(v.status == oracle::Status::fails, "spec unexpectedly 4-ordered");
        if (v.status == oracle::Status::fails) ++confirmed;
    }
    c.detail << specs.size() << " canonical specs screened, " << confirmed << " confirmed not 4-ordered";
}

void c08_directed(Ctx& c) {
    auto bg = gen::gen_directed(3, 4);
    auto rep = metrics::check_directed_necessary(bg.graph, 3);
    c.check(rep.ok, "necessary conditions should pass");
    auto seqs = oracle::enumerate_mark_sequences(bg.graph.order(), 3, true, true);
    int failures = 0;
    for (const auto& seq : seqs) {
        MarkSequence marks{seq};
        auto cyc = construct_directed_hamiltonian(bg, marks);
        if (!verify_ordered_cycle(bg.graph, cyc, marks, true)) ++failures;
    }
    c.check(failures == 0, "constructor failures");
    c.detail << seqs.size() << " ordered triples, all hamiltonian witnesses verified";
}

void c09_linkage(Ctx& c) {
    std::vector<Graph> pool;
    pool.push_back(complete_graph(6, false));
    pool.push_back(gen::gen_G(2, 4).graph);
    pool.push_back(gen::gen_G(2, 6).graph);
    std::mt19937_64 rng(c.opt.seed);
    int successes = 0, attempts = 0;
    while (successes < 50 && attempts < 500) {
        const Graph& g = pool[attempts % pool.size()];
        ++attempts;
        auto edges = g.edges();
        auto pick = sample_sequence(rng, static_cast<int>(edges.size()), 3);
        EdgeSequence marks;
        for (int idx : pick) marks.edges.push_back(edges[idx]);
        linkage::TerminalPairs rr;
        for (int i = 0; i < 3; ++i) {
            rr.pairs.emplace_back(marks.edges[i].first, marks.edges[i].second);
            rr.pairs.emplace_back(marks.edges[i].second, marks.edges[(i + 1) % 3].first);
        }
        auto found = linkage::find_edge_disjoint_paths(g, rr, c.opt.budget);
        if (found.outcome == oracle::Outcome::budget_exceeded) c.budget_hit = true;
        if (found.outcome != oracle::Outcome::found) continue;
        auto rep = linkage::linkage_to_edge_tour(g, marks, found.system);
        c.check(verify_tour(g, rep.tour, marks).ok, "repaired tour must verify");
        c.check(rep.swaps <= 3, "more than k swaps");
        ++successes;
    }
    c.check(successes >= 50, "not enough linkable instances");
    c.detail << successes << " instances repaired, " << attempts << " attempts";
}

void c10_greedy(Ctx& c) {
    std::mt19937_64 rng(c.opt.seed);
    int built = 0, refused = 0;
    for (int n : {5, 6, 7}) {
        Graph d = complete_graph(n, true);
        auto edges = d.edges();
        for (int k = 1; k <= 4; ++k) {
            EdgeSequence marks;
            for (int idx : sample_sequence(rng, static_cast<int>(edges.size()), k))
                marks.edges.push_back(edges[idx]);
            auto build = linkage::greedy_edge_tour(d, marks);
            bool gate_expected = (n - 1) >= (2 * k - 1) + 1;  // lambda >= (2k-1)ceil(1/2)+1
            c.check(build.gate.passed == gate_expected, "edge gate mismatch");
            if (build.gate.passed) {
                c.check(build.status == linkage::BuildStatus::built, "edge build failed");
                c.check(verify_tour(d, build.tour, marks).ok, "edge tour must verify");
                ++built;
            } else {
                c.check(build.status == linkage::BuildStatus::refused, "should refuse");
                ++refused;
            }
        }
        for (int k = 1; k <= n; ++k) {
            MarkSequence marks{sample_sequence(rng, n, k)};
            auto build = linkage::greedy_vertex_cycle(d, marks);
            c.check(build.gate.passed, "vertex gate should pass on complete digraph");
            c.check(build.status == linkage::BuildStatus::built, "vertex build failed");
            c.check(verify_ordered_cycle(d, build.cycle, marks, false).ok,
                    "vertex cycle must verify");
            ++built;
        }
    }
    // A gated-out vertex instance refuses loudly.
    auto sparse = gen::gen_directed(2, 4);
    MarkSequence marks{{0, 1, 2}};
    auto build = linkage::greedy_vertex_cycle(sparse.graph, marks);
    c.check(build.status == linkage::BuildStatus::refused, "sparse instance should refuse");
    ++refused;
    c.detail << built << " built and verified, " << refused << " refused at the gate";
}

void c11_cross_checks(Ctx& c) {
    std::vector<std::pair<std::string, Graph>> corpus;
    corpus.emplace_back("C4", gen::gen_G(1, 4).graph);
    corpus.emplace_back("G24", gen::gen_G(2, 4).graph);
    corpus.emplace_back("K33", gen::gen_H(2, 1).graph);
    corpus.emplace_back("K3", build_bracelet(BraceletSpec{{1, 1, 1}}, false).graph);
    corpus.emplace_back("odd5", build_bracelet(BraceletSpec{{1, 2, 1, 1}}, false).graph);
    corpus.emplace_back("ce6", gen::gen_counterexample(1, {1}).bg.graph);
    corpus.emplace_back("dir4", gen::gen_directed(2, 4).graph);
    corpus.emplace_back("dir8", gen::gen_directed(3, 4).graph);
    corpus.emplace_back("K5", complete_graph(5, false));
    corpus.emplace_back("K5d", complete_graph(5, true));

    int verdicts = 0;
    for (const auto& [name, g] : corpus) {
        c.check(g.order() <= 8, name + ": corpus instance too large");
        for (int k : {3, 4}) {
            if (k > g.order()) continue;
            for (bool ham : {false, true}) {
                if (ham && k != 3) continue;
                auto reduced = oracle::is_k_ordered(g, k, ham, sweep_opts(c.opt, true));
                auto brute = oracle::is_k_ordered(g, k, ham, sweep_opts(c.opt, false));
                c.check(reduced.status == brute.status,
                        name + ": symmetry reduction changed the verdict");
                ++verdicts;
            }
        }
        auto rep = metrics::connectivity(g);
        c.check(rep.vertex_connectivity == metrics::exhaustive_vertex_connectivity(g),
                name + ": vertex connectivity mismatch");
        c.check(rep.edge_connectivity == metrics::exhaustive_edge_connectivity(g),
                name + ": edge connectivity mismatch");
    }
    c.detail << corpus.size() << " graphs, " << verdicts
             << " reduced/unreduced verdict pairs equal, connectivity cross-checked";
}

}  // namespace

std::vector<RowResult> run(const Options& opt) {
    struct Row {
        const char* id;
        void (*fn)(Ctx&);
    };
    const Row rows[] = {
        {"c01_g24_sweep", c01_g24_sweep},
        {"c02_g26_sweep", c02_g26_sweep},
        {"c03_counterexample", c03_counterexample},
        {"c04_parity", c04_parity},
        {"c05_diameter", c05_diameter},
        {"c06_low_degree", c06_low_degree},
        {"c07_seven_parts", c07_seven_parts},
        {"c08_directed", c08_directed},
        {"c09_linkage", c09_linkage},
        {"c10_greedy", c10_greedy},
        {"c11_cross_checks", c11_cross_checks},
    };

    std::vector<RowResult> results;
    for (const Row& row : rows) {
        if (!opt.only.empty() && std::string(row.id).find(opt.only) == std::string::npos)
            continue;
        Ctx ctx(opt);
        auto t0 = std::chrono::steady_clock::now();
        try {
            row.fn(ctx);
        } catch (const std::exception& e) {
            ctx.pass = false;
            ctx.detail << "EXCEPTION: " << e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        RowResult r;
        r.id = row.id;
        r.pass = ctx.pass && !ctx.budget_hit;
        r.budget_hit = ctx.budget_hit;
        r.seconds = std::chrono::duration<double>(t1 - t0).count();
        r.detail = ctx.detail.str();
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace bracelet::suite
