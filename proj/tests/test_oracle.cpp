#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "bracelet/generators.hpp"
#include "bracelet/metrics.hpp"
#include "bracelet/oracle.hpp"

using namespace bracelet;
using oracle::Outcome;
using oracle::Status;

TEST_CASE("find_ordered_cycle on the 4-cycle") {
    auto c4 = gen::gen_G(1, 4);
    auto found = oracle::find_ordered_cycle(c4.graph, MarkSequence{{0, 1, 2}}, true);
    REQUIRE(found.outcome == Outcome::found);
    CHECK(verify_ordered_cycle(c4.graph, found.cycle, MarkSequence{{0, 1, 2}}, true).ok);

    // (0,2,1) is met by traversing the square the other way round.
    auto refl = oracle::find_ordered_cycle(c4.graph, MarkSequence{{0, 2, 1}}, false);
    REQUIRE(refl.outcome == Outcome::found);
    CHECK(verify_ordered_cycle(c4.graph, refl.cycle, MarkSequence{{0, 2, 1}}, false).ok);
}

TEST_CASE("directed 4-cycle admits only the arc order") {
    auto d4 = gen::gen_directed(2, 4).graph;
    CHECK(oracle::find_ordered_cycle(d4, MarkSequence{{0, 1, 2}}, false).outcome ==
          Outcome::found);
    CHECK(oracle::find_ordered_cycle(d4, MarkSequence{{0, 2, 1}}, false).outcome ==
          Outcome::none);
}

TEST_CASE("big-part sequence of the counterexample admits no cycle") {
    auto ce = gen::gen_counterexample(2, {2});
    MarkSequence big{ce.bg.parts[ce.big_part_index]};
    REQUIRE(big.size() == 5);
    auto res = oracle::find_ordered_cycle(ce.bg.graph, big, false);
    CHECK(res.outcome == Outcome::none);
}

TEST_CASE("is_k_ordered verdicts on the named instances") {
    auto g24 = gen::gen_G(2, 4);
    auto v1 = oracle::is_k_ordered(g24.graph, 5, true, {});
    CHECK(v1.status == Status::holds);
    REQUIRE(v1.witness_cycle.has_value());

    auto h22 = gen::gen_H(2, 2);
    auto v2 = oracle::is_k_ordered(h22.graph, 4, false, {});
    CHECK(v2.status == Status::fails);
    REQUIRE(v2.counterexample_marks.has_value());
    // The counterexample really admits no cycle.
    CHECK(oracle::find_ordered_cycle(h22.graph, *v2.counterexample_marks, false).outcome ==
          Outcome::none);

    auto k33 = gen::gen_H(2, 1);
    auto v3 = oracle::is_k_ordered(k33.graph, 4, true, {});
    CHECK(v3.status == Status::holds);
}

TEST_CASE("monotonicity: 5-ordered implies 4-ordered") {
    auto g24 = gen::gen_G(2, 4);
    REQUIRE(oracle::is_k_ordered(g24.graph, 5, false, {}).status == Status::holds);
    CHECK(oracle::is_k_ordered(g24.graph, 4, false, {}).status == Status::holds);
}

TEST_CASE("k-ordered implies (k-1)-connected on oracle-certified instances") {
    struct Case {
        Graph g;
        int k;
    };
    std::vector<Case> cases;
    cases.push_back({gen::gen_G(2, 4).graph, 5});
    cases.push_back({gen::gen_H(2, 1).graph, 4});
    cases.push_back({gen::gen_P(2, 5).graph, 4});
    for (const auto& c : cases) {
        REQUIRE(oracle::is_k_ordered(c.g, c.k, false, {}).status == Status::holds);
        CHECK(metrics::connectivity(c.g).vertex_connectivity >= c.k - 1);
    }
}

TEST_CASE("verdicts are invariant under vertex relabeling") {
    std::mt19937 rng(3);
    auto relabel = [&](const Graph& g) {
        std::vector<int> perm(g.order());
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph out(g.order(), g.directed());
        for (auto [u, v] : g.edges()) out.add_edge(perm[u], perm[v]);
        return out;
    };
    auto h22 = gen::gen_H(2, 2).graph;
    auto p25 = gen::gen_P(2, 5).graph;
    for (int trial = 0; trial < 3; ++trial) {
        CHECK(oracle::is_k_ordered(relabel(h22), 4, false, {}).status == Status::fails);
        CHECK(oracle::is_k_ordered(relabel(p25), 4, false, {}).status == Status::holds);
    }
}

TEST_CASE("symmetry reduction does not change verdicts") {
    oracle::SweepOptions reduced;
    oracle::SweepOptions brute;
    brute.symmetry_reduction = false;
    for (int k : {3, 4}) {
        auto g24 = gen::gen_G(2, 4).graph;
        CHECK(oracle::is_k_ordered(g24, k, false, reduced).status ==
              oracle::is_k_ordered(g24, k, false, brute).status);
        auto d34 = gen::gen_directed(3, 4).graph;
        CHECK(oracle::is_k_ordered(d34, k, false, reduced).status ==
              oracle::is_k_ordered(d34, k, false, brute).status);
    }
}

TEST_CASE("budget exhaustion is reported, never silently treated as fails") {
    auto g26 = gen::gen_G(2, 6).graph;
    oracle::SweepOptions tight;
    tight.budget = 2;
    auto v = oracle::is_k_ordered(g26, 5, true, tight);
    CHECK(v.status == Status::resource_exceeded);
    REQUIRE(v.counterexample_marks.has_value());  // the sequence in progress
}

TEST_CASE("parallel sweep matches single-threaded") {
    auto h22 = gen::gen_H(2, 2).graph;
    oracle::SweepOptions par;
    par.jobs = 4;
    auto a = oracle::is_k_ordered(h22, 4, false, {});
    auto b = oracle::is_k_ordered(h22, 4, false, par);
    CHECK(a.status == b.status);
    CHECK(a.counterexample_marks->vertices == b.counterexample_marks->vertices);
    CHECK(a.stats.nodes == b.stats.nodes);
    CHECK(a.stats.sequences == b.stats.sequences);
}

TEST_CASE("find_ordered_tour basics") {
    auto c4 = gen::gen_G(1, 4).graph;
    auto t1 = oracle::find_ordered_tour(c4, EdgeSequence{{{0, 1}, {1, 2}}});
    REQUIRE(t1.outcome == Outcome::found);
    CHECK(verify_tour(c4, t1.tour, EdgeSequence{{{0, 1}, {1, 2}}}).ok);
    CHECK(t1.tour.length() == 4);  // the square itself

    // Trees have no closed walk without edge repetition.
    Graph path(4, false);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    path.add_edge(2, 3);
    CHECK(oracle::find_ordered_tour(path, EdgeSequence{{{0, 1}, {2, 3}}}).outcome ==
          Outcome::none);

    auto k4d = complete_graph(4, true);
    EdgeSequence marks{{{0, 1}, {2, 3}}};
    auto t2 = oracle::find_ordered_tour(k4d, marks);
    REQUIRE(t2.outcome == Outcome::found);
    CHECK(verify_tour(k4d, t2.tour, marks).ok);

    // Single marked edge: the edge plus a way back.
    auto single = oracle::find_ordered_tour(c4, EdgeSequence{{{2, 3}}});
    REQUIRE(single.outcome == Outcome::found);
    CHECK(verify_tour(c4, single.tour, EdgeSequence{{{2, 3}}}).ok);
    CHECK(oracle::find_ordered_tour(path, EdgeSequence{{{1, 2}}}).outcome == Outcome::none);
}

TEST_CASE("is_k_edge_ordered sweeps") {
    auto c4 = gen::gen_G(1, 4).graph;
    CHECK(oracle::is_k_edge_ordered(c4, 2, {}).status == Status::holds);
    // Non-adjacent marked edges of the square force the whole cycle; three
    // pairwise constraints cannot all be met in one direction.
    auto k5 = complete_graph(5, false);
    CHECK(oracle::is_k_edge_ordered(k5, 2, {}).status == Status::holds);
}

TEST_CASE("neighborhood obstruction certificates") {
    auto ce = gen::gen_counterexample(2, {2});
    auto cert = oracle::neighborhood_obstruction(ce.bg, 3);
    REQUIRE(cert.has_value());
    CHECK(cert->subset.size() == 3);
    CHECK(cert->neighborhood_size == 4);  // < 2s = 6
    CHECK(cert->outside_count >= 3);

    // G_{2,4} has no obstruction at k = 2 (it is 4-ordered).
    auto g24 = gen::gen_G(2, 4);
    CHECK(!oracle::neighborhood_obstruction(g24, 2).has_value());
    CHECK(!oracle::neighborhood_obstruction(g24.graph, 2, 2).has_value());

    // H_{2,2}: no size-1 subset certifies (all degrees are 3 >= 2), but the
    // size-2 parts do.
    auto h22 = gen::gen_H(2, 2);
    CHECK(!oracle::neighborhood_obstruction(h22.graph, 2, 1).has_value());
    auto part_cert = oracle::neighborhood_obstruction(h22, 2);
    REQUIRE(part_cert.has_value());
    CHECK(part_cert->subset.size() == 2);
    CHECK(part_cert->neighborhood_size == 3);
}

TEST_CASE("parity audit") {
    auto g24 = gen::gen_G(2, 4);
    auto a1 = oracle::parity_audit(g24);
    CHECK(a1.applicable);
    CHECK(a1.bipartite);
    CHECK(!a1.odd_vertex_count);

    auto odd = build_bracelet(BraceletSpec{{1, 2, 1, 1}}, false);
    auto a2 = oracle::parity_audit(odd);
    CHECK(a2.applicable);
    CHECK(a2.bipartite);
    CHECK(a2.odd_vertex_count);
    CHECK(a2.hamiltonian_searched);
    CHECK(!a2.hamiltonian_found);

    auto tri = build_bracelet(BraceletSpec{{1, 1, 1}}, false);
    auto a3 = oracle::parity_audit(tri);
    CHECK(!a3.applicable);
}

TEST_CASE("oracle rejects malformed input") {
    auto c4 = gen::gen_G(1, 4).graph;
    CHECK_THROWS_AS(oracle::find_ordered_cycle(c4, MarkSequence{{0, 0, 1}}, false),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle::find_ordered_cycle(c4, MarkSequence{{0, 9}}, false),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle::is_k_ordered(c4, 5, false, {}), std::invalid_argument);
    CHECK_THROWS_AS(oracle::find_ordered_tour(c4, EdgeSequence{{{0, 2}}}),
                    std::invalid_argument);
}
