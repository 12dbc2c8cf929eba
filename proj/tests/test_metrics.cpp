#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bracelet/generators.hpp"
#include "bracelet/metrics.hpp"
#include "bracelet/oracle.hpp"

using namespace bracelet;

TEST_CASE("connectivity of the 4-cycle") {
    auto c4 = gen::gen_G(1, 4).graph;
    auto rep = metrics::connectivity(c4);
    CHECK(rep.vertex_connectivity == 2);
    CHECK(rep.edge_connectivity == 2);
    REQUIRE(rep.diameter.has_value());
    CHECK(*rep.diameter == 2);
}

TEST_CASE("connectivity of a 2k-regular bracelet is 2k") {
    auto g24 = gen::gen_G(2, 4).graph;
    CHECK(metrics::connectivity(g24).vertex_connectivity == 4);
    CHECK(metrics::connectivity(g24).edge_connectivity == 4);
}

TEST_CASE("connectivity of the complete digraph") {
    auto k5d = complete_graph(5, true);
    auto rep = metrics::connectivity(k5d);
    CHECK(rep.vertex_connectivity == 4);
    CHECK(rep.edge_connectivity == 4);
    CHECK(rep.min_indegree == 4);
    CHECK(rep.min_outdegree == 4);
    REQUIRE(rep.diameter.has_value());
    CHECK(*rep.diameter == 1);
}

TEST_CASE("diameter of a disconnected graph is the infinite sentinel") {
    Graph g(4, false);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    CHECK(!metrics::diameter(g).has_value());
    CHECK(!metrics::connectivity(g).diameter.has_value());

    // Directed: weakly but not strongly connected.
    Graph d(3, true);
    d.add_edge(0, 1);
    d.add_edge(1, 2);
    CHECK(!metrics::diameter(d).has_value());
}

TEST_CASE("flow connectivity agrees with exhaustive cuts on small graphs") {
    std::vector<Graph> corpus;
    corpus.push_back(gen::gen_G(1, 4).graph);
    corpus.push_back(gen::gen_G(2, 4).graph);
    corpus.push_back(gen::gen_H(2, 1).graph);
    corpus.push_back(build_bracelet(BraceletSpec{{1, 2, 1, 1}}, false).graph);
    corpus.push_back(gen::gen_directed(2, 4).graph);
    corpus.push_back(gen::gen_directed(3, 4).graph);
    corpus.push_back(complete_graph(5, false));
    corpus.push_back(complete_graph(4, true));
    for (const auto& g : corpus) {
        auto rep = metrics::connectivity(g);
        CHECK(rep.vertex_connectivity == metrics::exhaustive_vertex_connectivity(g));
        CHECK(rep.edge_connectivity == metrics::exhaustive_edge_connectivity(g));
    }
}

TEST_CASE("diameter bound reports") {
    // G_{2,6}: n = 12, bound floor(9/4)+2 = 4, actual 3.
    auto g26 = gen::gen_G(2, 6).graph;
    auto r = metrics::check_diameter_bound(g26, 2, true);
    CHECK(r.bound == 4);
    REQUIRE(r.diameter.has_value());
    CHECK(*r.diameter == 3);
    CHECK(r.holds);
    CHECK(r.slack == 1);

    // G_{2,4}: d = 2 <= floor(5/4)+2 = 3.
    auto g24 = gen::gen_G(2, 4).graph;
    auto r2 = metrics::check_diameter_bound(g24, 2, true);
    CHECK(r2.bound == 3);
    CHECK(*r2.diameter == 2);
    CHECK(r2.holds);

    // K_{3,3}: tight, d = 2 = floor(3/4)+2.
    auto k33 = gen::gen_H(2, 1).graph;
    auto r3 = metrics::check_diameter_bound(k33, 2, true);
    CHECK(r3.bound == 2);
    CHECK(*r3.diameter == 2);
    CHECK(r3.holds);
    CHECK(r3.slack == 0);
}

TEST_CASE("directed necessary conditions") {
    auto d34 = gen::gen_directed(3, 4).graph;
    auto r1 = metrics::check_directed_necessary(d34, 3);
    CHECK(r1.ok);
    CHECK(r1.degree_violations.empty());
    CHECK(r1.vertex_connectivity >= 2);

    auto d24 = gen::gen_directed(2, 4).graph;
    auto r2 = metrics::check_directed_necessary(d24, 3);
    CHECK(!r2.ok);
    CHECK(r2.degree_violations.size() == 4);  // every vertex is 1-diregular

    // A cycle with one chord: the chord tail has outdeg 2 but some vertex
    // keeps outdeg 1 < k-1 = 2.
    Graph d(4, true);
    d.add_edge(0, 1);
    d.add_edge(1, 2);
    d.add_edge(2, 3);
    d.add_edge(3, 0);
    d.add_edge(0, 2);
    auto r3 = metrics::check_directed_necessary(d, 3);
    CHECK(!r3.ok);
    CHECK(!r3.degree_violations.empty());
}

TEST_CASE("bracelet degree audit") {
    auto p26 = gen::gen_P(2, 6);
    auto a1 = metrics::bracelet_degree_audit(p26, 2);
    CHECK(a1.all_pass);
    CHECK(a1.min_degree == 3);
    CHECK(a1.max_degree == 6);

    // H_{2,2}: deleting two non-adjacent size-1 parts disconnects, so the
    // connectivity screen fails (kappa = 2 < 2k-1 = 3).
    auto h22 = gen::gen_H(2, 2);
    auto a2 = metrics::bracelet_degree_audit(h22, 2);
    CHECK(!a2.all_pass);
    bool conn_failed = false;
    for (const auto& s : a2.screens)
        if (s.name == "connectivity" && !s.pass) conn_failed = true;
    CHECK(conn_failed);

    auto odd = build_bracelet(BraceletSpec{{1, 1, 3, 3, 3, 3, 3}}, false);
    auto a3 = metrics::bracelet_degree_audit(odd, 2);
    CHECK(a3.min_degree == 4);
    CHECK(a3.all_pass);
}

TEST_CASE("distance helper") {
    auto g26 = gen::gen_G(2, 6).graph;
    CHECK(metrics::distance(g26, 0, 0) == 0);
    CHECK(metrics::distance(g26, 0, 2) == 1);
    CHECK(metrics::distance(g26, 0, 6) == 3);
    Graph g(3, false);
    g.add_edge(0, 1);
    CHECK(metrics::distance(g, 0, 2) == -1);
}
