// Command-line surface for the bracelet-graph cycle/tour toolkit:
//   generate | construct | verify | analyze | tour | suite
//
// Exit codes: 0 success / claim verified as expected; 2 claim falsified
// unexpectedly; 3 search budget exhausted; 4 precondition gate refused;
// 64 usage error; 1 other failures.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bracelet/constructive.hpp"
#include "bracelet/generators.hpp"
#include "bracelet/graph.hpp"
#include "bracelet/linkage.hpp"
#include "bracelet/metrics.hpp"
#include "bracelet/oracle.hpp"
#include "bracelet/report.hpp"
#include "bracelet/suite.hpp"

namespace {

using namespace bracelet;

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 2;
constexpr int kExitBudget = 3;
constexpr int kExitRefused = 4;
constexpr int kExitUsage = 64;

std::uint64_t default_budget() {
    if (const char* env = std::getenv("BRACELET_BUDGET")) {
        char* end = nullptr;
        std::uint64_t v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return oracle::kDefaultBudget;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoi(tok));
    }
    return out;
}

std::vector<std::pair<int, int>> parse_edge_list_arg(const std::string& csv) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto dash = tok.find('-');
        if (dash == std::string::npos)
            throw std::invalid_argument("edge marks must look like u-v,u-v");
        out.emplace_back(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
    }
    return out;
}

// Graph source shared by the subcommands: a named family, an ad-hoc
// bracelet (--sizes), or a file in either interchange format.
struct SourceOpts {
    std::string family;
    int k = 0, parts = 0, m = 0, l = 0;
    std::string filler;
    std::string sizes;
    bool directed = false;
    std::string input;
};

void add_source_options(CLI::App* cmd, SourceOpts& src) {
    cmd->add_option("--family", src.family, "graph family: G|H|P|directed|counterexample");
    cmd->add_option("--k", src.k, "family parameter k");
    cmd->add_option("--parts", src.parts, "part count (family G)");
    cmd->add_option("--m", src.m, "family parameter m (H, P)");
    cmd->add_option("--l", src.l, "part count (family directed)");
    cmd->add_option("--filler", src.filler, "filler part sizes, comma separated (counterexample)");
    cmd->add_option("--sizes", src.sizes, "ad-hoc bracelet part sizes, comma separated");
    cmd->add_flag("--directed", src.directed, "ad-hoc bracelet is directed");
    cmd->add_option("--input", src.input, "read graph from file (edge list or bracelet format)");
}

struct Source {
    Graph graph;
    std::optional<BraceletGraph> bracelet;  // set when the partition is known
    std::string family;                     // set when built from --family
    std::string description;
};

Source resolve_source(const SourceOpts& src) {
    Source out;
    if (!src.input.empty()) {
        std::ifstream in(src.input);
        if (!in) throw std::invalid_argument("cannot open " + src.input);
        std::string first;
        in >> first;
        in.seekg(0);
        if (first == "bracelet") {
            out.bracelet = read_bracelet(in);
            out.graph = out.bracelet->graph;
        } else {
            out.graph = read_edge_list(in);
        }
        out.description = src.input;
        return out;
    }
    if (!src.sizes.empty()) {
        BraceletSpec spec{parse_int_list(src.sizes)};
        out.bracelet = build_bracelet(spec, src.directed);
        out.graph = out.bracelet->graph;
        out.description = "bracelet(" + src.sizes + ")";
        return out;
    }
    gen::FamilyId id;
    if (src.family.empty() || !gen::parse_family(src.family, id))
        throw std::invalid_argument(
            "need --family G|H|P|directed|counterexample, --sizes or --input");
    switch (id) {
        case gen::FamilyId::G_uniform:
            out.bracelet = gen::gen_G(src.k, src.parts);
            break;
        case gen::FamilyId::H_pattern:
            out.bracelet = gen::gen_H(src.k, src.m);
            break;
        case gen::FamilyId::P_lowdeg:
            out.bracelet = gen::gen_P(src.k, src.m);
            break;
        case gen::FamilyId::directed_bracelet:
            out.bracelet = gen::gen_directed(src.k, src.l);
            break;
        case gen::FamilyId::counterexample_neighborhood:
            out.bracelet = gen::gen_counterexample(src.k, parse_int_list(src.filler)).bg;
            break;
    }
    out.graph = out.bracelet->graph;
    out.family = src.family;
    out.description = src.family;
    return out;
}

void emit(const report::Report& rep, const std::string& format, const std::string& output) {
    std::ostringstream buf;
    if (format == "report")
        rep.print_structured(buf);
    else
        rep.print_human(buf);
    if (output.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream os(output);
        os << buf.str();
    }
}

std::string join_ints(const std::vector<int>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

std::string join_steps(const std::vector<std::pair<VertexId, VertexId>>& steps) {
    std::ostringstream os;
    for (size_t i = 0; i < steps.size(); ++i)
        os << (i ? " " : "") << steps[i].first << "->" << steps[i].second;
    return os.str();
}

std::string join_edges(const std::vector<std::pair<VertexId, VertexId>>& edges) {
    std::ostringstream os;
    for (size_t i = 0; i < edges.size(); ++i)
        os << (i ? " " : "") << edges[i].first << "-" << edges[i].second;
    return os.str();
}

// ---- generate --------------------------------------------------------------

int run_generate(const SourceOpts& src, const std::string& emit_kind,
                 const std::string& output) {
    Source s = resolve_source(src);
    std::ostringstream buf;
    if (emit_kind == "bracelet") {
        if (!s.bracelet) {
            std::cerr << "generate: no partition available for bracelet format\n";
            return kExitUsage;
        }
        write_bracelet(buf, *s.bracelet);
    } else {
        write_edge_list(buf, s.graph);
    }
    if (output.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream os(output);
        os << buf.str();
    }
    return kExitOk;
}

// ---- construct ---------------------------------------------------------------

int run_construct(const SourceOpts& src, const std::string& marks_csv, const std::string& format,
                  const std::string& output, std::uint64_t budget) {
    Source s = resolve_source(src);
    if (!s.bracelet) {
        std::cerr << "construct: constructors need the bracelet partition\n";
        return kExitUsage;
    }
    MarkSequence marks{parse_int_list(marks_csv)};
    const BraceletGraph& bg = *s.bracelet;

    report::Report rep;
    rep.add("command", "construct");
    rep.add("graph", s.description);
    rep.add("n", bg.graph.order());
    rep.add("marks", join_ints(marks.vertices));

    try {
        OrderedCycle cycle;
        int k = 0;
        bool uniform = bg.uniform(&k);
        if (bg.graph.directed()) {
            cycle = constructive::construct_directed_hamiltonian(bg, marks);
            rep.add("constructor", "directed-hamiltonian");
        } else if (s.family == "P") {
            cycle = constructive::construct_P_cycle(bg, marks, budget);
            rep.add("constructor", "p-family");
        } else if (uniform && bg.part_count() % 2 == 0 && marks.size() == 2 * k + 1) {
            auto witness = constructive::construct_G_hamiltonian(bg, marks);
            cycle = witness.cycle;
            rep.add("constructor", "uniform-hamiltonian");
            rep.add("star_certificate", join_edges(witness.star.crossing));
        } else {
            cycle = constructive::construct_bracelet_cycle(bg, marks);
            rep.add("constructor", "bracelet");
        }
        bool ham = cycle.length() == bg.graph.order();
        Check chk = verify_ordered_cycle(bg.graph, cycle, marks, ham);
        rep.add("cycle", join_ints(cycle.vertices));
        rep.add("length", cycle.length());
        rep.add("hamiltonian", ham ? 1 : 0);
        rep.add("verified", chk.ok ? 1 : 0);
        emit(rep, format, output);
        return chk.ok ? kExitOk : kExitFalsified;
    } catch (const constructive::ResourceExceeded& e) {
        rep.add("error", e.what());
        emit(rep, format, output);
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        rep.add("refused", e.what());
        emit(rep, format, output);
        return kExitRefused;
    }
}

// ---- verify -------------------------------------------------------------------

int run_verify(const SourceOpts& src, int order, std::string mode, bool ham_flag,
               std::uint64_t budget, int jobs, bool no_symmetry, int sample, std::uint64_t seed,
               const std::string& expect, const std::string& format, const std::string& output) {
    Source s = resolve_source(src);
    if (ham_flag) mode = "ordered-ham";
    const bool edge_mode = mode == "edge-ordered";
    const bool ham = mode == "ordered-ham";
    if (!edge_mode && !ham && mode != "ordered") {
        std::cerr << "verify: --mode must be ordered|ordered-ham|edge-ordered\n";
        return kExitUsage;
    }

    report::Report rep;
    rep.add("command", "verify");
    rep.add("graph", s.description);
    rep.add("n", s.graph.order());
    rep.add("order", order);
    rep.add("mode", mode);
    rep.add("budget", budget);
    rep.add("symmetry", no_symmetry ? 0 : 1);

    oracle::Status status = oracle::Status::holds;
    if (sample > 0) {
        // Seeded spot-check instead of the full sweep.
        rep.add("sample", sample);
        rep.add("seed", seed);
        std::mt19937_64 rng(seed);
        std::uint64_t nodes = 0;
        auto edges = s.graph.edges();
        for (int i = 0; i < sample && status == oracle::Status::holds; ++i) {
            if (edge_mode) {
                EdgeSequence es;
                for (int idx : suite::sample_sequence(rng, static_cast<int>(edges.size()), order))
                    es.edges.push_back(edges[idx]);
                auto res = oracle::find_ordered_tour(s.graph, es, budget);
                nodes += res.nodes;
                if (res.outcome == oracle::Outcome::none) {
                    status = oracle::Status::fails;
                    rep.add("counterexample", join_edges(es.edges));
                } else if (res.outcome == oracle::Outcome::budget_exceeded) {
                    status = oracle::Status::resource_exceeded;
                }
            } else {
                MarkSequence ms{suite::sample_sequence(rng, s.graph.order(), order)};
                auto res = oracle::find_ordered_cycle(s.graph, ms, ham, budget);
                nodes += res.nodes;
                if (res.outcome == oracle::Outcome::none) {
                    status = oracle::Status::fails;
                    rep.add("counterexample", join_ints(ms.vertices));
                } else if (res.outcome == oracle::Outcome::budget_exceeded) {
                    status = oracle::Status::resource_exceeded;
                }
            }
        }
        rep.add("nodes", nodes);
    } else {
        oracle::SweepOptions so;
        so.budget = budget;
        so.jobs = jobs;
        so.symmetry_reduction = !no_symmetry;
        oracle::Verdict v = edge_mode ? oracle::is_k_edge_ordered(s.graph, order, so)
                                      : oracle::is_k_ordered(s.graph, order, ham, so);
        status = v.status;
        rep.add("sequences", v.stats.sequences);
        rep.add("sequence_space", v.stats.total);
        rep.add("nodes", v.stats.nodes);
        if (v.counterexample_marks)
            rep.add("counterexample", join_ints(v.counterexample_marks->vertices));
        if (v.counterexample_edges)
            rep.add("counterexample", join_edges(v.counterexample_edges->edges));
        if (v.witness_cycle) rep.add("witness", join_ints(v.witness_cycle->vertices));
        if (v.witness_tour) rep.add("witness", join_steps(v.witness_tour->steps));
        // Wall time is for human eyes only: structured reports stay
        // byte-identical across runs.
        if (format != "report") {
            char t[32];
            std::snprintf(t, sizeof t, "%.3fs", v.stats.seconds);
            rep.add("elapsed", t);
        }
    }

    const char* verdict = status == oracle::Status::holds
                              ? "holds"
                              : (status == oracle::Status::fails ? "fails" : "resource_exceeded");
    rep.add("verdict", verdict);
    bool as_expected = status != oracle::Status::resource_exceeded &&
                       (expect == "fails") == (status == oracle::Status::fails);
    rep.add("expected", expect);
    rep.add("as_expected", as_expected ? 1 : 0);
    emit(rep, format, output);
    if (status == oracle::Status::resource_exceeded) return kExitBudget;
    return as_expected ? kExitOk : kExitFalsified;
}

// ---- analyze -------------------------------------------------------------------

int run_analyze(const SourceOpts& src, int k, bool verify_order, std::uint64_t budget, int jobs,
                const std::string& format, const std::string& output) {
    Source s = resolve_source(src);
    report::Report rep;
    rep.add("command", "analyze");
    rep.add("graph", s.description);
    rep.add("n", s.graph.order());
    rep.add("edges", s.graph.edge_count());
    rep.add("directed", s.graph.directed() ? 1 : 0);

    auto conn = metrics::connectivity(s.graph);
    rep.add("vertex_connectivity", conn.vertex_connectivity);
    rep.add("edge_connectivity", conn.edge_connectivity);
    if (s.graph.directed()) {
        rep.add("min_indegree", conn.min_indegree);
        rep.add("min_outdegree", conn.min_outdegree);
    } else {
        rep.add("min_degree", conn.min_degree);
    }
    rep.add("diameter", conn.diameter ? std::to_string(*conn.diameter) : "infinite");

    if (k > 0) {
        bool certified = false;
        if (verify_order && !s.graph.directed()) {
            oracle::SweepOptions so;
            so.budget = budget;
            so.jobs = jobs;
            auto v = oracle::is_k_ordered(s.graph, 2 * k, false, so);
            certified = v.status == oracle::Status::holds;
            rep.add("orderedness_2k", certified ? "holds" : "not-certified");
        }
        auto bound = metrics::check_diameter_bound(s.graph, k, certified);
        rep.add("diameter_bound", bound.bound);
        if (certified) {
            rep.add("bound_holds", bound.holds ? 1 : 0);
            rep.add("bound_slack", bound.slack);
        }
        if (s.graph.directed()) {
            auto nec = metrics::check_directed_necessary(s.graph, k);
            rep.add("directed_necessary_ok", nec.ok ? 1 : 0);
            rep.add("degree_violations", nec.degree_violations.size());
        } else if (s.bracelet) {
            auto audit = metrics::bracelet_degree_audit(*s.bracelet, k);
            rep.add("min_degree_audit", audit.min_degree);
            rep.add("max_degree_audit", audit.max_degree);
            for (const auto& screen : audit.screens)
                rep.add("screen_" + screen.name,
                        std::string(screen.pass ? "pass" : "fail") + " (" + screen.detail + ")");
        }
    }
    if (s.bracelet && !s.graph.directed()) {
        auto audit = oracle::parity_audit(*s.bracelet, budget);
        rep.add("parity_applicable", audit.applicable ? 1 : 0);
        if (audit.applicable) {
            rep.add("bipartite", audit.bipartite ? 1 : 0);
            if (audit.odd_vertex_count)
                rep.add("hamiltonian", audit.hamiltonian_searched
                                           ? (audit.hamiltonian_found ? "yes" : "no")
                                           : "unknown");
        }
    }
    emit(rep, format, output);
    return kExitOk;
}

// ---- tour ---------------------------------------------------------------------

int run_tour(const SourceOpts& src, const std::string& mode, const std::string& marks_csv,
             const std::string& edges_csv, const std::string& format,
             const std::string& output) {
    Source s = resolve_source(src);
    report::Report rep;
    rep.add("command", "tour");
    rep.add("graph", s.description);
    rep.add("mode", mode);

    auto add_gate = [&](const linkage::Gate& gate) {
        rep.add("gate_measured", gate.measured);
        rep.add("gate_required", gate.required);
        rep.add("gate_diameter", gate.diameter ? std::to_string(*gate.diameter) : "infinite");
        rep.add("gate", gate.passed ? "pass" : "refused");
        rep.add("gate_detail", gate.detail);
    };
    auto add_rounds = [&](const std::vector<std::vector<std::pair<VertexId, VertexId>>>& rounds) {
        for (size_t i = 0; i < rounds.size(); ++i)
            rep.add("round_" + std::to_string(i), join_steps(rounds[i]));
    };

    if (mode == "edge") {
        EdgeSequence marks{parse_edge_list_arg(edges_csv)};
        auto build = s.graph.directed() ? linkage::greedy_edge_tour(s.graph, marks)
                                        : linkage::greedy_undirected_edge(s.graph, marks);
        add_gate(build.gate);
        add_rounds(build.round_paths);
        if (build.status == linkage::BuildStatus::built) {
            rep.add("swaps", build.swaps);
            rep.add("tour", join_steps(build.tour.steps));
            rep.add("verified", verify_tour(s.graph, build.tour, marks).ok ? 1 : 0);
            emit(rep, format, output);
            return kExitOk;
        }
        rep.add("detail", build.detail);
        emit(rep, format, output);
        return build.status == linkage::BuildStatus::refused ? kExitRefused : 1;
    }
    if (mode == "vertex") {
        MarkSequence marks{parse_int_list(marks_csv)};
        auto build = s.graph.directed() ? linkage::greedy_vertex_cycle(s.graph, marks)
                                        : linkage::greedy_undirected_cycle(s.graph, marks);
        add_gate(build.gate);
        add_rounds(build.round_paths);
        if (build.status == linkage::BuildStatus::built) {
            rep.add("cycle", join_ints(build.cycle.vertices));
            rep.add("verified",
                    verify_ordered_cycle(s.graph, build.cycle, marks, false).ok ? 1 : 0);
            emit(rep, format, output);
            return kExitOk;
        }
        rep.add("detail", build.detail);
        emit(rep, format, output);
        return build.status == linkage::BuildStatus::refused ? kExitRefused : 1;
    }
    std::cerr << "tour: --mode must be edge or vertex\n";
    return kExitUsage;
}

// ---- suite --------------------------------------------------------------------

int run_suite(const std::string& only, std::uint64_t budget, int jobs, std::uint64_t seed,
              const std::string& format, const std::string& output) {
    suite::Options opt;
    opt.only = only;
    opt.budget = budget;
    opt.jobs = jobs;
    opt.seed = seed;

    auto rows = suite::run(opt);
    std::ostringstream buf;
    if (format == "report") {
        report::Report rep;
        rep.add("command", "suite");
        rep.add("seed", seed);
        rep.add("budget", budget);
        for (const auto& r : rows) {
            std::string status = r.budget_hit ? "RESOURCE" : (r.pass ? "PASS" : "FAIL");
            rep.add(r.id, status + (r.detail.empty() ? "" : " " + r.detail));
        }
        rep.print_structured(buf);
    } else {
        for (const auto& r : rows) {
            std::string status = r.budget_hit ? "RESOURCE" : (r.pass ? "PASS" : "FAIL");
            char line[64];
            std::snprintf(line, sizeof line, "%-8s %-20s %8.2fs  ", status.c_str(), r.id.c_str(),
                          r.seconds);
            buf << line << r.detail << '\n';
        }
    }
    bool all_pass = !rows.empty();
    bool any_budget = false;
    for (const auto& r : rows) {
        all_pass = all_pass && r.pass;
        any_budget = any_budget || r.budget_hit;
    }
    if (format != "report")
        buf << (all_pass ? "all criteria passed\n" : "CRITERIA FAILED\n");
    if (output.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream os(output);
        os << buf.str();
    }
    if (rows.empty()) {
        std::cerr << "suite: no rows matched --only filter\n";
        return kExitUsage;
    }
    if (all_pass) return kExitOk;
    return any_budget ? kExitBudget : kExitFalsified;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cycle and tour constructions on bracelet graphs, with exhaustive oracles"};
    app.require_subcommand(1);

    std::string format = "human", output;
    app.add_option("--format", format, "output format: human|report")->capture_default_str();
    app.add_option("-o,--output", output, "write the report to a file");

    auto* g = app.add_subcommand("generate", "emit a graph in an interchange format");
    SourceOpts g_src;
    add_source_options(g, g_src);
    std::string g_emit = "edges";
    g->add_option("--emit", g_emit, "edges|bracelet")->capture_default_str();

    auto* c = app.add_subcommand("construct", "build an ordered (hamiltonian) cycle witness");
    SourceOpts c_src;
    add_source_options(c, c_src);
    std::string c_marks;
    c->add_option("--marks", c_marks, "mark sequence, comma separated")->required();

    auto* v = app.add_subcommand("verify", "exhaustive k-orderedness verdicts");
    SourceOpts v_src;
    add_source_options(v, v_src);
    int v_order = 0;
    std::string v_mode = "ordered", v_expect = "holds";
    bool v_ham = false, v_nosym = false;
    int v_sample = 0, v_jobs = 1;
    std::uint64_t v_budget = default_budget(), v_seed = 20240601;
    v->add_option("--order", v_order, "the k in k-ordered")->required();
    v->add_option("--mode", v_mode, "ordered|ordered-ham|edge-ordered")->capture_default_str();
    v->add_flag("--ham", v_ham, "shorthand for --mode ordered-ham");
    v->add_option("--budget", v_budget, "backtrack-node budget per sequence");
    v->add_option("--jobs", v_jobs, "parallel workers over sequences");
    v->add_flag("--no-symmetry", v_nosym, "disable rotation/reflection reduction");
    v->add_option("--sample", v_sample, "seeded spot-check with this many sequences (0 = full)");
    v->add_option("--seed", v_seed, "sampling seed");
    v->add_option("--expect", v_expect, "holds|fails: expected verdict")->capture_default_str();

    auto* a = app.add_subcommand("analyze", "connectivity, diameter, bounds, audits");
    SourceOpts a_src;
    add_source_options(a, a_src);
    int a_k = 0;
    bool a_verify = false;
    std::uint64_t a_budget = default_budget();
    int a_jobs = 1;
    a->add_option("--bound-k", a_k, "check the 2k-ordered diameter bound for this k");
    a->add_flag("--verify-order", a_verify, "certify 2k-orderedness with the oracle first");
    a->add_option("--budget", a_budget, "oracle budget");
    a->add_option("--jobs", a_jobs, "oracle workers");

    auto* t = app.add_subcommand("tour", "connectivity-gated greedy ordered tours/cycles");
    SourceOpts t_src;
    add_source_options(t, t_src);
    std::string t_mode, t_marks, t_edges;
    t->add_option("--mode", t_mode, "edge|vertex")->required();
    t->add_option("--marks", t_marks, "vertex marks, comma separated (vertex mode)");
    t->add_option("--edge-marks", t_edges, "edge marks u-v, comma separated (edge mode)");

    auto* s = app.add_subcommand("suite", "run the acceptance matrix");
    std::string s_only;
    std::uint64_t s_budget = default_budget(), s_seed = 20240601;
    int s_jobs = 1;
    s->add_option("--only", s_only, "run only rows whose id contains this substring");
    s->add_option("--budget", s_budget, "oracle budget");
    s->add_option("--jobs", s_jobs, "oracle workers");
    s->add_option("--seed", s_seed, "sampling seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*g) return run_generate(g_src, g_emit, output);
        if (*c) return run_construct(c_src, c_marks, format, output, default_budget());
        if (*v)
            return run_verify(v_src, v_order, v_mode, v_ham, v_budget, v_jobs, v_nosym, v_sample,
                              v_seed, v_expect, format, output);
        if (*a) return run_analyze(a_src, a_k, a_verify, a_budget, a_jobs, format, output);
        if (*t) return run_tour(t_src, t_mode, t_marks, t_edges, format, output);
        if (*s) return run_suite(s_only, s_budget, s_jobs, s_seed, format, output);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitUsage;
}
