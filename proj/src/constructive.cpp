#include "bracelet/constructive.hpp"

#include <algorithm>
#include <set>

namespace bracelet::constructive {

namespace {

int mod(int x, int m) { return ((x % m) + m) % m; }

std::vector<VertexId> rotate_left(const std::vector<VertexId>& v, int shift) {
    const int n = static_cast<int>(v.size());
    std::vector<VertexId> out(n);
    for (int i = 0; i < n; ++i) out[i] = v[mod(i + shift, n)];
    return out;
}

void attach_positions(OrderedCycle& cycle, const std::vector<VertexId>& marks) {
    cycle.marked_positions.clear();
    for (VertexId v : marks) {
        auto it = std::find(cycle.vertices.begin(), cycle.vertices.end(), v);
        cycle.marked_positions.push_back(static_cast<int>(it - cycle.vertices.begin()));
    }
}

// Induced sub-bracelet after deleting one vertex per part, with the map back
// to parent ids (parts keep their relative vertex order).
struct SubBracelet {
    BraceletGraph bg;
    std::vector<VertexId> to_parent;
    std::vector<VertexId> to_sub;  // parent id -> sub id or -1
};

SubBracelet induce_without(const BraceletGraph& parent, const std::vector<VertexId>& removed) {
    std::vector<char> gone(parent.graph.order(), 0);
    for (VertexId v : removed) gone[v] = 1;
    BraceletSpec spec;
    SubBracelet sub;
    sub.to_sub.assign(parent.graph.order(), -1);
    for (int p = 0; p < parent.part_count(); ++p) {
        int kept = 0;
        for (VertexId v : parent.parts[p]) {
            if (!gone[v]) {
                sub.to_sub[v] = static_cast<VertexId>(sub.to_parent.size());
                sub.to_parent.push_back(v);
                ++kept;
            }
        }
        spec.part_sizes.push_back(kept);
    }
    sub.bg = build_bracelet(spec, parent.graph.directed());
    return sub;
}

// Keep exactly the vertices in `kept` (grouped consistently with parts).
SubBracelet induce_keeping(const BraceletGraph& parent, const std::vector<char>& keep) {
    std::vector<VertexId> removed;
    for (int v = 0; v < parent.graph.order(); ++v)
        if (!keep[v]) removed.push_back(v);
    return induce_without(parent, removed);
}

std::vector<VertexId> lift(const std::vector<VertexId>& sub_vertices,
                           const std::vector<VertexId>& to_parent) {
    std::vector<VertexId> out;
    out.reserve(sub_vertices.size());
    for (VertexId v : sub_vertices) out.push_back(to_parent[v]);
    return out;
}

// Rotations/reflections of `cycle` that start at prefix[0] and meet the
// prefix marks in order. Unique for 3+ marks; both for fewer.
std::vector<std::vector<VertexId>> orient_cycle(const std::vector<VertexId>& cycle,
                                                const std::vector<VertexId>& prefix) {
    const int len = static_cast<int>(cycle.size());
    int at = static_cast<int>(std::find(cycle.begin(), cycle.end(), prefix[0]) - cycle.begin());
    std::vector<std::vector<VertexId>> out;
    for (int dir : {+1, -1}) {
        std::vector<VertexId> oriented(len);
        for (int i = 0; i < len; ++i) oriented[i] = cycle[mod(at + dir * i, len)];
        std::vector<int> pos;
        bool ok = true;
        for (VertexId v : prefix) {
            auto it = std::find(oriented.begin(), oriented.end(), v);
            if (it == oriented.end()) {
                ok = false;
                break;
            }
            pos.push_back(static_cast<int>(it - oriented.begin()));
        }
        for (size_t i = 1; ok && i < pos.size(); ++i)
            if (pos[i - 1] >= pos[i]) ok = false;
        if (ok) out.push_back(std::move(oriented));
    }
    return out;
}

// The shared splice of the constructive proofs. `inner` is a cycle through
// `prefix` in order, disjoint from the free transversal; a and b are the
// final two marks and sit in the transversal. Produces candidate cycles
// (the caller verifies and keeps the first that passes):
//
//   case A  (last prefix mark t and a in different parts): run the whole
//           free cycle between t and the free vertex of t's part, entering
//           in whichever direction meets a before b;
//   case B1 (same part, successor u of t on `inner` not in b's part): enter
//           through the free vertex of u's part, then a, then the rest of
//           the free cycle, exiting to u;
//   case B2 (u in b's part): the short detour t, w, a, b, f3, u; in
//           hamiltonian mode the skipped parts are paired up and rerouted
//           into the cycle two at a time (alpha), using the inner cycle's
//           crossing edges.
std::vector<std::vector<VertexId>> splice_candidates(const BraceletGraph& bg,
                                                     const std::vector<VertexId>& frees,
                                                     const std::vector<VertexId>& inner,
                                                     const std::vector<VertexId>& prefix,
                                                     VertexId a, VertexId b, bool ham_mode) {
    const int m = bg.part_count();
    const int pa = bg.part_of[a];
    const int pb = bg.part_of[b];
    std::vector<std::vector<VertexId>> candidates;

    for (const auto& oriented : orient_cycle(inner, prefix)) {
        const int len = static_cast<int>(oriented.size());
        const VertexId t = prefix.back();
        const int j = static_cast<int>(std::find(oriented.begin(), oriented.end(), t) -
                                       oriented.begin());
        const int pt = bg.part_of[t];
        std::vector<VertexId> head(oriented.begin(), oriented.begin() + j + 1);
        std::vector<VertexId> tail(oriented.begin() + j + 1, oriented.end());
        const VertexId u = (j + 1 < len) ? oriented[j + 1] : oriented[0];

        if (pt != pa) {
            // case A: both entry directions, walking the full free cycle and
            // ending at the free vertex of t's part.
            for (int dir : {+1, -1}) {
                std::vector<VertexId> cyc = head;
                for (int step = 1; step <= m; ++step) cyc.push_back(frees[mod(pt + dir * step, m)]);
                cyc.insert(cyc.end(), tail.begin(), tail.end());
                candidates.push_back(std::move(cyc));
            }
        } else {
            const int pu = bg.part_of[u];
            const int s = (mod(pa + 1, m) == pu) ? +1 : -1;
            if (pu != pb) {
                // case B1: t, free(pu), a, then around away from pu, exit at
                // the far neighbour of pu, back to u.
                std::vector<VertexId> cyc = head;
                cyc.push_back(frees[pu]);
                cyc.push_back(a);
                for (int step = 1; step <= m - 2; ++step)
                    cyc.push_back(frees[mod(pa - s * step, m)]);
                cyc.insert(cyc.end(), tail.begin(), tail.end());
                candidates.push_back(std::move(cyc));
            } else {
                // case B2: t, w, a, b, f3, u.
                const int part_w = mod(pa - s, m);
                const int part_f3 = mod(pb + s, m);
                std::vector<VertexId> cyc = head;
                cyc.push_back(frees[part_w]);
                cyc.push_back(a);
                cyc.push_back(b);
                cyc.push_back(frees[part_f3]);
                cyc.insert(cyc.end(), tail.begin(), tail.end());

                if (ham_mode) {
                    // Pair up the skipped parts and alpha them in. The inner
                    // cycle's star property guarantees a crossing edge.
                    for (int idx = 0; idx + 1 < m - 4; idx += 2) {
                        int X = mod(part_f3 + s * (idx + 1), m);
                        int Y = mod(part_f3 + s * (idx + 2), m);
                        const int L = static_cast<int>(cyc.size());
                        int found = -1;
                        bool x_first = true;
                        for (int i = 0; i < L; ++i) {
                            int p1 = bg.part_of[cyc[i]];
                            int p2 = bg.part_of[cyc[(i + 1) % L]];
                            if (p1 == X && p2 == Y) {
                                found = i;
                                x_first = true;
                                break;
                            }
                            if (p1 == Y && p2 == X) {
                                found = i;
                                x_first = false;
                                break;
                            }
                        }
                        if (found < 0)
                            throw std::logic_error(
                                "construct_G_hamiltonian: no crossing edge for alpha rerouting");
                        // alpha on edge (x,y): x, free(part(y)), free(part(x)), y
                        std::vector<VertexId> detour =
                            x_first ? std::vector<VertexId>{frees[Y], frees[X]}
                                    : std::vector<VertexId>{frees[X], frees[Y]};
                        cyc.insert(cyc.begin() + found + 1, detour.begin(), detour.end());
                    }
                }
                candidates.push_back(std::move(cyc));
            }
        }
    }
    return candidates;
}

std::vector<VertexId> lowest_unmarked(const std::vector<VertexId>& part,
                                      const std::set<VertexId>& marked, int how_many) {
    std::vector<VertexId> out;
    for (VertexId v : part) {
        if (marked.count(v)) continue;
        out.push_back(v);
        if (static_cast<int>(out.size()) == how_many) break;
    }
    return out;
}

OrderedCycle finish(const Graph& g, std::vector<VertexId> cycle_vertices,
                    const std::vector<VertexId>& original_marks, bool require_ham,
                    const char* who) {
    OrderedCycle cycle;
    cycle.vertices = std::move(cycle_vertices);
    Check chk = verify_ordered_cycle(g, cycle, MarkSequence{original_marks}, require_ham);
    if (!chk) throw std::logic_error(std::string(who) + ": constructed cycle failed: " + chk.reason);
    attach_positions(cycle, original_marks);
    return cycle;
}

OrderedCycle first_verified(const Graph& g, std::vector<std::vector<VertexId>> candidates,
                            const std::vector<VertexId>& original_marks, bool require_ham,
                            const char* who) {
    for (auto& cand : candidates) {
        OrderedCycle cycle;
        cycle.vertices = std::move(cand);
        if (verify_ordered_cycle(g, cycle, MarkSequence{original_marks}, require_ham)) {
            attach_positions(cycle, original_marks);
            return cycle;
        }
    }
    throw std::logic_error(std::string(who) + ": no splice candidate verified");
}

// Uniform-bracelet engine (induction on the part size k). In hamiltonian
// mode the output covers every vertex and crosses every adjacent part pair;
// in ordered mode part counts may be odd and the B2 splice skips vertices.
OrderedCycle g_engine(const BraceletGraph& bg, const std::vector<VertexId>& marks,
                      bool ham_mode) {
    int k = 0;
    bg.uniform(&k);
    const int m = bg.part_count();

    if (k == 1) {
        std::vector<VertexId> cyc;
        for (int p = 0; p < m; ++p) cyc.push_back(bg.parts[p][0]);
        return finish(bg.graph, std::move(cyc), marks, ham_mode, "g_engine");
    }

    FreeVertexSelection sel = select_free_vertices(bg, MarkSequence{marks});
    const int K = static_cast<int>(marks.size());
    // Rotate so the marked free pair comes last.
    std::vector<VertexId> rot = rotate_left(marks, mod(sel.pair_position + 2, K));
    std::vector<VertexId> prefix(rot.begin(), rot.end() - 2);
    VertexId a = rot[K - 2], b = rot[K - 1];

    SubBracelet sub = induce_without(bg, sel.free_of_part);
    std::vector<VertexId> sub_prefix;
    for (VertexId v : prefix) sub_prefix.push_back(sub.to_sub[v]);
    OrderedCycle inner_sub = g_engine(sub.bg, sub_prefix, ham_mode);
    std::vector<VertexId> inner = lift(inner_sub.vertices, sub.to_parent);

    auto candidates = splice_candidates(bg, sel.free_of_part, inner, prefix, a, b, ham_mode);
    OrderedCycle out = first_verified(bg.graph, std::move(candidates), marks, ham_mode, "g_engine");
    if (ham_mode && !star_certificate(bg, out))
        throw std::logic_error("g_engine: hamiltonian output misses a part-pair crossing");
    return out;
}

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

FreeVertexSelection select_free_vertices(const BraceletGraph& bg, const MarkSequence& marks) {
    int k = 0;
    require(!bg.graph.directed(), "select_free_vertices: undirected bracelets only");
    require(bg.uniform(&k), "select_free_vertices: uniform bracelet required");
    require(k >= 2, "select_free_vertices: part size must be >= 2");
    require(marks.size() == 2 * k + 1, "select_free_vertices: need 2k+1 marks");
    std::string why;
    require(marks.valid_in(bg.graph, &why), "select_free_vertices: invalid marks");

    const int m = bg.part_count();
    const int K = marks.size();
    std::vector<int> count(m, 0);
    for (VertexId v : marks.vertices) ++count[bg.part_of[v]];
    std::vector<int> full;
    for (int p = 0; p < m; ++p)
        if (count[p] == k) full.push_back(p);
    if (full.size() > 2)
        throw std::logic_error("select_free_vertices: more than two fully marked parts");

    auto part_at = [&](int i) { return bg.part_of[marks.vertices[mod(i, K)]]; };
    int pair_pos = -1;
    for (int i = 0; i < K; ++i) {
        int p = part_at(i), q = part_at(i + 1);
        if (p == q) continue;
        if (full.size() == 2) {
            if ((p == full[0] && q == full[1]) || (p == full[1] && q == full[0])) {
                pair_pos = i;
                break;
            }
        } else if (full.size() == 1) {
            if (p == full[0]) {
                pair_pos = i;
                break;
            }
        } else {
            pair_pos = i;
            break;
        }
    }
    if (pair_pos < 0) throw std::logic_error("select_free_vertices: no admissible marked pair");

    FreeVertexSelection sel;
    sel.pair_position = pair_pos;
    sel.free_of_part.assign(m, -1);
    VertexId va = marks.vertices[pair_pos], vb = marks.vertices[mod(pair_pos + 1, K)];
    sel.free_of_part[bg.part_of[va]] = va;
    sel.free_of_part[bg.part_of[vb]] = vb;
    std::set<VertexId> marked(marks.vertices.begin(), marks.vertices.end());
    for (int p = 0; p < m; ++p) {
        if (sel.free_of_part[p] != -1) continue;
        auto pick = lowest_unmarked(bg.parts[p], marked, 1);
        if (pick.empty()) throw std::logic_error("select_free_vertices: part has no unmarked vertex");
        sel.free_of_part[p] = pick[0];
    }
    return sel;
}

std::optional<StarCertificate> star_certificate(const BraceletGraph& bg,
                                                const OrderedCycle& cycle) {
    const int m = bg.part_count();
    const int len = cycle.length();
    StarCertificate cert;
    cert.crossing.assign(m, {-1, -1});
    for (int i = 0; i < len; ++i) {
        VertexId x = cycle.vertices[i], y = cycle.vertices[(i + 1) % len];
        int px = bg.part_of[x], py = bg.part_of[y];
        if (mod(px + 1, m) == py && cert.crossing[px].first == -1) cert.crossing[px] = {x, y};
        if (mod(py + 1, m) == px && cert.crossing[py].first == -1) cert.crossing[py] = {y, x};
    }
    for (int p = 0; p < m; ++p)
        if (cert.crossing[p].first == -1) return std::nullopt;
    return cert;
}

OrderedCycle reroute_alpha(const Graph& g, const OrderedCycle& cycle, VertexId a, VertexId b,
                           VertexId c, VertexId d) {
    require(!g.directed(), "reroute_alpha: undirected graphs only");
    const int len = cycle.length();
    int at = -1;
    bool forward = true;
    for (int i = 0; i < len; ++i) {
        VertexId x = cycle.vertices[i], y = cycle.vertices[(i + 1) % len];
        if (x == a && y == b) {
            at = i;
            forward = true;
            break;
        }
        if (x == b && y == a) {
            at = i;
            forward = false;
            break;
        }
    }
    require(at >= 0, "reroute_alpha: (a,b) is not a cycle edge");
    for (VertexId v : cycle.vertices)
        require(v != c && v != d, "reroute_alpha: c and d must be off the cycle");
    require(g.has_edge(a, d) && g.has_edge(d, c) && g.has_edge(c, b),
            "reroute_alpha: detour edges a-d, d-c, c-b must exist");

    OrderedCycle out;
    out.vertices = cycle.vertices;
    // a -> d -> c -> b, inserted in the cycle's own direction.
    std::vector<VertexId> detour = forward ? std::vector<VertexId>{d, c}
                                           : std::vector<VertexId>{c, d};
    out.vertices.insert(out.vertices.begin() + at + 1, detour.begin(), detour.end());
    return out;
}

GHamiltonianWitness construct_G_hamiltonian(const BraceletGraph& bg, const MarkSequence& marks) {
    int k = 0;
    require(!bg.graph.directed(), "construct_G_hamiltonian: undirected bracelets only");
    require(bg.uniform(&k), "construct_G_hamiltonian: uniform bracelet required");
    require(bg.part_count() >= 4 && bg.part_count() % 2 == 0,
            "construct_G_hamiltonian: even part count >= 4 required");
    require(marks.size() == 2 * k + 1, "construct_G_hamiltonian: need 2k+1 marks");
    std::string why;
    require(marks.valid_in(bg.graph, &why), "construct_G_hamiltonian: invalid marks");

    GHamiltonianWitness w;
    w.cycle = g_engine(bg, marks.vertices, true);
    auto star = star_certificate(bg, w.cycle);
    if (!star) throw std::logic_error("construct_G_hamiltonian: star certificate incomplete");
    w.star = *star;
    return w;
}

namespace {

// Base case of the general bracelet construction: 3 marks. Distinct parts
// take a single loop around the bracelet; a doubly-marked part takes a
// detour through an adjacent part with 2+ vertices (the distance-2 floor
// provides one); a triply-marked part interleaves with its two neighbours.
OrderedCycle bracelet_base_3(const BraceletGraph& bg, const std::vector<VertexId>& marks) {
    const int m = bg.part_count();
    std::set<VertexId> marked(marks.begin(), marks.end());
    std::vector<std::vector<VertexId>> candidates;

    auto part = [&](VertexId v) { return bg.part_of[v]; };

    // Walk one vertex per part from `from_part` in direction dir, using the
    // given slot overrides (part -> forced vertex) and avoiding `avoid`.
    auto loop_from = [&](int from_part, int dir, const std::vector<VertexId>& slot,
                         const std::set<VertexId>& avoid) {
        std::vector<VertexId> walk;
        for (int step = 1; step < m; ++step) {
            int p = mod(from_part + dir * step, m);
            if (slot[p] != -1) {
                walk.push_back(slot[p]);
                continue;
            }
            VertexId pick = -1;
            for (VertexId v : bg.parts[p]) {
                if (marked.count(v) || avoid.count(v)) continue;
                pick = v;
                break;
            }
            if (pick == -1) return std::vector<VertexId>{};  // no usable vertex
            walk.push_back(pick);
        }
        return walk;
    };

    bool all_same = part(marks[0]) == part(marks[1]) && part(marks[1]) == part(marks[2]);
    if (all_same) {
        int pB = part(marks[0]);
        std::vector<VertexId> pool;
        for (int p : {mod(pB - 1, m), mod(pB + 1, m)})
            for (VertexId v : bg.parts[p]) pool.push_back(v);
        if (pool.size() >= 3) {
            candidates.push_back({marks[0], pool[0], marks[1], pool[1], marks[2], pool[2]});
        }
    } else {
        // Same-part pair (if any) rotated to the front.
        int rot = -1;
        for (int r = 0; r < 3; ++r)
            if (part(marks[r]) == part(marks[(r + 1) % 3])) rot = r;
        if (rot >= 0) {
            std::vector<VertexId> rm = rotate_left(marks, rot);
            int pB = part(rm[0]);
            for (int side : {-1, +1}) {
                int pS = mod(pB + side, m);
                VertexId x = -1;
                for (VertexId v : bg.parts[pS])
                    if (!marked.count(v)) {
                        x = v;
                        break;
                    }
                if (x == -1) continue;
                std::vector<VertexId> slot(m, -1);
                slot[part(rm[2])] = rm[2];
                std::set<VertexId> avoid{x};
                // exit through the far side and come back around to pS
                auto walk = loop_from(pB, -side, slot, avoid);
                if (walk.empty()) continue;
                std::vector<VertexId> cyc{rm[0], x, rm[1]};
                cyc.insert(cyc.end(), walk.begin(), walk.end());
                candidates.push_back(std::move(cyc));
            }
        } else {
            // Three distinct parts: single loop, one of the two directions
            // meets them in order.
            for (int dir : {+1, -1}) {
                std::vector<VertexId> slot(m, -1);
                for (VertexId v : marks) slot[part(v)] = v;
                auto walk = loop_from(part(marks[0]), dir, slot, {});
                if (walk.empty()) continue;
                std::vector<VertexId> cyc{marks[0]};
                cyc.insert(cyc.end(), walk.begin(), walk.end());
                candidates.push_back(std::move(cyc));
            }
        }
    }
    return first_verified(bg.graph, std::move(candidates), marks, false, "bracelet_base_3");
}

OrderedCycle bracelet_engine(const BraceletGraph& bg, const std::vector<VertexId>& marks) {
    const int m = bg.part_count();
    const int K = static_cast<int>(marks.size());
    const int k = (K - 1) / 2;

    if (k == 1) return bracelet_base_3(bg, marks);

    std::vector<int> count(m, 0);
    for (VertexId v : marks) ++count[bg.part_of[v]];
    int big = -1;
    for (int p = 0; p < m; ++p)
        if (count[p] > k) big = p;

    if (big < 0) {
        // Case 1: no part holds more than k marks; route inside an induced
        // uniform sub-bracelet of part size k.
        std::set<VertexId> marked(marks.begin(), marks.end());
        std::vector<char> keep(bg.graph.order(), 0);
        for (int p = 0; p < m; ++p) {
            int quota = k;
            for (VertexId v : bg.parts[p])
                if (marked.count(v)) {
                    keep[v] = 1;
                    --quota;
                }
            for (VertexId v : bg.parts[p]) {
                if (quota == 0) break;
                if (!keep[v]) {
                    keep[v] = 1;
                    --quota;
                }
            }
        }
        SubBracelet sub = induce_keeping(bg, keep);
        std::vector<VertexId> sub_marks;
        for (VertexId v : marks) sub_marks.push_back(sub.to_sub[v]);
        OrderedCycle inner = g_engine(sub.bg, sub_marks, false);
        return finish(bg.graph, lift(inner.vertices, sub.to_parent), marks, false,
                      "construct_bracelet_cycle");
    }

    if (count[big] == K) {
        // Case 2.1: every mark in one part; interleave with the two
        // adjacent parts (which jointly have >= 2k+1 vertices).
        std::vector<VertexId> pool;
        for (int p : {mod(big - 1, m), mod(big + 1, m)})
            for (VertexId v : bg.parts[p]) pool.push_back(v);
        if (static_cast<int>(pool.size()) < K)
            throw std::logic_error("construct_bracelet_cycle: adjacent parts too small");
        std::vector<VertexId> cyc;
        for (int i = 0; i < K; ++i) {
            cyc.push_back(marks[i]);
            cyc.push_back(pool[i]);
        }
        return finish(bg.graph, std::move(cyc), marks, false, "construct_bracelet_cycle");
    }

    // Case 2.2: rotate a pair (in big part, out of it) to the end, peel a
    // transversal, recurse, splice.
    int pair_pos = -1;
    for (int i = 0; i < K; ++i) {
        if (bg.part_of[marks[i]] == big && bg.part_of[marks[mod(i + 1, K)]] != big) {
            pair_pos = i;
            break;
        }
    }
    if (pair_pos < 0) throw std::logic_error("construct_bracelet_cycle: no exit pair from big part");
    std::vector<VertexId> rot = rotate_left(marks, mod(pair_pos + 2, K));
    std::vector<VertexId> prefix(rot.begin(), rot.end() - 2);
    VertexId a = rot[K - 2], b = rot[K - 1];

    std::vector<VertexId> frees(m, -1);
    frees[bg.part_of[a]] = a;
    frees[bg.part_of[b]] = b;
    std::set<VertexId> marked(marks.begin(), marks.end());
    for (int p = 0; p < m; ++p) {
        if (frees[p] != -1) continue;
        auto pick = lowest_unmarked(bg.parts[p], marked, 1);
        if (pick.empty())
            throw std::logic_error("construct_bracelet_cycle: part has no unmarked vertex");
        frees[p] = pick[0];
    }

    SubBracelet sub = induce_without(bg, frees);
    std::vector<VertexId> sub_prefix;
    for (VertexId v : prefix) sub_prefix.push_back(sub.to_sub[v]);
    OrderedCycle inner_sub = bracelet_engine(sub.bg, sub_prefix);
    std::vector<VertexId> inner = lift(inner_sub.vertices, sub.to_parent);

    auto candidates = splice_candidates(bg, frees, inner, prefix, a, b, false);
    return first_verified(bg.graph, std::move(candidates), marks, false,
                          "construct_bracelet_cycle");
}

}  // namespace

OrderedCycle construct_bracelet_cycle(const BraceletGraph& bg, const MarkSequence& marks) {
    require(!bg.graph.directed(), "construct_bracelet_cycle: undirected bracelets only");
    const int m = bg.part_count();
    require(m >= 4, "construct_bracelet_cycle: at least 4 parts required");
    require(marks.size() >= 3 && marks.size() % 2 == 1,
            "construct_bracelet_cycle: need 2k+1 marks");
    std::string why;
    require(marks.valid_in(bg.graph, &why), "construct_bracelet_cycle: invalid marks");
    const int k = (marks.size() - 1) / 2;
    for (int p = 0; p < m; ++p)
        require(bg.part_size(p) >= k, "construct_bracelet_cycle: every part needs >= k vertices");
    for (int p = 0; p < m; ++p)
        require(bg.part_size(p) + bg.part_size(mod(p + 2, m)) >= 2 * k + 1,
                "construct_bracelet_cycle: parts at distance 2 need >= 2k+1 vertices total");
    return bracelet_engine(bg, marks.vertices);
}

namespace {

bool matches_P_profile(const BraceletGraph& bg, int k) {
    const int m = bg.part_count();
    if (m < 5) return false;
    if (bg.part_size(0) != k - 1 || bg.part_size(1) != k - 1 || bg.part_size(2) != k)
        return false;
    for (int p = 3; p < m; ++p)
        if (bg.part_size(p) != k + 1) return false;
    return true;
}

// Loop-around candidates for marks lying in pairwise distinct parts.
std::vector<std::vector<VertexId>> distinct_part_loops(const BraceletGraph& bg,
                                                       const std::vector<VertexId>& marks) {
    const int m = bg.part_count();
    std::set<VertexId> marked(marks.begin(), marks.end());
    std::vector<std::vector<VertexId>> out;
    for (int dir : {+1, -1}) {
        std::vector<VertexId> slot(m, -1);
        for (VertexId v : marks) slot[bg.part_of[v]] = v;
        std::vector<VertexId> cyc{marks[0]};
        bool ok = true;
        for (int step = 1; step < m; ++step) {
            int p = mod(bg.part_of[marks[0]] + dir * step, m);
            if (slot[p] != -1) {
                cyc.push_back(slot[p]);
                continue;
            }
            VertexId pick = -1;
            for (VertexId v : bg.parts[p])
                if (!marked.count(v)) {
                    pick = v;
                    break;
                }
            if (pick == -1) {
                ok = false;
                break;
            }
            cyc.push_back(pick);
        }
        if (ok) out.push_back(std::move(cyc));
    }
    return out;
}

OrderedCycle p_engine(const BraceletGraph& bg, const std::vector<VertexId>& marks, int k,
                      std::uint64_t fallback_budget) {
    const int m = bg.part_count();
    const int K = static_cast<int>(marks.size());

    auto fallback = [&]() {
        oracle::CycleSearch s =
            oracle::find_ordered_cycle(bg.graph, MarkSequence{marks}, false, fallback_budget);
        if (s.outcome == oracle::Outcome::budget_exceeded)
            throw ResourceExceeded("construct_P_cycle: fallback search budget exceeded");
        if (s.outcome != oracle::Outcome::found)
            throw std::logic_error("construct_P_cycle: exhaustive fallback found no cycle");
        attach_positions(s.cycle, marks);
        return s.cycle;
    };

    if (k == 2) {
        std::vector<int> count(m, 0);
        for (VertexId v : marks) ++count[bg.part_of[v]];
        std::vector<std::vector<VertexId>> candidates;

        int triple = -1;
        for (int p = 0; p < m; ++p)
            if (count[p] == 3) triple = p;
        if (triple >= 0) {
            // Rotate the three same-part marks to the front (they are
            // cyclically contiguous), detour twice through a 3-vertex
            // neighbour, then loop the remaining parts.
            int rot = -1;
            for (int r = 0; r < 4; ++r) {
                if (bg.part_of[marks[mod(r, 4)]] == triple &&
                    bg.part_of[marks[mod(r + 1, 4)]] == triple &&
                    bg.part_of[marks[mod(r + 2, 4)]] == triple) {
                    rot = r;
                    break;
                }
            }
            if (rot >= 0) {
                std::vector<VertexId> rm = rotate_left(marks, rot);
                std::set<VertexId> marked(marks.begin(), marks.end());
                for (int side : {-1, +1}) {
                    int pA = mod(triple + side, m);
                    std::vector<VertexId> xs = lowest_unmarked(bg.parts[pA], marked, 2);
                    if (xs.size() < 2) continue;
                    std::vector<VertexId> slot(m, -1);
                    slot[bg.part_of[rm[3]]] = rm[3];
                    std::vector<VertexId> cyc{rm[0], xs[0], rm[1], xs[1], rm[2]};
                    bool ok = true;
                    std::set<VertexId> used(cyc.begin(), cyc.end());
                    for (int step = 1; step < m; ++step) {
                        int p = mod(triple - side * step, m);
                        if (slot[p] != -1) {
                            cyc.push_back(slot[p]);
                            continue;
                        }
                        VertexId pick = -1;
                        for (VertexId v : bg.parts[p])
                            if (!marked.count(v) && !used.count(v)) {
                                pick = v;
                                break;
                            }
                        if (pick == -1) {
                            ok = false;
                            break;
                        }
                        cyc.push_back(pick);
                        used.insert(pick);
                    }
                    if (ok) candidates.push_back(std::move(cyc));
                }
            }
        } else if (*std::max_element(count.begin(), count.end()) == 1) {
            auto loops = distinct_part_loops(bg, marks);
            candidates.insert(candidates.end(), loops.begin(), loops.end());
        }

        for (auto& cand : candidates) {
            OrderedCycle cycle;
            cycle.vertices = std::move(cand);
            if (verify_ordered_cycle(bg.graph, cycle, MarkSequence{marks}, false)) {
                attach_positions(cycle, marks);
                return cycle;
            }
        }
        return fallback();
    }

    // Inductive step (k >= 3).
    std::vector<int> count(m, 0);
    for (VertexId v : marks) ++count[bg.part_of[v]];
    std::vector<int> full;
    for (int p = 0; p < m; ++p)
        if (count[p] == bg.part_size(p) && count[p] > 0) full.push_back(p);
    if (full.size() > 2)
        throw std::logic_error("construct_P_cycle: more than two fully marked parts");

    auto part_at = [&](int i) { return bg.part_of[marks[mod(i, K)]]; };
    int pair_pos = -1;
    if (full.size() == 2) {
        for (int i = 0; i < K && pair_pos < 0; ++i) {
            int p = part_at(i), q = part_at(i + 1);
            if ((p == full[0] && q == full[1]) || (p == full[1] && q == full[0])) pair_pos = i;
        }
        if (pair_pos < 0) return fallback();  // two full (k-1)-parts, no adjacent pair
    } else {
        for (int i = 0; i < K && pair_pos < 0; ++i) {
            int p = part_at(i), q = part_at(i + 1);
            if (p == q) continue;
            if (full.empty() || full[0] == p || full[0] == q) pair_pos = i;
        }
        if (pair_pos < 0) throw std::logic_error("construct_P_cycle: no admissible pair");
    }

    std::vector<VertexId> rot = rotate_left(marks, mod(pair_pos + 2, K));
    std::vector<VertexId> prefix(rot.begin(), rot.end() - 2);
    VertexId a = rot[K - 2], b = rot[K - 1];

    std::vector<VertexId> frees(m, -1);
    frees[bg.part_of[a]] = a;
    frees[bg.part_of[b]] = b;
    std::set<VertexId> marked(marks.begin(), marks.end());
    for (int p = 0; p < m; ++p) {
        if (frees[p] != -1) continue;
        auto pick = lowest_unmarked(bg.parts[p], marked, 1);
        if (pick.empty()) return fallback();
        frees[p] = pick[0];
    }

    SubBracelet sub = induce_without(bg, frees);
    std::vector<VertexId> sub_prefix;
    for (VertexId v : prefix) sub_prefix.push_back(sub.to_sub[v]);
    OrderedCycle inner_sub = p_engine(sub.bg, sub_prefix, k - 1, fallback_budget);
    std::vector<VertexId> inner = lift(inner_sub.vertices, sub.to_parent);

    auto candidates = splice_candidates(bg, frees, inner, prefix, a, b, false);
    for (auto& cand : candidates) {
        OrderedCycle cycle;
        cycle.vertices = std::move(cand);
        if (verify_ordered_cycle(bg.graph, cycle, MarkSequence{marks}, false)) {
            attach_positions(cycle, marks);
            return cycle;
        }
    }
    return fallback();
}

}  // namespace

OrderedCycle construct_P_cycle(const BraceletGraph& bg, const MarkSequence& marks,
                               std::uint64_t fallback_budget) {
    require(!bg.graph.directed(), "construct_P_cycle: undirected bracelets only");
    require(marks.size() >= 4 && marks.size() % 2 == 0, "construct_P_cycle: need 2k marks");
    const int k = marks.size() / 2;
    require(matches_P_profile(bg, k), "construct_P_cycle: graph is not P_{k,m} for this k");
    std::string why;
    require(marks.valid_in(bg.graph, &why), "construct_P_cycle: invalid marks");
    return p_engine(bg, marks.vertices, k, fallback_budget);
}

OrderedCycle construct_directed_hamiltonian(const BraceletGraph& bg, const MarkSequence& marks) {
    require(bg.graph.directed(), "construct_directed_hamiltonian: directed bracelets only");
    int rows = 0;
    require(bg.uniform(&rows), "construct_directed_hamiltonian: uniform parts required");
    const int K = marks.size();
    require(K >= 2, "construct_directed_hamiltonian: need at least 2 marks");
    require(rows == K - 1, "construct_directed_hamiltonian: part size must be |marks|-1");
    std::string why;
    require(marks.valid_in(bg.graph, &why), "construct_directed_hamiltonian: invalid marks");

    const int l = bg.part_count();
    // Two consecutive marks in different parts exist (k marks cannot all fit
    // in one part of size k-1); rotate them to the front.
    int start = -1;
    for (int i = 0; i < K; ++i) {
        if (bg.part_of[marks.vertices[i]] != bg.part_of[marks.vertices[mod(i + 1, K)]]) {
            start = i;
            break;
        }
    }
    if (start < 0) throw std::logic_error("construct_directed_hamiltonian: no cross-part pair");
    std::vector<VertexId> rot = rotate_left(marks.vertices, start);

    const int base_part = bg.part_of[rot[0]];
    auto column_of = [&](VertexId v) { return mod(bg.part_of[v] - base_part, l); };

    // grid[r][c]: row r of the column holding part (base_part + c).
    std::vector<std::vector<VertexId>> grid(rows, std::vector<VertexId>(l, -1));
    grid[0][0] = rot[0];
    grid[0][column_of(rot[1])] = rot[1];
    for (int j = 2; j < K; ++j) grid[j - 1][column_of(rot[j])] = rot[j];

    std::set<VertexId> placed(rot.begin(), rot.end());
    for (int c = 0; c < l; ++c) {
        int p = mod(base_part + c, l);
        size_t next = 0;
        for (int r = 0; r < rows; ++r) {
            if (grid[r][c] != -1) continue;
            while (next < bg.parts[p].size() && placed.count(bg.parts[p][next])) ++next;
            if (next >= bg.parts[p].size())
                throw std::logic_error("construct_directed_hamiltonian: column overflow");
            grid[r][c] = bg.parts[p][next];
            placed.insert(bg.parts[p][next]);
        }
    }

    std::vector<VertexId> cyc;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < l; ++c) cyc.push_back(grid[r][c]);
    return finish(bg.graph, std::move(cyc), marks.vertices, true,
                  "construct_directed_hamiltonian");
}

}  // namespace bracelet::constructive
