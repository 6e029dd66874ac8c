#pragma once

#include "bstar/graph_sum.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace bstar {

// Substitution keeps either only graphs whose ordinary vertices are all
// stable (evaluation at the center) or everything semistable (intermediate
// operator calculus).
enum class Keep { Stable, Semistable };

struct SubstituteOptions {
    // Allow slot legs to land on edges of the substituted graph. A hit edge
    // u->v is re-routed through a path of new vertices carrying the legs
    // (the derivative expansion of the inverse-metric contraction); a path
    // of m new vertices contributes a sign (-1)^m.
    bool attack_edges = false;
    Keep keep = Keep::Stable;
};

namespace detail {

struct SlotSpec {
    int slot = 0;
    const PointedMultiDigraph* h = nullptr;
    // optional per-vertex direction mask: 0 = any leg, 1 = in-legs only,
    // 2 = out-legs only. Edges inherit the mask of their endpoints.
    std::vector<int> part;
};

struct RawSubstitution {
    // multiplicities of canonical glued graphs from vertex-only assignments
    std::map<PointedMultiDigraph, Int> vertex_only;
    // signed multiplicities from assignments that hit at least one edge
    std::map<PointedMultiDigraph, Int> edge_terms;
};

struct Endpoint {
    int si = 0;       // which slot this endpoint belongs to
    bool out = false; // true: tail (unbarred) side of the original edge
    int anchor = -1;  // result index of the fixed partner, -1 if linked
    int link = -1;    // partner endpoint index for slot-slot edges
};

struct Target {
    bool is_edge = false;
    int res_v = -1;      // landing vertex (vertex targets)
    int hu = 0, hv = 0;  // h-local edge endpoints (edge targets)
    int copy = 0;
    int part = 0;
};

inline RawSubstitution substitute_general(const PointedMultiDigraph& g,
                                          std::vector<SlotSpec> slots,
                                          const SubstituteOptions& opts) {
    std::sort(slots.begin(), slots.end(),
              [](const SlotSpec& a, const SlotSpec& b) { return a.slot < b.slot; });
    int ns = static_cast<int>(slots.size());
    for (int i = 0; i < ns; ++i) {
        if (!slots[i].h) throw std::invalid_argument("missing substitution operand");
        if (slots[i].slot < 0 || slots[i].slot >= g.n_distinguished)
            throw std::out_of_range("substitution slot out of range");
        if (i > 0 && slots[i].slot == slots[i - 1].slot)
            throw std::invalid_argument("duplicate substitution slot");
    }

    // Result layout: g's distinguished vertices in order with each slot
    // replaced by its operand's distinguished block, then g's ordinary
    // vertices, then the operands' ordinary vertices, then path vertices.
    std::vector<int> slot_of(g.size(), -1);
    for (int i = 0; i < ns; ++i) slot_of[slots[i].slot] = i;

    std::vector<int> g_res(g.size(), -1);
    std::vector<std::vector<int>> h_res(ns);
    int pos = 0;
    for (int d = 0; d < g.n_distinguished; ++d) {
        int si = slot_of[d];
        if (si >= 0) {
            const auto& h = *slots[si].h;
            h_res[si].assign(h.size(), -1);
            for (int hd = 0; hd < h.n_distinguished; ++hd) h_res[si][hd] = pos++;
        } else {
            g_res[d] = pos++;
        }
    }
    const int nd_total = pos;
    for (int v = g.n_distinguished; v < g.size(); ++v) g_res[v] = pos++;
    for (int si = 0; si < ns; ++si) {
        const auto& h = *slots[si].h;
        for (int hv = h.n_distinguished; hv < h.size(); ++hv) h_res[si][hv] = pos++;
    }
    const int base_size = pos;

    std::vector<std::vector<int>> base(base_size, std::vector<int>(base_size, 0));
    for (int i = 0; i < g.size(); ++i) {
        if (slot_of[i] >= 0) continue;
        for (int j = 0; j < g.size(); ++j) {
            if (slot_of[j] >= 0) continue;
            base[g_res[i]][g_res[j]] += g.adj[i][j];
        }
    }
    for (int si = 0; si < ns; ++si) {
        const auto& h = *slots[si].h;
        for (int u = 0; u < h.size(); ++u)
            for (int v = 0; v < h.size(); ++v) base[h_res[si][u]][h_res[si][v]] += h.adj[u][v];
    }

    // Legs of the slots. Every edge endpoint formerly at a slot vertex must
    // land somewhere in that slot's operand.
    std::vector<Endpoint> eps;
    for (int i = 0; i < g.size(); ++i) {
        for (int j = 0; j < g.size(); ++j) {
            int m = g.adj[i][j];
            if (m == 0) continue;
            int a = slot_of[i], b = slot_of[j];
            if (a < 0 && b < 0) continue;
            for (int c = 0; c < m; ++c) {
                if (a >= 0 && b >= 0) {
                    int e0 = static_cast<int>(eps.size());
                    eps.push_back({a, true, -1, e0 + 1});
                    eps.push_back({b, false, -1, e0});
                } else if (a >= 0) {
                    eps.push_back({a, true, g_res[j], -1});
                } else {
                    eps.push_back({b, false, g_res[i], -1});
                }
            }
        }
    }

    std::vector<std::vector<Target>> targets(ns);
    for (int si = 0; si < ns; ++si) {
        const auto& h = *slots[si].h;
        auto part = slots[si].part;
        part.resize(h.size(), 0);
        for (int v = 0; v < h.size(); ++v)
            targets[si].push_back({false, h_res[si][v], 0, 0, 0, part[v]});
        if (opts.attack_edges) {
            for (int u = 0; u < h.size(); ++u)
                for (int v = 0; v < h.size(); ++v)
                    for (int c = 0; c < h.adj[u][v]; ++c)
                        targets[si].push_back({true, -1, u, v, c, part[u]});
        }
    }

    auto allowed = [&](const Endpoint& e, const Target& t) {
        return e.out ? t.part != 1 : t.part != 2;
    };

    RawSubstitution out;
    const int ne = static_cast<int>(eps.size());
    std::vector<int> choice(ne, 0);

    // Emits one fully resolved assignment (with a fixed path structure on
    // each attacked edge).
    auto emit = [&](const std::vector<int>& land, int extra, int sign,
                    const std::vector<std::tuple<int, int, int>>& path_edges,
                    const std::vector<std::pair<int, int>>& reroutes, bool pure_vertex) {
        int n = base_size + extra;
        PointedMultiDigraph res(nd_total, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
        for (int i = 0; i < base_size; ++i)
            for (int j = 0; j < base_size; ++j) res.adj[i][j] = base[i][j];
        for (const auto& [u, v] : reroutes) res.adj[u][v] -= 1;
        for (const auto& [u, v, m] : path_edges) res.adj[u][v] += m;
        for (int e = 0; e < ne; ++e) {
            const auto& ep = eps[e];
            if (ep.link >= 0) {
                if (!ep.out) continue;  // handle each linked pair once
                res.adj[land[e]][land[ep.link]] += 1;
            } else if (ep.out) {
                res.adj[land[e]][ep.anchor] += 1;
            } else {
                res.adj[ep.anchor][land[e]] += 1;
            }
        }
        auto canon = canonicalize(res);
        auto& slot_map = pure_vertex ? out.vertex_only : out.edge_terms;
        slot_map[canon] += sign;
    };

    // Enumerates ordered block partitions of the endpoints attacking one
    // edge; each block becomes one path vertex.
    struct EdgeAttack {
        int si, hu, hv;
        std::vector<int> members;  // endpoint indices
    };

    auto finalize = [&]() {
        std::map<std::tuple<int, int, int, int>, EdgeAttack> attacked;
        std::vector<int> land(ne, -1);
        for (int e = 0; e < ne; ++e) {
            const auto& t = targets[eps[e].si][choice[e]];
            if (t.is_edge) {
                auto key = std::make_tuple(eps[e].si, t.hu, t.hv, t.copy);
                auto& att = attacked[key];
                att.si = eps[e].si;
                att.hu = t.hu;
                att.hv = t.hv;
                att.members.push_back(e);
            } else {
                land[e] = t.res_v;
            }
        }
        if (attacked.empty()) {
            emit(land, 0, 1, {}, {}, true);
            return;
        }

        // For each attacked edge, the list of its ordered partitions:
        // (blocks, block count). In stable mode only blocks carrying both an
        // out- and an in-leg can survive, so prune the rest.
        struct Partition {
            std::vector<std::vector<int>> blocks;
        };
        std::vector<EdgeAttack> edges;
        std::vector<std::vector<Partition>> options;
        for (auto& [key, att] : attacked) {
            edges.push_back(att);
            std::vector<Partition> opts_here;
            int r = static_cast<int>(att.members.size());
            std::vector<int> block_of(r, 0);
            auto rec_part = [&](auto&& self, int i, int used) -> void {
                if (i == r) {
                    std::vector<std::vector<int>> blocks(used);
                    for (int x = 0; x < r; ++x) blocks[block_of[x]].push_back(att.members[x]);
                    if (opts.keep == Keep::Stable) {
                        for (const auto& b : blocks) {
                            bool has_out = false, has_in = false;
                            for (int e : b) (eps[e].out ? has_out : has_in) = true;
                            if (!has_out || !has_in) return;
                        }
                    }
                    // every ordering of the blocks is a distinct path
                    std::vector<int> order(used);
                    for (int x = 0; x < used; ++x) order[x] = x;
                    do {
                        Partition p;
                        for (int x = 0; x < used; ++x) p.blocks.push_back(blocks[order[x]]);
                        opts_here.push_back(std::move(p));
                    } while (std::next_permutation(order.begin(), order.end()));
                    return;
                }
                for (int b = 0; b <= used && b < r; ++b) {
                    block_of[i] = b;
                    self(self, i + 1, std::max(used, b + 1));
                }
            };
            rec_part(rec_part, 0, 0);
            if (opts_here.empty()) return;  // this assignment cannot survive
            options.push_back(std::move(opts_here));
        }

        // cross product of per-edge partitions
        int nedges = static_cast<int>(edges.size());
        std::vector<int> pick(nedges, 0);
        auto rec_pick = [&](auto&& self, int i) -> void {
            if (i == nedges) {
                int extra = 0, signexp = 0;
                std::vector<std::tuple<int, int, int>> path_edges;
                std::vector<std::pair<int, int>> reroutes;
                auto land2 = land;
                for (int x = 0; x < nedges; ++x) {
                    const auto& att = edges[x];
                    const auto& p = options[x][pick[x]];
                    int m = static_cast<int>(p.blocks.size());
                    int u = h_res[att.si][att.hu], v = h_res[att.si][att.hv];
                    reroutes.emplace_back(u, v);
                    int first = base_size + extra;
                    path_edges.emplace_back(u, first, 1);
                    for (int b = 0; b + 1 < m; ++b)
                        path_edges.emplace_back(first + b, first + b + 1, 1);
                    path_edges.emplace_back(first + m - 1, v, 1);
                    for (int b = 0; b < m; ++b)
                        for (int e : p.blocks[b]) land2[e] = first + b;
                    extra += m;
                    signexp += m;
                }
                emit(land2, extra, signexp % 2 == 0 ? 1 : -1, path_edges, reroutes, false);
                return;
            }
            for (int c = 0; c < static_cast<int>(options[i].size()); ++c) {
                pick[i] = c;
                self(self, i + 1);
            }
        };
        rec_pick(rec_pick, 0);
    };

    auto rec = [&](auto&& self, int e) -> void {
        if (e == ne) {
            finalize();
            return;
        }
        const auto& tl = targets[eps[e].si];
        for (int t = 0; t < static_cast<int>(tl.size()); ++t) {
            if (!allowed(eps[e], tl[t])) continue;
            choice[e] = t;
            self(self, e + 1);
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace detail

// Records the orbit property checks run during composed substitutions:
// multiplicity(G) * |Aut(G)| must equal |Aut(host)| * prod |Aut(operand)|.
struct OrbitStats {
    long long substitutions = 0;
    long long classes_checked = 0;
    std::vector<std::string> violations;

    void check(const PointedMultiDigraph& host,
               const std::vector<const PointedMultiDigraph*>& hs,
               const std::map<PointedMultiDigraph, Int>& mult) {
        ++substitutions;
        Int expected = aut_order(host);
        for (auto* h : hs) expected *= aut_order(*h);
        for (const auto& [gc, m] : mult) {
            ++classes_checked;
            if (m * aut_order(gc) != expected && violations.size() < 32) {
                violations.push_back("host=" + encode(host) + " -> " + encode(gc) + ": " +
                                     to_string(m) + " * " + to_string(aut_order(gc)) +
                                     " != " + to_string(expected));
            }
        }
    }
    bool ok() const { return violations.empty(); }
};

namespace detail {

inline void fold_raw(GraphSum& acc, const RawSubstitution& raw, const Rational& coeff,
                     Keep keep) {
    auto fold = [&](const std::map<PointedMultiDigraph, Int>& m) {
        for (const auto& [gc, mult] : m) {
            if (keep == Keep::Stable && !all_ordinary_stable(gc)) continue;
            if (keep == Keep::Semistable && !all_ordinary_semistable(gc)) continue;
            acc.add_canonical(gc, coeff * Rational(mult));
        }
    };
    fold(raw.vertex_only);
    fold(raw.edge_terms);
}

}  // namespace detail

// Substitution of a graph sum into one distinguished slot: every leg of the
// slot lands on a vertex of the operand (and, when edges are attackable, on
// an operand edge); graphs violating the keep-filter are discarded. Bilinear
// in host and operand.
inline GraphSum substitute_slot(const PointedMultiDigraph& g, int slot, const GraphSum& h,
                                SubstituteOptions opts = {}, OrbitStats* orbit = nullptr) {
    if (h.zero()) throw std::invalid_argument("substitution operand is the empty sum");
    GraphSum acc;
    for (const auto& [hg, hc] : h.terms()) {
        auto raw = detail::substitute_general(g, {{slot, &hg, {}}}, opts);
        if (orbit) orbit->check(g, {&hg}, raw.vertex_only);
        detail::fold_raw(acc, raw, hc, opts.keep);
    }
    return acc;
}

inline GraphSum substitute_sum(const GraphSum& host, int slot, const GraphSum& h,
                               SubstituteOptions opts = {}, OrbitStats* orbit = nullptr) {
    GraphSum acc;
    for (const auto& [gg, gc] : host.terms()) {
        // a non-stable ordinary vertex of the host never gains edges here,
        // so in stable mode such terms cannot contribute
        if (opts.keep == Keep::Stable && !all_ordinary_stable(gg)) continue;
        acc += substitute_slot(gg, slot, h, opts, orbit) * gc;
    }
    return acc;
}

// Simultaneous substitution into two slots, the two-argument substitution of
// the partition-function calculus. Slots 0 and 1 of a 2-pointed host.
inline GraphSum substitute_two(const PointedMultiDigraph& g, const GraphSum& h1,
                               const GraphSum& h2, SubstituteOptions opts = {},
                               OrbitStats* orbit = nullptr) {
    if (g.n_distinguished != 2)
        throw std::invalid_argument("substitute_two expects a 2-pointed host");
    if (h1.zero() || h2.zero())
        throw std::invalid_argument("substitution operand is the empty sum");
    GraphSum acc;
    for (const auto& [h1g, h1c] : h1.terms()) {
        for (const auto& [h2g, h2c] : h2.terms()) {
            auto raw = detail::substitute_general(g, {{0, &h1g, {}}, {1, &h2g, {}}}, opts);
            if (orbit) orbit->check(g, {&h1g, &h2g}, raw.vertex_only);
            detail::fold_raw(acc, raw, h1c * h2c, opts.keep);
        }
    }
    return acc;
}

// Splits a 1-pointed graph: the distinguished vertex is replaced by an
// in-slot f1 receiving all its inward edges and an out-slot f2 emitting all
// its outward edges; loops become f2 -> f1 edges.
inline PointedMultiDigraph partition_split(const PointedMultiDigraph& g) {
    if (g.n_distinguished != 1)
        throw std::invalid_argument("partition_split expects a 1-pointed graph");
    int n = g.size();
    PointedMultiDigraph s = PointedMultiDigraph::empty(2, g.n_ordinary());
    auto pos = [&](int v) { return v + 1; };  // old f = 0; ordinary v >= 1 shifts by one
    s.adj[1][0] = g.adj[0][0];
    for (int v = 1; v < n; ++v) {
        s.adj[pos(v)][0] = g.adj[v][0];
        s.adj[1][pos(v)] = g.adj[0][v];
        for (int w = 1; w < n; ++w) s.adj[pos(v)][pos(w)] = g.adj[v][w];
    }
    return s;
}

inline GraphSum partition_split(const GraphSum& s) {
    GraphSum out;
    for (const auto& [g, c] : s.terms()) out.add(partition_split(g), c);
    return out;
}

// Inverse of partition_split where defined: requires outdeg(f1) = 0 and
// indeg(f2) = 0; f2 -> f1 edges fuse back into loops.
inline std::optional<PointedMultiDigraph> fuse_split(const PointedMultiDigraph& g) {
    if (g.n_distinguished != 2) return std::nullopt;
    if (g.outdeg(0) != 0 || g.indeg(1) != 0) return std::nullopt;
    PointedMultiDigraph out = PointedMultiDigraph::empty(1, g.n_ordinary());
    out.adj[0][0] = g.adj[1][0];
    for (int v = 2; v < g.size(); ++v) {
        out.adj[v - 1][0] = g.adj[v][0];
        out.adj[0][v - 1] = g.adj[1][v];
        for (int w = 2; w < g.size(); ++w) out.adj[v - 1][w - 1] = g.adj[v][w];
    }
    return out;
}

inline std::optional<GraphSum> fuse_split(const GraphSum& s) {
    GraphSum out;
    for (const auto& [g, c] : s.terms()) {
        auto f = fuse_split(g);
        if (!f) return std::nullopt;
        out.add(*f, c);
    }
    return out;
}

}  // namespace bstar
