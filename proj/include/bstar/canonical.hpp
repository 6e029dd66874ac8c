#pragma once

#include "bstar/graph.hpp"
#include "bstar/rational.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <vector>

namespace bstar {

namespace detail {

// Invariant key used to pre-sort ordinary vertices so the permutation scan
// tends to find the minimum early.
inline std::vector<long long> vertex_key(const PointedMultiDigraph& g, int v) {
    std::vector<long long> key;
    key.push_back(g.indeg(v));
    key.push_back(g.outdeg(v));
    key.push_back(g.adj[v][v]);
    for (int d = 0; d < g.n_distinguished; ++d) {
        key.push_back(g.adj[v][d]);
        key.push_back(g.adj[d][v]);
    }
    return key;
}

// Compares the row-major flattening under permutation `pos2old` against
// `best` (also as position -> old). Returns <0, 0, >0.
inline int compare_perm(const PointedMultiDigraph& g, const std::vector<int>& pos2old,
                        const std::vector<int>& best) {
    int n = g.size();
    for (int i = 0; i < n; ++i) {
        const auto& row = g.adj[pos2old[i]];
        const auto& brow = g.adj[best[i]];
        for (int j = 0; j < n; ++j) {
            int a = row[pos2old[j]];
            int b = brow[best[j]];
            if (a != b) return a < b ? -1 : 1;
        }
    }
    return 0;
}

}  // namespace detail

struct CanonicalResult {
    PointedMultiDigraph graph;
    std::vector<int> witness;  // old index -> new index
};

// Canonical form: the lexicographically smallest row-major flattening of the
// adjacency matrix over all permutations of the ordinary vertices, with the
// distinguished vertices fixed pointwise. Exhaustive scan with early-exit
// comparison; the graphs in scope have few ordinary vertices.
inline CanonicalResult canonicalize_with_witness(const PointedMultiDigraph& g) {
    int n = g.size(), nd = g.n_distinguished, m = g.n_ordinary();
    std::vector<int> pos2old(n);
    for (int d = 0; d < nd; ++d) pos2old[d] = d;

    std::vector<int> ord(m);
    for (int i = 0; i < m; ++i) ord[i] = nd + i;
    std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
        return detail::vertex_key(g, a) < detail::vertex_key(g, b);
    });

    std::vector<int> best;
    std::vector<int> perm = ord;  // permutations of old ordinary indices
    std::sort(perm.begin(), perm.end());
    // Seed with the invariant-sorted order, then scan all permutations.
    std::copy(ord.begin(), ord.end(), pos2old.begin() + nd);
    best = pos2old;
    do {
        std::copy(perm.begin(), perm.end(), pos2old.begin() + nd);
        if (detail::compare_perm(g, pos2old, best) < 0) best = pos2old;
    } while (std::next_permutation(perm.begin(), perm.end()));

    PointedMultiDigraph c = PointedMultiDigraph::empty(nd, m);
    std::vector<int> witness(n);
    for (int p = 0; p < n; ++p) witness[best[p]] = p;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c.adj[witness[i]][witness[j]] = g.adj[i][j];
    return {std::move(c), std::move(witness)};
}

inline PointedMultiDigraph canonicalize(const PointedMultiDigraph& g) {
    return canonicalize_with_witness(g).graph;
}

// |Aut(g)|: ordinary-vertex permutations fixing every distinguished vertex
// and preserving adj, times the parallel-edge factor prod adj[i][j]!.
inline Int aut_order(const PointedMultiDigraph& g) {
    int n = g.size(), nd = g.n_distinguished, m = g.n_ordinary();

    // group ordinary vertices by invariant key; only within-class maps can
    // be automorphisms
    std::vector<std::vector<long long>> keys(m);
    for (int i = 0; i < m; ++i) keys[i] = detail::vertex_key(g, nd + i);

    std::vector<int> image(n, -1);
    for (int d = 0; d < nd; ++d) image[d] = d;
    std::vector<bool> used(n, false);
    long long count = 0;

    auto consistent = [&](int v, int w) {
        // all edges between v and already-mapped vertices must be preserved
        for (int u = 0; u < n; ++u) {
            if (image[u] < 0) continue;
            if (g.adj[v][u] != g.adj[w][image[u]]) return false;
            if (g.adj[u][v] != g.adj[image[u]][w]) return false;
        }
        return g.adj[v][v] == g.adj[w][w];
    };

    auto rec = [&](auto&& self, int i) -> void {
        if (i == m) {
            ++count;
            return;
        }
        int v = nd + i;
        for (int j = 0; j < m; ++j) {
            int w = nd + j;
            if (used[w] || keys[i] != keys[j]) continue;
            if (!consistent(v, w)) continue;
            image[v] = w;
            used[w] = true;
            self(self, i + 1);
            image[v] = -1;
            used[w] = false;
        }
    };
    rec(rec, 0);

    Int total = count;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) total *= factorial(g.adj[i][j]);
    return total;
}

}  // namespace bstar
