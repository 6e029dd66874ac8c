#pragma once

#include "bstar/canonical.hpp"
#include "bstar/det.hpp"
#include "bstar/graph.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

namespace bstar {

enum class GraphClass { AllStable, Connected, StronglyConnected, Lambda };

constexpr int kMaxEnumWeight = 6;

namespace detail {

enum class Stability { Stable, Semistable };

// Row-filling generator for (nd+n)x(nd+n) matrices with a fixed total edge
// count. Ordinary rows/columns obey the stability bound (>=2 stable, >=1
// semistable, plus row+col >= 3 for semistable); distinguished vertices are
// unconstrained unless `dist_min` forces a minimum in/out degree (used to
// restrict to candidates that can be strongly connected).
struct MatrixGen {
    int nd, n, total;
    Stability mode;
    int dist_min;
    int size;
    std::vector<std::vector<int>> adj;
    std::vector<int> colsum;
    std::vector<int> rowsum_done;  // row sums of completed rows
    std::vector<PointedMultiDigraph>* out;

    int row_min(int r) const {
        if (r < nd) return dist_min;
        return mode == Stability::Stable ? 2 : 1;
    }
    // Once row j is complete, its column must still bring vertex j's degree
    // sum up to 3 (semistable) resp. its own minimum of 2 (stable).
    int col_min(int c, int rows_filled) const {
        if (c < nd) return dist_min;
        int base = mode == Stability::Stable ? 2 : 1;
        if (mode == Stability::Semistable && c < rows_filled)
            base = std::max(base, 3 - rowsum_done[c]);
        return base;
    }

    void run(std::vector<PointedMultiDigraph>& sink) {
        size = nd + n;
        adj.assign(size, std::vector<int>(size, 0));
        colsum.assign(size, 0);
        rowsum_done.assign(size, 0);
        out = &sink;
        fill_row(0, 0, 0, total);
    }

    void fill_row(int r, int c, int rowsum, int remaining) {
        if (r == size) {
            if (remaining != 0) return;
            finish();
            return;
        }
        if (c == size) {
            if (rowsum < row_min(r)) return;
            rowsum_done[r] = rowsum;
            // leftover edges must cover both the column deficits and the
            // minimum sums of the remaining rows
            int col_deficit = 0;
            for (int j = 0; j < size; ++j)
                col_deficit += std::max(0, col_min(j, r + 1) - colsum[j]);
            int rows_needed = 0;
            for (int rr = r + 1; rr < size; ++rr) rows_needed += row_min(rr);
            if (remaining >= col_deficit && remaining >= rows_needed)
                fill_row(r + 1, 0, 0, remaining);
            rowsum_done[r] = 0;
            return;
        }
        int max_here = remaining;
        for (int v = 0; v <= max_here; ++v) {
            adj[r][c] = v;
            colsum[c] += v;
            fill_row(r, c + 1, rowsum + v, remaining - v);
            colsum[c] -= v;
        }
        adj[r][c] = 0;
    }

    void finish() {
        for (int j = 0; j < size; ++j)
            if (colsum[j] < col_min(j, size)) return;
        out->push_back(PointedMultiDigraph(nd, adj));
    }
};

inline std::vector<PointedMultiDigraph> enum_graphs(int nd, int k, Stability mode, int max_n,
                                                    int dist_min, int jobs = 1) {
    std::set<PointedMultiDigraph> classes;
    for (int n = 0; n <= max_n; ++n) {
        int total = n + k;
        if (total < 0) continue;
        if (nd == 0 && n == 0 && k > 0) continue;
        std::vector<PointedMultiDigraph> raw;
        MatrixGen gen{nd, n, total, mode, dist_min, 0, {}, {}, {}, nullptr};
        if (jobs <= 1 || nd + n == 0) {
            gen.run(raw);
        } else {
            // parallel over the first cell's value; deterministic merge below
            int size = nd + n;
            std::vector<std::vector<PointedMultiDigraph>> parts(total + 1);
            std::atomic<int> next{0};
            auto worker = [&]() {
                for (;;) {
                    int v = next.fetch_add(1);
                    if (v > total) break;
                    MatrixGen g2{nd, n, total, mode, dist_min, size,
                                 std::vector<std::vector<int>>(size, std::vector<int>(size, 0)),
                                 std::vector<int>(size, 0), std::vector<int>(size, 0),
                                 &parts[v]};
                    g2.adj[0][0] = v;
                    g2.colsum[0] = v;
                    g2.fill_row(0, 1, v, total - v);
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
            for (auto& p : parts)
                for (auto& g : p) raw.push_back(std::move(g));
        }
        for (const auto& g : raw) classes.insert(canonicalize(g));
    }
    return {classes.begin(), classes.end()};
}

}  // namespace detail

// All 1-pointed stable graphs of weight k up to isomorphism, canonical and
// sorted. A stable ordinary vertex has indegree >= 2, so n_ordinary <= k.
inline std::vector<PointedMultiDigraph> enum_pointed_stable(int k, int jobs = 1) {
    if (k < 0 || k > kMaxEnumWeight) throw std::out_of_range("weight out of range (0..6)");
    return detail::enum_graphs(1, k, detail::Stability::Stable, k, 0, jobs);
}

// 0-pointed stable graphs of weight k (the plain-graph family).
inline std::vector<PointedMultiDigraph> enum_plain_stable(int k, int jobs = 1) {
    if (k < 0 || k > kMaxEnumWeight) throw std::out_of_range("weight out of range (0..6)");
    return detail::enum_graphs(0, k, detail::Stability::Stable, k, 0, jobs);
}

inline bool in_lambda(const PointedMultiDigraph& g) {
    return connectivity(g) == Connectivity::StronglyConnected &&
           det_minus_identity(minor_matrix(g)) != 0;
}

inline std::vector<PointedMultiDigraph> enum_class(int k, GraphClass cls, int jobs = 1) {
    auto all = enum_pointed_stable(k, jobs);
    if (cls == GraphClass::AllStable) return all;
    std::vector<PointedMultiDigraph> out;
    for (const auto& g : all) {
        Connectivity c = connectivity(g);
        bool keep = false;
        switch (cls) {
            case GraphClass::AllStable: keep = true; break;
            case GraphClass::Connected: keep = c != Connectivity::Disconnected; break;
            case GraphClass::StronglyConnected: keep = c == Connectivity::StronglyConnected; break;
            case GraphClass::Lambda:
                keep = c == Connectivity::StronglyConnected && in_lambda(g);
                break;
        }
        if (keep) out.push_back(g);
    }
    return out;
}

namespace detail {

// Internal carriers for the operator calculus. Pointed semistable strongly
// connected graphs of weight k: strong connectivity forces the distinguished
// vertex to have in/out degree >= 1 and, with every ordinary vertex of
// degree sum >= 3, the vertex count is bounded by 2k-2 (2k for k=0).
// Memoized; the weight-4 family is the one expensive enumeration.
inline std::vector<PointedMultiDigraph> enum_pointed_semistable_scon(int k) {
    if (k < 0) throw std::out_of_range("negative weight");
    static std::mutex mu;
    static std::map<int, std::vector<PointedMultiDigraph>> memo;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
    }
    std::vector<PointedMultiDigraph> out;
    if (k == 0) {
        out.push_back(PointedMultiDigraph::empty(1, 0));
    } else {
        int max_n = std::max(0, 2 * k - 2);
        auto raw = enum_graphs(1, k, Stability::Semistable, max_n, 1);
        for (const auto& g : raw)
            if (connectivity(g) == Connectivity::StronglyConnected) out.push_back(g);
    }
    std::lock_guard<std::mutex> lock(mu);
    memo[k] = out;
    return out;
}

// 0-pointed semistable graphs whose weakly connected components are all
// strongly connected (the support of the kernel-coefficient sums).
inline std::vector<PointedMultiDigraph> enum_plain_semistable_scon_parts(int k) {
    if (k < 0) throw std::out_of_range("negative weight");
    if (k == 0) return {PointedMultiDigraph::empty(0, 0)};
    auto raw = enum_graphs(0, k, Stability::Semistable, 2 * k, 0);
    std::vector<PointedMultiDigraph> out;
    for (const auto& g : raw) {
        bool ok = true;
        for (const auto& comp : weak_components(g)) {
            PointedMultiDigraph sub = PointedMultiDigraph::empty(0, static_cast<int>(comp.size()));
            for (size_t i = 0; i < comp.size(); ++i)
                for (size_t j = 0; j < comp.size(); ++j) sub.adj[i][j] = g.adj[comp[i]][comp[j]];
            if (!strongly_connected(sub)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(g);
    }
    return out;
}

}  // namespace detail

}  // namespace bstar
