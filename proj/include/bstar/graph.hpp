#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bstar {

// A finite directed multigraph with loops and an ordered block of
// distinguished vertices stored first. Ordinary vertices follow. adj[i][j]
// is the multiplicity of edges i -> j; diagonal entries count loops.
//
// This one type carries every graph flavour used here: plain graphs
// (n_distinguished = 0), pointed graphs (1), and the 2- and 3-pointed graphs
// produced by splitting and substitution.
struct PointedMultiDigraph {
    int n_distinguished = 0;
    std::vector<std::vector<int>> adj;

    PointedMultiDigraph() = default;
    PointedMultiDigraph(int nd, std::vector<std::vector<int>> a)
        : n_distinguished(nd), adj(std::move(a)) {
        check();
    }

    static PointedMultiDigraph empty(int nd, int n_ordinary) {
        int n = nd + n_ordinary;
        return PointedMultiDigraph(nd, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
    }

    void check() const {
        if (n_distinguished < 0 || n_distinguished > size())
            throw std::invalid_argument("bad distinguished count");
        for (const auto& row : adj) {
            if (static_cast<int>(row.size()) != size())
                throw std::invalid_argument("adjacency matrix not square");
            for (int v : row)
                if (v < 0) throw std::invalid_argument("negative multiplicity");
        }
    }

    int size() const { return static_cast<int>(adj.size()); }
    int n_ordinary() const { return size() - n_distinguished; }
    bool is_ordinary(int v) const { return v >= n_distinguished; }

    int edge_count() const {
        int e = 0;
        for (const auto& row : adj)
            for (int v : row) e += v;
        return e;
    }

    // weight = |E| - (number of ordinary vertices)
    int weight() const { return edge_count() - n_ordinary(); }

    int outdeg(int v) const {
        require_vertex(v);
        return std::accumulate(adj[v].begin(), adj[v].end(), 0);
    }
    int indeg(int v) const {
        require_vertex(v);
        int d = 0;
        for (int u = 0; u < size(); ++u) d += adj[u][v];
        return d;
    }

    void require_vertex(int v) const {
        if (v < 0 || v >= size()) throw std::out_of_range("vertex index out of range");
    }

    friend bool operator==(const PointedMultiDigraph& a, const PointedMultiDigraph& b) {
        return a.n_distinguished == b.n_distinguished && a.adj == b.adj;
    }
    // Orders by distinguished count, then vertex count, then row-major
    // adjacency; this is the enumeration output order.
    friend bool operator<(const PointedMultiDigraph& a, const PointedMultiDigraph& b) {
        if (a.n_distinguished != b.n_distinguished) return a.n_distinguished < b.n_distinguished;
        if (a.size() != b.size()) return a.size() < b.size();
        return a.adj < b.adj;
    }
};

inline std::pair<int, int> degrees(const PointedMultiDigraph& g, int v) {
    return {g.indeg(v), g.outdeg(v)};
}

inline bool vertex_semistable(const PointedMultiDigraph& g, int v) {
    int in = g.indeg(v), out = g.outdeg(v);
    return in >= 1 && out >= 1 && in + out >= 3;
}

inline bool vertex_stable(const PointedMultiDigraph& g, int v) {
    return g.indeg(v) >= 2 && g.outdeg(v) >= 2;
}

enum class StabilityClass { Stable, SemistableNotStable, Unstable };

// Graph-level classification quantifies over ordinary vertices only;
// distinguished vertices are exempt.
inline StabilityClass classify(const PointedMultiDigraph& g) {
    bool all_stable = true;
    for (int v = g.n_distinguished; v < g.size(); ++v) {
        if (!vertex_semistable(g, v)) return StabilityClass::Unstable;
        if (!vertex_stable(g, v)) all_stable = false;
    }
    return all_stable ? StabilityClass::Stable : StabilityClass::SemistableNotStable;
}

inline bool all_ordinary_stable(const PointedMultiDigraph& g) {
    return classify(g) == StabilityClass::Stable;
}
inline bool all_ordinary_semistable(const PointedMultiDigraph& g) {
    return classify(g) != StabilityClass::Unstable;
}

enum class Connectivity { Disconnected, ConnectedNotStrong, StronglyConnected };

inline std::vector<std::vector<int>> weak_components(const PointedMultiDigraph& g) {
    int n = g.size();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (int u = 0; u < n; ++u) {
                if (comp[u] < 0 && (g.adj[v][u] > 0 || g.adj[u][v] > 0)) {
                    comp[u] = id;
                    stack.push_back(u);
                }
            }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

inline bool strongly_connected(const PointedMultiDigraph& g) {
    int n = g.size();
    if (n <= 1) return true;  // empty and single-vertex graphs by convention
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        reach[i][i] = true;
        for (int j = 0; j < n; ++j)
            if (g.adj[i][j] > 0) reach[i][j] = true;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (reach[i][k])
                for (int j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!reach[i][j]) return false;
    return true;
}

inline Connectivity connectivity(const PointedMultiDigraph& g) {
    if (g.size() == 0) return Connectivity::StronglyConnected;
    if (weak_components(g).size() > 1) return Connectivity::Disconnected;
    return strongly_connected(g) ? Connectivity::StronglyConnected
                                 : Connectivity::ConnectedNotStrong;
}

// Full subdigraph on the ordinary vertices of a 1-pointed graph.
inline std::vector<std::vector<int>> minor_matrix(const PointedMultiDigraph& g) {
    if (g.n_distinguished != 1)
        throw std::invalid_argument("minor_matrix requires exactly one distinguished vertex");
    int n = g.n_ordinary();
    std::vector<std::vector<int>> m(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = g.adj[i + 1][j + 1];
    return m;
}

inline PointedMultiDigraph transpose(const PointedMultiDigraph& g) {
    PointedMultiDigraph t = PointedMultiDigraph::empty(g.n_distinguished, g.n_ordinary());
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) t.adj[j][i] = g.adj[i][j];
    return t;
}

// Block union; g1's distinguished block is followed by g2's.
inline PointedMultiDigraph disjoint_union(const PointedMultiDigraph& g1,
                                          const PointedMultiDigraph& g2) {
    int nd = g1.n_distinguished + g2.n_distinguished;
    int n = g1.size() + g2.size();
    PointedMultiDigraph u(nd, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
    auto place = [&](const PointedMultiDigraph& g, int doff, int ooff) {
        auto pos = [&](int v) {
            return g.is_ordinary(v) ? ooff + (v - g.n_distinguished) : doff + v;
        };
        for (int i = 0; i < g.size(); ++i)
            for (int j = 0; j < g.size(); ++j) u.adj[pos(i)][pos(j)] += g.adj[i][j];
    };
    place(g1, 0, nd);
    place(g2, g1.n_distinguished, nd + g1.n_ordinary());
    return u;
}

// Canonical text encoding: "d<k>:" then the row-major adjacency entries.
inline std::string encode(const PointedMultiDigraph& g) {
    std::string s = "d" + std::to_string(g.n_distinguished) + ":";
    bool first = true;
    for (const auto& row : g.adj)
        for (int v : row) {
            if (!first) s += ',';
            s += std::to_string(v);
            first = false;
        }
    return s;
}

inline PointedMultiDigraph decode(const std::string& s) {
    if (s.empty() || s[0] != 'd') throw std::invalid_argument("bad graph encoding");
    auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad graph encoding");
    int nd = std::stoi(s.substr(1, colon - 1));
    std::vector<int> cells;
    std::string body = s.substr(colon + 1);
    if (!body.empty()) {
        size_t pos = 0;
        while (pos <= body.size()) {
            auto next = body.find(',', pos);
            if (next == std::string::npos) next = body.size();
            cells.push_back(std::stoi(body.substr(pos, next - pos)));
            pos = next + 1;
        }
    }
    int n = 0;
    while (n * n < static_cast<int>(cells.size())) ++n;
    if (n * n != static_cast<int>(cells.size()))
        throw std::invalid_argument("encoding is not a square matrix");
    std::vector<std::vector<int>> adj(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) adj[i][j] = cells[i * n + j];
    return PointedMultiDigraph(nd, std::move(adj));
}

}  // namespace bstar
