#pragma once

#include "bstar/rational.hpp"

#include <stdexcept>
#include <vector>

namespace bstar {

// Exact determinant of an integer matrix (Bareiss fraction-free elimination).
inline Int det_exact(std::vector<std::vector<Int>> a) {
    int n = static_cast<int>(a.size());
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("non-square matrix");
    if (n == 0) return 1;  // empty product

    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] /= prev;  // exact by Bareiss
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// det(A - I) for a nonnegative integer matrix A; the 0x0 matrix yields 1.
inline Int det_minus_identity(const std::vector<std::vector<int>>& a) {
    int n = static_cast<int>(a.size());
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(a[i].size()) != n) throw std::invalid_argument("non-square matrix");
        for (int j = 0; j < n; ++j) m[i][j] = Int(a[i][j]) - (i == j ? 1 : 0);
    }
    return det_exact(std::move(m));
}

// Independent oracle for det(A - I) via linear directed subgraphs: the
// characteristic polynomial of the digraph A has coefficients
// c_i = sum over linear subgraphs L on i vertices of (-1)^{p(L)}, where p(L)
// counts components and parallel edges give distinct subgraphs. Then
// det(A - I) = (-1)^n (1 + c_1 + ... + c_n).
inline Int det_oracle(const std::vector<std::vector<int>>& a) {
    int n = static_cast<int>(a.size());
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("non-square matrix");

    Int acc = 1;  // the "1 +" term
    std::vector<int> verts;

    for (int mask = 1; mask < (1 << n); ++mask) {
        verts.clear();
        for (int v = 0; v < n; ++v)
            if (mask & (1 << v)) verts.push_back(v);
        int k = static_cast<int>(verts.size());
        // permutation over verts via successor array
        std::vector<int> succ(k, -1);
        std::vector<bool> taken(k, false);
        auto go = [&](auto&& self, int i) -> void {
            if (i == k) {
                Int prod = 1;
                for (int x = 0; x < k; ++x) {
                    int mult = a[verts[x]][verts[succ[x]]];
                    if (mult == 0) return;
                    prod *= mult;
                }
                // count cycles of succ
                std::vector<bool> seen(k, false);
                int cycles = 0;
                for (int x = 0; x < k; ++x) {
                    if (seen[x]) continue;
                    ++cycles;
                    for (int y = x; !seen[y]; y = succ[y]) seen[y] = true;
                }
                acc += (cycles % 2 == 0 ? prod : -prod);
                return;
            }
            for (int j = 0; j < k; ++j) {
                if (taken[j] || a[verts[i]][verts[j]] == 0) continue;
                succ[i] = j;
                taken[j] = true;
                self(self, i + 1);
                taken[j] = false;
            }
        };
        go(go, 0);
    }
    return (n % 2 == 0) ? acc : -acc;
}

}  // namespace bstar
