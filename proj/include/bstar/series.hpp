#pragma once

#include "bstar/coeff.hpp"
#include "bstar/enumerate.hpp"
#include "bstar/graph_sum.hpp"
#include "bstar/substitute.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bstar {

constexpr int kMaxStarWeight = 5;
constexpr int kMaxComposeWeight = 4;

// C_k as a 1-pointed sum over the strongly connected stable graphs; only
// the lambda-class members carry nonzero coefficients.
inline GraphSum star_coefficient(int k, int jobs = 1) {
    if (k < 0 || k > kMaxStarWeight) throw std::out_of_range("star order out of range (0..5)");
    GraphSum s;
    for (const auto& g : enum_class(k, GraphClass::StronglyConnected, jobs))
        s.add_canonical(g, q_coeff(g));
    return s;
}

// The same coefficient functional evaluated over the full semistable
// strongly connected family. These are the carrier sums for operator
// composition: the semistable terms vanish at the center but their
// derivatives do not, so they matter whenever another operator acts on the
// sum. Internal to the series calculus.
inline GraphSum star_coefficient_semistable(int k) {
    GraphSum s;
    for (const auto& g : detail::enum_pointed_semistable_scon(k)) {
        // the closed coefficient formula, ungated (the family is already
        // strongly connected)
        s.add_canonical(g, Rational(det_minus_identity(minor_matrix(g)), aut_order(g)));
    }
    return s;
}

// The transform series: term k is the full semistable coefficient sum.
inline OperatorSeries berezin_series(int order) {
    if (order < 0 || order > kMaxComposeWeight)
        throw std::out_of_range("series order out of range (0..4)");
    OperatorSeries s;
    s.terms.resize(order + 1);
    for (int k = 0; k <= order; ++k) s.terms[k] = star_coefficient_semistable(k);
    return s;
}

// Operator composition (outer applied to the output of inner): the outer
// slot's legs distribute over the inner graphs' vertices and edges. Only
// the stable part of the result is retained; host terms with non-stable
// ordinary vertices cannot reach it and are skipped.
inline GraphSum compose_operators(const GraphSum& outer, const GraphSum& inner) {
    if (inner.zero()) return {};
    return substitute_sum(outer, 0, inner, {/*attack_edges=*/true, Keep::Stable});
}

// Order-by-order inverse of a series with identity constant term.
// P_k = -sum_{a<k} P_a o S_{k-a}. The inverse's terms are stable sums: a
// semistable term of P would only ever sit in outer position, where its
// vanishing vertex factors keep it from contributing.
inline OperatorSeries invert_series(const OperatorSeries& s) {
    if (!s.starts_with_identity())
        throw std::invalid_argument("invert_series requires the identity at order 0");
    OperatorSeries p;
    int n = static_cast<int>(s.terms.size());
    p.terms.resize(n);
    p.terms[0] = s.terms[0];
    for (int k = 1; k < n; ++k) {
        GraphSum acc;
        for (int a = 0; a < k; ++a) {
            if (s.terms[k - a].zero()) continue;
            acc += compose_operators(p.terms[a], s.terms[k - a]);
        }
        p.terms[k] = GraphSum() - acc;
    }
    return p;
}

// Stable part of (P o S)_k for each k; the identity check for invert_series.
inline std::vector<GraphSum> compose_series_stable(const OperatorSeries& p,
                                                   const OperatorSeries& s) {
    int n = static_cast<int>(std::min(p.terms.size(), s.terms.size()));
    std::vector<GraphSum> out(n);
    for (int k = 0; k < n; ++k) {
        GraphSum acc;
        for (int a = 0; a <= k; ++a) {
            if (s.terms[k - a].zero() || p.terms[a].zero()) continue;
            acc += compose_operators(p.terms[a], s.terms[k - a]);
        }
        out[k] = acc;
    }
    return out;
}

// --- associativity ----------------------------------------------------------

enum class ComposeSide { Left, Right };

// One association of two 1-pointed coefficient sums as a 3-pointed sum:
// Right is outer(f1, inner(f2, f3)) (the split inner block replaces the
// outer out-slot), Left is outer(inner(f1, f2), f3). The operand slots see
// legs of a single derivative type, so vertex attachment is exact; only
// stable terms survive the final evaluation.
inline GraphSum compose_bilinear(const GraphSum& outer, const GraphSum& inner,
                                 ComposeSide side, OrbitStats* orbit = nullptr) {
    SubstituteOptions opts{/*attack_edges=*/false, Keep::Stable};
    auto souter = partition_split(outer);
    auto sinner = partition_split(inner);
    return substitute_sum(souter, side == ComposeSide::Right ? 1 : 0, sinner, opts, orbit);
}

struct AssocResult {
    bool pass = false;
    GraphSum left, right, diff;  // 3-pointed stable sums
    OrbitStats orbit;
};

// Both associations of sum_j C_j C_{k-j} as 3-pointed stable sums. The
// carrier sums must include the semistable terms, which outer legs can
// promote to stable.
inline AssocResult assoc_check(int k) {
    if (k < 0 || k > kMaxComposeWeight)
        throw std::out_of_range("associativity order out of range (0..4)");
    std::vector<GraphSum> c(k + 1);
    for (int j = 0; j <= k; ++j) c[j] = star_coefficient_semistable(j);

    AssocResult res;
    for (int j = 0; j <= k; ++j) {
        res.left += compose_bilinear(c[j], c[k - j], ComposeSide::Right, &res.orbit);
        res.right += compose_bilinear(c[k - j], c[j], ComposeSide::Left, &res.orbit);
    }
    res.diff = res.left - res.right;
    res.pass = res.diff.zero();
    return res;
}

// --- Berezin-Toeplitz product ------------------------------------------------

struct BtResult {
    GraphSum two_pointed;                  // stable, slots (f1, f2)
    std::optional<GraphSum> fused;         // present when every term is a split image
    OrbitStats orbit;
};

// C^BT_k from the transform series: apply the inverse series to the
// 2-pointed assembly sum_{b+c+d=m} C_b(S_c f1, S_d f2). The assembly keeps
// its semistable terms (the outer inverse-series legs act on them); the
// final application evaluates at the center.
inline BtResult bt_coefficients(int k) {
    if (k < 0 || k > kMaxComposeWeight)
        throw std::out_of_range("product order out of range (0..4)");
    auto s = berezin_series(k);
    auto p = invert_series(s);

    BtResult res;
    std::vector<GraphSum> assembled(k + 1);  // (I f1 * I f2) by total order
    SubstituteOptions keep_ss{/*attack_edges=*/true, Keep::Semistable};
    for (int m = 0; m <= k; ++m) {
        GraphSum acc;
        for (int b = 0; b <= m; ++b) {
            auto splitb = partition_split(s.terms[b]);
            for (int c = 0; c + b <= m; ++c) {
                int d = m - b - c;
                for (const auto& [host, hc] : splitb.terms()) {
                    for (const auto& [h1, c1] : s.terms[c].terms()) {
                        for (const auto& [h2, c2] : s.terms[d].terms()) {
                            auto raw = detail::substitute_general(
                                host, {{0, &h1, {}}, {1, &h2, {}}}, keep_ss);
                            res.orbit.check(host, {&h1, &h2}, raw.vertex_only);
                            detail::fold_raw(acc, raw, hc * c1 * c2, Keep::Semistable);
                        }
                    }
                }
            }
        }
        assembled[m] = acc;
    }

    GraphSum total;
    SubstituteOptions final_opts{/*attack_edges=*/true, Keep::Stable};
    for (int a = 0; a <= k; ++a) {
        if (assembled[k - a].zero() || p.terms[a].zero()) continue;
        total += substitute_sum(p.terms[a], 0, assembled[k - a], final_opts);
    }
    res.two_pointed = total;

    GraphSum fused;
    bool fusable = true;
    for (const auto& [g, c] : total.terms()) {
        auto f = fuse_split(g);
        if (!f) {
            fusable = false;
            break;
        }
        fused.add(*f, c);
    }
    if (fusable && !total.zero()) res.fused = fused;
    return res;
}

// --- kernel-coefficient recursion -------------------------------------------

enum class LoiStatus { Pass, Fail, Inconclusive };

struct LoiResult {
    LoiStatus status = LoiStatus::Inconclusive;
    // per-orientation agreement at each weight 1..k
    std::vector<std::array<bool, 2>> agree;
    GraphSum diff;  // difference of the first failing orientation at weight k
    std::string note;
};

// z extended to the semistable all-components-strongly-connected family
// (same closed formula; the gate is built into the enumeration).
inline Rational z_coeff_semistable(const PointedMultiDigraph& g) {
    auto comps = weak_components(g);
    int n = static_cast<int>(comps.size());
    Int d = det_minus_identity(g.adj);
    return Rational(n % 2 == 0 ? d : -d, aut_order(g));
}

// Recomputes the weight-k kernel coefficients from the recursion
//   B_k = - sum_{i+j=k, i,j>=1} B_i B_j - sum_{l+i+j=k, l>=1} R_l(B_i, B_j)
// at graph level, with the slot's outward legs attaching to one factor and
// the inward legs to the other, and compares against the closed formula on
// the stable weight-k graphs. Both leg orientations are evaluated; they must
// agree at weights <= 2 before the orientation is trusted at k.
inline LoiResult loi_recursion_check(int k) {
    if (k < 0 || k > 3) throw std::out_of_range("recursion check order out of range (0..3)");
    LoiResult res;

    // stable targets per weight
    auto target_at = [&](int w) {
        GraphSum t;
        for (const auto& g : enum_plain_stable(w)) t.add_canonical(g, z_coeff(g));
        return t;
    };

    std::vector<GraphSum> b(std::max(k, 1));  // kernel sums B_0..B_{k-1}
    for (int i = 0; i < k; ++i) {
        GraphSum s;
        for (const auto& g : detail::enum_plain_semistable_scon_parts(i))
            s.add_canonical(g, z_coeff_semistable(g));
        b[i] = s;
    }

    auto rhs_at = [&](int w, bool flipped) {
        GraphSum rhs;
        // product part
        for (int i = 1; i < w; ++i) {
            int j = w - i;
            for (const auto& [ga, ca] : b[i].terms())
                for (const auto& [gb, cb] : b[j].terms())
                    rhs.add(disjoint_union(ga, gb), -(ca * cb));
        }
        // operator part
        for (int l = 1; l <= w; ++l) {
            for (const auto& gamma : enum_pointed_stable(l)) {
                Rational rg = r_coeff(gamma);
                if (rg == 0) continue;
                for (int i = 0; i + l <= w; ++i) {
                    int j = w - l - i;
                    for (const auto& [gm, cm] : b[i].terms()) {      // sink factor
                        for (const auto& [gp, cp] : b[j].terms()) {  // source factor
                            auto h = disjoint_union(gm, gp);
                            // direction mask: sink vertices take inward legs,
                            // source vertices outward legs
                            std::vector<int> part(h.size(), 0);
                            for (int v = 0; v < gm.size(); ++v) part[v] = flipped ? 2 : 1;
                            for (int v = 0; v < gp.size(); ++v)
                                part[gm.size() + v] = flipped ? 1 : 2;
                            auto raw = detail::substitute_general(
                                gamma, {{0, &h, part}}, {/*attack_edges=*/false, Keep::Stable});
                            GraphSum piece;
                            detail::fold_raw(piece, raw, rg * cm * cp, Keep::Stable);
                            rhs -= piece;
                        }
                    }
                }
            }
        }
        return rhs.stable_part();
    };

    bool orient_ok[2] = {true, true};
    res.agree.resize(k);
    for (int w = 1; w <= k; ++w) {
        auto target = target_at(w);
        for (int o = 0; o < 2; ++o) {
            auto rhs = rhs_at(w, o == 1);
            bool same = rhs == target;
            res.agree[w - 1][o] = same;
            if (!same) {
                orient_ok[o] = false;
                if (res.diff.zero()) res.diff = rhs - target;
            }
        }
    }

    int calib = std::min(k, 2);
    bool cal0 = true, cal1 = true;
    for (int w = 1; w <= calib; ++w) {
        cal0 = cal0 && res.agree[w - 1][0];
        cal1 = cal1 && res.agree[w - 1][1];
    }
    if (!cal0 && !cal1) {
        res.status = LoiStatus::Inconclusive;
        res.note = "no leg orientation reproduces the low-weight coefficients";
    } else if ((cal0 && orient_ok[0]) || (cal1 && orient_ok[1])) {
        res.status = LoiStatus::Pass;
        res.note = cal0 && cal1 ? "both leg orientations agree" : "one orientation calibrated";
    } else {
        res.status = LoiStatus::Fail;
        res.note = "calibrated orientation fails at the requested weight";
    }
    return res;
}

// Every strongly connected support graph of C_k (k >= 1) touches the
// distinguished vertex in both directions; uses the stable table.
inline bool separation_of_variables_holds(int k) {
    auto ck = star_coefficient(k);
    for (const auto& [g, c] : ck.terms()) {
        (void)c;
        if (k >= 1 && (g.indeg(0) < 1 || g.outdeg(0) < 1)) return false;
    }
    return true;
}

}  // namespace bstar
