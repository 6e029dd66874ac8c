#pragma once

#include "bstar/graph_sum.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bstar {

// Symbolic expansion of curvature expressions into metric-derivative graphs
// at the center of a normal coordinate system.
//
// The partial-derivative level works with monomials in
//   - Phi factors: joint potential derivatives carrying an unbarred and a
//     barred index multiset (g_{i jbar} extended by its derivative string);
//   - Ginv factors: inverse-metric contractions g^{a bbar};
//   - Func factors: partial derivatives of a function slot.
// Every index id occurs exactly once in unbarred role (Phi/Func up, Ginv b)
// and once in barred role (Phi/Func down, Ginv a). At the center a Ginv is
// an identification of ids, a Phi with a single index of each kind is a
// Kronecker delta, and a Phi whose derivative string is purely unbarred or
// purely barred vanishes.

namespace tensor {

struct PhiFactor {
    std::vector<int> up, down;
};
struct GinvFactor {
    int a = 0, b = 0;
};
struct FuncFactor {
    int slot = 0;
    std::vector<int> up, down;
};

struct TMono {
    Rational coeff = 1;
    std::vector<PhiFactor> phis;
    std::vector<GinvFactor> ginvs;
    std::vector<FuncFactor> funcs;
};
using TExpr = std::vector<TMono>;

struct IdGen {
    int next = 0;
    int fresh() { return next++; }
};

inline TExpr differentiate(const TExpr& e, int gamma, bool barred, IdGen& gen) {
    TExpr out;
    for (const auto& m : e) {
        for (size_t i = 0; i < m.phis.size(); ++i) {
            TMono t = m;
            (barred ? t.phis[i].down : t.phis[i].up).push_back(gamma);
            out.push_back(std::move(t));
        }
        for (size_t i = 0; i < m.funcs.size(); ++i) {
            TMono t = m;
            (barred ? t.funcs[i].down : t.funcs[i].up).push_back(gamma);
            out.push_back(std::move(t));
        }
        for (size_t i = 0; i < m.ginvs.size(); ++i) {
            // d g^{a bbar} = -g^{a qbar} g^{p bbar} g_{p qbar (gamma)}
            TMono t = m;
            int a = t.ginvs[i].a, b = t.ginvs[i].b;
            int p = gen.fresh(), q = gen.fresh();
            t.ginvs[i] = {a, q};
            t.ginvs.push_back({p, b});
            PhiFactor phi;
            phi.up = {p};
            phi.down = {q};
            (barred ? phi.down : phi.up).push_back(gamma);
            t.phis.push_back(std::move(phi));
            t.coeff = -t.coeff;
            out.push_back(std::move(t));
        }
    }
    return out;
}

struct TIdx {
    int id = 0;
    bool barred = false;
};
inline TIdx u(int id) { return {id, false}; }
inline TIdx b(int id) { return {id, true}; }

enum class AtomKind { Curv, Ric, Scal, Func };

// A covariant factor: curvature R_{i jbar k lbar}, Ricci R_{i jbar}, scalar
// curvature, or a function slot, with an ordered covariant-derivative
// string. Ids shared across the atoms of a term define the contraction.
struct CovAtom {
    AtomKind kind = AtomKind::Func;
    int slot = 0;
    std::vector<TIdx> base;
    std::vector<TIdx> derivs;
};

inline CovAtom curv(int i, int jb, int k, int lb, std::vector<TIdx> derivs = {}) {
    return {AtomKind::Curv, 0, {u(i), b(jb), u(k), b(lb)}, std::move(derivs)};
}
inline CovAtom ric(int i, int jb, std::vector<TIdx> derivs = {}) {
    return {AtomKind::Ric, 0, {u(i), b(jb)}, std::move(derivs)};
}
inline CovAtom scal(std::vector<TIdx> derivs = {}) {
    return {AtomKind::Scal, 0, {}, std::move(derivs)};
}
inline CovAtom func(int slot, std::vector<TIdx> derivs = {}) {
    return {AtomKind::Func, slot, {}, std::move(derivs)};
}

// R_{i jbar k lbar} = -g_{i jbar k lbar} + g^{m pbar} g_{m jbar lbar} g_{i k pbar}
inline TExpr curvature_base(int i, int jb, int k, int lb, IdGen& gen) {
    TExpr e;
    {
        TMono m;
        m.coeff = -1;
        m.phis.push_back({{i, k}, {jb, lb}});
        e.push_back(std::move(m));
    }
    {
        TMono m;
        int mm = gen.fresh(), p = gen.fresh();
        m.ginvs.push_back({mm, p});
        m.phis.push_back({{mm}, {jb, lb}});
        m.phis.push_back({{i, k}, {p}});
        e.push_back(std::move(m));
    }
    return e;
}

inline TExpr expand_atom(const CovAtom& atom, IdGen& gen) {
    if (atom.derivs.empty()) {
        switch (atom.kind) {
            case AtomKind::Func: {
                TMono m;
                m.funcs.push_back({atom.slot, {}, {}});
                return {std::move(m)};
            }
            case AtomKind::Curv:
                return curvature_base(atom.base[0].id, atom.base[1].id, atom.base[2].id,
                                      atom.base[3].id, gen);
            case AtomKind::Ric: {
                // R_{i jbar} = g^{k lbar} R_{i jbar k lbar}
                int k = gen.fresh(), l = gen.fresh();
                TExpr e = curvature_base(atom.base[0].id, atom.base[1].id, k, l, gen);
                for (auto& m : e) m.ginvs.push_back({k, l});
                return e;
            }
            case AtomKind::Scal: {
                int i = gen.fresh(), j = gen.fresh(), k = gen.fresh(), l = gen.fresh();
                TExpr e = curvature_base(i, j, k, l, gen);
                for (auto& m : e) {
                    m.ginvs.push_back({i, j});
                    m.ginvs.push_back({k, l});
                }
                return e;
            }
        }
    }

    // peel the last covariant derivative: T_{;s, gamma} = d_gamma T_{;s}
    // minus a Christoffel correction for every lower index of T_{;s} with
    // the same bar type as gamma
    CovAtom prev = atom;
    TIdx gamma = prev.derivs.back();
    prev.derivs.pop_back();

    TExpr out = differentiate(expand_atom(prev, gen), gamma.id, gamma.barred, gen);

    std::vector<std::pair<bool, int>> lowers;  // (in_base, position)
    for (size_t i = 0; i < prev.base.size(); ++i)
        if (prev.base[i].barred == gamma.barred) lowers.emplace_back(true, i);
    for (size_t i = 0; i < prev.derivs.size(); ++i)
        if (prev.derivs[i].barred == gamma.barred) lowers.emplace_back(false, i);

    for (auto [in_base, posn] : lowers) {
        int beta = in_base ? prev.base[posn].id : prev.derivs[posn].id;
        int delta = gen.fresh(), e2 = gen.fresh();
        CovAtom repl = prev;
        (in_base ? repl.base[posn].id : repl.derivs[posn].id) = delta;
        TExpr sub = expand_atom(repl, gen);
        for (auto& m : sub) {
            m.coeff = -m.coeff;
            if (!gamma.barred) {
                // Gamma^delta_{gamma beta} = g^{delta ebar} g_{beta ebar gamma}
                m.ginvs.push_back({delta, e2});
                m.phis.push_back({{beta, gamma.id}, {e2}});
            } else {
                // conjugate: g^{l deltabar} g_{l betabar gammabar}
                m.ginvs.push_back({e2, delta});
                m.phis.push_back({{e2}, {beta, gamma.id}});
            }
            out.push_back(std::move(m));
        }
    }
    return out;
}

}  // namespace tensor

// A complete contraction of covariant factors; `terms` are added (bases may
// use small sums as single elements).
struct TensorTerm {
    Rational scale = 1;
    std::vector<tensor::CovAtom> atoms;
};
using TensorExpr = std::vector<TensorTerm>;

namespace tensor {

inline int max_id_in(const TensorExpr& expr) {
    int m = -1;
    for (const auto& t : expr)
        for (const auto& a : t.atoms) {
            for (const auto& x : a.base) m = std::max(m, x.id);
            for (const auto& x : a.derivs) m = std::max(m, x.id);
        }
    return m;
}

// Evaluates a closed monomial at the center and appends the surviving graph.
inline void mono_to_graph(const TMono& mono, int n_slots, const Rational& scale,
                          GraphSum& out) {
    TMono m = mono;

    auto rename = [&](int from, int to) {
        if (from == to) return;
        for (auto& p : m.phis) {
            for (auto& x : p.up)
                if (x == from) x = to;
            for (auto& x : p.down)
                if (x == from) x = to;
        }
        for (auto& f : m.funcs) {
            for (auto& x : f.up)
                if (x == from) x = to;
            for (auto& x : f.down)
                if (x == from) x = to;
        }
        for (auto& g : m.ginvs) {
            if (g.a == from) g.a = to;
            if (g.b == from) g.b = to;
        }
    };

    // inverse metrics become identifications
    while (!m.ginvs.empty()) {
        auto g = m.ginvs.back();
        m.ginvs.pop_back();
        if (g.a == g.b)
            throw std::logic_error("dimension trace in tensor expansion");
        rename(g.b, g.a);
    }

    // Kronecker deltas
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i < m.phis.size(); ++i) {
            if (m.phis[i].up.size() == 1 && m.phis[i].down.size() == 1) {
                int x = m.phis[i].up[0], y = m.phis[i].down[0];
                m.phis.erase(m.phis.begin() + i);
                if (x == y) throw std::logic_error("dimension trace in tensor expansion");
                rename(y, x);
                changed = true;
                break;
            }
        }
    }

    // pure derivative strings vanish at the center
    for (const auto& p : m.phis) {
        if (p.up.empty() || p.down.empty())
            throw std::logic_error("malformed potential factor");
        if (p.up.size() == 1 || p.down.size() == 1) return;
    }

    // assemble the graph: funcs are the distinguished block (by slot),
    // phis the ordinary vertices
    PointedMultiDigraph g = PointedMultiDigraph::empty(n_slots, static_cast<int>(m.phis.size()));
    std::map<int, int> tail, head;  // id -> vertex carrying its unbarred/barred role
    if (static_cast<int>(m.funcs.size()) != n_slots)
        throw std::logic_error("function slot mismatch in tensor expansion");
    std::vector<bool> slot_seen(n_slots, false);
    for (const auto& f : m.funcs) {
        if (f.slot < 0 || f.slot >= n_slots || slot_seen[f.slot])
            throw std::logic_error("function slot mismatch in tensor expansion");
        slot_seen[f.slot] = true;
        for (int x : f.up) tail[x] = f.slot;
        for (int x : f.down) head[x] = f.slot;
    }
    for (size_t i = 0; i < m.phis.size(); ++i) {
        int v = n_slots + static_cast<int>(i);
        for (int x : m.phis[i].up) tail[x] = v;
        for (int x : m.phis[i].down) head[x] = v;
    }
    if (tail.size() != head.size()) throw std::logic_error("unbalanced contraction");
    for (const auto& [id, tv] : tail) {
        auto it = head.find(id);
        if (it == head.end()) throw std::logic_error("dangling index in tensor expansion");
        g.adj[tv][it->second] += 1;
    }
    out.add(g, scale * m.coeff);
}

}  // namespace tensor

// Expands a covariant expression into its metric-derivative graph sum at
// the center of the normal coordinate system.
inline GraphSum expand_to_graphs(const TensorExpr& expr, int n_slots) {
    GraphSum out;
    tensor::IdGen gen{tensor::max_id_in(expr) + 1};
    for (const auto& term : expr) {
        tensor::TExpr prod{tensor::TMono{}};
        for (const auto& atom : term.atoms) {
            tensor::TExpr factor = tensor::expand_atom(atom, gen);
            tensor::TExpr next;
            for (const auto& a : prod) {
                for (const auto& bm : factor) {
                    tensor::TMono m = a;
                    m.coeff *= bm.coeff;
                    m.phis.insert(m.phis.end(), bm.phis.begin(), bm.phis.end());
                    m.ginvs.insert(m.ginvs.end(), bm.ginvs.begin(), bm.ginvs.end());
                    m.funcs.insert(m.funcs.end(), bm.funcs.begin(), bm.funcs.end());
                    next.push_back(std::move(m));
                }
            }
            prod = std::move(next);
        }
        for (const auto& m : prod) tensor::mono_to_graph(m, n_slots, term.scale, out);
    }
    return out;
}

// --- invariant bases ---------------------------------------------------------

struct BasisElement {
    std::string text, latex;
    TensorExpr expr;
};

// The scalar bases used for the low-order invariant forms: weight 3 is the
// nine-element strongly connected basis, weights <= 2 the small bases behind
// the displayed low-order expressions.
inline std::vector<BasisElement> sigma_basis(int k) {
    using namespace tensor;
    std::vector<BasisElement> v;
    auto one = [](Rational s, std::vector<CovAtom> atoms) {
        return TensorExpr{{s, std::move(atoms)}};
    };
    switch (k) {
        case 0:
            v.push_back({"f", "f", one(1, {func(0)})});
            return v;
        case 1:
            v.push_back({"Lap f", "\\Delta f", one(1, {func(0, {u(1), b(1)})})});
            v.push_back({"rho f", "\\rho f", one(1, {scal(), func(0)})});
            return v;
        case 2:
            v.push_back({"Lap^2 f", "\\Delta^2 f",
                         one(1, {func(0, {u(1), b(1), u(2), b(2)})})});
            v.push_back({"L_Ric f", "L_{Ric} f", one(1, {ric(1, 2), func(0, {u(2), b(1)})})});
            v.push_back({"rho Lap f", "\\rho\\Delta f",
                         one(1, {scal(), func(0, {u(1), b(1)})})});
            v.push_back({"(rho_{;kbar} f_{;k} + rho_{;k} f_{;kbar})",
                         "(\\rho_{;\\bar k}f_{;k}+\\rho_{;k}f_{;\\bar k})",
                         {{1, {scal({b(1)}), func(0, {u(1)})}},
                          {1, {scal({u(1)}), func(0, {b(1)})}}}});
            v.push_back({"Lap rho . f", "\\Delta\\rho\\,f",
                         one(1, {scal({u(1), b(1)}), func(0)})});
            v.push_back({"|R|^2 f", "|R|^2 f",
                         one(1, {curv(1, 2, 3, 4), curv(2, 1, 4, 3), func(0)})});
            v.push_back({"|Ric|^2 f", "|Ric|^2 f", one(1, {ric(1, 2), ric(2, 1), func(0)})});
            v.push_back({"rho^2 f", "\\rho^2 f", one(1, {scal(), scal(), func(0)})});
            return v;
        case 3:
            v.push_back({"Lap^3 f", "\\Delta^3 f",
                         one(1, {func(0, {u(1), b(1), u(2), b(2), u(3), b(3)})})});
            v.push_back({"R_{i jbar}(Lap f)_{;j ibar}", "R_{i\\bar j}(\\Delta f)_{;j\\bar i}",
                         one(1, {ric(1, 2), func(0, {u(3), b(3), u(2), b(1)})})});
            v.push_back({"R_{i jbar k lbar} f_{;j ibar l kbar}",
                         "R_{i\\bar jk\\bar l}f_{;j\\bar il\\bar k}",
                         one(1, {curv(1, 2, 3, 4), func(0, {u(2), b(1), u(4), b(3)})})});
            v.push_back({"R_{i jbar;kbar} f_{;j ibar k}", "R_{i\\bar j;\\bar k}f_{;j\\bar ik}",
                         one(1, {ric(1, 2, {b(3)}), func(0, {u(2), b(1), u(3)})})});
            v.push_back({"R_{i jbar;k} f_{;j ibar kbar}", "R_{i\\bar j;k}f_{;j\\bar i\\bar k}",
                         one(1, {ric(1, 2, {u(3)}), func(0, {u(2), b(1), b(3)})})});
            v.push_back({"R_{i jbar k lbar} R_{j ibar m kbar} f_{;l mbar}",
                         "R_{i\\bar jk\\bar l}R_{j\\bar im\\bar k}f_{;l\\bar m}",
                         one(1, {curv(1, 2, 3, 4), curv(2, 1, 5, 3), func(0, {u(4), b(5)})})});
            v.push_back({"R_{i jbar k lbar} R_{j ibar} f_{;l kbar}",
                         "R_{i\\bar jk\\bar l}R_{j\\bar i}f_{;l\\bar k}",
                         one(1, {curv(1, 2, 3, 4), ric(2, 1), func(0, {u(4), b(3)})})});
            v.push_back({"rho_{;i jbar} f_{;j ibar}", "\\rho_{;i\\bar j}f_{;j\\bar i}",
                         one(1, {scal({u(1), b(2)}), func(0, {u(2), b(1)})})});
            v.push_back({"R_{i jbar} R_{k ibar} f_{;j kbar}",
                         "R_{i\\bar j}R_{k\\bar i}f_{;j\\bar k}",
                         one(1, {ric(1, 2), ric(3, 1), func(0, {u(2), b(3)})})});
            return v;
    }
    throw std::out_of_range("invariant basis implemented for weights 0..3 only");
}

// Bilinear bases for the product coefficients; `bt` selects the orientation
// with the holomorphic and antiholomorphic roles swapped.
inline std::vector<BasisElement> bilinear_basis(int k, bool bt) {
    using namespace tensor;
    std::vector<BasisElement> v;
    auto one = [](std::vector<CovAtom> atoms) {
        return TensorExpr{{1, std::move(atoms)}};
    };
    auto F1 = [&](std::vector<TIdx> s) { return func(0, std::move(s)); };
    auto F2 = [&](std::vector<TIdx> s) { return func(1, std::move(s)); };
    if (k == 0) {
        v.push_back({"f1 f2", "f1 f2", one({F1({}), F2({})})});
        return v;
    }
    if (!bt) {
        switch (k) {
            case 1:
                v.push_back({"f1_{;ibar} f2_{;i}", "f1_{;\\bar i} f2_{;i}",
                             one({F1({b(1)}), F2({u(1)})})});
                return v;
            case 2:
                v.push_back({"f1_{;ibar jbar} f2_{;ij}", "f1_{;\\bar i\\bar j}f2_{;ij}",
                             one({F1({b(1), b(2)}), F2({u(1), u(2)})})});
                v.push_back({"R_{i jbar} f1_{;ibar} f2_{;j}", "R_{i\\bar j}f1_{;\\bar i}f2_{;j}",
                             one({ric(1, 2), F1({b(1)}), F2({u(2)})})});
                return v;
            case 3:
                v.push_back({"f1_{;ibar jbar kbar} f2_{;ijk}",
                             "f1_{;\\bar i\\bar j\\bar k}f2_{;ijk}",
                             one({F1({b(1), b(2), b(3)}), F2({u(1), u(2), u(3)})})});
                v.push_back({"R_{i jbar} f1_{;kbar ibar} f2_{;kj}",
                             "R_{i\\bar j}f1_{;\\bar k\\bar i}f2_{;kj}",
                             one({ric(1, 2), F1({b(3), b(1)}), F2({u(3), u(2)})})});
                v.push_back({"R_{i jbar k lbar} f1_{;ibar kbar} f2_{;jl}",
                             "R_{i\\bar jk\\bar l}f1_{;\\bar i\\bar k}f2_{;jl}",
                             one({curv(1, 2, 3, 4), F1({b(1), b(3)}), F2({u(2), u(4)})})});
                v.push_back({"R_{i jbar;kbar} f1_{;ibar} f2_{;jk}",
                             "R_{i\\bar j;\\bar k}f1_{;\\bar i}f2_{;jk}",
                             one({ric(1, 2, {b(3)}), F1({b(1)}), F2({u(2), u(3)})})});
                v.push_back({"R_{i jbar;k} f1_{;ibar kbar} f2_{;j}",
                             "R_{i\\bar j;k}f1_{;\\bar i\\bar k}f2_{;j}",
                             one({ric(1, 2, {u(3)}), F1({b(1), b(3)}), F2({u(2)})})});
                v.push_back({"R_{i jbar k lbar} R_{j ibar m kbar} f1_{;mbar} f2_{;l}",
                             "R_{i\\bar jk\\bar l}R_{j\\bar im\\bar k}f1_{;\\bar m}f2_{;l}",
                             one({curv(1, 2, 3, 4), curv(2, 1, 5, 3), F1({b(5)}), F2({u(4)})})});
                v.push_back({"R_{i jbar k lbar} R_{j ibar} f1_{;kbar} f2_{;l}",
                             "R_{i\\bar jk\\bar l}R_{j\\bar i}f1_{;\\bar k}f2_{;l}",
                             one({curv(1, 2, 3, 4), ric(2, 1), F1({b(3)}), F2({u(4)})})});
                v.push_back({"rho_{;i jbar} f1_{;ibar} f2_{;j}",
                             "\\rho_{;i\\bar j}f1_{;\\bar i}f2_{;j}",
                             one({scal({u(1), b(2)}), F1({b(1)}), F2({u(2)})})});
                v.push_back({"R_{i jbar} R_{k ibar} f1_{;kbar} f2_{;j}",
                             "R_{i\\bar j}R_{k\\bar i}f1_{;\\bar k}f2_{;j}",
                             one({ric(1, 2), ric(3, 1), F1({b(3)}), F2({u(2)})})});
                return v;
        }
    } else {
        switch (k) {
            case 1:
                v.push_back({"f1_{;i} f2_{;ibar}", "f1_{;i} f2_{;\\bar i}",
                             one({F1({u(1)}), F2({b(1)})})});
                return v;
            case 2:
                v.push_back({"f1_{;ij} f2_{;ibar jbar}", "f1_{;ij}f2_{;\\bar i\\bar j}",
                             one({F1({u(1), u(2)}), F2({b(1), b(2)})})});
                v.push_back({"R_{i jbar} f1_{;j} f2_{;ibar}", "R_{i\\bar j}f1_{;j}f2_{;\\bar i}",
                             one({ric(1, 2), F1({u(2)}), F2({b(1)})})});
                return v;
            case 3:
                v.push_back({"f1_{;ijk} f2_{;ibar jbar kbar}",
                             "f1_{;ijk}f2_{;\\bar i\\bar j\\bar k}",
                             one({F1({u(1), u(2), u(3)}), F2({b(1), b(2), b(3)})})});
                v.push_back({"R_{i jbar} f1_{;jk} f2_{;ibar kbar}",
                             "R_{i\\bar j}f1_{;jk}f2_{;\\bar i\\bar k}",
                             one({ric(1, 2), F1({u(2), u(3)}), F2({b(1), b(3)})})});
                v.push_back({"R_{i jbar k lbar} f1_{;jl} f2_{;ibar kbar}",
                             "R_{i\\bar jk\\bar l}f1_{;jl}f2_{;\\bar i\\bar k}",
                             one({curv(1, 2, 3, 4), F1({u(2), u(4)}), F2({b(1), b(3)})})});
                v.push_back({"R_{i jbar;kbar} f1_{;jk} f2_{;ibar}",
                             "R_{i\\bar j;\\bar k}f1_{;jk}f2_{;\\bar i}",
                             one({ric(1, 2, {b(3)}), F1({u(2), u(3)}), F2({b(1)})})});
                v.push_back({"R_{i jbar;k} f1_{;j} f2_{;ibar kbar}",
                             "R_{i\\bar j;k}f1_{;j}f2_{;\\bar i\\bar k}",
                             one({ric(1, 2, {u(3)}), F1({u(2)}), F2({b(1), b(3)})})});
                v.push_back({"R_{i jbar k lbar} R_{j ibar m kbar} f1_{;l} f2_{;mbar}",
                             "R_{i\\bar jk\\bar l}R_{j\\bar im\\bar k}f1_{;l}f2_{;\\bar m}",
                             one({curv(1, 2, 3, 4), curv(2, 1, 5, 3), F1({u(4)}), F2({b(5)})})});
                v.push_back({"R_{i jbar k lbar} R_{j ibar} f1_{;l} f2_{;kbar}",
                             "R_{i\\bar jk\\bar l}R_{j\\bar i}f1_{;l}f2_{;\\bar k}",
                             one({curv(1, 2, 3, 4), ric(2, 1), F1({u(4)}), F2({b(3)})})});
                v.push_back({"rho_{;i jbar} f1_{;j} f2_{;ibar}",
                             "\\rho_{;i\\bar j}f1_{;j}f2_{;\\bar i}",
                             one({scal({u(1), b(2)}), F1({u(2)}), F2({b(1)})})});
                v.push_back({"R_{i jbar} R_{k ibar} f1_{;j} f2_{;kbar}",
                             "R_{i\\bar j}R_{k\\bar i}f1_{;j}f2_{;\\bar k}",
                             one({ric(1, 2), ric(3, 1), F1({u(2)}), F2({b(3)})})});
                return v;
        }
    }
    throw std::out_of_range("bilinear basis implemented for weights 0..3 only");
}

// --- exact linear solve ------------------------------------------------------

// Coordinates of `target` in the given basis expansions. Throws domain_error
// when the basis is degenerate or the target lies outside its span.
inline std::vector<Rational> solve_in_basis(const std::vector<GraphSum>& basis,
                                            const GraphSum& target) {
    std::vector<PointedMultiDigraph> graphs;
    auto collect = [&](const GraphSum& s) {
        for (const auto& [g, c] : s.terms()) {
            (void)c;
            if (std::find(graphs.begin(), graphs.end(), g) == graphs.end())
                graphs.push_back(g);
        }
    };
    for (const auto& bexp : basis) collect(bexp);
    collect(target);
    std::sort(graphs.begin(), graphs.end());

    int rows = static_cast<int>(graphs.size());
    int cols = static_cast<int>(basis.size());
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1, 0));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) a[r][c] = basis[c].coefficient(graphs[r]);
        a[r][cols] = target.coefficient(graphs[r]);
    }

    std::vector<int> pivot_row(cols, -1);
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][c] != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(a[rank], a[p]);
        Rational inv = a[rank][c];
        for (int j = c; j <= cols; ++j) a[rank][j] /= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (int j = c; j <= cols; ++j) a[r][j] -= f * a[rank][j];
        }
        pivot_row[c] = rank;
        ++rank;
    }
    for (int c = 0; c < cols; ++c)
        if (pivot_row[c] < 0) throw std::domain_error("singular or insufficient basis");
    for (int r = rank; r < rows; ++r)
        if (a[r][cols] != 0) throw std::domain_error("expression outside the basis span");

    std::vector<Rational> x(cols, 0);
    for (int c = 0; c < cols; ++c) x[c] = a[pivot_row[c]][cols];
    return x;
}

inline std::vector<Rational> to_invariant_basis(const GraphSum& s, int k) {
    auto basis = sigma_basis(k);
    std::vector<GraphSum> expansions;
    for (const auto& el : basis) expansions.push_back(expand_to_graphs(el.expr, 1));
    return solve_in_basis(expansions, s);
}

// --- rendering ---------------------------------------------------------------

enum class RenderFormat { Text, Latex };

inline std::string render_combination(const std::vector<Rational>& coeffs,
                                      const std::vector<BasisElement>& basis,
                                      RenderFormat fmt) {
    std::string out;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        const Rational& c = coeffs[i];
        if (c == 0) continue;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (mag != 1) out += to_string(mag) + (fmt == RenderFormat::Latex ? " " : "*");
        out += fmt == RenderFormat::Latex ? basis[i].latex : basis[i].text;
    }
    if (out.empty()) out = "0";
    return out;
}

}  // namespace bstar
