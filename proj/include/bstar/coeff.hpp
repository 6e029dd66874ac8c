#pragma once

#include "bstar/canonical.hpp"
#include "bstar/det.hpp"
#include "bstar/enumerate.hpp"
#include "bstar/graph.hpp"
#include "bstar/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace bstar {

enum class CoeffKind { Q, R, z, r, Qf, Rf, zf, rf };

inline bool kind_is_pointed(CoeffKind k) {
    return k == CoeffKind::Q || k == CoeffKind::R || k == CoeffKind::Qf || k == CoeffKind::Rf;
}

inline std::string kind_name(CoeffKind k) {
    switch (k) {
        case CoeffKind::Q: return "Q";
        case CoeffKind::R: return "R";
        case CoeffKind::z: return "z";
        case CoeffKind::r: return "r";
        case CoeffKind::Qf: return "Qf";
        case CoeffKind::Rf: return "Rf";
        case CoeffKind::zf: return "zf";
        case CoeffKind::rf: return "rf";
    }
    return "?";
}

// One evaluator for the whole coefficient family. Each kind is a
// (numerator, sign rule, connectivity gate) triple over the same |Aut|
// denominator:
//   R: det(A(G_-)-I)            ungated            (1-pointed)
//   Q: same                     strongly connected (1-pointed)
//   r: det(A(G)-I)              ungated            (0-pointed)
//   z: (-1)^n det(A(G)-I)       all components strongly connected
//   Rf: (-1)^|V|                ungated            (1-pointed)
//   Qf: (-1)^|V|                strongly connected
//   rf: (-1)^|V|                ungated            (0-pointed)
//   zf: (-1)^{|V|+n}            all components strongly connected
inline Rational coefficient(const PointedMultiDigraph& g, CoeffKind kind) {
    bool pointed = kind_is_pointed(kind);
    if (pointed && g.n_distinguished != 1)
        throw std::invalid_argument("coefficient kind requires a 1-pointed graph");
    if (!pointed && g.n_distinguished != 0)
        throw std::invalid_argument("coefficient kind requires a 0-pointed graph");

    int nv = g.n_ordinary();
    auto aut = aut_order(g);

    auto scon_gate = [&]() { return connectivity(g) == Connectivity::StronglyConnected; };
    auto comps_scon = [&](int& ncomp) {
        auto comps = weak_components(g);
        ncomp = static_cast<int>(comps.size());
        for (const auto& comp : comps) {
            PointedMultiDigraph sub = PointedMultiDigraph::empty(0, static_cast<int>(comp.size()));
            for (size_t i = 0; i < comp.size(); ++i)
                for (size_t j = 0; j < comp.size(); ++j) sub.adj[i][j] = g.adj[comp[i]][comp[j]];
            if (!strongly_connected(sub)) return false;
        }
        return true;
    };

    switch (kind) {
        case CoeffKind::R:
            return Rational(det_minus_identity(minor_matrix(g)), aut);
        case CoeffKind::Q:
            if (!scon_gate()) return 0;
            return Rational(det_minus_identity(minor_matrix(g)), aut);
        case CoeffKind::r:
            return Rational(det_minus_identity(g.adj), aut);
        case CoeffKind::z: {
            int n = 0;
            if (!comps_scon(n)) return 0;
            Int d = det_minus_identity(g.adj);
            return Rational(n % 2 == 0 ? d : -d, aut);
        }
        case CoeffKind::Rf:
            return Rational(nv % 2 == 0 ? 1 : -1, aut);
        case CoeffKind::Qf:
            if (!scon_gate()) return 0;
            return Rational(nv % 2 == 0 ? 1 : -1, aut);
        case CoeffKind::rf:
            return Rational(nv % 2 == 0 ? 1 : -1, aut);
        case CoeffKind::zf: {
            int n = 0;
            if (!comps_scon(n)) return 0;
            return Rational((nv + n) % 2 == 0 ? 1 : -1, aut);
        }
    }
    throw std::logic_error("unreachable");
}

inline Rational q_coeff(const PointedMultiDigraph& g) { return coefficient(g, CoeffKind::Q); }
inline Rational r_coeff(const PointedMultiDigraph& g) { return coefficient(g, CoeffKind::R); }
inline Rational z_coeff(const PointedMultiDigraph& g) { return coefficient(g, CoeffKind::z); }

struct CoefficientTable {
    int weight = 0;
    CoeffKind kind = CoeffKind::Q;
    std::vector<std::pair<PointedMultiDigraph, Rational>> rows;  // canonical, sorted
};

// Table over the enumerated family of the kind's pointedness. Pointed kinds
// range over the 1-pointed stable graphs, scalar kinds over the 0-pointed
// ones (r_0 = rf_0 = 1 on the empty graph falls out of the formulas).
inline CoefficientTable coefficient_table(int k, CoeffKind kind, int jobs = 1) {
    CoefficientTable t;
    t.weight = k;
    t.kind = kind;
    auto graphs = kind_is_pointed(kind) ? enum_pointed_stable(k, jobs) : enum_plain_stable(k, jobs);
    for (const auto& g : graphs) t.rows.emplace_back(g, coefficient(g, kind));
    return t;
}

inline CoefficientTable scalar_table(int k, CoeffKind kind, int jobs = 1) {
    if (kind != CoeffKind::r && kind != CoeffKind::rf)
        throw std::invalid_argument("scalar_table expects kind r or rf");
    return coefficient_table(k, kind, jobs);
}

}  // namespace bstar
