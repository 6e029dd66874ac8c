#pragma once

#include "bstar/canonical.hpp"
#include "bstar/graph.hpp"
#include "bstar/rational.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace bstar {

// Finite formal linear combination of canonical graphs with exact rational
// coefficients. Zero coefficients are never stored; all members share one
// distinguished-vertex count.
class GraphSum {
  public:
    using Terms = std::map<PointedMultiDigraph, Rational>;

    GraphSum() = default;

    static GraphSum single(const PointedMultiDigraph& g, const Rational& c = 1) {
        GraphSum s;
        s.add(g, c);
        return s;
    }

    const Terms& terms() const { return terms_; }
    bool zero() const { return terms_.empty(); }
    size_t support_size() const { return terms_.size(); }

    // Adds c * canonicalize(g).
    void add(const PointedMultiDigraph& g, const Rational& c) {
        if (c == 0) return;
        add_canonical(canonicalize(g), c);
    }

    void add_canonical(const PointedMultiDigraph& g, const Rational& c) {
        if (c == 0) return;
        if (!terms_.empty() && terms_.begin()->first.n_distinguished != g.n_distinguished)
            throw std::invalid_argument("mixed distinguished counts in a GraphSum");
        auto it = terms_.find(g);
        if (it == terms_.end()) {
            terms_.emplace(g, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    GraphSum& operator+=(const GraphSum& o) {
        for (const auto& [g, c] : o.terms_) add_canonical(g, c);
        return *this;
    }
    GraphSum& operator-=(const GraphSum& o) {
        for (const auto& [g, c] : o.terms_) add_canonical(g, -c);
        return *this;
    }
    GraphSum& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [g, v] : terms_) v *= c;
        return *this;
    }

    friend GraphSum operator+(GraphSum a, const GraphSum& b) { return a += b; }
    friend GraphSum operator-(GraphSum a, const GraphSum& b) { return a -= b; }
    friend GraphSum operator*(GraphSum a, const Rational& c) { return a *= c; }
    friend GraphSum operator*(const Rational& c, GraphSum a) { return a *= c; }
    friend bool operator==(const GraphSum& a, const GraphSum& b) {
        return a.terms_ == b.terms_;
    }

    Rational coefficient(const PointedMultiDigraph& g) const {
        auto it = terms_.find(canonicalize(g));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Terms whose ordinary vertices are all stable: the part that survives
    // evaluation at the center of the normal coordinate system.
    GraphSum stable_part() const {
        GraphSum s;
        for (const auto& [g, c] : terms_)
            if (all_ordinary_stable(g)) s.add_canonical(g, c);
        return s;
    }

    int n_distinguished() const {
        return terms_.empty() ? -1 : terms_.begin()->first.n_distinguished;
    }

  private:
    Terms terms_;
};

// Formal power series in h of 1-pointed graph sums; terms[k] has uniform
// weight k.
struct OperatorSeries {
    std::vector<GraphSum> terms;

    int order() const { return static_cast<int>(terms.size()) - 1; }

    static OperatorSeries identity(int order) {
        OperatorSeries s;
        s.terms.resize(order + 1);
        s.terms[0] = GraphSum::single(PointedMultiDigraph::empty(1, 0));
        return s;
    }

    bool starts_with_identity() const {
        return !terms.empty() &&
               terms[0] == GraphSum::single(PointedMultiDigraph::empty(1, 0));
    }
};

}  // namespace bstar
