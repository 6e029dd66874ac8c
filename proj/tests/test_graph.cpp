#include <catch2/catch_amalgamated.hpp>

#include "bstar/graph.hpp"

using namespace bstar;

namespace {

PointedMultiDigraph from_rows(int nd, std::vector<std::vector<int>> rows) {
    return PointedMultiDigraph(nd, std::move(rows));
}

// distinguished vertex with k loops
PointedMultiDigraph f_loops(int k) {
    auto g = PointedMultiDigraph::empty(1, 0);
    g.adj[0][0] = k;
    return g;
}

}  // namespace

TEST_CASE("degrees") {
    SECTION("loops count both ways") {
        auto g = f_loops(3);
        REQUIRE(degrees(g, 0) == std::pair<int, int>{3, 3});
    }
    SECTION("edgeless vertex") {
        auto g = PointedMultiDigraph::empty(1, 0);
        REQUIRE(degrees(g, 0) == std::pair<int, int>{0, 0});
    }
    SECTION("direct sums") {
        auto g = from_rows(0, {{0, 2}, {1, 0}});
        REQUIRE(degrees(g, 0) == std::pair<int, int>{1, 2});
    }
    SECTION("out of range") {
        auto g = f_loops(1);
        REQUIRE_THROWS_AS(degrees(g, 5), std::out_of_range);
    }
}

TEST_CASE("classify") {
    SECTION("no ordinary vertices is vacuously stable") {
        REQUIRE(classify(f_loops(4)) == StabilityClass::Stable);
    }
    SECTION("indeg=outdeg=2 is stable") {
        // ordinary vertex with 2 loops, isolated f
        auto g = from_rows(1, {{0, 0}, {0, 2}});
        REQUIRE(classify(g) == StabilityClass::Stable);
        REQUIRE(vertex_stable(g, 1));
    }
    SECTION("indeg=1 outdeg=2 is semistable only") {
        // v -> f twice, f -> v once
        auto g = from_rows(1, {{0, 1}, {2, 0}});
        REQUIRE(classify(g) == StabilityClass::SemistableNotStable);
        REQUIRE(vertex_semistable(g, 1));
        REQUIRE_FALSE(vertex_stable(g, 1));
    }
    SECTION("isolated ordinary vertex is unstable") {
        auto g = from_rows(1, {{0, 0}, {0, 0}});
        REQUIRE(classify(g) == StabilityClass::Unstable);
    }
}

TEST_CASE("connectivity") {
    SECTION("single vertex with loop is strongly connected") {
        REQUIRE(connectivity(f_loops(1)) == Connectivity::StronglyConnected);
    }
    SECTION("isolated f plus 2-loop vertex is disconnected") {
        auto g = from_rows(1, {{0, 0}, {0, 2}});
        REQUIRE(connectivity(g) == Connectivity::Disconnected);
        REQUIRE(weak_components(g).size() == 2);
    }
    SECTION("one-way double edge is connected but not strong") {
        auto g = from_rows(0, {{0, 2}, {0, 0}});
        REQUIRE(connectivity(g) == Connectivity::ConnectedNotStrong);
    }
    SECTION("empty graph is strongly connected by convention") {
        REQUIRE(connectivity(PointedMultiDigraph::empty(0, 0)) ==
                Connectivity::StronglyConnected);
    }
}

TEST_CASE("minor_matrix") {
    SECTION("loop-only pointed graph has the 0x0 minor") {
        REQUIRE(minor_matrix(f_loops(3)).empty());
    }
    SECTION("direct restriction") {
        // f <-> 1-loop vertex
        auto g = from_rows(1, {{0, 1}, {1, 1}});
        REQUIRE(minor_matrix(g) == std::vector<std::vector<int>>{{1}});
    }
    SECTION("triangle") {
        // f->a, a->b (x2), b->a, b->f
        auto g = from_rows(1, {{0, 1, 0}, {0, 0, 2}, {1, 1, 0}});
        REQUIRE(minor_matrix(g) == std::vector<std::vector<int>>{{0, 2}, {1, 0}});
    }
    SECTION("requires exactly one distinguished vertex") {
        REQUIRE_THROWS_AS(minor_matrix(PointedMultiDigraph::empty(2, 1)),
                          std::invalid_argument);
    }
}

TEST_CASE("transpose") {
    SECTION("loops fixed") { REQUIRE(transpose(f_loops(2)) == f_loops(2)); }
    SECTION("reverses multi-edges") {
        auto g = from_rows(0, {{0, 2}, {0, 0}});
        REQUIRE(transpose(g) == from_rows(0, {{0, 0}, {2, 0}}));
    }
    SECTION("involution") {
        auto g = from_rows(1, {{0, 1, 0}, {0, 0, 2}, {1, 1, 0}});
        REQUIRE(transpose(transpose(g)) == g);
    }
}

TEST_CASE("disjoint_union") {
    auto g = from_rows(0, {{2}});
    SECTION("unit") {
        REQUIRE(disjoint_union(g, PointedMultiDigraph::empty(0, 0)) == g);
    }
    SECTION("weight adds") {
        auto u = disjoint_union(g, g);
        REQUIRE(u.weight() == g.weight() * 2);
        REQUIRE(u.size() == 2);
        REQUIRE(u.adj[0][0] == 2);
        REQUIRE(u.adj[1][1] == 2);
        REQUIRE(u.adj[0][1] == 0);
    }
}

TEST_CASE("encode/decode round trip") {
    auto g = from_rows(1, {{0, 1, 0}, {0, 0, 2}, {1, 1, 0}});
    REQUIRE(encode(g) == "d1:0,1,0,0,0,2,1,1,0");
    REQUIRE(decode(encode(g)) == g);
    REQUIRE(decode(encode(f_loops(0))) == f_loops(0));
    auto e = PointedMultiDigraph::empty(0, 0);
    REQUIRE(decode(encode(e)) == e);
}
