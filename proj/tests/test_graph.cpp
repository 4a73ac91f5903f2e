#include <doctest.h>

#include <random>

#include "dicola/errors.hpp"
#include "dicola/graph.hpp"
#include "dicola/oracle.hpp"
#include "support/support.hpp"

using namespace dicola;
namespace ts = testing_support;

namespace {

MixedGraph chain() {
    MixedGraph g(GraphKind::Dag, std::vector<std::string>{"A", "B", "C"});
    g.add_directed("A", "B");
    g.add_directed("B", "C");
    return g;
}

std::vector<std::string> names(const MixedGraph& g, const std::vector<int>& vs) {
    return ts::sorted(g.vertices().names_of(vs));
}

}  // namespace

TEST_CASE("vertex names") {
    VertexNames v({"A", "B", "C"});
    CHECK(v.size() == 3);
    CHECK(v.index_of("C") == 2);
    CHECK_FALSE(v.find("D"));
    CHECK_THROWS_AS(v.index_of("D"), InputError);
    CHECK_THROWS_AS(VertexNames({"A", "A"}), InputError);
    CHECK_THROWS_AS(VertexNames({"A", ""}), InputError);
}

TEST_CASE("ancestors") {
    auto g = chain();
    CHECK(names(g, ancestors(g, "C")) == std::vector<std::string>{"A", "B"});
    CHECK(ancestors(g, "A").empty());
    CHECK_THROWS_AS(ancestors(g, "Q"), InputError);

    MixedGraph m(GraphKind::Mag, std::vector<std::string>{"A", "B"});
    m.add_bidirected("A", "B");
    CHECK(ancestors(m, "B").empty());

    const int c = g.index_of("C");
    auto closure = ancestor_closure(g, std::span<const int>(&c, 1));
    CHECK(closure == std::vector<char>{1, 1, 1});
}

TEST_CASE("is_collider") {
    MixedGraph g(GraphKind::Mag, std::vector<std::string>{"A", "B", "C", "D"});
    g.add_directed("A", "B");
    g.add_directed("C", "B");
    g.add_bidirected("D", "B");
    CHECK(is_collider(g, "A", "B", "C"));
    CHECK(is_collider(g, "D", "B", "C"));
    CHECK_FALSE(is_collider(chain(), "A", "B", "C"));
    CHECK_THROWS_AS(is_collider(g, "A", "C", "D"), InputError);
}

TEST_CASE("is_ancestral") {
    CHECK(is_ancestral(chain()));

    MixedGraph cyc(GraphKind::Pag, std::vector<std::string>{"X", "Y", "Z"});
    cyc.add_edge("X", "Y", Mark::Tail, Mark::Arrow);
    cyc.add_edge("Y", "Z", Mark::Tail, Mark::Arrow);
    cyc.add_edge("Z", "X", Mark::Tail, Mark::Arrow);
    CHECK(has_directed_cycle(cyc));
    CHECK_FALSE(is_ancestral(cyc));

    MixedGraph almost(GraphKind::Pag, std::vector<std::string>{"X", "Y", "Z"});
    almost.add_edge("X", "Y", Mark::Arrow, Mark::Arrow);
    almost.add_edge("X", "Z", Mark::Tail, Mark::Arrow);
    almost.add_edge("Z", "Y", Mark::Tail, Mark::Arrow);
    CHECK_FALSE(has_directed_cycle(almost));
    CHECK_FALSE(is_ancestral(almost));
}

TEST_CASE("kind constraints reject bad insertions") {
    MixedGraph d(GraphKind::Dag, std::vector<std::string>{"X", "Y", "Z"});
    d.add_directed("X", "Y");
    d.add_directed("Y", "Z");
    CHECK_THROWS_AS(d.add_directed("Z", "X"), InputError);
    CHECK_THROWS_AS(d.add_bidirected("X", "Z"), InputError);
    CHECK_THROWS_AS(d.add_edge("X", "Z", Mark::Circle, Mark::Arrow), InputError);
    CHECK_THROWS_AS(d.add_directed("X", "X"), InputError);
    CHECK_THROWS_AS(d.add_directed("X", "Y"), InputError);
    CHECK(d.num_edges() == 2);

    MixedGraph m(GraphKind::Mag, std::vector<std::string>{"X", "Y", "Z"});
    m.add_directed("X", "Z");
    m.add_directed("Z", "Y");
    CHECK_THROWS_AS(m.add_bidirected("X", "Y"), InputError);
    CHECK_THROWS_AS(m.add_edge("X", "Y", Mark::Tail, Mark::Tail), InputError);
    CHECK_THROWS_AS(m.set_mark(m.index_of("X"), m.index_of("Z"), Mark::Circle), ContractError);

    MixedGraph p(GraphKind::Pag, std::vector<std::string>{"X", "Y"});
    p.add_edge("X", "Y", Mark::Circle, Mark::Circle);
    p.set_mark(p.index_of("X"), p.index_of("Y"), Mark::Arrow);
    CHECK(p.mark(p.index_of("X"), p.index_of("Y")) == Mark::Arrow);
    CHECK(p.mark(p.index_of("Y"), p.index_of("X")) == Mark::Circle);
}

TEST_CASE("edges are canonical") {
    MixedGraph g(GraphKind::Dag, std::vector<std::string>{"A", "B", "C"});
    g.add_directed("C", "A");
    auto es = g.edges();
    REQUIRE(es.size() == 1);
    CHECK(es[0] == Edge{0, 2, Mark::Arrow, Mark::Tail});
    CHECK(g.is_directed(2, 0));
    CHECK(g.parents(0) == std::vector<int>{2});
    CHECK(g.children(2) == std::vector<int>{0});
    g.remove_edge(0, 2);
    CHECK(g.num_edges() == 0);
    CHECK_FALSE(g.adjacent(0, 2));
}

TEST_CASE("is_maximal") {
    CHECK(is_maximal(chain()));
    MixedGraph v(GraphKind::Mag, std::vector<std::string>{"X", "Z", "Y"});
    v.add_directed("X", "Z");
    v.add_directed("Y", "Z");
    CHECK(is_maximal(v));

    // A primitive inducing path A <-> B <-> C <-> D with B, C ancestors of the
    // endpoints: A and D are non-adjacent yet inseparable.
    MixedGraph m(GraphKind::Mag, std::vector<std::string>{"A", "B", "C", "D", "E"});
    m.add_bidirected("A", "B");
    m.add_bidirected("B", "C");
    m.add_bidirected("C", "D");
    m.add_directed("B", "D");
    m.add_directed("C", "A");
    REQUIRE(is_ancestral(m));
    auto brute = [&](int x, int y, std::span<const int> z) {
        return ts::brute_m_separated(m, x, y, std::vector<int>(z.begin(), z.end()));
    };
    CHECK_FALSE(is_maximal(m, brute));
    CHECK_FALSE(is_maximal(m));
    CHECK_FALSE(ts::brute_separable(m, m.index_of("A"), m.index_of("D"), {0, 1, 2, 3, 4}));
}

TEST_CASE("induced_subgraph") {
    auto g = chain();
    CHECK(induced_subgraph(g, g.names()) == g);
    auto empty = induced_subgraph(g, std::vector<std::string>{});
    CHECK(empty.size() == 0);
    auto ac = induced_subgraph(g, std::vector<std::string>{"A", "C"});
    CHECK(ac.size() == 2);
    CHECK(ac.num_edges() == 0);
    CHECK_THROWS_AS(induced_subgraph(g, std::vector<std::string>{"A", "Q"}), InputError);
}

TEST_CASE("undirected graph components and separation") {
    UndirectedGraph u(std::vector<std::string>{"A", "B", "C", "D", "E"});
    u.add_edge("A", "B");
    u.add_edge("B", "C");
    u.add_edge("D", "E");
    u.add_edge("A", "B");
    CHECK(u.num_edges() == 3);
    CHECK(u.components() == std::vector<std::vector<int>>{{0, 1, 2}, {3, 4}});
    std::vector<char> removed{0, 1, 0, 0, 0};
    CHECK(u.components(removed) == std::vector<std::vector<int>>{{0}, {2}, {3, 4}});
    const int b = 1;
    CHECK(u.separated(0, 2, std::span<const int>(&b, 1)));
    CHECK_FALSE(u.separated(0, 2, {}));
    CHECK(u.separated(0, 3, {}));
}

TEST_CASE("property: ancestors are transitive and match a plain search") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<int> nd(2, 12);
        auto g = ts::random_dag(nd(rng), 1.0, 4.0, rng);
        for (int x = 0; x < g.size(); ++x) {
            auto an = ancestors(g, x);
            auto ref = ts::ancestors_of_set(g, {x});
            ref[x] = 0;
            std::vector<int> expected;
            for (int v = 0; v < g.size(); ++v)
                if (ref[v]) expected.push_back(v);
            auto got = an;
            std::sort(got.begin(), got.end());
            REQUIRE(got == expected);
            for (int v : an)
                for (int u : ancestors(g, v)) REQUIRE(std::find(an.begin(), an.end(), u) != an.end());
        }
    }
}

TEST_CASE("property: induced subgraphs compose") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<int> nd(1, 10);
        auto g = ts::random_dag(nd(rng), 1.0, 4.0, rng);
        std::bernoulli_distribution coin(0.6);
        std::vector<std::string> w1, w12;
        for (const auto& v : g.names()) {
            bool in1 = coin(rng), in2 = coin(rng);
            if (in1) w1.push_back(v);
            if (in1 && in2) w12.push_back(v);
        }
        REQUIRE(induced_subgraph(g, w12) == induced_subgraph(induced_subgraph(g, w1), w12));
    }
}

TEST_CASE("property: latent projections are ancestral") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        std::uniform_int_distribution<int> nd(2, 12);
        auto sys = ts::random_system(nd(rng), 1.0, 4.0, 4, rng);
        REQUIRE(sys.mag.kind() == GraphKind::Mag);
        REQUIRE(is_ancestral(sys.mag));
    }
}
