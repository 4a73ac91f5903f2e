#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "dicola/errors.hpp"
#include "dicola/graph_io.hpp"
#include "dicola/oracle.hpp"
#include "dicola/synth.hpp"

using namespace dicola;

namespace {

double average_degree(const MixedGraph& g) { return g.size() ? 2.0 * static_cast<double>(g.num_edges()) / g.size() : 0.0; }

}  // namespace

TEST_CASE("er_dag extremes and errors") {
    Rng rng(1);
    auto empty = er_dag(5, 0, rng);
    CHECK(empty.num_edges() == 0);
    CHECK(empty.names() == std::vector<std::string>{"X1", "X2", "X3", "X4", "X5"});
    auto full = er_dag(5, 4, rng);
    CHECK(full.num_edges() == 10);
    CHECK(full.kind() == GraphKind::Dag);
    CHECK(er_dag(1, 0, rng).size() == 1);
    CHECK_THROWS_AS(er_dag(5, 4.5, rng), InputError);
    CHECK_THROWS_AS(er_dag(5, -1, rng), InputError);
    CHECK_THROWS_AS(er_dag(0, 0, rng), InputError);
}

TEST_CASE("er_dag edge count and density") {
    double total = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Rng rng(seed);
        total += static_cast<double>(er_dag(30, 3, rng).num_edges());
    }
    CHECK(std::abs(total / 1000 - 45.0) <= 2.0);

    for (double d : {2.0, 4.0}) {
        double deg = 0;
        for (std::uint64_t seed = 0; seed < 500; ++seed) {
            Rng rng(seed + 5000);
            deg += average_degree(er_dag(25, d, rng));
        }
        CHECK(std::abs(deg / 500 - d) <= 0.05 * d);
    }
}

TEST_CASE("SEM weights") {
    Rng rng(2);
    auto empty = assign_sem(er_dag(4, 0, rng), rng);
    CHECK(empty.weights.empty());

    int positive = 0, total = 0;
    while (total < 10000) {
        auto sem = assign_sem(er_dag(20, 19, rng), rng);
        for (const auto& [edge, w] : sem.weights) {
            REQUIRE(std::abs(w) > 0.5);
            REQUIRE(std::abs(w) < 1.0);
            REQUIRE(sem.dag.is_directed(edge.first, edge.second));
            if (w > 0) ++positive;
            ++total;
        }
        REQUIRE(sem.weights.size() == sem.dag.num_edges());
    }
    const double frac = static_cast<double>(positive) / total;
    CHECK(frac >= 0.47);
    CHECK(frac <= 0.53);
}

TEST_CASE("topological order") {
    Rng rng(3);
    auto g = er_dag(15, 4, rng);
    auto order = topological_order(g);
    REQUIRE(order.size() == 15);
    std::vector<int> pos(15);
    for (int i = 0; i < 15; ++i) pos[order[i]] = i;
    for (const auto& e : g.edges()) {
        const int from = e.at_b == Mark::Arrow ? e.a : e.b;
        const int to = e.at_b == Mark::Arrow ? e.b : e.a;
        CHECK(pos[from] < pos[to]);
    }
}

TEST_CASE("sampling moments") {
    Rng rng(4);
    auto sem = assign_sem(er_dag(3, 0, rng), rng);
    auto data = sample(sem, 10000, rng);
    CHECK(data.num_samples() == 10000);
    for (int j = 0; j < 3; ++j) {
        const auto col = data.data().col(j);
        const double mean = col.mean();
        const double var = (col.array() - mean).square().sum() / (col.size() - 1);
        CHECK(std::abs(var - 1.0) <= 0.05);
    }

    MixedGraph xy(GraphKind::Dag, std::vector<std::string>{"X", "Y"});
    xy.add_directed("X", "Y");
    Sem s{xy, {{{0, 1}, 0.8}}, {0, 1}};
    auto d2 = sample(s, 10000, rng);
    CHECK(std::abs(d2.correlation()(0, 1) - 0.8 / std::sqrt(1.64)) <= 0.02);

    auto one = sample(s, 1, rng);
    CHECK(one.num_samples() == 1);
    CHECK_THROWS_AS(sample(s, 0, rng), InputError);
}

TEST_CASE("latent choice") {
    Rng rng(5);
    auto edgeless = choose_latents(er_dag(4, 0, rng), 3, rng);
    CHECK(edgeless.latents.empty());
    CHECK(edgeless.shortfall);

    MixedGraph fork(GraphKind::Dag, std::vector<std::string>{"X", "Y", "Z"});
    fork.add_directed("X", "Y");
    fork.add_directed("X", "Z");
    auto one = choose_latents(fork, 1, rng);
    CHECK(one.latents == std::vector<std::string>{"X"});
    CHECK_FALSE(one.shortfall);
    auto none = choose_latents(fork, 0, rng);
    CHECK(none.latents.empty());
    CHECK_FALSE(none.shortfall);
}

TEST_CASE("scenarios") {
    Rng rng(6);
    auto plain = make_scenario(8, 2, 0, rng);
    CHECK(plain.latents.empty());
    CHECK(plain.true_mag == plain.dag.as_kind(GraphKind::Mag));
    CHECK(plain.true_pag.has_value());

    MixedGraph fork(GraphKind::Dag, std::vector<std::string>{"X", "L", "Y"});
    fork.add_directed("L", "X");
    fork.add_directed("L", "Y");
    auto conf = scenario_from_dag(fork, 1, rng);
    CHECK(conf.latents == std::vector<std::string>{"L"});
    CHECK(conf.true_mag.is_bidirected(conf.true_mag.index_of("X"), conf.true_mag.index_of("Y")));

    auto big = make_scenario(20, 3, 2, rng);
    CHECK_FALSE(big.true_pag.has_value());
    for (const auto& l : big.latents) {
        CHECK(big.dag.children(big.dag.index_of(l)).size() >= 2);
        CHECK(std::find(big.observed.begin(), big.observed.end(), l) == big.observed.end());
    }
    CHECK(big.observed.size() + big.latents.size() == 20);
}

TEST_CASE("marginal MAGs are denser than their DAGs") {
    double mag_degree = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        auto s = make_scenario(30, 3, 3, rng);
        const double dag_deg = average_degree(s.dag);
        const double m_deg = average_degree(s.true_mag);
        CHECK(m_deg >= dag_deg);
        mag_degree += m_deg;
    }
    // Reported average degree of the induced MAGs for ER(30,3) with three latents: 3.81.
    CHECK(std::abs(mag_degree / 50 - 3.81) <= 0.3);
}

TEST_CASE("identical seeds reproduce scenarios and samples") {
    Rng a(77), b(77);
    auto sa = make_scenario(15, 3, 2, a);
    auto sb = make_scenario(15, 3, 2, b);
    CHECK(write_graph(sa.dag) == write_graph(sb.dag));
    CHECK(sa.sem.weights == sb.sem.weights);
    CHECK(sa.latents == sb.latents);
    CHECK(sample(sa.sem, 100, a).data() == sample(sb.sem, 100, b).data());
}

TEST_CASE("scenario bundles round-trip") {
    Rng rng(8);
    auto s = make_scenario(10, 2.5, 2, rng);
    auto data = sample(s.sem, 50, rng);
    auto dir = std::filesystem::temp_directory_path() / "dicola_synth_test";
    std::filesystem::remove_all(dir);
    save_scenario(dir, s, &data);
    CHECK(std::filesystem::exists(dir / "truth.graph"));
    CHECK(std::filesystem::exists(dir / "latents.txt"));
    CHECK(std::filesystem::exists(dir / "mag.graph"));
    CHECK(std::filesystem::exists(dir / "data.csv"));
    auto b = load_scenario(dir);
    CHECK(b.dag == s.dag);
    CHECK(b.latents == s.latents);
    CHECK(b.mag == s.true_mag);
    REQUIRE(b.data);
    CHECK(b.data->columns().names() == s.observed);
    CHECK(b.data->data().isApprox(data.select(s.observed).data(), 1e-12));
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(load_scenario(dir), InputError);
}
