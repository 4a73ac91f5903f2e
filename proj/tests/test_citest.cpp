#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "dicola/citest.hpp"
#include "dicola/errors.hpp"
#include "dicola/oracle.hpp"
#include "dicola/synth.hpp"
#include "support/support.hpp"

using namespace dicola;
namespace ts = testing_support;

namespace {

MixedGraph dag(std::vector<std::string> names, std::vector<std::pair<const char*, const char*>> edges) {
    MixedGraph g(GraphKind::Dag, std::move(names));
    for (auto [a, b] : edges) g.add_directed(a, b);
    return g;
}

// X -> Z -> Y with both weights 0.8 and unit noise.
std::shared_ptr<const Dataset> chain_data(int m, std::uint64_t seed) {
    Sem sem;
    sem.dag = dag({"X", "Z", "Y"}, {{"X", "Z"}, {"Z", "Y"}});
    sem.weights[{0, 1}] = 0.8;
    sem.weights[{1, 2}] = 0.8;
    sem.order = {0, 1, 2};
    Rng rng(seed);
    return std::make_shared<const Dataset>(sample(sem, m, rng));
}

// Partial correlation as the correlation of least-squares residuals.
double residual_partial_correlation(const Eigen::MatrixXd& d, int x, int y, const std::vector<int>& z) {
    const Eigen::Index m = d.rows();
    Eigen::MatrixXd design(m, static_cast<Eigen::Index>(z.size()) + 1);
    design.col(0).setOnes();
    for (std::size_t i = 0; i < z.size(); ++i) design.col(static_cast<Eigen::Index>(i) + 1) = d.col(z[i]);
    auto residual = [&](int v) -> Eigen::VectorXd {
        Eigen::VectorXd beta = design.colPivHouseholderQr().solve(d.col(v));
        return d.col(v) - design * beta;
    };
    Eigen::VectorXd rx = residual(x), ry = residual(y);
    return rx.dot(ry) / std::sqrt(rx.squaredNorm() * ry.squaredNorm());
}

}  // namespace

TEST_CASE("oracle backend answers m-separation and counts every call") {
    OracleTester t(dag({"X", "Z", "Y"}, {{"X", "Z"}, {"Y", "Z"}}));
    const std::vector<std::string> none, z{"Z"};
    CHECK(t.test_independence("X", "Y", none));
    CHECK_FALSE(t.test_independence("X", "Y", z));
    CHECK(t.count() == 2);
    CHECK_THROWS_AS(t.test_independence("X", "X", none), InputError);
    CHECK_THROWS_AS(t.test_independence("X", "Q", none), InputError);
    t.reset_count();
    CHECK(t.count() == 0);
}

TEST_CASE("an expired deadline raises a timeout") {
    OracleTester t(dag({"X", "Y"}, {}));
    t.set_deadline(CiTester::Clock::now() - std::chrono::milliseconds(1));
    const std::vector<std::string> none;
    CHECK_THROWS_AS(t.test_independence("X", "Y", none), TimeoutError);
    t.set_deadline(std::nullopt);
    CHECK(t.test_independence("X", "Y", none));
}

TEST_CASE("copied column is perfectly dependent") {
    Rng rng(1);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd d(1000, 2);
    for (int i = 0; i < 1000; ++i) d(i, 0) = d(i, 1) = nd(rng);
    auto data = std::make_shared<const Dataset>(std::vector<std::string>{"X", "Y"}, d);
    const std::vector<std::string> none;
    CHECK(partial_correlation(*data, "X", "Y", none) == doctest::Approx(1.0));
    FisherZTester t(data);
    CHECK_FALSE(t.test_independence("X", "Y", none));
}

TEST_CASE("chain data: X and Y are independent given Z only") {
    auto data = chain_data(10000, 7);
    FisherZTester t(data);
    const std::vector<std::string> none, z{"Z"};
    CHECK(t.test_independence("X", "Y", z));
    CHECK_FALSE(t.test_independence("X", "Y", none));
    CHECK(std::abs(partial_correlation(*data, "X", "Y", z)) < 0.05);
    CHECK(partial_correlation(*data, "X", "Z", none) == doctest::Approx(0.8 / std::sqrt(1.64)).epsilon(0.03));
    CHECK(partial_correlation(*data, "X", "Y", none) == doctest::Approx(data->correlation()(0, 2)));
}

TEST_CASE("Fisher-Z statistic and threshold") {
    auto data = chain_data(500, 3);
    FisherZTester t(data, 0.01);
    CHECK(t.critical_value() == doctest::Approx(2.5758293035489).epsilon(1e-9));
    const std::vector<int> z{1};
    const double r = residual_partial_correlation(data->data(), 0, 2, {1});
    const double expected = 0.5 * std::log((1 + r) / (1 - r)) * std::sqrt(500.0 - 1 - 3);
    CHECK(fisher_z_statistic(*data, 0, 2, z) == doctest::Approx(expected).epsilon(1e-8));
    CHECK_THROWS_AS(FisherZTester(data, 0.0), InputError);
    CHECK_THROWS_AS(FisherZTester(data, 1.0), InputError);
}

TEST_CASE("sample size and conditioning errors") {
    auto small = chain_data(4, 1);
    FisherZTester t(small);
    const std::vector<std::string> z{"Z"};
    CHECK_THROWS_AS(t.test_independence("X", "Y", z), SampleSizeError);

    Rng rng(2);
    std::normal_distribution<double> nd;
    Eigen::MatrixXd d(200, 4);
    for (int i = 0; i < 200; ++i) {
        d(i, 0) = nd(rng);
        d(i, 1) = nd(rng);
        d(i, 2) = nd(rng);
        d(i, 3) = d(i, 2);
    }
    // A duplicated conditioning column is rescued by the ridge.
    Dataset dup({"A", "B", "C", "D"}, d);
    const std::vector<std::string> both{"C", "D"}, one{"C"};
    CHECK(partial_correlation(dup, "A", "B", both) == doctest::Approx(partial_correlation(dup, "A", "B", one)).epsilon(1e-4));

    // A constant column is uncorrelated with everything.
    d.col(3).setConstant(2.0);
    Dataset flat({"A", "B", "C", "D"}, d);
    const std::vector<std::string> none, with_d{"D"};
    CHECK(partial_correlation(flat, "A", "D", none) == 0.0);

    CHECK(partial_correlation(flat, "A", "B", with_d) == doctest::Approx(partial_correlation(flat, "A", "B", none)));

    d(0, 3) = std::nan("");
    CHECK_THROWS_AS(Dataset({"A", "B", "C", "D"}, d), InputError);
}

TEST_CASE("property: partial correlations match residual regression") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> nd(3, 8);
        auto d = ts::random_dag(nd(rng), 1.0, 3.0, rng);
        auto sem = assign_sem(d, rng);
        auto data = sample(sem, 300, rng);
        const int n = d.size();
        std::bernoulli_distribution coin(0.5);
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                std::vector<int> z;
                for (int v = 0; v < n; ++v)
                    if (v != x && v != y && coin(rng)) z.push_back(v);
                REQUIRE(partial_correlation(data, x, y, z) ==
                        doctest::Approx(residual_partial_correlation(data.data(), x, y, z)).epsilon(1e-8));
            }
    }
}

TEST_CASE("property: oracle answers are symmetric") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> nd(2, 8);
        auto sys = ts::random_system(nd(rng), 1.0, 3.0, 2, rng);
        OracleTester t(sys.mag);
        const int n = sys.mag.size();
        std::bernoulli_distribution coin(0.4);
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                std::vector<int> z;
                for (int v = 0; v < n; ++v)
                    if (v != x && v != y && coin(rng)) z.push_back(v);
                REQUIRE(t.test_independence(x, y, z) == t.test_independence(y, x, z));
            }
    }
}

TEST_CASE("calibration: independent normals are accepted at the nominal rate") {
    int accepted = 0;
    for (int seed = 0; seed < 200; ++seed) {
        Rng rng(1000 + static_cast<std::uint64_t>(seed));
        std::normal_distribution<double> nd;
        Eigen::MatrixXd d(2000, 2);
        for (int i = 0; i < 2000; ++i) {
            d(i, 0) = nd(rng);
            d(i, 1) = nd(rng);
        }
        FisherZTester t(std::make_shared<const Dataset>(std::vector<std::string>{"X", "Y"}, d), 0.01);
        if (t.test_independence(0, 1, {})) ++accepted;
    }
    CHECK(accepted >= 190);
}

TEST_CASE("dataset CSV round-trip and correlation") {
    auto data = chain_data(50, 9);
    std::stringstream s;
    data->write_csv(s);
    auto back = Dataset::read_csv(s);
    CHECK(back.columns() == data->columns());
    CHECK(back.data().isApprox(data->data(), 1e-12));
    const auto& c = data->correlation();
    CHECK(c.isApprox(c.transpose()));
    for (int i = 0; i < 3; ++i) CHECK(c(i, i) == doctest::Approx(1.0));

    std::stringstream bad("A,B\n1,2\n3\n");
    CHECK_THROWS_AS(Dataset::read_csv(bad), InputError);
    std::stringstream nan("A,B\n1,x\n");
    CHECK_THROWS_AS(Dataset::read_csv(nan), InputError);
    auto sub = data->select(std::vector<std::string>{"Y", "X"});
    CHECK(sub.columns().names() == std::vector<std::string>{"Y", "X"});
    CHECK(sub.data().col(0) == data->data().col(2));
}
