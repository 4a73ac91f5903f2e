// Acceptance suite. `acceptance <k>` runs criterion k, `acceptance` runs all.
// Each criterion prints one PASS or FAIL line and the exit status is non-zero
// when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <spdlog/spdlog.h>

#include "dicola/bench.hpp"
#include "dicola/citest.hpp"
#include "dicola/decompose.hpp"
#include "dicola/dicola.hpp"
#include "dicola/equivalence.hpp"
#include "dicola/fci.hpp"
#include "dicola/graph_io.hpp"
#include "dicola/oracle.hpp"
#include "dicola/synth.hpp"
#include "support/support.hpp"

using namespace dicola;
namespace ts = testing_support;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<int> iota_vec(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// A random valid tripartition of the MAG's vertices: c is drawn at random and
// the components left in the augmented graph are dealt to a and b. Validity
// is confirmed by path enumeration, independently of how it was drawn.
struct Split {
    std::vector<int> a, b, c;
};

std::optional<Split> sample_split(const MixedGraph& g, std::mt19937_64& rng) {
    const int n = g.size();
    if (n < 3) return std::nullopt;
    const auto aug = augmented_graph(g);
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<int> perm = iota_vec(n);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::uniform_int_distribution<int> csz(0, n - 2);
        const int nc = csz(rng);
        std::vector<char> removed(n, 0);
        std::vector<int> c(perm.begin(), perm.begin() + nc);
        for (int v : c) removed[v] = 1;
        auto comps = aug.components(removed);
        if (comps.size() < 2) continue;
        std::shuffle(comps.begin(), comps.end(), rng);
        Split s;
        s.c = c;
        std::bernoulli_distribution coin(0.5);
        for (std::size_t i = 0; i < comps.size(); ++i) {
            auto& side = i == 0 ? s.a : i == 1 ? s.b : (coin(rng) ? s.a : s.b);
            side.insert(side.end(), comps[i].begin(), comps[i].end());
        }
        bool valid = true;
        for (int x : s.a)
            for (int y : s.b)
                if (!ts::brute_m_separated(g, x, y, s.c)) valid = false;
        if (!valid) return std::nullopt;  // reported by the caller as a failure
        return s;
    }
    return std::nullopt;
}

Outcome oracle_recovery() {
    std::mt19937_64 rng(101);
    FciLearner base;
    int identical_fci = 0, compared_truth = 0, identical_truth = 0;
    const int systems = 200;
    for (int trial = 0; trial < systems; ++trial) {
        std::uniform_int_distribution<int> nd(6, 10);
        auto sys = ts::random_system(nd(rng), 2.0, 3.0, 2, rng);
        OracleTester t1(sys.mag), t2(sys.mag);
        auto a = run_dicola(sys.observed, t1, base);
        auto b = fci(sys.observed, t2);
        if (a.pag == b) ++identical_fci;
        if (sys.observed.size() <= 7) {
            ++compared_truth;
            if (a.pag == pag_from_equivalence_class(sys.mag)) ++identical_truth;
        }
    }
    return {identical_fci == systems && identical_truth == compared_truth,
            fmt("DiCoLa+FCI = FCI on %d/%d systems, = equivalence-class PAG on %d/%d with n <= 7", identical_fci,
                systems, identical_truth, compared_truth)};
}

Outcome separation_transfer() {
    std::mt19937_64 rng(102);
    int mags = 0, pairs = 0, counterexamples = 0, invalid = 0;
    while (mags < 500) {
        std::uniform_int_distribution<int> nd(3, 10);
        auto sys = ts::random_system(nd(rng), 1.0, 3.5, 2, rng);
        const auto& g = sys.mag;
        if (g.size() > 8 || g.size() < 3) continue;
        std::optional<Split> s;
        for (int tries = 0; tries < 5 && !s; ++tries) s = sample_split(g, rng);
        if (!s) continue;
        ++mags;
        for (int x : s->a)
            for (int y : s->b)
                if (!ts::brute_m_separated(g, x, y, s->c)) ++invalid;
        const auto abc = iota_vec(g.size());
        const auto ac = concat(s->a, s->c), bc = concat(s->b, s->c);
        for (int x : s->a)
            for (int y : ac)
                if (x < y || (x != y && std::find(s->c.begin(), s->c.end(), y) != s->c.end())) {
                    ++pairs;
                    if (ts::brute_separable(g, x, y, abc) != ts::brute_separable(g, x, y, ac)) ++counterexamples;
                }
        for (std::size_t i = 0; i < s->c.size(); ++i)
            for (std::size_t j = i + 1; j < s->c.size(); ++j) {
                const int x = s->c[i], y = s->c[j];
                ++pairs;
                const bool whole = ts::brute_separable(g, x, y, abc);
                if (whole != (ts::brute_separable(g, x, y, ac) || ts::brute_separable(g, x, y, bc))) ++counterexamples;
            }
    }
    return {counterexamples == 0 && invalid == 0 && pairs > 0,
            fmt("%d MAGs, %d pairs, %d counterexamples, %d invalid splits", mags, pairs, counterexamples, invalid)};
}

Outcome merge_equivalence() {
    std::mt19937_64 rng(103);
    FciLearner base;
    int systems = 0, exact = 0;
    while (systems < 300) {
        std::uniform_int_distribution<int> nd(3, 11);
        auto sys = ts::random_system(nd(rng), 1.0, 3.0, 2, rng);
        const auto& g = sys.mag;
        if (g.size() > 9) continue;
        auto s = sample_split(g, rng);
        if (!s) continue;
        ++systems;
        Tripartition p{g.vertices().names_of(s->a), g.vertices().names_of(s->b), g.vertices().names_of(s->c)};
        OracleTester t(g);
        auto left = base.learn_skeleton(p.left(), t);
        auto right = base.learn_skeleton(p.right(), t);
        auto merged = merge_skeletons(left, right, p, g.names());
        bool ok = merged.skeleton == ts::brute_local_skeleton(g, iota_vec(g.size())) && sepsets_cover(merged);
        for (const auto& [key, set] : merged.sepsets.entries())
            ok = ok && ts::brute_m_separated(g, g.index_of(key.first), g.index_of(key.second),
                                             g.vertices().indices_of(set));
        if (ok) ++exact;
    }
    return {exact == systems, fmt("merged skeleton and sepsets exact on %d/%d splits", exact, systems)};
}

Outcome uig_minimality() {
    std::mt19937_64 rng(104);
    int dags = 0, subsets = 0, equal = 0, minimal = 0;
    for (int trial = 0; trial < 150; ++trial) {
        std::uniform_int_distribution<int> nd(2, 8);
        auto sys = ts::random_system(nd(rng), 1.0, 3.5, 2, rng);
        ++dags;
        const auto& obs = sys.observed;
        const int n = static_cast<int>(obs.size());
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<std::string> k;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) k.push_back(obs[i]);
            if (k.size() < 2) continue;
            ++subsets;
            const auto marginal = latent_project(sys.dag, k);
            OracleTester t(marginal);
            const auto uig = construct_uig(k, t).uig;
            if (uig == augmented_graph(marginal)) ++equal;
            // Every absent edge is a true separation given the rest; removing
            // any present edge would assert a false one.
            bool ok = true;
            const int m = uig.size();
            for (int x = 0; x < m && ok; ++x)
                for (int y = x + 1; y < m && ok; ++y) {
                    std::vector<int> rest;
                    for (int v = 0; v < m; ++v)
                        if (v != x && v != y) rest.push_back(marginal.index_of(uig.name(v)));
                    const bool sep =
                        ts::brute_m_separated(marginal, marginal.index_of(uig.name(x)), marginal.index_of(uig.name(y)), rest);
                    ok = uig.adjacent(x, y) != sep;
                }
            if (ok) ++minimal;
        }
    }
    return {equal == subsets && minimal == subsets,
            fmt("%d DAGs, %d marginals: UIG = augmented graph on %d, minimal on %d", dags, subsets, equal, minimal)};
}

struct Efficiency {
    MethodSummary fci, dicola;
    double reduction() const { return 1.0 - dicola.mean_ci_tests / fci.mean_ci_tests; }
};

Efficiency run_setting(double degree) {
    ExperimentConfig cfg;
    cfg.seed = 1;
    cfg.n = 40;
    cfg.avg_degree = degree;
    cfg.n_latent = 2;
    cfg.n_samples = 2000;
    cfg.alpha = 0.01;
    cfg.reps = 20;
    auto report = run_experiment(cfg);
    return {report.summary.at(0), report.summary.at(1)};
}

Outcome efficiency() {
    const auto d3 = run_setting(3.0);
    const auto d5 = run_setting(5.0);
    const double ratio = d3.dicola.mean_ci_tests / d3.fci.mean_ci_tests;
    const bool timeouts = d3.fci.timeouts + d3.dicola.timeouts > 0;
    return {ratio <= 0.5 && d3.reduction() > d5.reduction() && !timeouts,
            fmt("ER(40,3): FCI %.0f tests, DiCoLa+FCI %.0f (%.1f%% of FCI, reduction %.1f%%); "
                "ER(40,5) reduction %.1f%%; timeouts %d",
                d3.fci.mean_ci_tests, d3.dicola.mean_ci_tests, 100 * ratio, 100 * d3.reduction(),
                100 * d5.reduction(), d3.fci.timeouts + d3.dicola.timeouts)};
}

Outcome accuracy_parity() {
    const auto d3 = run_setting(3.0);
    const double gap = d3.dicola.mean_f1 - d3.fci.mean_f1;
    return {std::abs(gap) <= 0.05 && d3.fci.completed > 0 && d3.dicola.completed > 0,
            fmt("ER(40,3): F1 FCI %.3f, DiCoLa+FCI %.3f, difference %+.3f", d3.fci.mean_f1, d3.dicola.mean_f1, gap)};
}

Outcome fisher_z_calibration() {
    MixedGraph chain(GraphKind::Dag, std::vector<std::string>{"X", "Z", "Y"});
    chain.add_directed("X", "Z");
    chain.add_directed("Z", "Y");
    int good = 0;
    const std::vector<std::string> none, z{"Z"};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        std::bernoulli_distribution sign(0.5);
        Sem sem{chain, {{{0, 1}, sign(rng) ? 0.8 : -0.8}, {{1, 2}, sign(rng) ? 0.8 : -0.8}}, {0, 1, 2}};
        FisherZTester t(std::make_shared<const Dataset>(sample(sem, 10000, rng)), 0.01);
        if (t.test_independence("X", "Y", z) && !t.test_independence("X", "Y", none)) ++good;
    }
    return {good >= 95, fmt("%d/100 seeds accept X _||_ Y | Z and reject X _||_ Y", good)};
}

Outcome projection_cross_check() {
    std::mt19937_64 rng(108);
    int configs = 0, exact = 0;
    while (configs < 300) {
        std::uniform_int_distribution<int> nd(2, 8);
        auto dag = ts::random_dag(nd(rng), 1.0, 3.5, rng);
        const int n = dag.size();
        // Any vertex may be latent here, not only those with two children.
        std::vector<std::string> observed;
        std::bernoulli_distribution hide(0.3);
        for (int v = 0; v < n; ++v)
            if (!hide(rng)) observed.push_back(dag.name(v));
        if (observed.size() < 2) continue;
        ++configs;
        const auto mag = latent_project(dag, observed);
        const auto obs = dag.vertices().indices_of(observed);
        bool ok = mag.names() == observed;
        for (std::size_t i = 0; i < obs.size() && ok; ++i)
            for (std::size_t j = i + 1; j < obs.size() && ok; ++j) {
                const bool adjacent = !ts::brute_separable(dag, obs[i], obs[j], obs);
                ok = mag.adjacent(static_cast<int>(i), static_cast<int>(j)) == adjacent;
                if (ok && adjacent) {
                    // Tails mark ancestors, arrowheads non-ancestors.
                    const bool i_anc = ts::ancestors_of_set(dag, {obs[j]})[obs[i]];
                    const bool j_anc = ts::ancestors_of_set(dag, {obs[i]})[obs[j]];
                    ok = (mag.mark(static_cast<int>(j), static_cast<int>(i)) == Mark::Tail) == i_anc &&
                         (mag.mark(static_cast<int>(i), static_cast<int>(j)) == Mark::Tail) == j_anc;
                }
            }
        if (ok) ++exact;
    }
    return {exact == configs, fmt("projection matches subset search on %d/%d configurations", exact, configs)};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    spdlog::set_level(spdlog::level::warn);
    const std::vector<Criterion> criteria{
        {1, "oracle recovery", oracle_recovery},
        {2, "separation transfer across tripartitions", separation_transfer},
        {3, "skeleton merge", merge_equivalence},
        {4, "UIG equals augmented graph and is minimal", uig_minimality},
        {5, "CI-test reduction", efficiency},
        {6, "accuracy parity", accuracy_parity},
        {7, "Fisher-Z calibration", fisher_z_calibration},
        {8, "latent projection cross-check", projection_cross_check},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    bool all_pass = true;
    for (const auto& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d (%s): %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(),
                    secs);
        std::fflush(stdout);
        all_pass = all_pass && out.pass;
    }
    return all_pass ? 0 : 1;
}
