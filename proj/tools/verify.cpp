#include "verify.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "dicola/decompose.hpp"
#include "dicola/dicola.hpp"
#include "dicola/equivalence.hpp"
#include "dicola/fci.hpp"
#include "dicola/oracle.hpp"
#include "dicola/synth.hpp"

namespace dicola::cli {

namespace {

// References that share nothing with the library but the graph container.

std::vector<char> ancestor_mask(const MixedGraph& g, const std::vector<int>& of) {
    std::vector<char> an(g.size(), 0);
    std::vector<int> stack(of);
    for (int v : of) an[v] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : g.neighbors(v))
            if (!an[u] && g.mark(v, u) == Mark::Tail && g.mark(u, v) == Mark::Arrow) {
                an[u] = 1;
                stack.push_back(u);
            }
    }
    return an;
}

bool path_separated(const MixedGraph& g, int x, int y, const std::vector<int>& z) {
    std::vector<char> in_z(g.size(), 0), on(g.size(), 0);
    for (int v : z) in_z[v] = 1;
    const auto an_z = ancestor_mask(g, z);
    std::function<bool(int, int)> open_from = [&](int prev, int cur) {
        for (int w : g.neighbors(cur)) {
            if (on[w]) continue;
            if (prev >= 0) {
                const bool collider = g.mark(prev, cur) == Mark::Arrow && g.mark(w, cur) == Mark::Arrow;
                if (collider ? !an_z[cur] : static_cast<bool>(in_z[cur])) continue;
            }
            if (w == y) return true;
            on[w] = 1;
            const bool hit = open_from(cur, w);
            on[w] = 0;
            if (hit) return true;
        }
        return false;
    };
    on[x] = 1;
    return !open_from(-1, x);
}

bool subset_separable(const MixedGraph& g, int x, int y, const std::vector<int>& within) {
    std::vector<int> pool;
    for (int v : within)
        if (v != x && v != y) pool.push_back(v);
    for (unsigned mask = 0; mask < (1u << pool.size()); ++mask) {
        std::vector<int> z;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (mask & (1u << i)) z.push_back(pool[i]);
        if (path_separated(g, x, y, z)) return true;
    }
    return false;
}

UndirectedGraph subset_skeleton(const MixedGraph& g) {
    UndirectedGraph out(g.vertices());
    std::vector<int> all(g.size());
    for (int i = 0; i < g.size(); ++i) all[i] = i;
    for (int x = 0; x < g.size(); ++x)
        for (int y = x + 1; y < g.size(); ++y)
            if (!subset_separable(g, x, y, all)) out.add_edge(x, y);
    return out;
}

struct Context {
    Scenario scenario;
    long checks = 0;
    std::string failure;

    bool expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failure.empty()) failure = what;
        return ok;
    }
};

void check_theorems(Context& ctx, Rng& rng) {
    const auto& g = ctx.scenario.true_mag;
    const int n = g.size();
    if (n < 3) return;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const int nc = std::uniform_int_distribution<int>(0, n - 2)(rng);
    std::vector<int> c(perm.begin(), perm.begin() + nc), a, b;
    std::vector<char> removed(n, 0);
    for (int v : c) removed[v] = 1;
    auto comps = augmented_graph(g).components(removed);
    if (comps.size() < 2) return;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        auto& side = i % 2 ? b : a;
        side.insert(side.end(), comps[i].begin(), comps[i].end());
    }
    for (int x : a)
        for (int y : b)
            if (!ctx.expect(path_separated(g, x, y, c), "split is not a separation")) return;

    std::vector<int> abc(n), ac = a, bc = b;
    for (int i = 0; i < n; ++i) abc[i] = i;
    ac.insert(ac.end(), c.begin(), c.end());
    bc.insert(bc.end(), c.begin(), c.end());
    for (int x : a)
        for (int y : ac)
            if (x != y && !ctx.expect(subset_separable(g, x, y, abc) == subset_separable(g, x, y, ac),
                                      "separability of " + g.name(x) + ", " + g.name(y) + " changes inside a u c"))
                return;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const int x = c[i], y = c[j];
            const bool whole = subset_separable(g, x, y, abc);
            if (!ctx.expect(whole == (subset_separable(g, x, y, ac) || subset_separable(g, x, y, bc)),
                            "separator pair " + g.name(x) + ", " + g.name(y) + " disagrees"))
                return;
        }

    Tripartition p{g.vertices().names_of(a), g.vertices().names_of(b), g.vertices().names_of(c)};
    OracleTester t(g);
    FciLearner base;
    auto merged = merge_skeletons(base.learn_skeleton(p.left(), t), base.learn_skeleton(p.right(), t), p, g.names());
    ctx.expect(merged.skeleton == subset_skeleton(g), "merged skeleton differs from the direct one");
}

void check_projection(Context& ctx, Rng&) {
    const auto& s = ctx.scenario;
    const auto obs = s.dag.vertices().indices_of(s.observed);
    for (std::size_t i = 0; i < obs.size(); ++i)
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            const int x = static_cast<int>(i), y = static_cast<int>(j);
            const bool adjacent = !subset_separable(s.dag, obs[i], obs[j], obs);
            if (!ctx.expect(s.true_mag.adjacent(x, y) == adjacent,
                            "adjacency of " + s.observed[i] + ", " + s.observed[j] + " disagrees"))
                return;
            if (!adjacent) continue;
            const bool i_anc = ancestor_mask(s.dag, {obs[j]})[obs[i]];
            const bool j_anc = ancestor_mask(s.dag, {obs[i]})[obs[j]];
            if (!ctx.expect((s.true_mag.mark(y, x) == Mark::Tail) == i_anc &&
                                (s.true_mag.mark(x, y) == Mark::Tail) == j_anc,
                            "marks of " + s.observed[i] + ", " + s.observed[j] + " disagree with ancestry"))
                return;
        }
}

void check_uig(Context& ctx, Rng&) {
    const auto& g = ctx.scenario.true_mag;
    OracleTester t(g);
    const auto uig = construct_uig(g.names(), t).uig;
    for (int x = 0; x < g.size(); ++x)
        for (int y = x + 1; y < g.size(); ++y) {
            std::vector<int> rest;
            for (int v = 0; v < g.size(); ++v)
                if (v != x && v != y) rest.push_back(v);
            if (!ctx.expect(uig.adjacent(x, y) != path_separated(g, x, y, rest),
                            "UIG edge " + g.name(x) + " - " + g.name(y) + " is wrong"))
                return;
        }
}

void check_recovery(Context& ctx, Rng&) {
    const auto& g = ctx.scenario.true_mag;
    if (g.size() < 1) return;
    OracleTester t1(g), t2(g);
    const FciLearner base;
    const auto split = run_dicola(g.names(), t1, base).pag;
    const auto direct = fci(g.names(), t2);
    if (!ctx.expect(split == direct, "DiCoLa+FCI and FCI PAGs differ")) return;
    if (g.size() <= 7) ctx.expect(split == pag_from_equivalence_class(g), "PAG differs from the equivalence class");
}

using Check = void (*)(Context&, Rng&);

Check check_for(const std::string& suite) {
    if (suite == "theorems") return check_theorems;
    if (suite == "projection") return check_projection;
    if (suite == "uig") return check_uig;
    return check_recovery;
}

VerifyOutcome run_suite(const std::string& suite, const VerifyOptions& o, std::uint64_t seed) {
    VerifyOutcome out;
    out.suite = suite;
    Rng rng(seed);
    const Check check = check_for(suite);
    std::uniform_int_distribution<int> size(2, o.n_max + 2);
    std::uniform_real_distribution<double> degree(1.0, 3.0);
    std::uniform_int_distribution<int> hidden(0, 2);
    while (out.trials < o.trials) {
        const int n = size(rng);
        Context ctx{make_scenario(n, std::min(degree(rng), static_cast<double>(n - 1)), hidden(rng), rng), 0, {}};
        if (static_cast<int>(ctx.scenario.observed.size()) > o.n_max || ctx.scenario.observed.size() < 2) continue;
        ++out.trials;
        check(ctx, rng);
        out.checks += ctx.checks;
        if (!ctx.failure.empty()) {
            out.what = ctx.failure;
            out.counterexample = o.out / ("counterexample-" + suite + "-" + std::to_string(out.trials));
            save_scenario(*out.counterexample, ctx.scenario);
            break;
        }
    }
    return out;
}

}  // namespace

std::vector<VerifyOutcome> run_verify(const VerifyOptions& options) {
    std::vector<std::string> suites;
    if (options.suite == "all")
        suites = kSuites;
    else
        suites = {options.suite};
    std::vector<VerifyOutcome> out;
    for (std::size_t i = 0; i < suites.size(); ++i) {
        out.push_back(run_suite(suites[i], options, options.seed + i));
        if (out.back().counterexample) break;
    }
    return out;
}

}  // namespace dicola::cli
