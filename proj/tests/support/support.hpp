#ifndef DICOLA_TESTS_SUPPORT_HPP
#define DICOLA_TESTS_SUPPORT_HPP

// Test-side reference implementations. They deliberately share no code with
// the library beyond the graph container: separation is decided by
// enumerating simple paths, ancestry by a plain depth-first search.

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dicola/graph.hpp"
#include "dicola/oracle.hpp"
#include "dicola/synth.hpp"

namespace testing_support {

using dicola::Mark;
using dicola::MixedGraph;
using dicola::UndirectedGraph;

inline std::vector<char> ancestors_of_set(const MixedGraph& g, const std::vector<int>& zs) {
    std::vector<char> an(g.size(), 0);
    std::vector<int> stack(zs.begin(), zs.end());
    for (int z : zs) an[z] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : g.neighbors(v))
            if (g.mark(v, u) == Mark::Tail && g.mark(u, v) == Mark::Arrow && !an[u]) {
                an[u] = 1;
                stack.push_back(u);
            }
    }
    return an;
}

/// m-separation by enumerating every simple path between x and y.
inline bool brute_m_separated(const MixedGraph& g, int x, int y, const std::vector<int>& z) {
    const int n = g.size();
    std::vector<char> in_z(n, 0);
    for (int v : z) in_z[v] = 1;
    const auto an_z = ancestors_of_set(g, z);
    std::vector<int> path{x};
    std::vector<char> on(n, 0);
    on[x] = 1;
    std::function<bool(int)> dfs = [&](int cur) -> bool {
        for (int w : g.neighbors(cur)) {
            if (on[w]) continue;
            if (path.size() >= 2) {
                int prev = path[path.size() - 2];
                bool collider = g.mark(prev, cur) == Mark::Arrow && g.mark(w, cur) == Mark::Arrow;
                if (collider && !an_z[cur]) continue;
                if (!collider && in_z[cur]) continue;
            }
            if (w == y) return true;
            on[w] = 1;
            path.push_back(w);
            bool hit = dfs(w);
            path.pop_back();
            on[w] = 0;
            if (hit) return true;
        }
        return false;
    };
    return !dfs(x);
}

template <class Fn>
void for_each_subset(const std::vector<int>& pool, Fn&& fn) {
    const int n = static_cast<int>(pool.size());
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(pool[i]);
        if (fn(s)) return;
    }
}

/// Some subset of k \ {x, y} m-separates x and y.
inline bool brute_separable(const MixedGraph& g, int x, int y, const std::vector<int>& k) {
    std::vector<int> pool;
    for (int v : k)
        if (v != x && v != y) pool.push_back(v);
    bool found = false;
    for_each_subset(pool, [&](const std::vector<int>& s) {
        found = brute_m_separated(g, x, y, s);
        return found;
    });
    return found;
}

/// Local skeleton over `k` (indices of g), vertices in k's order.
inline UndirectedGraph brute_local_skeleton(const MixedGraph& g, const std::vector<int>& k) {
    UndirectedGraph out(g.vertices().names_of(k));
    for (std::size_t i = 0; i < k.size(); ++i)
        for (std::size_t j = i + 1; j < k.size(); ++j)
            if (!brute_separable(g, k[i], k[j], k)) out.add_edge(static_cast<int>(i), static_cast<int>(j));
    return out;
}

/// Random DAG over X1..Xn with a random degree in [lo, hi] (clamped to n-1).
inline MixedGraph random_dag(int n, double lo, double hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> deg(lo, hi);
    double d = std::min(deg(rng), static_cast<double>(n - 1));
    return dicola::er_dag(n, d, rng);
}

struct System {
    MixedGraph dag;
    std::vector<std::string> latents;
    std::vector<std::string> observed;
    MixedGraph mag;
};

inline System random_system(int n, double lo, double hi, int max_latents, std::mt19937_64& rng) {
    System s;
    s.dag = random_dag(n, lo, hi, rng);
    std::uniform_int_distribution<int> nl(0, max_latents);
    s.latents = dicola::choose_latents(s.dag, nl(rng), rng).latents;
    for (const auto& v : s.dag.names())
        if (std::find(s.latents.begin(), s.latents.end(), v) == s.latents.end()) s.observed.push_back(v);
    s.mag = dicola::latent_project(s.dag, s.observed);
    return s;
}

/// A reconstruction of the two-latent example: observed X1..X8, latents L1, L2.
inline MixedGraph two_latent_example_dag() {
    MixedGraph d(dicola::GraphKind::Dag,
                 std::vector<std::string>{"X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8", "L1", "L2"});
    for (auto [a, b] : std::vector<std::pair<const char*, const char*>>{{"X3", "X2"},
                                                                        {"X3", "X1"},
                                                                        {"X3", "X4"},
                                                                        {"X3", "X5"},
                                                                        {"X4", "X5"},
                                                                        {"X1", "X5"},
                                                                        {"L1", "X1"},
                                                                        {"L1", "X4"},
                                                                        {"X4", "X6"},
                                                                        {"X5", "X7"},
                                                                        {"L2", "X6"},
                                                                        {"L2", "X7"},
                                                                        {"X6", "X8"}})
        d.add_directed(a, b);
    return d;
}

inline std::vector<std::string> two_latent_example_observed() {
    return {"X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8"};
}

inline std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace testing_support

#endif  // DICOLA_TESTS_SUPPORT_HPP
