#include "dicola/decompose.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "dicola/errors.hpp"

namespace dicola {

namespace {

std::vector<std::string> sorted_copy(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

Tripartition group_components(const UndirectedGraph& u, std::vector<std::vector<int>> comps,
                              const std::vector<int>& c) {
    std::stable_sort(comps.begin(), comps.end(),
                     [](const auto& x, const auto& y) { return x.size() > y.size(); });
    std::vector<int> a, b;
    for (const auto& comp : comps) {
        auto& side = a.size() <= b.size() ? a : b;
        side.insert(side.end(), comp.begin(), comp.end());
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const auto& vs = u.vertices();
    return {vs.names_of(a), vs.names_of(b), vs.names_of(c)};
}

// a/b ratio comparison without rounding: returns <0, 0, >0.
int compare_scores(const Tripartition& x, const Tripartition& y) {
    auto num = [](const Tripartition& p) { return p.c.size(); };
    auto den = [](const Tripartition& p) { return std::min(p.a.size(), p.b.size()) + p.c.size(); };
    const auto lhs = num(x) * den(y);
    const auto rhs = num(y) * den(x);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace

std::vector<std::string> Tripartition::left() const {
    std::vector<std::string> out = a;
    out.insert(out.end(), c.begin(), c.end());
    return out;
}

std::vector<std::string> Tripartition::right() const {
    std::vector<std::string> out = b;
    out.insert(out.end(), c.begin(), c.end());
    return out;
}

double balancing_score(const Tripartition& p) {
    const auto den = std::min(p.a.size(), p.b.size()) + p.c.size();
    if (den == 0) return 0.0;
    return static_cast<double>(p.c.size()) / static_cast<double>(den);
}

UigResult construct_uig(std::span<const std::string> k, CiTester& tester, const MbLearner& mb) {
    if (k.empty()) throw InputError("construct_uig: empty variable set");
    const auto& vars = tester.variables();
    const std::vector<int> ids = vars.indices_of(k);
    UigResult out{UndirectedGraph(std::vector<std::string>(k.begin(), k.end())), 0, 0};
    const int n = static_cast<int>(ids.size());
    if (n == 1) return out;

    std::vector<int> local(vars.size(), -1);
    for (int i = 0; i < n; ++i) local[ids[i]] = i;

    std::vector<std::vector<char>> in_mb(n, std::vector<char>(n, 0));
    for (const auto& res : mb.learn_all(ids, tester)) {
        out.tests_used += res.tests_used;
        for (int y : res.blanket) in_mb[local[res.target]][local[y]] = 1;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const bool ij = in_mb[i][j] != 0;
            const bool ji = in_mb[j][i] != 0;
            if (ij || ji) out.uig.add_edge(i, j);
            if (ij != ji) ++out.asymmetric_pairs;
        }
    return out;
}

UigResult refine_uig(UndirectedGraph inherited, std::span<const std::string> retest, CiTester& tester) {
    UigResult out{std::move(inherited), 0, 0};
    const auto& g = out.uig;
    const std::vector<int> ids = tester.variables().indices_of(g.names());
    std::vector<int> loc;
    for (const auto& v : retest) loc.push_back(g.index_of(v));
    std::sort(loc.begin(), loc.end());
    std::vector<int> z;
    for (std::size_t i = 0; i < loc.size(); ++i)
        for (std::size_t j = i + 1; j < loc.size(); ++j) {
            const int x = loc[i], y = loc[j];
            z.clear();
            for (int v = 0; v < g.size(); ++v)
                if (v != x && v != y) z.push_back(ids[v]);
            ++out.tests_used;
            if (tester.test_independence(ids[x], ids[y], z))
                out.uig.remove_edge(x, y);
            else
                out.uig.add_edge(x, y);
        }
    return out;
}

JunctionTree junction_tree(const UndirectedGraph& u) {
    const int n = u.size();
    JunctionTree jt;
    jt.triangulated = u;
    if (n == 0) return jt;

    // Lexicographic tie-break on names.
    std::vector<int> by_name(n);
    std::iota(by_name.begin(), by_name.end(), 0);
    std::sort(by_name.begin(), by_name.end(), [&](int x, int y) { return u.name(x) < u.name(y); });

    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto [a, b] : u.edges()) adj[a][b] = adj[b][a] = 1;
    std::vector<char> gone(n, 0);

    auto live_neighbors = [&](int v) {
        std::vector<int> out;
        for (int w = 0; w < n; ++w)
            if (!gone[w] && adj[v][w]) out.push_back(w);
        return out;
    };
    auto fill_in = [&](const std::vector<int>& nb) {
        std::size_t missing = 0;
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!adj[nb[i]][nb[j]]) ++missing;
        return missing;
    };

    std::vector<std::vector<int>> raw;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        std::size_t best_fill = 0;
        for (int v : by_name) {
            if (gone[v]) continue;
            const auto f = fill_in(live_neighbors(v));
            if (best < 0 || f < best_fill) {
                best = v;
                best_fill = f;
            }
        }
        auto nb = live_neighbors(best);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                auto x = nb[i];
                auto y = nb[j];
                if (!adj[x][y]) {
                    adj[x][y] = adj[y][x] = 1;
                    jt.triangulated.add_edge(nb[i], nb[j]);
                }
            }
        nb.push_back(best);
        std::sort(nb.begin(), nb.end());
        raw.push_back(std::move(nb));
        jt.elimination_order.push_back(best);
        gone[best] = 1;
    }

    for (std::size_t i = 0; i < raw.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < raw.size() && maximal; ++j) {
            if (i == j) continue;
            const bool subset = std::includes(raw[j].begin(), raw[j].end(), raw[i].begin(), raw[i].end());
            // Equal cliques: keep the first occurrence only.
            if (subset && (raw[j].size() > raw[i].size() || j < i)) maximal = false;
        }
        if (maximal) jt.cliques.push_back(raw[i]);
    }

    struct Candidate {
        std::size_t weight;
        int i, j;
    };
    std::vector<Candidate> pairs;
    const int m = static_cast<int>(jt.cliques.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            std::vector<int> common;
            const auto& ci = jt.cliques[i];
            const auto& cj = jt.cliques[j];
            std::set_intersection(ci.begin(), ci.end(), cj.begin(), cj.end(), std::back_inserter(common));
            if (!common.empty()) pairs.push_back({common.size(), i, j});
        }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Candidate& x, const Candidate& y) { return x.weight > y.weight; });

    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& p : pairs) {
        int ri = find(p.i), rj = find(p.j);
        if (ri == rj) continue;
        parent[ri] = rj;
        jt.edges.emplace_back(p.i, p.j);
    }
    return jt;
}

std::vector<Tripartition> vertex_cut_candidates(const UndirectedGraph& u, CandidateMode mode) {
    const int n = u.size();
    std::vector<Tripartition> out;
    if (n < 2) return out;

    auto top = u.components();
    if (top.size() > 1) {
        out.push_back(group_components(u, std::move(top), {}));
        return out;
    }

    std::set<std::vector<int>> seen;
    auto consider = [&](std::vector<int> c) {
        if (!seen.insert(c).second) return;
        std::vector<char> removed(n, 0);
        for (int v : c) removed[v] = 1;
        auto comps = u.components(removed);
        if (comps.size() < 2) return;
        out.push_back(group_components(u, std::move(comps), c));
    };

    if (mode == CandidateMode::JunctionTree) {
        auto jt = junction_tree(u);
        for (auto [i, j] : jt.edges) {
            const auto& ci = jt.cliques[i];
            const auto& cj = jt.cliques[j];
            std::vector<int> c;
            std::set_intersection(ci.begin(), ci.end(), cj.begin(), cj.end(), std::back_inserter(c));
            consider(std::move(c));
        }
        return out;
    }

    if (n > 12) throw InputError("exhaustive separator enumeration is limited to 12 vertices");
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> c;
        std::vector<char> removed(n, 0);
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) {
                c.push_back(v);
                removed[v] = 1;
            }
        auto comps = u.components(removed);
        if (comps.size() < 2) continue;
        // Minimal separators have at least two full components.
        int full = 0;
        for (const auto& comp : comps) {
            std::vector<char> in(n, 0);
            for (int v : comp) in[v] = 1;
            bool all = std::all_of(c.begin(), c.end(), [&](int s) {
                const auto& nb = u.neighbors(s);
                return std::any_of(nb.begin(), nb.end(), [&](int w) { return in[w] != 0; });
            });
            if (all) ++full;
        }
        if (full >= 2) consider(std::move(c));
    }
    return out;
}

std::optional<Tripartition> choose_candidate(std::span<const Tripartition> candidates, std::size_t parent_size) {
    const Tripartition* best = nullptr;
    std::vector<std::string> best_c, best_a;
    for (const auto& p : candidates) {
        if (p.a.empty() || p.b.empty()) continue;
        if (p.a.size() + p.c.size() >= parent_size || p.b.size() + p.c.size() >= parent_size) continue;
        auto sc = sorted_copy(p.c);
        auto sa = sorted_copy(p.a);
        bool better = best == nullptr;
        if (!better) {
            int cmp = compare_scores(p, *best);
            better = cmp < 0 || (cmp == 0 && (sc < best_c || (sc == best_c && sa < best_a)));
        }
        if (better) {
            best = &p;
            best_c = std::move(sc);
            best_a = std::move(sa);
        }
    }
    if (!best) return std::nullopt;
    return *best;
}

DecompositionResult find_decomposition(std::span<const std::string> k, CiTester& tester, const DecomposeOptions& options) {
    const TotalConditioning tc;
    const MbLearner& mb = options.mb ? *options.mb : tc;
    auto uig = construct_uig(k, tester, mb);
    DecompositionResult out = decompose_uig(std::move(uig.uig), options);
    out.tests_used = uig.tests_used;
    out.asymmetric_pairs = uig.asymmetric_pairs;
    return out;
}

DecompositionResult decompose_uig(UndirectedGraph uig, const DecomposeOptions& options) {
    DecompositionResult out;
    auto candidates = vertex_cut_candidates(uig, options.mode);
    if (auto chosen = choose_candidate(candidates, uig.size())) {
        out.score = balancing_score(*chosen);
        out.partition = std::move(chosen);
        out.flag = true;
    }
    out.uig = std::move(uig);
    return out;
}

}  // namespace dicola
