#include "dicola/fci.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "dicola/errors.hpp"

namespace dicola {

namespace {

using LocalSepsets = std::map<std::pair<int, int>, std::vector<int>>;

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

// Calls fn on every size-r subset of pool in lexicographic order; stops when fn
// returns true and reports whether it did.
template <class Fn>
bool for_each_subset(const std::vector<int>& pool, int r, Fn&& fn) {
    const int n = static_cast<int>(pool.size());
    if (r > n) return false;
    std::vector<int> pos(r);
    for (int i = 0; i < r; ++i) pos[i] = i;
    std::vector<int> subset(r);
    while (true) {
        for (int i = 0; i < r; ++i) subset[i] = pool[pos[i]];
        if (fn(subset)) return true;
        int i = r - 1;
        while (i >= 0 && pos[i] == n - r + i) --i;
        if (i < 0) return false;
        ++pos[i];
        for (int j = i + 1; j < r; ++j) pos[j] = pos[j - 1] + 1;
    }
}

bool subset_of(const std::vector<int>& s, const std::vector<char>& mask) {
    return std::all_of(s.begin(), s.end(), [&](int v) { return mask[v] != 0; });
}

SepsetMap to_sepset_map(const UndirectedGraph& s, const LocalSepsets& local) {
    SepsetMap out;
    for (const auto& [pair, set] : local) out.set(s.name(pair.first), s.name(pair.second), s.vertices().names_of(set));
    return out;
}

class SkeletonSearch {
public:
    SkeletonSearch(std::span<const std::string> k, CiTester& tester, const FciOptions& options)
        : s_(std::vector<std::string>(k.begin(), k.end())),
          tester_(tester),
          options_(options),
          ids_(tester.variables().indices_of(k)) {}

    LocalResult run() {
        adjacency_rounds();
        if (options_.possible_dsep && s_.num_edges() > 0) possible_dsep_round();
        return {s_, to_sepset_map(s_, sep_), tests_};
    }

private:
    int n() const { return s_.size(); }
    bool cap_allows(int size) const { return !options_.max_cond || size <= *options_.max_cond; }

    bool independent(int x, int y, const std::vector<int>& z) {
        std::vector<int> zt(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) zt[i] = ids_[z[i]];
        ++tests_;
        return tester_.test_independence(ids_[x], ids_[y], zt);
    }

    void remove(int x, int y, const std::vector<int>& z) {
        s_.remove_edge(x, y);
        sep_[ordered(x, y)] = z;
    }

    std::vector<int> without(const std::vector<int>& v, int drop) const {
        std::vector<int> out;
        for (int w : v)
            if (w != drop) out.push_back(w);
        return out;
    }

    std::vector<char> mask_of(const std::vector<int>& v) const {
        std::vector<char> m(n(), 0);
        for (int w : v) m[w] = 1;
        return m;
    }

    void adjacency_rounds() {
        for (int i = 0; i < n(); ++i)
            for (int j = i + 1; j < n(); ++j) s_.add_edge(i, j);

        for (int ord = 0; cap_allows(ord); ++ord) {
            // Adjacencies are frozen for the whole round.
            std::vector<std::vector<int>> snap(n());
            for (int v = 0; v < n(); ++v) snap[v] = s_.neighbors(v);
            bool any = false;
            for (auto [x, y] : s_.edges()) {
                const auto px = without(snap[x], y);
                const auto py = without(snap[y], x);
                const auto in_px = mask_of(px);
                bool removed = false;
                if (static_cast<int>(px.size()) >= ord) {
                    any = true;
                    removed = for_each_subset(px, ord, [&](const std::vector<int>& z) {
                        if (!independent(x, y, z)) return false;
                        remove(x, y, z);
                        return true;
                    });
                }
                if (!removed && static_cast<int>(py.size()) >= ord) {
                    any = true;
                    for_each_subset(py, ord, [&](const std::vector<int>& z) {
                        if (subset_of(z, in_px)) return false;
                        if (!independent(x, y, z)) return false;
                        remove(x, y, z);
                        return true;
                    });
                }
            }
            if (!any) break;
        }
    }

    void possible_dsep_round() {
        const MixedGraph pag = orient_v_structures(s_, to_sepset_map(s_, sep_));
        std::vector<std::vector<int>> pds(n());
        for (int v = 0; v < n(); ++v) pds[v] = possible_d_sep(pag, v);

        for (auto [x, y] : s_.edges()) {
            // A separating D-SEP set lies inside the ancestors of {x, y}.
            const int ends[] = {x, y};
            const auto an = possible_ancestors(pag, ends);
            auto restrict = [&](const std::vector<int>& set) {
                std::vector<int> out;
                for (int v : set)
                    if (v != x && v != y && an[v]) out.push_back(v);
                return out;
            };
            const auto pool_x = restrict(pds[x]);
            const auto pool_y = restrict(pds[y]);
            const auto in_pool_x = mask_of(pool_x);
            bool removed = false;
            auto search = [&](const std::vector<int>& pool, int side, bool skip_x_pool) {
                const auto adj_side = mask_of(without(s_.neighbors(side), side == x ? y : x));
                for (int size = 1; size <= static_cast<int>(pool.size()) && cap_allows(size); ++size) {
                    bool hit = for_each_subset(pool, size, [&](const std::vector<int>& z) {
                        // Already tested during the adjacency rounds or from the other endpoint.
                        if (subset_of(z, adj_side)) return false;
                        if (skip_x_pool && subset_of(z, in_pool_x)) return false;
                        if (!independent(x, y, z)) return false;
                        remove(x, y, z);
                        return true;
                    });
                    if (hit) return true;
                }
                return false;
            };
            removed = search(pool_x, x, false);
            if (!removed) search(pool_y, y, true);
        }
    }

    UndirectedGraph s_;
    CiTester& tester_;
    const FciOptions& options_;
    std::vector<int> ids_;
    LocalSepsets sep_;
    std::uint64_t tests_ = 0;
};

// Edge u - v could be oriented u -> v.
bool possibly_directed(const MixedGraph& g, int u, int v) {
    return g.mark(v, u) != Mark::Arrow && g.mark(u, v) != Mark::Tail;
}

class Orienter {
public:
    Orienter(MixedGraph& g, const SepsetMap& sep, OrientationPolicy policy, OrientationStats& stats)
        : g_(g), sep_(sep), policy_(policy), stats_(stats) {}

    void run() {
        bool changed = true;
        while (changed) {
            changed = false;
            changed |= r1();
            changed |= r2();
            changed |= r3();
            changed |= r4();
            changed |= r8();
            changed |= r9();
            changed |= r10();
        }
    }

private:
    int n() const { return g_.size(); }
    Mark m(int from, int to) const { return g_.mark(from, to); }
    bool adj(int a, int b) const { return g_.adjacent(a, b); }

    // Puts mark `mk` at `to` on the edge from-to.
    bool set(int from, int to, Mark mk) {
        const Mark cur = m(from, to);
        if (cur == mk) return false;
        if (cur != Mark::Circle) {
            if (policy_ == OrientationPolicy::Strict)
                throw InconsistencyError("orientation conflict on edge " + g_.name(from) + " - " + g_.name(to));
            ++stats_.conflicts;
            return false;
        }
        g_.set_mark(from, to, mk);
        ++stats_.changes;
        return true;
    }

    bool in_sepset(int a, int b, int v) const {
        const auto* s = sep_.find(g_.name(a), g_.name(b));
        if (!s) throw ContractError("no separating set recorded for " + g_.name(a) + ", " + g_.name(b));
        return std::find(s->begin(), s->end(), g_.name(v)) != s->end();
    }

    // a *-> b o-* c, a and c non-adjacent: b -> c
    bool r1() {
        bool any = false;
        for (int b = 0; b < n(); ++b)
            for (int a : g_.neighbors(b)) {
                if (m(a, b) != Mark::Arrow) continue;
                for (int c : g_.neighbors(b)) {
                    if (c == a || adj(a, c) || m(c, b) != Mark::Circle) continue;
                    any |= set(c, b, Mark::Tail);
                    any |= set(b, c, Mark::Arrow);
                }
            }
        return any;
    }

    // a -> b *-> c or a *-> b -> c, with a *-o c: a *-> c
    bool r2() {
        bool any = false;
        for (int a = 0; a < n(); ++a)
            for (int c : g_.neighbors(a)) {
                if (m(a, c) != Mark::Circle) continue;
                for (int b : g_.neighbors(a)) {
                    if (b == c || !adj(b, c)) continue;
                    const bool first = g_.is_directed(a, b) && m(b, c) == Mark::Arrow;
                    const bool second = m(a, b) == Mark::Arrow && g_.is_directed(b, c);
                    if (first || second) {
                        any |= set(a, c, Mark::Arrow);
                        break;
                    }
                }
            }
        return any;
    }

    // a *-> b <-* c, a *-o t o-* c, a and c non-adjacent, t *-o b: t *-> b
    bool r3() {
        bool any = false;
        for (int b = 0; b < n(); ++b)
            for (int t : g_.neighbors(b)) {
                if (m(t, b) != Mark::Circle) continue;
                const auto& nb = g_.neighbors(t);
                bool fired = false;
                for (std::size_t i = 0; i < nb.size() && !fired; ++i)
                    for (std::size_t j = i + 1; j < nb.size() && !fired; ++j) {
                        int a = nb[i], c = nb[j];
                        if (a == b || c == b || adj(a, c) || !adj(a, b) || !adj(c, b)) continue;
                        if (m(a, b) != Mark::Arrow || m(c, b) != Mark::Arrow) continue;
                        if (m(a, t) != Mark::Circle || m(c, t) != Mark::Circle) continue;
                        fired = true;
                    }
                if (fired) any |= set(t, b, Mark::Arrow);
            }
        return any;
    }

    // Shortest discriminating path <theta, ..., a, b, c> for b; returns theta.
    std::optional<int> discriminating_start(int a, int b, int c) const {
        std::deque<Path> queue;
        queue.push_back({c, b, a});
        while (!queue.empty()) {
            Path rev = std::move(queue.front());
            queue.pop_front();
            const int t = rev.back();
            const int prev = rev[rev.size() - 2];
            for (int q : g_.neighbors(t)) {
                if (std::find(rev.begin(), rev.end(), q) != rev.end()) continue;
                // t must be a collider on the path.
                if (m(q, t) != Mark::Arrow || m(prev, t) != Mark::Arrow) continue;
                if (!adj(q, c)) return q;
                if (g_.is_directed(q, c)) {
                    Path next = rev;
                    next.push_back(q);
                    queue.push_back(std::move(next));
                }
            }
        }
        return std::nullopt;
    }

    bool r4() {
        bool any = false;
        for (int b = 0; b < n(); ++b)
            for (int c : g_.neighbors(b)) {
                if (m(c, b) != Mark::Circle) continue;
                for (int a : g_.neighbors(b)) {
                    if (a == c || !g_.is_directed(a, c)) continue;
                    if (m(b, a) != Mark::Arrow) continue;
                    auto theta = discriminating_start(a, b, c);
                    if (!theta) continue;
                    if (in_sepset(*theta, c, b)) {
                        any |= set(c, b, Mark::Tail);
                        any |= set(b, c, Mark::Arrow);
                    } else {
                        any |= set(a, b, Mark::Arrow);
                        any |= set(b, a, Mark::Arrow);
                        any |= set(c, b, Mark::Arrow);
                        any |= set(b, c, Mark::Arrow);
                    }
                    break;
                }
            }
        return any;
    }

    // a -> b -> c or a -o b -> c, with a o-> c: a -> c
    bool r8() {
        bool any = false;
        for (int a = 0; a < n(); ++a)
            for (int c : g_.neighbors(a)) {
                if (m(c, a) != Mark::Circle || m(a, c) != Mark::Arrow) continue;
                for (int b : g_.neighbors(a)) {
                    if (b == c || !adj(b, c) || !g_.is_directed(b, c)) continue;
                    const bool tail_at_a = m(b, a) == Mark::Tail;
                    if (tail_at_a && (m(a, b) == Mark::Arrow || m(a, b) == Mark::Circle)) {
                        any |= set(c, a, Mark::Tail);
                        break;
                    }
                }
            }
        return any;
    }

    static constexpr long kSearchBudget = 2'000'000;

    // Extends an uncovered potentially directed path ending in prev, cur.
    // Calls visit(v) on every endpoint reached; stops once visit returns true.
    template <class Visit>
    bool extend(int prev, int cur, std::vector<char>& on_path, long& budget, Visit& visit) const {
        if (--budget < 0) return false;
        for (int w : g_.neighbors(cur)) {
            if (on_path[w] || adj(prev, w) || !possibly_directed(g_, cur, w)) continue;
            if (visit(w)) return true;
            on_path[w] = 1;
            bool done = extend(cur, w, on_path, budget, visit);
            on_path[w] = 0;
            if (done) return true;
        }
        return false;
    }

    // a o-> c and an uncovered p.d. path <a, b, ..., c> with b, c non-adjacent: a -> c
    bool r9() {
        bool any = false;
        for (int a = 0; a < n(); ++a)
            for (int c : g_.neighbors(a)) {
                if (m(c, a) != Mark::Circle || m(a, c) != Mark::Arrow) continue;
                for (int b : g_.neighbors(a)) {
                    if (b == c || adj(b, c) || !possibly_directed(g_, a, b)) continue;
                    std::vector<char> on_path(n(), 0);
                    on_path[a] = on_path[b] = 1;
                    long budget = kSearchBudget;
                    auto visit = [&](int v) { return v == c; };
                    bool found = extend(a, b, on_path, budget, visit);
                    if (budget < 0) ++stats_.truncated_searches;
                    if (found) {
                        any |= set(c, a, Mark::Tail);
                        break;
                    }
                }
            }
        return any;
    }

    // a o-> c, b -> c <- t, uncovered p.d. paths from a to b and from a to t
    // whose second vertices differ and are non-adjacent: a -> c
    bool r10() {
        bool any = false;
        for (int a = 0; a < n(); ++a)
            for (int c : g_.neighbors(a)) {
                if (m(c, a) != Mark::Circle || m(a, c) != Mark::Arrow) continue;
                std::vector<int> pars;
                for (int p : g_.neighbors(c))
                    if (p != a && g_.is_directed(p, c)) pars.push_back(p);
                if (pars.size() < 2) continue;
                std::vector<char> is_par(n(), 0);
                for (int p : pars) is_par[p] = 1;

                // For each first step mu, the parents of c reachable from a through mu.
                std::vector<std::pair<int, std::vector<char>>> reach;
                for (int mu : g_.neighbors(a)) {
                    if (mu == c || !possibly_directed(g_, a, mu)) continue;
                    std::vector<char> hit(n(), 0);
                    if (is_par[mu]) hit[mu] = 1;
                    std::vector<char> on_path(n(), 0);
                    on_path[a] = on_path[mu] = 1;
                    long budget = kSearchBudget;
                    auto visit = [&](int v) {
                        if (is_par[v]) hit[v] = 1;
                        return false;
                    };
                    extend(a, mu, on_path, budget, visit);
                    if (budget < 0) ++stats_.truncated_searches;
                    if (std::any_of(hit.begin(), hit.end(), [](char h) { return h != 0; }))
                        reach.emplace_back(mu, std::move(hit));
                }
                bool fired = false;
                for (std::size_t i = 0; i < reach.size() && !fired; ++i)
                    for (std::size_t j = 0; j < reach.size() && !fired; ++j) {
                        if (i == j || adj(reach[i].first, reach[j].first)) continue;
                        for (int b : pars)
                            for (int t : pars)
                                if (b != t && reach[i].second[b] && reach[j].second[t]) fired = true;
                    }
                if (fired) any |= set(c, a, Mark::Tail);
            }
        return any;
    }

    MixedGraph& g_;
    const SepsetMap& sep_;
    OrientationPolicy policy_;
    OrientationStats& stats_;
};

}  // namespace

std::vector<int> possible_d_sep(const MixedGraph& pag, int x) {
    const int n = pag.size();
    std::vector<char> in(n, 0);
    std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
    std::deque<std::pair<int, int>> queue;
    for (int w : pag.neighbors(x)) {
        in[w] = 1;
        seen[static_cast<std::size_t>(x) * n + w] = 1;
        queue.emplace_back(x, w);
    }
    while (!queue.empty()) {
        auto [u, v] = queue.front();
        queue.pop_front();
        for (int w : pag.neighbors(v)) {
            if (w == u || w == x) continue;
            const bool collider = pag.mark(u, v) == Mark::Arrow && pag.mark(w, v) == Mark::Arrow;
            if (!collider && !pag.adjacent(u, w)) continue;
            in[w] = 1;
            auto& s = seen[static_cast<std::size_t>(v) * n + w];
            if (!s) {
                s = 1;
                queue.emplace_back(v, w);
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (in[v]) out.push_back(v);
    return out;
}

std::vector<char> possible_ancestors(const MixedGraph& pag, std::span<const int> targets) {
    std::vector<char> in(pag.size(), 0);
    std::vector<int> stack;
    for (int t : targets)
        if (!in[t]) {
            in[t] = 1;
            stack.push_back(t);
        }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : pag.neighbors(v))
            if (!in[u] && possibly_directed(pag, u, v)) {
                in[u] = 1;
                stack.push_back(u);
            }
    }
    return in;
}

LocalResult learn_skeleton(std::span<const std::string> k, CiTester& tester, const FciOptions& options) {
    if (options.max_cond && *options.max_cond < 0) throw InputError("max_cond must be non-negative");
    return SkeletonSearch(k, tester, options).run();
}

MixedGraph orient_v_structures(const UndirectedGraph& s, const SepsetMap& sep) {
    MixedGraph g(GraphKind::Pag, s.vertices());
    for (auto [a, b] : s.edges()) g.add_edge(a, b, Mark::Circle, Mark::Circle);
    for (int z = 0; z < s.size(); ++z) {
        const auto& nb = s.neighbors(z);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                const int x = nb[i], y = nb[j];
                if (s.adjacent(x, y)) continue;
                const auto* set = sep.find(s.name(x), s.name(y));
                if (!set) throw ContractError("no separating set recorded for " + s.name(x) + ", " + s.name(y));
                if (std::find(set->begin(), set->end(), s.name(z)) != set->end()) continue;
                g.set_mark(x, z, Mark::Arrow);
                g.set_mark(y, z, Mark::Arrow);
            }
    }
    return g;
}

MixedGraph apply_orientation_rules(MixedGraph p, const SepsetMap& sep, OrientationPolicy policy,
                                   OrientationStats* stats) {
    if (p.kind() != GraphKind::Pag) throw ContractError("orientation rules apply to PAGs only");
    OrientationStats local;
    Orienter(p, sep, policy, stats ? *stats : local).run();
    return p;
}

MixedGraph fci(std::span<const std::string> k, CiTester& tester, const FciOptions& options) {
    FciLearner learner(options);
    return learner.orient(learner.learn_skeleton(k, tester));
}

LocalResult FciLearner::learn_skeleton(std::span<const std::string> k, CiTester& tester) const {
    return dicola::learn_skeleton(k, tester, options_);
}

MixedGraph FciLearner::orient(const LocalResult& local, OrientationStats* stats) const {
    return apply_orientation_rules(orient_v_structures(local.skeleton, local.sepsets), local.sepsets, options_.policy,
                                   stats);
}

}  // namespace dicola
