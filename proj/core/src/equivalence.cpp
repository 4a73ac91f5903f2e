#include "dicola/equivalence.hpp"

#include <array>

#include "dicola/errors.hpp"
#include "dicola/oracle.hpp"

namespace dicola {

namespace {

std::size_t at(int v) { return static_cast<std::size_t>(v); }

bool arrow_at(const MixedGraph& g, int from, int to) { return g.mark(from, to) == Mark::Arrow; }

bool collider_on(const MixedGraph& g, int a, int b, int c) { return arrow_at(g, a, b) && arrow_at(g, c, b); }

bool is_discriminating(const MixedGraph& g, const Path& p) {
    const std::size_t len = p.size();
    if (len < 4) return false;
    for (std::size_t i = 0; i + 1 < len; ++i)
        if (!g.adjacent(p[i], p[i + 1])) return false;
    const int last = p[len - 1];
    if (g.adjacent(p[0], last)) return false;
    for (std::size_t i = 1; i + 2 < len; ++i) {
        if (!collider_on(g, p[i - 1], p[i], p[i + 1])) return false;
        if (!g.is_directed(p[i], last)) return false;
    }
    return true;
}

struct Triple {
    int x, v, y;
    bool collider;
};

}  // namespace

std::vector<DiscriminatingPath> discriminating_paths(const MixedGraph& g) {
    std::vector<DiscriminatingPath> out;
    std::vector<char> on_path(at(g.size()), 0);
    // Built backwards from `last`: rev = [last, v, w1, w2, ...].
    Path rev;
    auto dfs = [&](auto&& self) -> void {
        const int last = rev[0];
        const int t = rev.back();
        for (int q : g.neighbors(t)) {
            if (on_path[at(q)] || !arrow_at(g, q, t)) continue;
            if (!g.adjacent(q, last)) {
                Path p(rev.rbegin(), rev.rend());
                p.insert(p.begin(), q);
                out.push_back(DiscriminatingPath{std::move(p)});
            } else if (g.is_directed(q, last) && arrow_at(g, t, q)) {
                rev.push_back(q);
                on_path[at(q)] = 1;
                self(self);
                on_path[at(q)] = 0;
                rev.pop_back();
            }
        }
    };
    for (int last = 0; last < g.size(); ++last) {
        for (int v : g.neighbors(last)) {
            for (int w : g.neighbors(v)) {
                if (w == last || !g.is_directed(w, last) || !arrow_at(g, v, w)) continue;
                rev = {last, v, w};
                on_path[at(last)] = on_path[at(v)] = on_path[at(w)] = 1;
                dfs(dfs);
                on_path[at(last)] = on_path[at(v)] = on_path[at(w)] = 0;
            }
        }
    }
    return out;
}

bool markov_equivalent(const MixedGraph& a, const MixedGraph& b) {
    if (a.names() != b.names()) return false;
    const int n = a.size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (a.adjacent(x, y) != b.adjacent(x, y)) return false;
    for (int v = 0; v < n; ++v) {
        const auto& nb = a.neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                int x = nb[i], y = nb[j];
                if (a.adjacent(x, y)) continue;
                if (collider_on(a, x, v, y) != collider_on(b, x, v, y)) return false;
            }
    }
    for (const auto& dp : discriminating_paths(a)) {
        if (!is_discriminating(b, dp.path)) continue;
        const auto& p = dp.path;
        const std::size_t k = p.size();
        if (collider_on(a, p[k - 3], p[k - 2], p[k - 1]) != collider_on(b, p[k - 3], p[k - 2], p[k - 1])) return false;
    }
    return true;
}

std::vector<MixedGraph> equivalence_class(const MixedGraph& mag, std::size_t limit) {
    if (mag.kind() == GraphKind::Pag) throw InputError("equivalence_class needs a MAG");
    const auto edges = mag.edges();
    const std::size_t m = edges.size();

    // Each unshielded triple is checked as soon as its later edge is assigned.
    std::vector<int> edge_index(at(mag.size()) * at(mag.size()), -1);
    for (std::size_t i = 0; i < m; ++i) {
        edge_index[at(edges[i].a) * at(mag.size()) + at(edges[i].b)] = static_cast<int>(i);
        edge_index[at(edges[i].b) * at(mag.size()) + at(edges[i].a)] = static_cast<int>(i);
    }
    std::vector<std::vector<Triple>> triples_at(m);
    for (int v = 0; v < mag.size(); ++v) {
        const auto& nb = mag.neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                int x = nb[i], y = nb[j];
                if (mag.adjacent(x, y)) continue;
                int e1 = edge_index[at(x) * at(mag.size()) + at(v)];
                int e2 = edge_index[at(y) * at(mag.size()) + at(v)];
                triples_at[at(std::max(e1, e2))].push_back(Triple{x, v, y, collider_on(mag, x, v, y)});
            }
    }

    const std::array<std::pair<Mark, Mark>, 3> kOptions = {
        std::pair{Mark::Tail, Mark::Arrow}, std::pair{Mark::Arrow, Mark::Tail}, std::pair{Mark::Arrow, Mark::Arrow}};

    std::vector<MixedGraph> out;
    MixedGraph partial(GraphKind::Pag, mag.vertices());
    auto recurse = [&](auto&& self, std::size_t i) -> void {
        if (i == m) {
            MixedGraph typed = MixedGraph::from_edges(GraphKind::Mag, mag.vertices(), partial.edges());
            if (!is_maximal(typed) || !markov_equivalent(mag, typed)) return;
            if (out.size() >= limit) throw ContractError("equivalence class exceeds enumeration limit");
            out.push_back(std::move(typed));
            return;
        }
        const auto& e = edges[i];
        for (auto [ma, mb] : kOptions) {
            partial.add_edge(e.a, e.b, ma, mb);
            bool ok = true;
            for (const auto& t : triples_at[i])
                if (collider_on(partial, t.x, t.v, t.y) != t.collider) {
                    ok = false;
                    break;
                }
            if (ok) ok = is_ancestral(partial);
            if (ok) self(self, i + 1);
            partial.remove_edge(e.a, e.b);
        }
    };
    recurse(recurse, 0);
    return out;
}

MixedGraph pag_from_equivalence_class(const MixedGraph& mag) {
    const auto members = equivalence_class(mag);
    if (members.empty()) throw ContractError("equivalence class is empty; input is not a MAG");
    MixedGraph pag(GraphKind::Pag, mag.vertices());
    for (const auto& e : mag.edges()) {
        Mark at_a = members.front().mark(e.b, e.a);
        Mark at_b = members.front().mark(e.a, e.b);
        for (const auto& g : members) {
            if (g.mark(e.b, e.a) != at_a) at_a = Mark::Circle;
            if (g.mark(e.a, e.b) != at_b) at_b = Mark::Circle;
        }
        pag.add_edge(e.a, e.b, at_a, at_b);
    }
    return pag;
}

}  // namespace dicola
