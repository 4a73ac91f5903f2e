#include "dicola/oracle.hpp"

#include <algorithm>

#include "dicola/errors.hpp"

namespace dicola {

namespace {

std::size_t at(int v) { return static_cast<std::size_t>(v); }

void validate(const MixedGraph& m, int x, int y, std::span<const int> z) {
    const int n = m.size();
    if (x < 0 || y < 0 || x >= n || y >= n) throw InputError("separation query: vertex out of range");
    if (x == y) throw InputError("separation query: x and y must differ");
    for (int v : z) {
        if (v < 0 || v >= n) throw InputError("separation query: conditioning vertex out of range");
        if (v == x || v == y) throw InputError("separation query: conditioning set contains an endpoint");
    }
}

bool arrow_at(const MixedGraph& m, int from, int to) { return m.mark(from, to) == Mark::Arrow; }

}  // namespace

std::vector<char> collider_reach(const MixedGraph& m, int x, const std::vector<char>& within) {
    const auto n = at(m.size());
    auto allowed = [&](int v) { return within.empty() || within[at(v)]; };
    std::vector<char> reached(n, 0);
    // state index: 2 * v + (arrived with an arrowhead at v)
    std::vector<char> seen(2 * n, 0);
    std::vector<int> stack;
    for (int w : m.neighbors(x)) {
        if (!allowed(w)) continue;
        reached[at(w)] = 1;
        int s = 2 * w + (arrow_at(m, x, w) ? 1 : 0);
        if (!seen[at(s)]) {
            seen[at(s)] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        if ((s & 1) == 0) continue;  // v cannot be a collider
        int v = s / 2;
        for (int u : m.neighbors(v)) {
            if (u == x || !allowed(u) || !arrow_at(m, u, v)) continue;
            reached[at(u)] = 1;
            int t = 2 * u + (arrow_at(m, v, u) ? 1 : 0);
            if (!seen[at(t)]) {
                seen[at(t)] = 1;
                stack.push_back(t);
            }
        }
    }
    reached[at(x)] = 0;
    return reached;
}

bool collider_connected(const MixedGraph& m, int x, int y) {
    if (x == y) throw InputError("collider_connected: x and y must differ");
    return collider_reach(m, x)[at(y)] != 0;
}

UndirectedGraph augmented_graph(const MixedGraph& m) {
    UndirectedGraph out(m.vertices());
    for (int x = 0; x < m.size(); ++x) {
        auto reach = collider_reach(m, x);
        for (int y = x + 1; y < m.size(); ++y)
            if (reach[at(y)]) out.add_edge(x, y);
    }
    return out;
}

bool m_separated(const MixedGraph& m, int x, int y, std::span<const int> z) {
    validate(m, x, y, z);
    std::vector<int> seeds(z.begin(), z.end());
    seeds.push_back(x);
    seeds.push_back(y);
    const auto within = ancestor_closure(m, seeds);
    std::vector<char> blocked(at(m.size()), 0);
    for (int v : z) blocked[at(v)] = 1;

    // Breadth-first over augmented edges of the restricted graph, never entering z.
    std::vector<char> visited(at(m.size()), 0);
    std::vector<int> queue{x};
    visited[at(x)] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto reach = collider_reach(m, queue[head], within);
        if (reach[at(y)]) return false;
        for (int w = 0; w < m.size(); ++w) {
            if (reach[at(w)] && !visited[at(w)] && !blocked[at(w)]) {
                visited[at(w)] = 1;
                queue.push_back(w);
            }
        }
    }
    return true;
}

bool m_separated(const MixedGraph& m, const SeparationQuery& q) { return m_separated(m, q.x, q.y, q.z); }

bool m_separated(const MixedGraph& m, std::string_view x, std::string_view y, std::span<const std::string> z) {
    return m_separated(m, m.index_of(x), m.index_of(y), m.vertices().indices_of(z));
}

std::optional<Path> m_connecting_path_witness(const MixedGraph& m, const SeparationQuery& q) {
    validate(m, q.x, q.y, q.z);
    const auto an_z = ancestor_closure(m, q.z);
    std::vector<char> in_z(at(m.size()), 0);
    for (int v : q.z) in_z[at(v)] = 1;

    Path path{q.x};
    std::vector<char> on_path(at(m.size()), 0);
    on_path[at(q.x)] = 1;

    // The interior vertex `v` (preceded by `prev`, followed by `next`) must not block.
    auto passes = [&](int prev, int v, int next) {
        bool collider = arrow_at(m, prev, v) && arrow_at(m, next, v);
        return collider ? an_z[at(v)] != 0 : in_z[at(v)] == 0;
    };

    auto dfs = [&](auto&& self) -> bool {
        int v = path.back();
        for (int w : m.neighbors(v)) {
            if (on_path[at(w)]) continue;
            if (path.size() >= 2 && !passes(path[path.size() - 2], v, w)) continue;
            path.push_back(w);
            if (w == q.y) return true;
            on_path[at(w)] = 1;
            if (self(self)) return true;
            on_path[at(w)] = 0;
            path.pop_back();
        }
        return false;
    };
    if (!dfs(dfs)) return std::nullopt;

    std::vector<int> seeds(q.z.begin(), q.z.end());
    seeds.push_back(q.x);
    seeds.push_back(q.y);
    const auto an = ancestor_closure(m, seeds);
    for (int v : path)
        if (!an[at(v)]) throw ContractError("m-connecting path leaves An+({x,y} u z) at " + m.name(v));
    return path;
}

std::optional<std::vector<int>> separable(const MixedGraph& m, int x, int y, std::span<const int> k,
                                          SeparableMode mode) {
    if (x == y) throw InputError("separable: x and y must differ");
    if (m.adjacent(x, y)) return std::nullopt;
    std::vector<int> pool;
    for (int v : k)
        if (v != x && v != y) pool.push_back(v);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    if (mode == SeparableMode::AncestorSet) {
        const int xy[] = {x, y};
        const auto an = ancestor_closure(m, xy);
        std::vector<int> s;
        for (int v : pool)
            if (an[at(v)]) s.push_back(v);
        if (m_separated(m, x, y, s)) return s;
        return std::nullopt;
    }

    // Subsets by size, each size in lexicographic order of positions.
    const int p = static_cast<int>(pool.size());
    std::vector<int> z;
    for (int size = 0; size <= p; ++size) {
        std::vector<int> idx(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) idx[at(i)] = i;
        while (true) {
            z.clear();
            for (int i : idx) z.push_back(pool[at(i)]);
            if (m_separated(m, x, y, z)) return z;
            int i = size - 1;
            while (i >= 0 && idx[at(i)] == p - size + i) --i;
            if (i < 0) break;
            ++idx[at(i)];
            for (int j = i + 1; j < size; ++j) idx[at(j)] = idx[at(j - 1)] + 1;
        }
    }
    return std::nullopt;
}

UndirectedGraph local_skeleton(const MixedGraph& m, std::span<const int> k, SeparableMode mode) {
    std::vector<int> keep(k.begin(), k.end());
    std::sort(keep.begin(), keep.end());
    UndirectedGraph out(m.vertices().names_of(keep));
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = i + 1; j < keep.size(); ++j)
            if (!separable(m, keep[i], keep[j], keep, mode)) out.add_edge(static_cast<int>(i), static_cast<int>(j));
    return out;
}

UndirectedGraph local_skeleton(const MixedGraph& m, std::span<const std::string> k, SeparableMode mode) {
    return local_skeleton(m, m.vertices().indices_of(k), mode);
}

bool has_inducing_path(const MixedGraph& g, int x, int y, const std::vector<char>& latent) {
    if (x == y) throw InputError("has_inducing_path: x and y must differ");
    if (g.adjacent(x, y)) return true;
    const int xy[] = {x, y};
    const auto an = ancestor_closure(g, xy);
    const auto n = at(g.size());
    // Walk states (v, arrived with an arrowhead at v). A walk meeting the
    // conditions contains no shortcut that could fail them, and every path is a walk.
    std::vector<char> seen(2 * n, 0);
    std::vector<int> stack;
    for (int w : g.neighbors(x)) {
        int s = 2 * w + (arrow_at(g, x, w) ? 1 : 0);
        if (!seen[at(s)]) {
            seen[at(s)] = 1;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        int v = s / 2;
        bool arrow_in = (s & 1) != 0;
        for (int u : g.neighbors(v)) {
            if (u == x) continue;
            bool collider = arrow_in && arrow_at(g, u, v);
            bool ok = collider ? an[at(v)] != 0 : latent[at(v)] != 0;
            if (!ok) continue;
            if (u == y) return true;
            int t = 2 * u + (arrow_at(g, v, u) ? 1 : 0);
            if (!seen[at(t)]) {
                seen[at(t)] = 1;
                stack.push_back(t);
            }
        }
    }
    return false;
}

MixedGraph latent_project(const MixedGraph& d, std::span<const std::string> observed) {
    if (d.kind() == GraphKind::Pag) throw InputError("latent_project needs a DAG or MAG");
    auto obs = d.vertices().indices_of(observed);
    std::sort(obs.begin(), obs.end());
    if (std::adjacent_find(obs.begin(), obs.end()) != obs.end()) throw InputError("latent_project: duplicate observed vertex");
    std::vector<char> latent(at(d.size()), 1);
    for (int v : obs) latent[at(v)] = 0;

    std::vector<std::vector<char>> an;
    an.reserve(obs.size());
    for (int v : obs) {
        const int vs[] = {v};
        an.push_back(ancestor_closure(d, vs));
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            int x = obs[i], y = obs[j];
            if (!has_inducing_path(d, x, y, latent)) continue;
            const bool x_an_y = an[j][at(x)] != 0;
            const bool y_an_x = an[i][at(y)] != 0;
            Mark at_x = y_an_x ? Mark::Arrow : (x_an_y ? Mark::Tail : Mark::Arrow);
            Mark at_y = x_an_y ? Mark::Arrow : (y_an_x ? Mark::Tail : Mark::Arrow);
            edges.push_back(Edge{static_cast<int>(i), static_cast<int>(j), at_x, at_y});
        }
    }
    return MixedGraph::from_edges(GraphKind::Mag, VertexNames(d.vertices().names_of(obs)), edges);
}

bool is_maximal(const MixedGraph& m) {
    for (int x = 0; x < m.size(); ++x) {
        for (int y = x + 1; y < m.size(); ++y) {
            if (m.adjacent(x, y)) continue;
            std::vector<int> all(static_cast<std::size_t>(m.size()));
            for (int v = 0; v < m.size(); ++v) all[at(v)] = v;
            if (!separable(m, x, y, all, SeparableMode::AncestorSet)) return false;
        }
    }
    return true;
}

}  // namespace dicola
