#include "dicola/graph.hpp"

#include <algorithm>
#include <deque>

#include "dicola/errors.hpp"

namespace dicola {

const char* to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::Dag: return "dag";
        case GraphKind::Mag: return "mag";
        case GraphKind::Pag: return "pag";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// VertexNames

VertexNames::VertexNames(std::vector<std::string> names) : names_(std::move(names)) {
    index_.reserve(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
        const auto& n = names_[i];
        if (n.empty()) throw InputError("vertex names must be non-empty");
        if (!index_.emplace(n, static_cast<int>(i)).second) throw InputError("duplicate vertex name: " + n);
    }
}

std::optional<int> VertexNames::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int VertexNames::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw InputError("unknown vertex: " + std::string(name));
}

std::vector<int> VertexNames::indices_of(std::span<const std::string> names) const {
    std::vector<int> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(index_of(n));
    return out;
}

std::vector<std::string> VertexNames::names_of(std::span<const int> vs) const {
    std::vector<std::string> out;
    out.reserve(vs.size());
    for (int v : vs) out.push_back(name(v));
    return out;
}

// ---------------------------------------------------------------------------
// MixedGraph

MixedGraph::MixedGraph(GraphKind kind, std::vector<std::string> names)
    : MixedGraph(kind, VertexNames(std::move(names))) {}

MixedGraph::MixedGraph(GraphKind kind, VertexNames names)
    : kind_(kind),
      names_(std::move(names)),
      marks_(static_cast<std::size_t>(names_.size()) * static_cast<std::size_t>(names_.size()), 0),
      adj_(static_cast<std::size_t>(names_.size())) {}

void MixedGraph::check_vertex(int v) const {
    if (v < 0 || v >= size()) throw InputError("vertex index out of range: " + std::to_string(v));
}

Mark MixedGraph::mark(int from, int to) const {
    check_vertex(from);
    check_vertex(to);
    auto c = cell(from, to);
    if (c == 0) throw InputError("no edge between " + name(from) + " and " + name(to));
    return static_cast<Mark>(c - 1);
}

bool MixedGraph::is_directed(int u, int v) const {
    return adjacent(u, v) && mark(u, v) == Mark::Arrow && mark(v, u) == Mark::Tail;
}

bool MixedGraph::is_bidirected(int u, int v) const {
    return adjacent(u, v) && mark(u, v) == Mark::Arrow && mark(v, u) == Mark::Arrow;
}

std::vector<int> MixedGraph::parents(int v) const {
    std::vector<int> out;
    for (int u : neighbors(v))
        if (is_directed(u, v)) out.push_back(u);
    return out;
}

std::vector<int> MixedGraph::children(int v) const {
    std::vector<int> out;
    for (int u : neighbors(v))
        if (is_directed(v, u)) out.push_back(u);
    return out;
}

void MixedGraph::insert_unchecked(int a, int b, Mark at_a, Mark at_b) {
    cell(a, b) = static_cast<std::uint8_t>(1 + static_cast<int>(at_b));
    cell(b, a) = static_cast<std::uint8_t>(1 + static_cast<int>(at_a));
    auto& na = adj_[static_cast<std::size_t>(a)];
    auto& nb = adj_[static_cast<std::size_t>(b)];
    na.insert(std::lower_bound(na.begin(), na.end(), b), b);
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    ++num_edges_;
}

namespace {

bool reaches_directed(const MixedGraph& g, int from, int to) {
    std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
    std::vector<int> stack{from};
    seen[static_cast<std::size_t>(from)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == to) return true;
        for (int w : g.neighbors(v)) {
            if (!seen[static_cast<std::size_t>(w)] && g.is_directed(v, w)) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    return false;
}

}  // namespace

void MixedGraph::validate_insert(int a, int b, Mark at_a, Mark at_b) {
    check_vertex(a);
    check_vertex(b);
    if (a == b) throw InputError("self-loop on " + name(a));
    if (adjacent(a, b)) throw InputError("multiple edges between " + name(a) + " and " + name(b));
    const bool directed = (at_a == Mark::Tail && at_b == Mark::Arrow) || (at_a == Mark::Arrow && at_b == Mark::Tail);
    const bool bidirected = at_a == Mark::Arrow && at_b == Mark::Arrow;
    switch (kind_) {
        case GraphKind::Dag:
            if (!directed) throw InputError("DAG edges must be directed: " + name(a) + " " + name(b));
            break;
        case GraphKind::Mag:
            if (!directed && !bidirected)
                throw InputError("MAG edges must be directed or bidirected: " + name(a) + " " + name(b));
            break;
        case GraphKind::Pag:
            break;
    }
}

void MixedGraph::add_edge(int a, int b, Mark at_a, Mark at_b) {
    validate_insert(a, b, at_a, at_b);
    insert_unchecked(a, b, at_a, at_b);
    if (kind_ == GraphKind::Dag) {
        int from = at_b == Mark::Arrow ? a : b;
        int to = from == a ? b : a;
        if (reaches_directed(*this, to, from)) {
            remove_edge(a, b);
            throw InputError("edge " + name(from) + " -> " + name(to) + " creates a directed cycle");
        }
    } else if (kind_ == GraphKind::Mag && !is_ancestral(*this)) {
        remove_edge(a, b);
        throw InputError("edge between " + name(a) + " and " + name(b) + " violates ancestrality");
    }
}

void MixedGraph::add_edge(std::string_view a, std::string_view b, Mark at_a, Mark at_b) {
    add_edge(index_of(a), index_of(b), at_a, at_b);
}

void MixedGraph::add_directed(std::string_view from, std::string_view to) {
    add_directed(index_of(from), index_of(to));
}

void MixedGraph::add_bidirected(std::string_view a, std::string_view b) {
    add_bidirected(index_of(a), index_of(b));
}

void MixedGraph::remove_edge(int a, int b) {
    check_vertex(a);
    check_vertex(b);
    if (!adjacent(a, b)) return;
    cell(a, b) = 0;
    cell(b, a) = 0;
    auto& na = adj_[static_cast<std::size_t>(a)];
    auto& nb = adj_[static_cast<std::size_t>(b)];
    na.erase(std::lower_bound(na.begin(), na.end(), b));
    nb.erase(std::lower_bound(nb.begin(), nb.end(), a));
    --num_edges_;
}

void MixedGraph::set_mark(int from, int to, Mark m) {
    if (kind_ != GraphKind::Pag) throw ContractError("set_mark is only defined on PAGs");
    check_vertex(from);
    check_vertex(to);
    if (!adjacent(from, to)) throw InputError("no edge between " + name(from) + " and " + name(to));
    cell(from, to) = static_cast<std::uint8_t>(1 + static_cast<int>(m));
}

std::vector<Edge> MixedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (int a = 0; a < size(); ++a)
        for (int b : neighbors(a))
            if (a < b) out.push_back(Edge{a, b, mark(b, a), mark(a, b)});
    return out;
}

MixedGraph MixedGraph::from_edges(GraphKind kind, VertexNames names, std::span<const Edge> edges) {
    MixedGraph out(kind, std::move(names));
    for (const auto& e : edges) {
        out.validate_insert(e.a, e.b, e.at_a, e.at_b);
        out.insert_unchecked(e.a, e.b, e.at_a, e.at_b);
    }
    if (kind == GraphKind::Dag && has_directed_cycle(out)) throw InputError("DAG contains a directed cycle");
    if (kind == GraphKind::Mag && !is_ancestral(out)) throw InputError("MAG is not ancestral");
    return out;
}

MixedGraph MixedGraph::as_kind(GraphKind kind) const { return from_edges(kind, names_, edges()); }

bool MixedGraph::operator==(const MixedGraph& other) const {
    return kind_ == other.kind_ && names_ == other.names_ && marks_ == other.marks_;
}

// ---------------------------------------------------------------------------
// UndirectedGraph

UndirectedGraph::UndirectedGraph(std::vector<std::string> names) : UndirectedGraph(VertexNames(std::move(names))) {}

UndirectedGraph::UndirectedGraph(VertexNames names)
    : names_(std::move(names)),
      adjm_(static_cast<std::size_t>(names_.size()) * static_cast<std::size_t>(names_.size()), 0),
      adj_(static_cast<std::size_t>(names_.size())) {}

void UndirectedGraph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= size() || v >= size()) throw InputError("vertex index out of range");
    if (u == v) throw InputError("self-loop on " + name(u));
    if (adjacent(u, v)) return;
    const auto n = static_cast<std::size_t>(size());
    adjm_[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] = 1;
    adjm_[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] = 1;
    auto& nu = adj_[static_cast<std::size_t>(u)];
    auto& nv = adj_[static_cast<std::size_t>(v)];
    nu.insert(std::lower_bound(nu.begin(), nu.end(), v), v);
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++num_edges_;
}

void UndirectedGraph::remove_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= size() || v >= size()) throw InputError("vertex index out of range");
    if (u == v || !adjacent(u, v)) return;
    const auto n = static_cast<std::size_t>(size());
    adjm_[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] = 0;
    adjm_[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] = 0;
    auto& nu = adj_[static_cast<std::size_t>(u)];
    auto& nv = adj_[static_cast<std::size_t>(v)];
    nu.erase(std::lower_bound(nu.begin(), nu.end(), v));
    nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
    --num_edges_;
}

std::vector<std::pair<int, int>> UndirectedGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(num_edges_);
    for (int a = 0; a < size(); ++a)
        for (int b : neighbors(a))
            if (a < b) out.emplace_back(a, b);
    return out;
}

std::vector<std::vector<int>> UndirectedGraph::components(const std::vector<char>& removed) const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(removed);
    seen.resize(static_cast<std::size_t>(size()), 0);
    for (int s = 0; s < size(); ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> comp{s};
        seen[static_cast<std::size_t>(s)] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (int w : neighbors(comp[i])) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<std::vector<int>> UndirectedGraph::components() const {
    return components(std::vector<char>(static_cast<std::size_t>(size()), 0));
}

bool UndirectedGraph::separated(int x, int y, std::span<const int> z) const {
    std::vector<char> blocked(static_cast<std::size_t>(size()), 0);
    for (int v : z) blocked[static_cast<std::size_t>(v)] = 1;
    if (blocked[static_cast<std::size_t>(x)] || blocked[static_cast<std::size_t>(y)]) return true;
    std::vector<int> stack{x};
    blocked[static_cast<std::size_t>(x)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : neighbors(v)) {
            if (w == y) return false;
            if (!blocked[static_cast<std::size_t>(w)]) {
                blocked[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    return true;
}

bool UndirectedGraph::operator==(const UndirectedGraph& other) const {
    return names_ == other.names_ && adjm_ == other.adjm_;
}

// ---------------------------------------------------------------------------
// Structural queries

std::vector<char> ancestor_closure(const MixedGraph& g, std::span<const int> xs) {
    std::vector<char> in(static_cast<std::size_t>(g.size()), 0);
    std::vector<int> stack;
    for (int x : xs) {
        if (x < 0 || x >= g.size()) throw InputError("vertex index out of range");
        if (!in[static_cast<std::size_t>(x)]) {
            in[static_cast<std::size_t>(x)] = 1;
            stack.push_back(x);
        }
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : g.neighbors(v)) {
            if (!in[static_cast<std::size_t>(u)] && g.is_directed(u, v)) {
                in[static_cast<std::size_t>(u)] = 1;
                stack.push_back(u);
            }
        }
    }
    return in;
}

std::vector<int> ancestors(const MixedGraph& g, int x) {
    const int xs[] = {x};
    auto in = ancestor_closure(g, xs);
    std::vector<int> out;
    for (int v = 0; v < g.size(); ++v)
        if (in[static_cast<std::size_t>(v)] && v != x) out.push_back(v);
    return out;
}

std::vector<int> ancestors(const MixedGraph& g, std::string_view x) { return ancestors(g, g.index_of(x)); }

bool is_collider(const MixedGraph& g, int a, int b, int c) {
    if (!g.adjacent(a, b) || !g.adjacent(b, c)) throw InputError("is_collider: missing edge");
    return g.mark(a, b) == Mark::Arrow && g.mark(c, b) == Mark::Arrow;
}

bool is_collider(const MixedGraph& g, std::string_view a, std::string_view b, std::string_view c) {
    return is_collider(g, g.index_of(a), g.index_of(b), g.index_of(c));
}

bool has_directed_cycle(const MixedGraph& g) {
    // Kahn's algorithm over directed edges only.
    const auto n = static_cast<std::size_t>(g.size());
    std::vector<int> indeg(n, 0);
    for (int v = 0; v < g.size(); ++v)
        for (int w : g.neighbors(v))
            if (g.is_directed(v, w)) ++indeg[static_cast<std::size_t>(w)];
    std::vector<int> queue;
    for (int v = 0; v < g.size(); ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    std::size_t done = 0;
    while (done < queue.size()) {
        int v = queue[done++];
        for (int w : g.neighbors(v))
            if (g.is_directed(v, w) && --indeg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
    }
    return done != n;
}

bool is_ancestral(const MixedGraph& g) {
    if (has_directed_cycle(g)) return false;
    for (int v = 0; v < g.size(); ++v) {
        std::vector<char> an;
        for (int w : g.neighbors(v)) {
            if (w > v && g.is_bidirected(v, w)) {
                if (an.empty()) {
                    const int vs[] = {v};
                    an = ancestor_closure(g, vs);
                }
                if (an[static_cast<std::size_t>(w)]) return false;
                const int ws[] = {w};
                if (ancestor_closure(g, ws)[static_cast<std::size_t>(v)]) return false;
            }
        }
    }
    return true;
}

bool is_maximal(const MixedGraph& g, const std::function<bool(int, int, std::span<const int>)>& separates) {
    const int n = g.size();
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            if (g.adjacent(x, y)) continue;
            std::vector<int> rest;
            for (int v = 0; v < n; ++v)
                if (v != x && v != y) rest.push_back(v);
            bool found = false;
            const std::size_t limit = std::size_t{1} << rest.size();
            std::vector<int> z;
            for (std::size_t mask = 0; mask < limit && !found; ++mask) {
                z.clear();
                for (std::size_t i = 0; i < rest.size(); ++i)
                    if (mask & (std::size_t{1} << i)) z.push_back(rest[i]);
                found = separates(x, y, z);
            }
            if (!found) return false;
        }
    }
    return true;
}

MixedGraph induced_subgraph(const MixedGraph& g, std::span<const int> keep) {
    std::vector<char> in(static_cast<std::size_t>(g.size()), 0);
    for (int v : keep) {
        if (v < 0 || v >= g.size()) throw InputError("induced_subgraph: vertex index out of range");
        in[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<int> order;
    for (int v = 0; v < g.size(); ++v)
        if (in[static_cast<std::size_t>(v)]) order.push_back(v);
    MixedGraph out(g.kind(), g.vertices().names_of(order));
    std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
    for (std::size_t i = 0; i < order.size(); ++i) local[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    for (const auto& e : g.edges()) {
        int a = local[static_cast<std::size_t>(e.a)];
        int b = local[static_cast<std::size_t>(e.b)];
        if (a >= 0 && b >= 0) out.insert_unchecked(a, b, e.at_a, e.at_b);
    }
    return out;
}

MixedGraph induced_subgraph(const MixedGraph& g, std::span<const std::string> keep) {
    auto idx = g.vertices().indices_of(keep);
    return induced_subgraph(g, idx);
}

UndirectedGraph skeleton(const MixedGraph& g) {
    UndirectedGraph out(g.vertices());
    for (const auto& e : g.edges()) out.add_edge(e.a, e.b);
    return out;
}

UndirectedGraph induced_subgraph(const UndirectedGraph& g, std::span<const std::string> keep) {
    auto idx = g.vertices().indices_of(keep);
    std::sort(idx.begin(), idx.end());
    UndirectedGraph out(g.vertices().names_of(idx));
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
            if (g.adjacent(idx[i], idx[j])) out.add_edge(static_cast<int>(i), static_cast<int>(j));
    return out;
}

}  // namespace dicola
