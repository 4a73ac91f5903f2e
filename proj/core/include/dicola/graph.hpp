#ifndef DICOLA_GRAPH_HPP
#define DICOLA_GRAPH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dicola {

enum class Mark : std::uint8_t { Tail, Arrow, Circle };

enum class GraphKind : std::uint8_t { Dag, Mag, Pag };

const char* to_string(GraphKind kind);

/// Ordered, unique vertex names with O(1) name lookup. Indices are dense 0..n-1.
class VertexNames {
public:
    VertexNames() = default;
    explicit VertexNames(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int v) const { return names_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<int> find(std::string_view name) const;
    bool contains(std::string_view name) const { return find(name).has_value(); }
    /// Throws InputError for an unknown name.
    int index_of(std::string_view name) const;
    std::vector<int> indices_of(std::span<const std::string> names) const;
    std::vector<std::string> names_of(std::span<const int> vs) const;

    bool operator==(const VertexNames& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

/// An edge in canonical order: a < b, with the mark at each endpoint.
struct Edge {
    int a;
    int b;
    Mark at_a;
    Mark at_b;

    bool operator==(const Edge&) const = default;
};

/// Simple mixed graph carrying per-endpoint marks. Serves as DAG, MAG and PAG.
///
/// `mark(u, v)` is the mark at `v` on the edge between `u` and `v`, so a
/// directed edge u -> v has mark(u, v) == Arrow and mark(v, u) == Tail.
/// Insertions that break the kind's constraints are rejected with InputError:
/// DAGs accept only acyclic directed edges, MAGs only directed or bidirected
/// edges that keep the graph ancestral.
class MixedGraph {
public:
    MixedGraph() = default;
    MixedGraph(GraphKind kind, std::vector<std::string> names);
    MixedGraph(GraphKind kind, VertexNames names);

    /// Builds the graph and validates kind constraints once at the end.
    static MixedGraph from_edges(GraphKind kind, VertexNames names, std::span<const Edge> edges);

    GraphKind kind() const { return kind_; }
    int size() const { return names_.size(); }
    const VertexNames& vertices() const { return names_; }
    const std::vector<std::string>& names() const { return names_.names(); }
    const std::string& name(int v) const { return names_.name(v); }
    int index_of(std::string_view name) const { return names_.index_of(name); }

    bool adjacent(int u, int v) const { return cell(u, v) != 0; }
    Mark mark(int from, int to) const;
    const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }

    /// u -> v
    bool is_directed(int u, int v) const;
    bool is_bidirected(int u, int v) const;
    std::vector<int> parents(int v) const;
    std::vector<int> children(int v) const;

    void add_edge(int a, int b, Mark at_a, Mark at_b);
    void add_edge(std::string_view a, std::string_view b, Mark at_a, Mark at_b);
    void add_directed(int from, int to) { add_edge(from, to, Mark::Tail, Mark::Arrow); }
    void add_directed(std::string_view from, std::string_view to);
    void add_bidirected(int a, int b) { add_edge(a, b, Mark::Arrow, Mark::Arrow); }
    void add_bidirected(std::string_view a, std::string_view b);
    void remove_edge(int a, int b);
    /// Sets the mark at `to`. Only legal on PAGs.
    void set_mark(int from, int to, Mark m);

    std::vector<Edge> edges() const;
    std::size_t num_edges() const { return num_edges_; }

    /// Same vertices and edges, re-validated under another kind.
    MixedGraph as_kind(GraphKind kind) const;

    bool operator==(const MixedGraph& other) const;

private:
    std::uint8_t cell(int u, int v) const {
        return marks_[static_cast<std::size_t>(u) * static_cast<std::size_t>(size()) + static_cast<std::size_t>(v)];
    }
    std::uint8_t& cell(int u, int v) {
        return marks_[static_cast<std::size_t>(u) * static_cast<std::size_t>(size()) + static_cast<std::size_t>(v)];
    }
    void check_vertex(int v) const;
    void insert_unchecked(int a, int b, Mark at_a, Mark at_b);
    void validate_insert(int a, int b, Mark at_a, Mark at_b);

    friend MixedGraph induced_subgraph(const MixedGraph& g, std::span<const int> keep);

    GraphKind kind_ = GraphKind::Pag;
    VertexNames names_;
    std::vector<std::uint8_t> marks_;  // 0: no edge, else 1 + Mark
    std::vector<std::vector<int>> adj_;
    std::size_t num_edges_ = 0;
};

/// Simple undirected graph: UIGs, augmented graphs, skeletons.
class UndirectedGraph {
public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(std::vector<std::string> names);
    explicit UndirectedGraph(VertexNames names);

    int size() const { return names_.size(); }
    const VertexNames& vertices() const { return names_; }
    const std::vector<std::string>& names() const { return names_.names(); }
    const std::string& name(int v) const { return names_.name(v); }
    int index_of(std::string_view name) const { return names_.index_of(name); }

    bool adjacent(int u, int v) const {
        return adjm_[static_cast<std::size_t>(u) * static_cast<std::size_t>(size()) + static_cast<std::size_t>(v)] != 0;
    }
    bool adjacent(std::string_view u, std::string_view v) const { return adjacent(index_of(u), index_of(v)); }
    const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }

    /// Adding an existing edge is a no-op.
    void add_edge(int u, int v);
    void add_edge(std::string_view u, std::string_view v) { add_edge(index_of(u), index_of(v)); }
    void remove_edge(int u, int v);
    void remove_edge(std::string_view u, std::string_view v) { remove_edge(index_of(u), index_of(v)); }

    /// Canonical order: (a, b) with a < b, sorted.
    std::vector<std::pair<int, int>> edges() const;
    std::size_t num_edges() const { return num_edges_; }

    /// Connected components after deleting the vertices flagged in `removed`.
    /// Each component is sorted; components are ordered by their smallest vertex.
    std::vector<std::vector<int>> components(const std::vector<char>& removed) const;
    std::vector<std::vector<int>> components() const;

    /// True iff every path from x to y meets z.
    bool separated(int x, int y, std::span<const int> z) const;

    bool operator==(const UndirectedGraph& other) const;

private:
    VertexNames names_;
    std::vector<std::uint8_t> adjm_;
    std::vector<std::vector<int>> adj_;
    std::size_t num_edges_ = 0;
};

/// An ordered vertex sequence; consecutive entries are adjacent in the host graph.
using Path = std::vector<int>;

std::vector<int> ancestors(const MixedGraph& g, int x);
std::vector<int> ancestors(const MixedGraph& g, std::string_view x);
/// An+(xs): the ancestors of every vertex in `xs`, plus `xs` itself. Returned as
/// a membership mask of length g.size().
std::vector<char> ancestor_closure(const MixedGraph& g, std::span<const int> xs);

/// Both edges must exist (InputError otherwise).
bool is_collider(const MixedGraph& g, int a, int b, int c);
bool is_collider(const MixedGraph& g, std::string_view a, std::string_view b, std::string_view c);

bool has_directed_cycle(const MixedGraph& g);
/// No directed cycle and no bidirected edge whose endpoints are related by ancestry.
bool is_ancestral(const MixedGraph& g);

/// Brute force: every non-adjacent pair must be separable by some subset of the
/// other vertices. `separates(x, y, z)` answers a single m-separation query.
bool is_maximal(const MixedGraph& g, const std::function<bool(int, int, std::span<const int>)>& separates);

/// Keeps the vertices in `keep` (in g's order) and every edge between them.
MixedGraph induced_subgraph(const MixedGraph& g, std::span<const int> keep);
MixedGraph induced_subgraph(const MixedGraph& g, std::span<const std::string> keep);

UndirectedGraph skeleton(const MixedGraph& g);

UndirectedGraph induced_subgraph(const UndirectedGraph& g, std::span<const std::string> keep);

}  // namespace dicola

#endif  // DICOLA_GRAPH_HPP
