#ifndef DICOLA_ORACLE_HPP
#define DICOLA_ORACLE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dicola/graph.hpp"

namespace dicola {

/// x and y are separated by z; x != y and neither is in z.
struct SeparationQuery {
    int x;
    int y;
    std::vector<int> z;
};

/// Vertices collider connected to `x` (adjacent, or joined by a path whose every
/// interior vertex is a collider), restricted to the vertices flagged in `within`
/// (all vertices when empty). Returned as a membership mask.
std::vector<char> collider_reach(const MixedGraph& m, int x, const std::vector<char>& within = {});

bool collider_connected(const MixedGraph& m, int x, int y);

/// Joins every collider-connected pair of an ancestral graph.
UndirectedGraph augmented_graph(const MixedGraph& m);

/// m-separation via the augmented graph of the subgraph induced on
/// An+({x, y} u z). Throws InputError on a malformed query.
bool m_separated(const MixedGraph& m, int x, int y, std::span<const int> z);
bool m_separated(const MixedGraph& m, const SeparationQuery& q);
bool m_separated(const MixedGraph& m, std::string_view x, std::string_view y, std::span<const std::string> z);

/// One m-connecting path when x and y are m-connected given z. Depth-first over
/// simple paths, so meant for desk-scale graphs.
std::optional<Path> m_connecting_path_witness(const MixedGraph& m, const SeparationQuery& q);

enum class SeparableMode { AncestorSet, BruteForce };

/// A subset of k \ {x, y} that m-separates x and y, if any. `AncestorSet` tests
/// only An({x, y}) n k, which is decisive in an ancestral graph. `BruteForce`
/// enumerates subsets by size, then lexicographically, and returns the first hit.
std::optional<std::vector<int>> separable(const MixedGraph& m, int x, int y, std::span<const int> k,
                                          SeparableMode mode = SeparableMode::AncestorSet);

/// Local skeleton over k: x - y iff no subset of k separates them.
UndirectedGraph local_skeleton(const MixedGraph& m, std::span<const int> k,
                               SeparableMode mode = SeparableMode::AncestorSet);
UndirectedGraph local_skeleton(const MixedGraph& m, std::span<const std::string> k,
                               SeparableMode mode = SeparableMode::AncestorSet);

/// Inducing path between x and y relative to the vertices flagged in `latent`:
/// every interior non-collider is latent, every interior collider is in An({x, y}).
bool has_inducing_path(const MixedGraph& g, int x, int y, const std::vector<char>& latent);

/// Marginalises a DAG (or MAG) onto `observed`. Adjacency follows inducing
/// paths; x -> y when x is an ancestor of y, x <-> y when neither is.
MixedGraph latent_project(const MixedGraph& d, std::span<const std::string> observed);

/// Maximality of an ancestral graph: every non-adjacent pair is separated by
/// the ancestors of the pair.
bool is_maximal(const MixedGraph& m);

}  // namespace dicola

#endif  // DICOLA_ORACLE_HPP
