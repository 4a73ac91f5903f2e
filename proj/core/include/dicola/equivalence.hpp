#ifndef DICOLA_EQUIVALENCE_HPP
#define DICOLA_EQUIVALENCE_HPP

#include <cstddef>
#include <vector>

#include "dicola/graph.hpp"

namespace dicola {

/// <first, ..., v, last> where first and last are non-adjacent and every vertex
/// strictly between first and v is a collider on the path and a parent of last.
/// Stored in path order; `path.size() >= 4`.
struct DiscriminatingPath {
    Path path;
    int discriminated() const { return path[path.size() - 2]; }
};

/// Every discriminating path of the graph, judged from its edge marks
/// ("parent" means a definite u -> last edge).
std::vector<DiscriminatingPath> discriminating_paths(const MixedGraph& g);

/// Same skeleton, same unshielded colliders, and the same collider status for
/// the discriminated vertex of every path discriminating in both graphs.
bool markov_equivalent(const MixedGraph& a, const MixedGraph& b);

/// Every MAG (directed/bidirected edges only) Markov equivalent to `mag`.
/// Throws ContractError once more than `limit` members are found.
std::vector<MixedGraph> equivalence_class(const MixedGraph& mag, std::size_t limit = 1'000'000);

/// The PAG of `mag` built from its equivalence class: a mark is kept when every
/// member agrees on it and becomes a circle otherwise.
MixedGraph pag_from_equivalence_class(const MixedGraph& mag);

}  // namespace dicola

#endif  // DICOLA_EQUIVALENCE_HPP
