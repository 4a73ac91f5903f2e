#ifndef DICOLA_GRAPH_IO_HPP
#define DICOLA_GRAPH_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "dicola/graph.hpp"

namespace dicola {

// Text graph format, one edge per line:
//
//   vertices: A,B,C
//   A --> B
//   B o-o C
//
// The edge token is LMARK '-' RMARK with LMARK in {-,<,o} and RMARK in {-,>,o}.
// '#' starts a comment line. Vertices not declared in the header are added in
// order of first appearance.

/// Writes the canonical form: header listing every vertex, then edges in
/// (lower index, higher index) order with the lower-index vertex on the left.
std::string write_graph(const MixedGraph& g);
std::string write_graph(const UndirectedGraph& g);

/// Without `kind`, the kind is inferred: any circle or tail-tail edge gives a
/// PAG, any bidirected edge a MAG, otherwise a DAG.
MixedGraph read_graph(std::string_view text, std::optional<GraphKind> kind = std::nullopt);
/// Reads an undirected graph; every edge must be `---`.
UndirectedGraph read_undirected_graph(std::string_view text);

MixedGraph load_graph(const std::filesystem::path& path, std::optional<GraphKind> kind = std::nullopt);
void save_graph(const std::filesystem::path& path, const MixedGraph& g);

std::string edge_token(Mark left, Mark right);

}  // namespace dicola

#endif  // DICOLA_GRAPH_IO_HPP
