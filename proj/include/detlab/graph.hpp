#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "detlab/bool_matrix.hpp"

// Graph algorithms over the precedence graph of a Boolean matrix: vertex i
// has an edge to j iff entry (i, j) is set.
namespace detlab::graph {

struct Components {
  std::vector<std::size_t> component;  // component id per vertex
  std::size_t count = 0;
};

/// Tarjan's strongly connected components.
Components strongly_connected_components(const BoolMatrix& adj);

/// Maximum number of internally vertex-disjoint paths from u to v (u != v),
/// computed by unit-capacity augmenting paths on the split-vertex network.
/// Counting stops at `limit`. A direct edge u -> v counts as one path.
std::size_t vertex_disjoint_paths(const BoolMatrix& adj, std::size_t u, std::size_t v, std::size_t limit);

/// Every ordered pair u != v without an edge u -> v is joined by at least r
/// vertex-disjoint paths.
bool is_r_connected(const BoolMatrix& adj, std::size_t r);

/// A permutation sigma with m(i, sigma[i]) = 1 for all rows i, if one exists.
std::optional<std::vector<std::size_t>> perfect_matching(const BoolMatrix& m);

}  // namespace detlab::graph
