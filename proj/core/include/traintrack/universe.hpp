#pragma once

#include <vector>

#include "traintrack/graph.hpp"

namespace traintrack {

/// Connected multigraphs with the given valence sequence, one per
/// isomorphism class. Vertex i has valence degrees[i] (sorted descending);
/// edges run from the lower to the higher vertex and are named a, b, c, ...
std::vector<OrientedGraph> enumerate_multigraphs(const std::vector<int>& degrees);

/// Rank-r graphs with one valence-4 vertex (vertex 0) and 2r-4 trivalent
/// ones. 3 <= r <= 5.
std::vector<OrientedGraph> build_universe(int rank);

/// Connected trivalent graphs of rank r (2r-2 vertices, 3r-3 edges).
std::vector<OrientedGraph> trivalent_graphs(int rank);

}  // namespace traintrack
