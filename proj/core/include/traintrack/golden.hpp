#pragma once

#include "traintrack/graph_map.hpp"

namespace traintrack {

/// Three vertices Y, Z, X (0, 1, 2) and edges a: Y->Z, b: X->Z, c: Z->X,
/// d: X->Y, e: X->Y.
OrientedGraph golden_graph();
/// a -> ~b, b -> ~d, c -> e, d -> ~e ~c, e -> a
GraphMap golden_map();
/// x -> y, y -> z, z -> z ~x on the 3-petal rose.
GraphMap psi_map();
/// a -> a b, b -> a on the 2-petal rose.
GraphMap fibonacci_map();

}  // namespace traintrack
