#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "traintrack/graph.hpp"
#include "traintrack/graph_map.hpp"

namespace traintrack {
inline void PrintTo(Dir d, std::ostream* os) { *os << (d.reversed() ? "~" : "") << d.edge(); }
}  // namespace traintrack

namespace tt_test {

using traintrack::Dir;
using traintrack::EdgePath;
using traintrack::GraphMap;
using traintrack::OrientedGraph;

inline Dir F(int e) { return Dir::forward(e); }
inline Dir B(int e) { return Dir::backward(e); }

// Vertices Y=0, Z=1, X=2; edges a..e.
inline OrientedGraph g_graph() {
  return OrientedGraph(3, {{"a", 0, 1}, {"b", 2, 1}, {"c", 1, 2}, {"d", 2, 0}, {"e", 2, 0}});
}

// a -> ~b, b -> ~d, c -> e, d -> ~e ~c, e -> a
inline GraphMap g_map() {
  const auto G = g_graph();
  enum { a, b, c, d, e };
  return GraphMap(G, G, {1, 2, 0},
                  {traintrack::make_path(G, {B(b)}), traintrack::make_path(G, {B(d)}),
                   traintrack::make_path(G, {F(e)}), traintrack::make_path(G, {B(e), B(c)}),
                   traintrack::make_path(G, {F(a)})});
}

inline OrientedGraph rose(int petals) {
  std::vector<traintrack::EdgeSpec> es;
  const std::string names = "xyzwuvst";
  for (int i = 0; i < petals; ++i) es.push_back({std::string(1, names[i]), 0, 0});
  return OrientedGraph(1, es);
}

// x -> y, y -> z, z -> z ~x
inline GraphMap psi_map() {
  const auto R = rose(3);
  return GraphMap(R, R, {0},
                  {traintrack::make_path(R, {F(1)}), traintrack::make_path(R, {F(2)}),
                   traintrack::make_path(R, {F(2), B(0)})});
}

}  // namespace tt_test
