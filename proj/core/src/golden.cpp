#include "traintrack/golden.hpp"

namespace traintrack {

namespace {

Dir F(int e) { return Dir::forward(e); }
Dir B(int e) { return Dir::backward(e); }

}  // namespace

OrientedGraph golden_graph() {
  return OrientedGraph(3, {{"a", 0, 1}, {"b", 2, 1}, {"c", 1, 2}, {"d", 2, 0}, {"e", 2, 0}});
}

GraphMap golden_map() {
  const auto G = golden_graph();
  enum { a, b, c, d, e };
  return GraphMap(G, G, {1, 2, 0},
                  {make_path(G, {B(b)}), make_path(G, {B(d)}), make_path(G, {F(e)}), make_path(G, {B(e), B(c)}),
                   make_path(G, {F(a)})});
}

GraphMap psi_map() {
  const OrientedGraph R(1, {{"x", 0, 0}, {"y", 0, 0}, {"z", 0, 0}});
  return GraphMap(R, R, {0}, {make_path(R, {F(1)}), make_path(R, {F(2)}), make_path(R, {F(2), B(0)})});
}

GraphMap fibonacci_map() {
  const OrientedGraph R(1, {{"a", 0, 0}, {"b", 0, 0}});
  return GraphMap(R, R, {0}, {make_path(R, {F(0), F(1)}), make_path(R, {F(0)})});
}

}  // namespace traintrack
