#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace traintrack {

/// Thrown when a combinatorial object violates its structural contract
/// (endpoint mismatch, unknown label, graph mismatch in a composition).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation's mathematical precondition does not hold
/// (e.g. searching Nielsen paths of a non-expanding map).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An oriented edge germ: edge index plus orientation, packed as 2*edge+rev.
class Dir {
 public:
  constexpr Dir() = default;
  static constexpr Dir forward(int edge) { return Dir(2 * edge); }
  static constexpr Dir backward(int edge) { return Dir(2 * edge + 1); }
  static constexpr Dir from_code(int code) { return Dir(code); }

  constexpr int edge() const { return code_ >> 1; }
  constexpr bool reversed() const { return (code_ & 1) != 0; }
  constexpr int code() const { return code_; }
  constexpr Dir inverse() const { return Dir(code_ ^ 1); }
  /// Reversed when `flip` is set.
  constexpr Dir oriented(bool flip) const { return flip ? inverse() : *this; }

  constexpr auto operator<=>(const Dir&) const = default;

 private:
  constexpr explicit Dir(int code) : code_(code) {}
  int code_ = 0;
};

/// Unordered pair of directions, stored sorted so equality is structural.
class Turn {
 public:
  Turn(Dir a, Dir b) : first_(std::min(a, b)), second_(std::max(a, b)) {}
  Dir first() const { return first_; }
  Dir second() const { return second_; }
  bool degenerate() const { return first_ == second_; }
  bool contains(Dir d) const { return first_ == d || second_ == d; }
  Dir other(Dir d) const { return first_ == d ? second_ : first_; }
  auto operator<=>(const Turn&) const = default;

 private:
  Dir first_;
  Dir second_;
};

struct EdgeSpec {
  std::string name;
  int from = 0;
  int to = 0;
};

/// Finite multigraph with positively oriented, named edges.
///
/// Vertex indices are normalized at construction: vertices are numbered in
/// order of first appearance when scanning edges (origin, then terminus).
/// Two graphs compare equal when their incidence data agree; edge names are
/// carried for printing only.
class OrientedGraph {
 public:
  OrientedGraph() = default;
  /// `vertex_count` may exceed the number of vertices touched by edges; the
  /// extra vertices are isolated and numbered last.
  OrientedGraph(int vertex_count, std::vector<EdgeSpec> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int direction_count() const { return 2 * edge_count(); }

  const EdgeSpec& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<EdgeSpec>& edges() const { return edges_; }
  const std::string& edge_name(int e) const { return edge(e).name; }
  std::string dir_name(Dir d) const;
  std::string turn_name(Turn t) const;
  std::optional<int> find_edge(const std::string& name) const;

  int origin(Dir d) const;
  int terminus(Dir d) const;
  bool is_loop(int e) const { return edge(e).from == edge(e).to; }

  /// Directions with initial vertex `v`, sorted by code.
  const std::vector<Dir>& directions_at(int v) const;
  std::vector<Dir> all_directions() const;
  int valence(int v) const { return static_cast<int>(directions_at(v).size()); }
  std::vector<int> valences() const;

  bool connected() const;
  int euler_characteristic() const { return vertex_count_ - edge_count(); }

  /// Same incidence, edges renamed.
  OrientedGraph with_names(const std::vector<std::string>& names) const;

  friend bool operator==(const OrientedGraph& a, const OrientedGraph& b);

 private:
  int vertex_count_ = 0;
  std::vector<EdgeSpec> edges_;
  std::vector<std::vector<Dir>> at_vertex_;
};

bool operator==(const OrientedGraph& a, const OrientedGraph& b);

/// The renumbering applied by the OrientedGraph constructor to raw vertex ids.
std::vector<int> normalized_vertex_order(int vertex_count, const std::vector<EdgeSpec>& edges);

/// Finite sequence of directions. An empty path still has a basepoint.
struct EdgePath {
  int start = 0;
  std::vector<Dir> dirs;

  bool empty() const { return dirs.empty(); }
  std::size_t length() const { return dirs.size(); }
  bool operator==(const EdgePath&) const = default;
};

/// Endpoint of a path, or its basepoint when empty.
int path_end(const OrientedGraph& g, const EdgePath& p);
/// Throws StructuralError unless consecutive directions are endpoint-compatible.
void check_path(const OrientedGraph& g, const EdgePath& p);
EdgePath make_path(const OrientedGraph& g, std::vector<Dir> dirs);
EdgePath reverse(const OrientedGraph& g, const EdgePath& p);
EdgePath concat(const OrientedGraph& g, const EdgePath& a, const EdgePath& b);
/// Free reduction: removes every backtrack `x ~x`. Idempotent.
EdgePath tighten(const OrientedGraph& g, const EdgePath& p);
bool is_tight(const EdgePath& p);
/// Turns {~a_i, a_{i+1}} taken by the path.
std::vector<Turn> taken_turns(const EdgePath& p);
std::string path_name(const OrientedGraph& g, const EdgePath& p);

struct GraphInvariants {
  std::vector<int> valences;  // sorted descending
  int euler_characteristic = 0;
  int rank = 0;
  bool connected = false;
  int components = 0;
};

/// Rank is summed over components when the graph is disconnected.
GraphInvariants graph_invariants(const OrientedGraph& g);

}  // namespace traintrack

template <>
struct std::hash<traintrack::Dir> {
  std::size_t operator()(traintrack::Dir d) const noexcept { return std::hash<int>{}(d.code()); }
};
