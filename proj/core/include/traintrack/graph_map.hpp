#pragma once

#include <vector>

#include "traintrack/graph.hpp"

namespace traintrack {

/// Vertex assignment plus an edge path for every positively oriented edge.
/// The image of a reversed edge is the reverse of the stored image.
class GraphMap {
 public:
  GraphMap() = default;
  /// Validates: each image is a nonempty path starting at the image of the
  /// edge's origin and ending at the image of its terminus.
  GraphMap(OrientedGraph source, OrientedGraph target, std::vector<int> vertex_image,
           std::vector<EdgePath> edge_image);

  static GraphMap identity(const OrientedGraph& g);

  const OrientedGraph& source() const { return source_; }
  const OrientedGraph& target() const { return target_; }
  bool is_self_map() const { return source_ == target_; }

  int vertex_image(int v) const { return vertex_image_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& vertex_images() const { return vertex_image_; }
  const EdgePath& edge_image(int e) const { return edge_image_.at(static_cast<std::size_t>(e)); }
  const std::vector<EdgePath>& edge_images() const { return edge_image_; }
  /// Image of a direction, reversed for backward directions.
  EdgePath image(Dir d) const;
  /// Concatenated image of a path, not tightened.
  EdgePath image(const EdgePath& p) const;

  /// Same incidence data and identical edge images.
  bool operator==(const GraphMap& other) const;

 private:
  OrientedGraph source_;
  OrientedGraph target_;
  std::vector<int> vertex_image_;
  std::vector<EdgePath> edge_image_;
};

/// g after f, edge images tightened. Throws StructuralError when target of f
/// is not the source of g or when an edge image cancels completely.
GraphMap compose(const GraphMap& g, const GraphMap& f);
/// g^k for a self-map, k >= 1.
GraphMap power(const GraphMap& g, int k);

/// Dg indexed by direction code of the source graph.
std::vector<Dir> direction_map(const GraphMap& g);
/// Directions lying on cycles of Dg.
std::vector<Dir> periodic_directions(const GraphMap& g);
/// Least common multiple of the Dg cycle lengths.
long long direction_period(const GraphMap& g);

/// Smallest k >= 1 such that Dg^k identifies the two directions, or 0 when
/// they stay distinct for |D|^2 steps (and therefore forever).
int collapse_time(const std::vector<Dir>& dg, Dir a, Dir b);

/// Partition of directions into gates. Each gate is sorted; gates are sorted
/// by their first element.
std::vector<std::vector<Dir>> gates(const GraphMap& g);

}  // namespace traintrack
