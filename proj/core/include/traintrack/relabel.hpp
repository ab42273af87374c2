#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "traintrack/graph.hpp"
#include "traintrack/graph_map.hpp"

namespace traintrack {

/// Signed permutation of edge labels: edge i goes to direction image[i].
/// Satisfies sigma(~e) = ~sigma(e) by construction.
class Relabeling {
 public:
  Relabeling() = default;
  explicit Relabeling(std::vector<Dir> image);
  static Relabeling identity(int edge_count);

  int size() const { return static_cast<int>(image_.size()); }
  Dir operator()(Dir d) const { return image_.at(static_cast<std::size_t>(d.edge())).oriented(d.reversed()); }
  const std::vector<Dir>& images() const { return image_; }
  bool is_identity() const;
  Relabeling inverse() const;
  /// (this o other)(d) = this(other(d)).
  Relabeling after(const Relabeling& other) const;
  /// Order in the group of signed permutations.
  int order() const;

  auto operator<=>(const Relabeling&) const = default;

 private:
  std::vector<Dir> image_;
};

/// sigma . Gamma: each label e replaced by sigma(e). Edge names stay positional.
OrientedGraph relabel(const OrientedGraph& g, const Relabeling& sigma);
/// Vertex correspondence Gamma -> sigma . Gamma.
std::vector<int> relabel_vertices(const OrientedGraph& g, const Relabeling& sigma);
/// The graph isomorphism g_sigma : Gamma -> sigma . Gamma. When `target` is
/// given it must equal sigma . Gamma and supplies the edge names.
GraphMap relabeling_map(const OrientedGraph& g, const Relabeling& sigma);
GraphMap relabeling_map(const OrientedGraph& g, const Relabeling& sigma, const OrientedGraph& target);
/// g_sigma o h o g_sigma^{-1}, a self-map of sigma . Gamma.
GraphMap relabel(const GraphMap& h, const Relabeling& sigma);

/// Every relabeling sigma with sigma . a == b (at most `limit`, 0 = all).
std::vector<Relabeling> find_isomorphisms(const OrientedGraph& a, const OrientedGraph& b, std::size_t limit = 0);
inline bool isomorphic(const OrientedGraph& a, const OrientedGraph& b) {
  return !find_isomorphisms(a, b, 1).empty();
}
/// Relabelings fixing the graph (including the identity).
inline std::vector<Relabeling> automorphisms(const OrientedGraph& g) { return find_isomorphisms(g, g); }

/// A relabeling is an isomorphism onto its own relabeled graph; this checks
/// whether a given map is one, returning its relabeling.
std::optional<Relabeling> as_relabeling(const GraphMap& g);

/// Some tau with tau . source(a) == source(b) and relabel(a, tau) == b.
std::optional<Relabeling> find_conjugating_relabeling(const GraphMap& a, const GraphMap& b);

std::string relabeling_name(const OrientedGraph& g, const Relabeling& sigma);

}  // namespace traintrack
