#pragma once

#include <optional>
#include <string>
#include <vector>

#include "traintrack/graph_map.hpp"
#include "traintrack/polynomial.hpp"
#include "traintrack/relabel.hpp"
#include "traintrack/train_track.hpp"

namespace traintrack {

struct WhiteheadGraph {
  enum class Kind { local, stable };
  Kind kind = Kind::local;
  int vertex = 0;
  /// Sorted.
  std::vector<Dir> vertices;
  /// Sorted.
  std::vector<Turn> edges;

  /// Vertex sets of the connected components, each sorted, in order of
  /// their smallest direction.
  std::vector<std::vector<Dir>> components() const;
  bool connected() const { return components().size() <= 1; }
};

/// Directions at v joined by the turns of the taken-turn closure.
WhiteheadGraph local_whitehead(const GraphMap& g, int v);
/// The local graph restricted to periodic directions.
WhiteheadGraph stable_whitehead(const GraphMap& g, int v);

struct IdealComponent {
  int vertex = 0;
  std::vector<Dir> vertices;
  std::vector<Turn> edges;
  bool is_triangle() const { return vertices.size() == 3 && edges.size() == 3; }
};

struct IdealWhiteheadGraph {
  std::vector<IdealComponent> components;
  PnpResult pnp;

  std::vector<int> sizes() const;
  /// Sum over components of 1 - k/2.
  Rational rotationless_index() const;
};

/// Disjoint union of the stable Whitehead graphs with 2-vertex components
/// removed. Refuses (DomainError) unless the bounded PNP search is clean.
IdealWhiteheadGraph ideal_whitehead(const GraphMap& g, const PnpOptions& opts = {});

struct PrincipalVerdict {
  bool principal = false;
  int rank = 0;
  FicReport fic;
  std::optional<IdealWhiteheadGraph> iw;
  Rational index = 0;
  Rational expected_index = 0;
  std::vector<std::string> reasons;
};

/// Principal iff the FIC passes and the ideal Whitehead graph is 2r-3
/// triangles; the index identity i = 3/2 - r is checked alongside. The rank
/// defaults to that of the underlying graph.
PrincipalVerdict is_principal(const GraphMap& g, const PnpOptions& opts = {}, std::optional<int> rank = {});

/// Whitehead data over a graph: every direction is a purple (periodic) or red
/// vertex; turn edges are purple between two purple vertices and red
/// otherwise; black edges [e, ~e] are implicit in the graph.
struct LttStructure {
  OrientedGraph graph;
  /// Indexed by direction code.
  std::vector<bool> purple;
  std::vector<Turn> purple_edges;
  std::vector<Turn> red_edges;

  std::vector<Dir> red_vertices() const;
  std::vector<Turn> edges_at(Dir d) const;
  /// Purple subgraph at a graph vertex.
  WhiteheadGraph purple_at(int v) const;
  bool operator==(const LttStructure& o) const {
    return graph == o.graph && purple == o.purple && purple_edges == o.purple_edges && red_edges == o.red_edges;
  }
  /// Exact comparison key (incidence, colors, turns).
  std::vector<int> encode() const;
};

LttStructure make_ltt(OrientedGraph graph, std::vector<bool> purple, std::vector<Turn> turns);

/// G(g) for a train track map.
LttStructure ltt_structure(const GraphMap& g);

LttStructure relabel(const LttStructure& s, const Relabeling& sigma);

enum class IsoMode { exact, relabeling };
/// Witness relabeling carrying a onto b, if any.
std::optional<Relabeling> ltt_isomorphic(const LttStructure& a, const LttStructure& b, IsoMode mode);

/// Lexicographically least encoding over all relabelings, with a relabeling
/// attaining it.
struct LttCanonical {
  std::vector<int> code;
  Relabeling sigma;
};
LttCanonical ltt_canonical(const LttStructure& s);

struct LonelyDirectionCheck {
  bool triangles = false;
  bool valences = false;
  bool single_red_vertex = false;
  bool single_red_edge = false;
  bool all() const { return triangles && valences && single_red_vertex && single_red_edge; }
};
/// The four structural conditions of the lonely direction property in rank r.
LonelyDirectionCheck lonely_direction(const LttStructure& s, int rank);

std::string ltt_to_dot(const LttStructure& s, const std::string& name = "ltt");

}  // namespace traintrack
