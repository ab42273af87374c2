#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "traintrack/folds.hpp"
#include "traintrack/polynomial.hpp"
#include "traintrack/train_track.hpp"

namespace traintrack {

struct SearchOptions {
  PnpOptions pnp;
  int jobs = 1;
  /// Shuffles the work order; results must not depend on it.
  std::optional<std::uint64_t> shuffle_seed;
};

/// h = g_sigma o f for a proper full fold f of e1 over e0 at the valence-4
/// vertex of a universe graph.
struct CandidateReport {
  int graph_index = 0;
  Dir e1;
  Dir e0;
  Relabeling sigma;
  GraphMap map;
  bool train_track = false;
  bool irreducible = false;
  bool fic = false;
  bool principal = false;
  /// stallings_decompose(map) is exactly (fold, sigma).
  bool round_trip = false;
  int class_id = -1;
};

struct VertexAudit {
  /// v0, v1 = terminus(e0), v2 = terminus(e1) pairwise distinct.
  bool distinct = false;
  /// g_sigma(v1') = v0, g_sigma(e1') = e0, g_sigma(v2') = v1.
  bool forced_images = false;
  /// h permutes the vertices in a single cycle.
  bool transitive = false;
  bool all() const { return distinct && forced_images && transitive; }
};

VertexAudit vertex_structure_audit(const CandidateReport& c);

struct SingleFoldSearch {
  int rank = 0;
  std::vector<OrientedGraph> universe;
  /// (graph, ordered direction pair) with distinct edges.
  std::size_t folds = 0;
  /// (graph, fold, sigma) triples.
  std::size_t triples = 0;
  std::size_t train_track = 0;
  std::size_t irreducible = 0;
  std::size_t fic = 0;
  std::size_t principal = 0;
  /// Train track candidates whose vertex action is not transitive.
  std::size_t intransitive = 0;
  /// Intransitive candidates that were nevertheless irreducible (expected 0).
  std::size_t intransitive_irreducible = 0;
  std::vector<CandidateReport> survivors;
  /// Indices into survivors, one list per relabeling class.
  std::vector<std::vector<int>> classes;

  int class_count() const { return static_cast<int>(classes.size()); }
};

/// Every single-fold candidate of the rank-r universe, classified cheapest
/// test first; principal survivors grouped up to relabeling conjugacy.
SingleFoldSearch single_fold_search(int rank, const SearchOptions& opts = {});

struct DriverStep {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FoldBookkeeping {
  int graphs = 0;
  int proper_full = 0;
  int complete = 0;
  /// Proper full folds over a loop edge leave the graph unchanged and are
  /// counted here instead.
  int loop_folds = 0;
  /// Complete folds identifying a loop with a non-loop edge: the merged
  /// vertex has valence 4 rather than 5.
  int loop_complete = 0;
  /// Complete folds of edges with a common terminus are not homotopy
  /// equivalences and are skipped.
  int parallel_complete = 0;
  int violations = 0;
};

/// Fold bookkeeping over all 6-edge trivalent rank-3 graphs.
FoldBookkeeping trivalent_fold_bookkeeping();

struct TheoremAReport {
  IntPolynomial char_poly;
  RootInterval stretch;
  FoldBookkeeping bookkeeping;
  std::vector<DriverStep> steps;
  bool passed() const;
};

/// The checkable steps of the minimal-stretch argument for g.
TheoremAReport theorem_A_driver(const GraphMap& g);

}  // namespace traintrack
