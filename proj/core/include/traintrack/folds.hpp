#pragma once

#include <optional>
#include <string>
#include <vector>

#include "traintrack/graph_map.hpp"
#include "traintrack/relabel.hpp"

namespace traintrack {

/// A single fold of direction e1 with direction e0 at their common origin.
///
/// proper_full: e0 is identified with an initial segment of e1 (e1 -> e0 e1).
/// complete: e1 and e0 are identified; e1 disappears and later edges shift
/// down by one index.
/// partial: initial segments are identified; a new vertex w and a new edge
/// s from the fold vertex to w are appended (e0 -> s e0, e1 -> s e1).
struct FoldMove {
  enum class Kind { proper_full, complete, partial };
  Kind kind = Kind::proper_full;
  Dir e1;
  Dir e0;
  /// Source graph to folded graph.
  GraphMap map;
  /// Result edge to source edge, -1 for the new edge of a partial fold.
  std::vector<int> edge_origin;
  int new_vertex = -1;
  int new_edge = -1;

  const OrientedGraph& source() const { return map.source(); }
  const OrientedGraph& result() const { return map.target(); }
};

std::string to_string(FoldMove::Kind k);

FoldMove apply_fold(const OrientedGraph& g, Dir e1, Dir e0, FoldMove::Kind kind);

/// A fold or a relabeling isomorphism, with the map it realizes.
struct FoldStep {
  std::optional<FoldMove> fold;
  Relabeling sigma;
  GraphMap map;

  bool is_fold() const { return fold.has_value(); }
  const OrientedGraph& source() const { return map.source(); }
  const OrientedGraph& target() const { return map.target(); }
};

FoldStep fold_step(FoldMove move);
/// Relabeling step from g onto `target`, which must equal sigma . g.
FoldStep relabel_step(const OrientedGraph& g, const Relabeling& sigma, const OrientedGraph& target);

/// Ordered composable steps. A clean sequence has all folds first and exactly
/// one final relabeling.
struct FoldSequence {
  std::vector<FoldStep> steps;

  const OrientedGraph& source() const { return steps.front().source(); }
  const OrientedGraph& target() const { return steps.back().target(); }
  int fold_count() const;
  bool is_clean() const;
  /// Final relabeling of a clean sequence.
  const Relabeling& final_relabeling() const;
  std::vector<const FoldMove*> folds() const;
  /// Composition of every step, tightened.
  GraphMap composed() const;
};

/// Thrown when folding ends in a map that is not a graph isomorphism.
class DecompositionError : public DomainError {
 public:
  DecompositionError(const std::string& what, GraphMap residual)
      : DomainError(what), residual_(std::move(residual)) {}
  const GraphMap& residual() const { return residual_; }

 private:
  GraphMap residual_;
};

/// Greedy Stallings folding of a tight homotopy equivalence. The result is
/// clean and composes to g exactly.
FoldSequence stallings_decompose(const GraphMap& g);

/// Equivalent clean sequence: relabelings are conjugated past later folds and
/// merged into one final relabeling.
FoldSequence push_permutations(const FoldSequence& seq);

/// Fold-conjugate of a clean self-map decomposition starting at graph j.
FoldSequence rotate(const FoldSequence& seq, int j);
/// Partial-fold conjugate: fold j (0-based) is subdivided and the sequence
/// restarts at the subdivision. `split` is the number of edges of the image
/// of the folded segment under the rest of the loop that precede the
/// subdivision point; it must name an interior vertex of that image. Throws
/// StructuralError otherwise.
FoldSequence rotate_subdivided(const FoldSequence& seq, int j, int split);
/// Length of the image of the folded segment of fold j under the rest of the
/// loop; valid splits are 1 .. length-1.
int subdivision_length(const FoldSequence& seq, int j);

/// Clean decomposition of g^p from a clean decomposition of g.
FoldSequence compose_power(const FoldSequence& seq, int p);

/// Concatenation of two composable sequences (relabelings left in place).
FoldSequence concat(const FoldSequence& a, const FoldSequence& b);

std::string describe(const FoldSequence& seq);

}  // namespace traintrack
