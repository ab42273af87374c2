#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "traintrack/folds.hpp"
#include "traintrack/train_track.hpp"
#include "traintrack/whitehead.hpp"

namespace traintrack {

/// A relabeling class of Lonely-Direction ltt structures. Permutation edges
/// inside a class are implicit: every labeled node of the class is sigma . rep
/// for some relabeling sigma.
struct AutomatonClass {
  int id = 0;
  /// Index into Automaton::graphs.
  int graph = 0;
  LttStructure rep;
  /// Relabelings fixing rep (the identity included).
  std::vector<Relabeling> stabilizer;
  /// Number of labeled nodes in the class: 2^|E| |E|! / |stabilizer|.
  std::uint64_t labeled_nodes = 0;
  int scc = -1;
};

/// A proper full fold of e1 over e0 at rep(from), followed by the relabeling
/// sigma carrying the transported structure onto rep(to).
struct FoldEdge {
  int from = 0;
  int to = 0;
  Dir e1;
  Dir e0;
  Relabeling sigma;
  FoldMove fold;
  /// Transported structure on the folded graph.
  LttStructure transported;
};

struct Scc {
  std::vector<int> classes;
  /// Contains a directed cycle of fold edges.
  bool has_loop = false;
};

struct Automaton {
  int rank = 3;
  std::vector<OrientedGraph> graphs;
  std::vector<AutomatonClass> classes;
  std::vector<FoldEdge> edges;
  /// Candidate folds whose transported structure is not a node.
  std::size_t rejected_folds = 0;
  std::vector<Scc> sccs;
  /// Worker threads for the loop analyses below.
  int jobs = 1;

  std::uint64_t labeled_node_count() const;
  std::vector<int> edges_from(int cls) const;
  std::vector<int> edges_into(int cls) const;
  /// Class of an arbitrary Lonely-Direction structure with a relabeling tau
  /// such that tau . s == rep. Empty when s is not a node.
  std::optional<std::pair<int, Relabeling>> locate(const LttStructure& s) const;
};

/// Ltt structures on `graph` with the Lonely Direction property.
std::vector<LttStructure> lonely_direction_structures(const OrientedGraph& graph, int rank = 3);

/// Edge-local transport of s across the proper full fold `fold`.
LttStructure transport(const LttStructure& s, const FoldMove& fold);

struct AutomatonOptions {
  /// Relabel every base graph by a random relabeling first (stability checks).
  std::optional<std::uint64_t> relabel_seed;
  /// Copied into Automaton::jobs.
  int jobs = 1;
};

/// Builds the rank-3 automaton: classes, fold edges and SCCs.
Automaton build_automaton(int rank = 3, const AutomatonOptions& opts = {});

/// Tarjan SCCs of the class graph, in reverse topological order.
std::vector<Scc> scc_decomposition(int class_count, const std::vector<FoldEdge>& edges);

struct LoopStep {
  int edge = 0;
  /// Element of the target stabilizer applied after the edge's relabeling.
  Relabeling automorphism;
};

struct AutomatonLoop {
  int start = 0;
  std::vector<LoopStep> steps;
};

/// The loop as alternating folds and relabelings, with relabelings pushed to
/// the end.
FoldSequence loop_to_sequence(const Automaton& a, const AutomatonLoop& loop);
GraphMap loop_to_map(const Automaton& a, const AutomatonLoop& loop);
/// The loop started at its k-th class.
AutomatonLoop rotate_loop(const Automaton& a, const AutomatonLoop& loop, int k);

/// Every loop with at most max_length fold edges through the given classes
/// (all classes when empty), each automorphism choice counted separately.
/// Loops are listed once per starting point.
std::vector<AutomatonLoop> enumerate_loops(const Automaton& a, int max_length, const std::vector<int>& within = {});

struct LoopMatch {
  AutomatonLoop loop;
  /// Rotation of the decomposition that traces the loop.
  int rotation = 0;
  /// tau with loop_to_map(loop) == relabel(rotated map, tau).
  Relabeling tau;
};

/// Finds a clean self-map decomposition (or one of its rotations) as a
/// directed loop.
std::optional<LoopMatch> decomposition_to_loop(const Automaton& a, const FoldSequence& seq);

struct TransportCheck {
  /// Loops are listed once per starting point, so this covers every rotation.
  std::size_t loops = 0;
  /// Loop maps that are train tracks with every taken turn in the node.
  std::size_t contained = 0;
  /// Loop maps whose own structure is a node equal to the node it starts at.
  std::size_t equal = 0;
  /// Loop maps whose own structure has the Lonely Direction property but
  /// differs from the node.
  std::size_t mismatched = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Compares edge-local transport with directly computed structures on every
/// loop of length at most max_length, at every rotation.
TransportCheck check_transport(const Automaton& a, int max_length = 3);

struct NodeIAnalysis {
  int node_i = -1;
  /// SCCs with loops once Node I's class is removed.
  std::vector<Scc> remaining;
  /// Class ids of the remaining looped SCCs.
  std::vector<int> m_i;
  /// Smallest nonempty proper set of edge labels in a common frame of each
  /// m_i component that every permutation preserves and no fold maps over an
  /// edge outside it. Empty when none exists.
  std::vector<int> invariant_labels;
  /// Those labels named in the frame class's representative.
  std::vector<std::string> invariant_label_names;
  int frame_class = -1;
  std::size_t loops_checked = 0;
  std::size_t loops_reducible = 0;
  /// Fold edges into Node I's class, self-loops included, counted up to the
  /// stabilizer of the source class.
  int folds_entering = 0;
  int self_folds = 0;
  /// Same, every labeled fold counted.
  int folds_entering_labeled = 0;
  /// Universe graph indices of Node I and of the sources of folds into it.
  std::vector<int> axis_graphs;
  /// Graphs halfway through the folds into Node I (partial folds), up to
  /// isomorphism.
  std::vector<OrientedGraph> fold_midpoints;
  /// Every checked loop inside m_i composes to a reducible matrix.
  bool obstruction() const { return loops_checked > 0 && loops_checked == loops_reducible; }
};

/// Node I is the class of g's structure. Throws StructuralError when g's
/// structure is not a node.
NodeIAnalysis node_i_analysis(const Automaton& a, const GraphMap& g, int max_loop_length = 4);

struct SccLoopSummary {
  int scc = 0;
  std::size_t loops = 0;
  std::size_t fic_passing = 0;
  std::optional<AutomatonLoop> witness;
};

/// For each SCC with loops, FIC-passing loops of length at most max_length.
/// Stops an SCC at its first FIC-passing loop when stop_early is set.
std::vector<SccLoopSummary> fic_loops_by_scc(const Automaton& a, int max_length, const PnpOptions& pnp = {},
                                             bool stop_early = true);

std::string automaton_to_dot(const Automaton& a, int node_i = -1);
std::string automaton_to_json(const Automaton& a, const std::optional<NodeIAnalysis>& analysis = {});

}  // namespace traintrack
