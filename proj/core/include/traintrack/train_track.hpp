#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "traintrack/graph_map.hpp"

namespace traintrack {

/// How a turn entered the closure: seeded by an edge image, or the Dg-image
/// of an earlier turn.
struct TurnOrigin {
  Turn turn;
  int edge = -1;
  std::optional<Turn> from;
};

struct TurnClosure {
  /// Nondegenerate turns, sorted.
  std::vector<Turn> turns;
  /// Generation trace in discovery order.
  std::vector<TurnOrigin> trace;
  /// Closure turns whose Dg-image is degenerate.
  std::vector<Turn> collapsing;

  bool contains(Turn t) const { return std::binary_search(turns.begin(), turns.end(), t); }
};

/// Turns taken inside the edge images, closed under Dg.
TurnClosure taken_turn_closure(const GraphMap& g);

/// Nondegenerate turns sent to a degenerate turn by some power of Dg.
std::vector<Turn> illegal_turns(const GraphMap& g);

/// Unbounded growth of |g^n(e)| for every edge e.
bool is_expanding(const GraphMap& g);

struct TtCertificate {
  bool train_track = false;
  /// Illegal turn taken by some iterate.
  std::optional<Turn> witness;
  /// Edge whose image backtracks.
  std::optional<int> untight_edge;
  std::vector<Turn> illegal;
  TurnClosure closure;
  bool expanding = false;
};

TtCertificate is_train_track(const GraphMap& g);

struct PnpOptions {
  /// Maximal length of each leg.
  int max_length = 50;
  /// Periods 1..max_period are tried; 0 selects the lcm of the Dg cycle lengths.
  long long max_period = 0;
  /// Expanded search states before giving up.
  std::size_t state_budget = 2'000'000;
  /// Periods whose iterated edge images exceed this length are skipped.
  std::size_t image_cap = 20'000;
};

struct PnpResult {
  enum class Status { none_up_to_bound, found, budget_exhausted };
  Status status = Status::none_up_to_bound;
  /// reverse(alpha) . beta, with its period.
  std::optional<EdgePath> path;
  long long period = 0;
  /// The endpoints lie inside the last edges of the legs.
  bool interior_endpoints = false;
  int bound_length = 0;
  long long bound_period = 0;
  std::size_t states = 0;
  /// Periods skipped because of the image cap.
  std::vector<long long> skipped_periods;

  bool clean() const { return status == Status::none_up_to_bound; }
};

std::string to_string(PnpResult::Status s);

/// Bounded search for a periodic Nielsen path with one illegal turn at its
/// tip. Endpoints inside edges are located with eigenvector lengths when the
/// transition matrix is irreducible; otherwise only vertex endpoints are
/// found. `none_up_to_bound` is not a proof of absence. Throws DomainError for non-expanding maps and for maps that are
/// not train tracks.
PnpResult pnp_bounded_search(const GraphMap& g, const PnpOptions& opts = {});

struct FicReport {
  bool train_track = false;
  bool expanding = false;
  bool pnp_clean = false;
  bool irreducible = false;
  bool pf = false;
  bool local_whitehead_connected = false;
  /// Vertices whose local Whitehead graph is disconnected.
  std::vector<int> disconnected_vertices;
  /// A proper invariant edge set when the matrix is reducible.
  std::vector<int> invariant_edges;
  std::optional<PnpResult> pnp;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Each conjunct of the full irreducibility criterion, reported separately.
FicReport fic_check(const GraphMap& g, const PnpOptions& opts = {});

}  // namespace traintrack
