#include "traintrack/automaton.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "json.hpp"

#include "traintrack/spectral.hpp"
#include "traintrack/universe.hpp"

namespace traintrack {

namespace {

int four_valent_vertex(const OrientedGraph& g) {
  int found = -1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.valence(v) == 4) {
      if (found >= 0) return -1;
      found = v;
    }
  }
  return found;
}

std::uint64_t signed_permutation_count(int n) {
  std::uint64_t out = 1;
  for (int k = 1; k <= n; ++k) out *= 2 * static_cast<std::uint64_t>(k);
  return out;
}

Relabeling random_relabeling(std::mt19937_64& rng, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Dir> img;
  for (int i = 0; i < n; ++i) img.push_back(Dir::forward(perm[i]).oriented(rng() & 1));
  return Relabeling(std::move(img));
}

Dir red_direction(const LttStructure& s) { return s.red_vertices().front(); }

// Class-local lookup: encoding of a structure on a base graph -> (class, alpha
// with alpha . structure == rep).
using OrbitTable = std::map<std::vector<int>, std::pair<int, Relabeling>>;

// Runs fn(i) for i in [0, n) on `jobs` threads; the first exception is rethrown.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> threads;
  const int extra = static_cast<int>(std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(n, 1))) - 1;
  for (int j = 0; j < extra; ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<Turn> all_turns(const LttStructure& s) {
  std::vector<Turn> out = s.purple_edges;
  out.insert(out.end(), s.red_edges.begin(), s.red_edges.end());
  return out;
}

}  // namespace

std::vector<LttStructure> lonely_direction_structures(const OrientedGraph& graph, int rank) {
  std::vector<LttStructure> out;
  const int v = four_valent_vertex(graph);
  if (v < 0) return out;
  for (Dir r : graph.directions_at(v)) {
    for (Dir p : graph.directions_at(v)) {
      if (p == r) continue;
      std::vector<bool> purple(graph.direction_count(), true);
      purple[r.code()] = false;
      std::vector<Turn> turns{Turn(r, p)};
      for (int w = 0; w < graph.vertex_count(); ++w) {
        const auto& ds = graph.directions_at(w);
        for (std::size_t i = 0; i < ds.size(); ++i) {
          for (std::size_t j = i + 1; j < ds.size(); ++j) {
            if (purple[ds[i].code()] && purple[ds[j].code()]) turns.emplace_back(ds[i], ds[j]);
          }
        }
      }
      auto s = make_ltt(graph, std::move(purple), std::move(turns));
      if (lonely_direction(s, rank).all()) out.push_back(std::move(s));
    }
  }
  return out;
}

LttStructure transport(const LttStructure& s, const FoldMove& fold) {
  if (fold.kind != FoldMove::Kind::proper_full) throw StructuralError("transport is defined for proper full folds");
  if (!(fold.source() == s.graph)) throw StructuralError("fold does not start at the structure's graph");
  const OrientedGraph& target = fold.result();
  auto df = [&](Dir d) { return d == fold.e1 ? fold.e0 : d; };
  std::vector<Turn> turns;
  for (Turn t : all_turns(s)) {
    const Turn image(df(t.first()), df(t.second()));
    if (image.degenerate()) throw StructuralError("fold identifies a turn of the structure");
    turns.push_back(image);
  }
  turns.emplace_back(fold.e0.inverse(), fold.e1);
  std::vector<bool> purple(target.direction_count(), true);
  purple[fold.e1.code()] = false;
  return make_ltt(target, std::move(purple), std::move(turns));
}

std::uint64_t Automaton::labeled_node_count() const {
  std::uint64_t n = 0;
  for (const auto& c : classes) n += c.labeled_nodes;
  return n;
}

std::vector<int> Automaton::edges_from(int cls) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (edges[i].from == cls) out.push_back(i);
  }
  return out;
}

std::vector<int> Automaton::edges_into(int cls) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (edges[i].to == cls) out.push_back(i);
  }
  return out;
}

std::optional<std::pair<int, Relabeling>> Automaton::locate(const LttStructure& s) const {
  for (const auto& c : classes) {
    const auto& base = graphs[c.graph];
    if (base.vertex_count() != s.graph.vertex_count() || base.edge_count() != s.graph.edge_count()) continue;
    const auto isos = find_isomorphisms(s.graph, base, 1);
    if (isos.empty()) continue;
    const LttStructure moved = relabel(s, isos.front());
    for (const auto& d : classes) {
      if (d.graph != c.graph) continue;
      for (const auto& beta : find_isomorphisms(base, base)) {
        if (relabel(moved, beta) == d.rep) return std::make_pair(d.id, beta.after(isos.front()));
      }
    }
    return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Scc> scc_decomposition(int class_count, const std::vector<FoldEdge>& edges) {
  std::vector<std::vector<int>> adj(class_count);
  std::vector<bool> self(class_count, false);
  for (const auto& e : edges) {
    adj[e.from].push_back(e.to);
    if (e.from == e.to) self[e.from] = true;
  }
  std::vector<int> index(class_count, -1), low(class_count, 0);
  std::vector<bool> on_stack(class_count, false);
  std::vector<int> stack;
  std::vector<Scc> out;
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      Scc c;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        c.classes.push_back(w);
      } while (w != v);
      std::sort(c.classes.begin(), c.classes.end());
      c.has_loop = c.classes.size() > 1 || self[v];
      out.push_back(std::move(c));
    }
  };
  for (int v = 0; v < class_count; ++v) {
    if (index[v] < 0) visit(v);
  }
  return out;
}

Automaton build_automaton(int rank, const AutomatonOptions& opts) {
  if (rank != 3) throw DomainError("the automaton is built in rank 3 only");
  Automaton a;
  a.rank = rank;
  a.jobs = opts.jobs;
  a.graphs = build_universe(rank);
  if (opts.relabel_seed) {
    std::mt19937_64 rng(*opts.relabel_seed);
    for (auto& g : a.graphs) g = relabel(g, random_relabeling(rng, g.edge_count()));
  }

  for (int gi = 0; gi < static_cast<int>(a.graphs.size()); ++gi) {
    const auto& g = a.graphs[gi];
    const auto structures = lonely_direction_structures(g, rank);
    const auto auts = automorphisms(g);
    std::vector<bool> assigned(structures.size(), false);
    for (std::size_t i = 0; i < structures.size(); ++i) {
      if (assigned[i]) continue;
      AutomatonClass c;
      c.id = static_cast<int>(a.classes.size());
      c.graph = gi;
      c.rep = structures[i];
      for (const auto& alpha : auts) {
        const auto moved = relabel(c.rep, alpha);
        if (moved == c.rep) c.stabilizer.push_back(alpha);
        for (std::size_t k = 0; k < structures.size(); ++k) {
          if (structures[k] == moved) assigned[k] = true;
        }
      }
      c.labeled_nodes = signed_permutation_count(g.edge_count()) / c.stabilizer.size();
      a.classes.push_back(std::move(c));
    }
  }

  for (const auto& c : a.classes) {
    const auto& s = c.rep;
    const int v = four_valent_vertex(s.graph);
    const Dir r = red_direction(s);
    const Dir p = s.red_edges.front().other(r);
    for (Dir x : s.graph.directions_at(v)) {
      if (x.edge() == r.edge() || x == p) continue;
      for (auto [e1, e0] : {std::pair{r, x}, std::pair{x, r}}) {
        FoldMove fold = apply_fold(s.graph, e1, e0, FoldMove::Kind::proper_full);
        LttStructure moved = transport(s, fold);
        if (!lonely_direction(moved, rank).all()) {
          ++a.rejected_folds;
          continue;
        }
        const auto loc = a.locate(moved);
        if (!loc) {
          ++a.rejected_folds;
          continue;
        }
        a.edges.push_back({c.id, loc->first, e1, e0, loc->second, std::move(fold), std::move(moved)});
      }
    }
  }

  a.sccs = scc_decomposition(static_cast<int>(a.classes.size()), a.edges);
  for (int k = 0; k < static_cast<int>(a.sccs.size()); ++k) {
    for (int c : a.sccs[k].classes) a.classes[c].scc = k;
  }
  return a;
}

FoldSequence loop_to_sequence(const Automaton& a, const AutomatonLoop& loop) {
  if (loop.steps.empty()) throw StructuralError("empty loop");
  FoldSequence seq;
  int at = loop.start;
  for (const auto& st : loop.steps) {
    const FoldEdge& e = a.edges.at(st.edge);
    if (e.from != at) throw StructuralError("loop edges are not consecutive");
    const Relabeling sigma = st.automorphism.size() ? st.automorphism.after(e.sigma) : e.sigma;
    seq.steps.push_back(fold_step(e.fold));
    seq.steps.push_back(relabel_step(e.fold.result(), sigma, a.classes[e.to].rep.graph));
    at = e.to;
  }
  if (at != loop.start) throw StructuralError("loop does not close");
  return push_permutations(seq);
}

GraphMap loop_to_map(const Automaton& a, const AutomatonLoop& loop) { return loop_to_sequence(a, loop).composed(); }

AutomatonLoop rotate_loop(const Automaton& a, const AutomatonLoop& loop, int k) {
  const int n = static_cast<int>(loop.steps.size());
  if (k < 0 || k >= n) throw StructuralError("loop rotation out of range");
  AutomatonLoop out;
  out.start = a.edges.at(loop.steps[k].edge).from;
  for (int i = 0; i < n; ++i) {
    const LoopStep& st = loop.steps[(k + i) % n];
    out.steps.push_back(st);
  }
  return out;
}

std::vector<AutomatonLoop> enumerate_loops(const Automaton& a, int max_length, const std::vector<int>& within) {
  std::vector<bool> allowed(a.classes.size(), within.empty());
  for (int c : within) allowed[c] = true;
  std::vector<std::vector<int>> out_edges(a.classes.size());
  for (int i = 0; i < static_cast<int>(a.edges.size()); ++i) {
    const auto& e = a.edges[i];
    if (allowed[e.from] && allowed[e.to]) out_edges[e.from].push_back(i);
  }
  std::vector<AutomatonLoop> loops;
  AutomatonLoop cur;
  std::function<void(int)> extend = [&](int at) {
    if (static_cast<int>(cur.steps.size()) == max_length) return;
    for (int ei : out_edges[at]) {
      const auto& e = a.edges[ei];
      for (const auto& alpha : a.classes[e.to].stabilizer) {
        cur.steps.push_back({ei, alpha});
        if (e.to == cur.start) loops.push_back(cur);
        extend(e.to);
        cur.steps.pop_back();
      }
    }
  };
  for (int c = 0; c < static_cast<int>(a.classes.size()); ++c) {
    if (!allowed[c]) continue;
    cur.start = c;
    cur.steps.clear();
    extend(c);
  }
  return loops;
}

std::optional<LoopMatch> decomposition_to_loop(const Automaton& a, const FoldSequence& seq) {
  if (!seq.is_clean() || !(seq.source() == seq.target())) return std::nullopt;
  const int n = seq.fold_count();
  for (int j = 0; j < n; ++j) {
    const FoldSequence rot = rotate(seq, j);
    const GraphMap h = rot.composed();
    if (!is_train_track(h).train_track) continue;
    const auto loc = a.locate(ltt_structure(h));
    if (!loc) continue;
    const auto [c0, tau] = *loc;
    AutomatonLoop loop;
    loop.start = c0;
    int at = c0;
    Relabeling pi = tau;
    bool ok = true;
    for (const FoldMove* f : rot.folds()) {
      const Dir x1 = pi(f->e1), x0 = pi(f->e0);
      const auto& base = a.classes[at].rep.graph;
      int found = -1;
      for (int ei : a.edges_from(at)) {
        if (a.edges[ei].e1 == x1 && a.edges[ei].e0 == x0) found = ei;
      }
      if (found < 0) {
        ok = false;
        break;
      }
      const FoldEdge& e = a.edges[found];
      const GraphMap lhs = compose(e.fold.map, relabeling_map(f->source(), pi, base));
      std::optional<Relabeling> rho;
      for (const auto& cand : find_isomorphisms(f->result(), e.fold.result())) {
        if (compose(relabeling_map(f->result(), cand, e.fold.result()), f->map) == lhs) {
          rho = cand;
          break;
        }
      }
      if (!rho) {
        ok = false;
        break;
      }
      pi = e.sigma.after(*rho);
      at = e.to;
      loop.steps.push_back({found, Relabeling::identity(base.edge_count())});
    }
    if (!ok || at != c0) continue;
    const Relabeling alpha = tau.after(rot.final_relabeling()).after(pi.inverse());
    if (!(relabel(a.classes[c0].rep, alpha) == a.classes[c0].rep)) continue;
    loop.steps.back().automorphism = alpha;
    if (!(loop_to_map(a, loop) == relabel(h, tau))) continue;
    return LoopMatch{loop, j, tau};
  }
  return std::nullopt;
}

TransportCheck check_transport(const Automaton& a, int max_length) {
  enum class Verdict { equal, contained, not_tt, missing_turn, mismatched };
  const auto loops = enumerate_loops(a, max_length);
  std::vector<Verdict> verdicts(loops.size());
  parallel_for(loops.size(), a.jobs, [&](std::size_t i) {
    const GraphMap h = loop_to_map(a, loops[i]);
    const auto& node = a.classes[loops[i].start].rep;
    const auto cert = is_train_track(h);
    if (!cert.train_track) {
      verdicts[i] = Verdict::not_tt;
      return;
    }
    std::vector<Turn> node_turns = all_turns(node);
    std::sort(node_turns.begin(), node_turns.end());
    const bool inside = std::all_of(cert.closure.turns.begin(), cert.closure.turns.end(), [&](Turn t) {
      return std::binary_search(node_turns.begin(), node_turns.end(), t);
    });
    if (!inside) {
      verdicts[i] = Verdict::missing_turn;
      return;
    }
    const auto direct = ltt_structure(h);
    if (!lonely_direction(direct, a.rank).all()) {
      verdicts[i] = Verdict::contained;
    } else {
      verdicts[i] = direct == node ? Verdict::equal : Verdict::mismatched;
    }
  });

  TransportCheck out;
  out.loops = loops.size();
  for (std::size_t i = 0; i < loops.size(); ++i) {
    std::ostringstream where;
    where << "loop at class " << loops[i].start << " of length " << loops[i].steps.size();
    switch (verdicts[i]) {
      case Verdict::not_tt:
        out.failures.push_back(where.str() + ": composed map is not a train track");
        break;
      case Verdict::missing_turn:
        out.failures.push_back(where.str() + ": a taken turn is missing from the node");
        break;
      case Verdict::mismatched:
        ++out.contained;
        ++out.mismatched;
        out.failures.push_back(where.str() + ": directly computed structure differs from the node");
        break;
      case Verdict::equal:
        ++out.equal;
        [[fallthrough]];
      case Verdict::contained:
        ++out.contained;
        break;
    }
  }
  return out;
}

NodeIAnalysis node_i_analysis(const Automaton& a, const GraphMap& g, int max_loop_length) {
  NodeIAnalysis out;
  if (!is_train_track(g).train_track) throw StructuralError("Node I needs a train track map");
  const auto loc = a.locate(ltt_structure(g));
  if (!loc) throw StructuralError("the structure of the map is not a node of the automaton");
  out.node_i = loc->first;

  std::vector<FoldEdge> kept;
  std::vector<int> kept_index;
  for (int i = 0; i < static_cast<int>(a.edges.size()); ++i) {
    if (a.edges[i].from != out.node_i && a.edges[i].to != out.node_i) {
      kept.push_back(a.edges[i]);
      kept_index.push_back(i);
    }
  }
  for (auto& s : scc_decomposition(static_cast<int>(a.classes.size()), kept)) {
    if (!s.has_loop) continue;
    for (int c : s.classes) out.m_i.push_back(c);
    out.remaining.push_back(std::move(s));
  }
  std::sort(out.m_i.begin(), out.m_i.end());

  // Common edge-label frame across each looped component.
  bool all_have_labels = !out.remaining.empty();
  for (const auto& s : out.remaining) {
    const int root = s.classes.front();
    const int n = a.classes[root].rep.graph.edge_count();
    std::map<int, Relabeling> frame{{root, Relabeling::identity(n)}};
    std::vector<int> queue{root};
    std::set<int> members(s.classes.begin(), s.classes.end());
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (int ei : a.edges_from(queue[q])) {
        const auto& e = a.edges[ei];
        if (!members.count(e.to) || frame.count(e.to)) continue;
        frame[e.to] = frame.at(e.from).after(e.sigma.inverse());
        queue.push_back(e.to);
      }
    }
    std::vector<Relabeling> perms;
    std::vector<std::pair<int, int>> folds;  // (e1, e0) edges in the frame
    for (int c : s.classes) {
      for (const auto& alpha : a.classes[c].stabilizer) perms.push_back(frame.at(c).after(alpha).after(frame.at(c).inverse()));
    }
    for (int ei : kept_index) {
      const auto& e = a.edges[ei];
      if (!members.count(e.from) || !members.count(e.to)) continue;
      perms.push_back(frame.at(e.to).after(e.sigma).after(frame.at(e.from).inverse()));
      folds.emplace_back(frame.at(e.from)(e.e1).edge(), frame.at(e.from)(e.e0).edge());
    }
    auto invariant = [&](unsigned mask) {
      for (const auto& perm : perms) {
        for (int x = 0; x < n; ++x) {
          if ((mask >> x & 1) && !(mask >> perm(Dir::forward(x)).edge() & 1)) return false;
        }
      }
      for (auto [e1, e0] : folds) {
        if ((mask >> e1 & 1) && !(mask >> e0 & 1)) return false;
      }
      return true;
    };
    std::optional<unsigned> best;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      if (!invariant(mask)) continue;
      if (!best || std::popcount(mask) < std::popcount(*best)) best = mask;
    }
    if (!best) {
      all_have_labels = false;
    } else if (out.invariant_labels.empty()) {
      out.frame_class = root;
      for (int x = 0; x < n; ++x) {
        if (*best >> x & 1) {
          out.invariant_labels.push_back(x);
          out.invariant_label_names.push_back(a.classes[root].rep.graph.edge_name(x));
        }
      }
    }
  }
  if (!all_have_labels) {
    out.invariant_labels.clear();
    out.invariant_label_names.clear();
  }

  const auto loops = enumerate_loops(a, max_loop_length, out.m_i);
  std::vector<char> reducible(loops.size(), 0);
  parallel_for(loops.size(), a.jobs,
               [&](std::size_t i) { reducible[i] = !is_irreducible(transition_matrix(loop_to_map(a, loops[i]))); });
  out.loops_checked = loops.size();
  out.loops_reducible = static_cast<std::size_t>(std::count(reducible.begin(), reducible.end(), 1));

  std::set<int> graphs{a.classes[out.node_i].graph};
  std::set<std::tuple<int, Dir, Dir>> orbits;
  for (int ei : a.edges_into(out.node_i)) {
    const auto& e = a.edges[ei];
    ++out.folds_entering_labeled;
    graphs.insert(a.classes[e.from].graph);
    std::tuple<int, Dir, Dir> key{e.from, e.e1, e.e0};
    for (const auto& alpha : a.classes[e.from].stabilizer) key = std::min(key, {e.from, alpha(e.e1), alpha(e.e0)});
    if (!orbits.insert(key).second) continue;
    ++out.folds_entering;
    const auto mid = apply_fold(a.classes[e.from].rep.graph, e.e1, e.e0, FoldMove::Kind::partial).result();
    if (std::none_of(out.fold_midpoints.begin(), out.fold_midpoints.end(),
                     [&](const OrientedGraph& m) { return isomorphic(m, mid); })) {
      out.fold_midpoints.push_back(mid);
    }
    if (e.from == out.node_i) ++out.self_folds;
  }
  out.axis_graphs.assign(graphs.begin(), graphs.end());
  return out;
}

std::vector<SccLoopSummary> fic_loops_by_scc(const Automaton& a, int max_length, const PnpOptions& pnp,
                                             bool stop_early) {
  std::vector<SccLoopSummary> out;
  const std::size_t chunk = stop_early ? 64 : std::numeric_limits<std::size_t>::max();
  for (int k = 0; k < static_cast<int>(a.sccs.size()); ++k) {
    if (!a.sccs[k].has_loop) continue;
    SccLoopSummary s;
    s.scc = k;
    const auto loops = enumerate_loops(a, max_length, a.sccs[k].classes);
    for (std::size_t from = 0; from < loops.size(); from += chunk) {
      const std::size_t n = std::min(chunk, loops.size() - from);
      std::vector<char> passed(n, 0);
      parallel_for(n, a.jobs,
                   [&](std::size_t i) { passed[i] = fic_check(loop_to_map(a, loops[from + i]), pnp).passed(); });
      bool stop = false;
      for (std::size_t i = 0; i < n && !stop; ++i) {
        ++s.loops;
        if (!passed[i]) continue;
        ++s.fic_passing;
        if (!s.witness) s.witness = loops[from + i];
        stop = stop_early;
      }
      if (stop) break;
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::string class_label(const Automaton& a, const AutomatonClass& c) {
  const auto& g = c.rep.graph;
  const Dir r = red_direction(c.rep);
  std::ostringstream os;
  os << "C" << c.id << "\\ngraph " << c.graph << "\\nred " << g.dir_name(r) << " / "
     << g.turn_name(c.rep.red_edges.front());
  (void)a;
  return os.str();
}

}  // namespace

std::string automaton_to_dot(const Automaton& a, int node_i) {
  std::ostringstream os;
  os << "digraph automaton {\n  node [shape=box, fontname=\"Helvetica\"];\n";
  for (const auto& c : a.classes) {
    os << "  C" << c.id << " [label=\"" << class_label(a, c) << "\"";
    if (c.id == node_i) os << ", penwidth=3, xlabel=\"Node I\"";
    os << "];\n";
  }
  std::map<std::pair<int, int>, int> mult;
  for (const auto& e : a.edges) ++mult[{e.from, e.to}];
  for (const auto& [key, m] : mult) {
    os << "  C" << key.first << " -> C" << key.second << " [color=black, label=\"" << m << "\"];\n";
  }
  for (const auto& c : a.classes) {
    if (c.stabilizer.size() > 1) {
      os << "  C" << c.id << " -> C" << c.id << " [color=green, dir=both, label=\"" << c.stabilizer.size() - 1
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string automaton_to_json(const Automaton& a, const std::optional<NodeIAnalysis>& analysis) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = "1";
  j["rank"] = a.rank;
  j["labeled_nodes"] = a.labeled_node_count();
  j["rejected_folds"] = a.rejected_folds;
  ordered_json classes = ordered_json::array();
  for (const auto& c : a.classes) {
    const auto& g = c.rep.graph;
    ordered_json edges = ordered_json::array();
    for (const auto& e : g.edges()) edges.push_back({{"name", e.name}, {"from", e.from}, {"to", e.to}});
    ordered_json purple = ordered_json::array();
    for (Turn t : c.rep.purple_edges) purple.push_back(g.turn_name(t));
    classes.push_back({{"id", c.id},
                       {"graph", c.graph},
                       {"edges", edges},
                       {"red_vertex", g.dir_name(red_direction(c.rep))},
                       {"red_edge", g.turn_name(c.rep.red_edges.front())},
                       {"purple_edges", purple},
                       {"stabilizer", c.stabilizer.size()},
                       {"labeled_nodes", c.labeled_nodes},
                       {"scc", c.scc},
                       {"canonical", c.rep.encode()}});
  }
  j["classes"] = classes;
  ordered_json edges = ordered_json::array();
  for (const auto& e : a.edges) {
    const auto& g = a.classes[e.from].rep.graph;
    edges.push_back({{"kind", "fold"},
                     {"from", e.from},
                     {"to", e.to},
                     {"e1", g.dir_name(e.e1)},
                     {"e0", g.dir_name(e.e0)},
                     {"sigma", relabeling_name(e.fold.result(), e.sigma)}});
  }
  j["edges"] = edges;
  ordered_json sccs = ordered_json::array();
  for (const auto& s : a.sccs) sccs.push_back({{"classes", s.classes}, {"has_loop", s.has_loop}});
  j["sccs"] = sccs;
  if (analysis) {
    const auto& n = *analysis;
    ordered_json r;
    r["node_i"] = n.node_i;
    r["m_i"] = n.m_i;
    r["invariant_labels"] = n.invariant_label_names;
    r["frame_class"] = n.frame_class;
    r["loops_checked"] = n.loops_checked;
    r["loops_reducible"] = n.loops_reducible;
    r["folds_entering"] = n.folds_entering;
    r["self_folds"] = n.self_folds;
    r["folds_entering_labeled"] = n.folds_entering_labeled;
    r["axis_graphs"] = n.axis_graphs;
    ordered_json mids = ordered_json::array();
    for (const auto& m : n.fold_midpoints) {
      ordered_json es = ordered_json::array();
      for (const auto& e : m.edges()) es.push_back({{"name", e.name}, {"from", e.from}, {"to", e.to}});
      mids.push_back(es);
    }
    r["fold_midpoints"] = mids;
    r["obstruction"] = n.obstruction();
    j["node_i_analysis"] = r;
  }
  return j.dump(2) + "\n";
}

}  // namespace traintrack
