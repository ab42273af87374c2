#include "traintrack/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "traintrack/spectral.hpp"
#include "traintrack/universe.hpp"
#include "traintrack/whitehead.hpp"

namespace traintrack {

namespace {

bool single_cycle(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  int v = 0;
  for (int k = 1; k <= n; ++k) {
    v = perm[v];
    if (v == 0) return k == n;
  }
  return false;
}

struct GraphResult {
  std::size_t folds = 0, triples = 0, tt = 0, irreducible = 0, fic = 0, principal = 0;
  std::size_t intransitive = 0, intransitive_irreducible = 0;
  std::vector<CandidateReport> survivors;
};

GraphResult search_graph(int index, const OrientedGraph& g, const PnpOptions& pnp) {
  GraphResult out;
  int v0 = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.valence(v) == 4) v0 = v;
  }
  const auto& dirs = g.directions_at(v0);
  for (Dir e1 : dirs) {
    for (Dir e0 : dirs) {
      if (e1.edge() == e0.edge()) continue;
      ++out.folds;
      const FoldMove f = apply_fold(g, e1, e0, FoldMove::Kind::proper_full);
      for (const auto& sigma : find_isomorphisms(f.result(), g)) {
        ++out.triples;
        CandidateReport c;
        c.graph_index = index;
        c.e1 = e1;
        c.e0 = e0;
        c.sigma = sigma;
        c.map = compose(relabeling_map(f.result(), sigma, g), f.map);
        c.train_track = is_train_track(c.map).train_track;
        if (!c.train_track) continue;
        ++out.tt;
        const bool transitive = single_cycle(c.map.vertex_images());
        c.irreducible = is_irreducible(transition_matrix(c.map));
        if (!transitive) {
          ++out.intransitive;
          if (c.irreducible) ++out.intransitive_irreducible;
        }
        if (!c.irreducible) continue;
        ++out.irreducible;
        c.fic = fic_check(c.map, pnp).passed();
        if (!c.fic) continue;
        ++out.fic;
        c.principal = is_principal(c.map, pnp).principal;
        if (!c.principal) continue;
        ++out.principal;
        const auto seq = stallings_decompose(c.map);
        const auto folds = seq.folds();
        c.round_trip = folds.size() == 1 && folds[0]->kind == FoldMove::Kind::proper_full && folds[0]->e1 == e1 &&
                       folds[0]->e0 == e0 && seq.final_relabeling() == sigma;
        out.survivors.push_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace

VertexAudit vertex_structure_audit(const CandidateReport& c) {
  const OrientedGraph& g = c.map.source();
  const FoldMove f = apply_fold(g, c.e1, c.e0, FoldMove::Kind::proper_full);
  const GraphMap gs = relabeling_map(f.result(), c.sigma, g);
  const int v0 = g.origin(c.e0), v1 = g.terminus(c.e0), v2 = g.terminus(c.e1);
  VertexAudit a;
  a.distinct = v0 != v1 && v1 != v2 && v0 != v2;
  a.forced_images = gs.vertex_image(f.map.vertex_image(v1)) == v0 && c.sigma(c.e1) == c.e0 &&
                    gs.vertex_image(f.map.vertex_image(v2)) == v1;
  a.transitive = single_cycle(c.map.vertex_images());
  return a;
}

SingleFoldSearch single_fold_search(int rank, const SearchOptions& opts) {
  SingleFoldSearch out;
  out.rank = rank;
  out.universe = build_universe(rank);
  const int n = static_cast<int>(out.universe.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (opts.shuffle_seed) {
    std::mt19937_64 rng(*opts.shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }

  std::vector<GraphResult> results(n);
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    while (true) {
      const int k = next.fetch_add(1);
      if (k >= n) return;
      const int idx = order[k];
      try {
        results[idx] = search_graph(idx, out.universe[idx], opts.pnp);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min(opts.jobs, n));
  std::vector<std::thread> threads;
  for (int j = 1; j < jobs; ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);

  for (auto& r : results) {
    out.folds += r.folds;
    out.triples += r.triples;
    out.train_track += r.tt;
    out.irreducible += r.irreducible;
    out.fic += r.fic;
    out.principal += r.principal;
    out.intransitive += r.intransitive;
    out.intransitive_irreducible += r.intransitive_irreducible;
    for (auto& c : r.survivors) out.survivors.push_back(std::move(c));
  }

  for (std::size_t i = 0; i < out.survivors.size(); ++i) {
    auto& c = out.survivors[i];
    for (std::size_t k = 0; k < out.classes.size(); ++k) {
      const auto& rep = out.survivors[out.classes[k].front()];
      if (rep.graph_index == c.graph_index && find_conjugating_relabeling(rep.map, c.map)) {
        c.class_id = static_cast<int>(k);
        break;
      }
    }
    if (c.class_id < 0) {
      c.class_id = static_cast<int>(out.classes.size());
      out.classes.emplace_back();
    }
    out.classes[c.class_id].push_back(static_cast<int>(i));
  }
  return out;
}

FoldBookkeeping trivalent_fold_bookkeeping() {
  FoldBookkeeping b;
  for (const auto& g : trivalent_graphs(3)) {
    ++b.graphs;
    for (int v = 0; v < g.vertex_count(); ++v) {
      for (Dir e1 : g.directions_at(v)) {
        for (Dir e0 : g.directions_at(v)) {
          if (e1.edge() == e0.edge()) continue;
          // proper full fold of e1 over e0
          if (g.is_loop(e0.edge())) {
            ++b.loop_folds;
          } else {
            ++b.proper_full;
            const auto r = apply_fold(g, e1, e0, FoldMove::Kind::proper_full).result();
            const auto val = r.valences();
            const int twos = static_cast<int>(std::count(val.begin(), val.end(), 2));
            const bool ok = r.edge_count() == 6 && std::count(val.begin(), val.end(), 4) >= 1 &&
                            r.edge_count() - twos < 6;
            if (!ok) ++b.violations;
          }
          // complete fold, each unordered pair once
          if (e1 < e0) continue;
          if (g.terminus(e0) == g.terminus(e1)) {
            ++b.parallel_complete;
            continue;
          }
          const bool loop = g.is_loop(e0.edge()) || g.is_loop(e1.edge());
          ++(loop ? b.loop_complete : b.complete);
          const auto r = apply_fold(g, e1, e0, FoldMove::Kind::complete).result();
          const auto val = r.valences();
          if (r.edge_count() > 5 || std::count(val.begin(), val.end(), loop ? 4 : 5) < 1) ++b.violations;
        }
      }
    }
  }
  return b;
}

bool TheoremAReport::passed() const {
  return !steps.empty() && std::all_of(steps.begin(), steps.end(), [](const DriverStep& s) { return s.passed; });
}

TheoremAReport theorem_A_driver(const GraphMap& g) {
  TheoremAReport rep;
  const IntPolynomial q{-1, -1, 0, 0, 0, 1};
  rep.char_poly = char_poly(transition_matrix(g));
  {
    DriverStep s{"characteristic polynomial", rep.char_poly == q, "char poly " + rep.char_poly.to_string()};
    const auto root = largest_real_root(rep.char_poly, decimal_width(12));
    if (root) {
      rep.stretch = *root;
      std::ostringstream os;
      os.precision(12);
      os << "; stretch in [" << static_cast<double>(root->lo) << ", " << static_cast<double>(root->hi) << "]";
      s.detail += os.str();
    } else {
      s.passed = false;
    }
    rep.steps.push_back(std::move(s));
  }
  {
    DriverStep s{"below smallest Perron numbers of degree 2-4", true, ""};
    std::ostringstream os;
    os.precision(10);
    for (const auto& e : minimal_perron_table()) {
      if (e.degree > 4) continue;
      const auto root = largest_real_root(e.polynomial, decimal_width(9));
      const bool below = root && rep.stretch.hi < root->lo;
      s.passed = s.passed && below;
      os << (os.tellp() > 0 ? "; " : "") << "degree " << e.degree << ": " << (below ? "below " : "NOT below ")
         << static_cast<double>(root ? root->lo : Rational(0));
    }
    s.detail = os.str();
    rep.steps.push_back(std::move(s));
  }
  {
    const IntPolynomial gamma{-1, -1, -1, 0, 1, 1};
    const bool obstructed = trace_obstruction(gamma, 5);
    rep.steps.push_back({"trace obstruction", obstructed,
                         gamma.to_string() + (obstructed ? " has negative trace" : " is not obstructed")});
  }
  {
    rep.bookkeeping = trivalent_fold_bookkeeping();
    const auto& b = rep.bookkeeping;
    std::ostringstream os;
    os << b.graphs << " trivalent graphs, " << b.proper_full << " proper full folds, " << b.complete
       << " complete folds, " << b.loop_folds << " proper folds over loops, " << b.loop_complete
       << " complete folds with a loop, " << b.parallel_complete
       << " parallel complete folds skipped, " << b.violations << " violations";
    rep.steps.push_back({"fold bookkeeping on 6-edge graphs", b.graphs > 0 && b.violations == 0, os.str()});
  }
  return rep;
}

}  // namespace traintrack
