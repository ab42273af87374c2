#include "traintrack/train_track.hpp"

#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "traintrack/spectral.hpp"

namespace traintrack {

TurnClosure taken_turn_closure(const GraphMap& g) {
  if (!g.is_self_map()) throw StructuralError("turn closure of a map that is not a self-map");
  const auto dg = direction_map(g);
  TurnClosure out;
  std::set<Turn> seen;
  std::set<Turn> collapsing;
  std::deque<Turn> queue;
  for (int e = 0; e < g.source().edge_count(); ++e) {
    for (Turn t : taken_turns(g.edge_image(e))) {
      if (t.degenerate() || !seen.insert(t).second) continue;
      out.trace.push_back({t, e, std::nullopt});
      queue.push_back(t);
    }
  }
  while (!queue.empty()) {
    const Turn t = queue.front();
    queue.pop_front();
    const Turn img(dg[t.first().code()], dg[t.second().code()]);
    if (img.degenerate()) {
      collapsing.insert(t);
      continue;
    }
    if (!seen.insert(img).second) continue;
    out.trace.push_back({img, -1, t});
    queue.push_back(img);
  }
  out.turns.assign(seen.begin(), seen.end());
  out.collapsing.assign(collapsing.begin(), collapsing.end());
  return out;
}

std::vector<Turn> illegal_turns(const GraphMap& g) {
  if (!g.is_self_map()) throw StructuralError("illegal turns of a map that is not a self-map");
  const auto dg = direction_map(g);
  const auto& graph = g.source();
  std::vector<Turn> out;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    const auto& ds = graph.directions_at(v);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (std::size_t j = i + 1; j < ds.size(); ++j) {
        if (collapse_time(dg, ds[i], ds[j]) > 0) out.emplace_back(ds[i], ds[j]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_expanding(const GraphMap& g) {
  const IntegerMatrix m = transition_matrix(g);
  const int n = m.size();
  std::vector<std::vector<int>> adj(n);
  std::vector<long long> out_mult(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (m.at(i, j) != 0) adj[i].push_back(j);
      out_mult[i] += m.at(i, j).convert_to<long long>();
    }
  }
  // Tarjan SCCs to find vertices on directed cycles.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<int> stack;
  std::vector<bool> on_stack(n, false);
  int counter = 0, comps = 0;
  std::vector<int> comp_size;
  auto strong = [&](auto&& self, int v) -> void {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      int size = 0;
      while (true) {
        const int w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comps;
        ++size;
        if (w == v) break;
      }
      comp_size.push_back(size);
      ++comps;
    }
  };
  for (int v = 0; v < n; ++v) {
    if (index[v] < 0) strong(strong, v);
  }
  std::vector<bool> branching(n, false);
  for (int v = 0; v < n; ++v) {
    const bool on_cycle = comp_size[comp[v]] > 1 || m.at(v, v) != 0;
    branching[v] = on_cycle && out_mult[v] >= 2;
  }
  for (int s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::vector<int> todo{s};
    seen[s] = true;
    bool grows = false;
    while (!todo.empty() && !grows) {
      const int v = todo.back();
      todo.pop_back();
      grows = branching[v];
      for (int w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          todo.push_back(w);
        }
      }
    }
    if (!grows) return false;
  }
  return true;
}

TtCertificate is_train_track(const GraphMap& g) {
  TtCertificate cert;
  cert.illegal = illegal_turns(g);
  cert.closure = taken_turn_closure(g);
  cert.expanding = is_expanding(g);
  for (int e = 0; e < g.source().edge_count(); ++e) {
    if (!is_tight(g.edge_image(e))) {
      cert.untight_edge = e;
      for (Turn t : taken_turns(g.edge_image(e))) {
        if (t.degenerate()) {
          cert.witness = t;
          break;
        }
      }
      return cert;
    }
  }
  // Discovery order puts turns taken inside edge images first.
  for (const auto& origin : cert.closure.trace) {
    if (std::binary_search(cert.illegal.begin(), cert.illegal.end(), origin.turn)) {
      cert.witness = origin.turn;
      return cert;
    }
  }
  cert.train_track = true;
  return cert;
}

std::string to_string(PnpResult::Status s) {
  switch (s) {
    case PnpResult::Status::none_up_to_bound:
      return "none-up-to-bound";
    case PnpResult::Status::found:
      return "found";
    case PnpResult::Status::budget_exhausted:
      return "budget-exhausted";
  }
  return "?";
}

namespace {

// Positive right Perron eigenvector of the transition matrix, normalized to
// sum 1; empty when the matrix is reducible.
std::vector<long double> eigen_lengths(const GraphMap& g) {
  const IntegerMatrix m = transition_matrix(g);
  if (!is_irreducible(m)) return {};
  const int n = m.size();
  std::vector<long double> v(n, 1.0L / n), w(n);
  for (int it = 0; it < 5000; ++it) {
    long double total = 0;
    for (int i = 0; i < n; ++i) {
      w[i] = v[i];
      for (int j = 0; j < n; ++j) w[i] += static_cast<long double>(m.at(i, j).convert_to<long long>()) * v[j];
      total += w[i];
    }
    long double change = 0;
    for (int i = 0; i < n; ++i) {
      w[i] /= total;
      change = std::max(change, std::abs(w[i] - v[i]));
    }
    v.swap(w);
    if (change < 1e-18L) break;
  }
  return v;
}

struct PnpSearch {
  const OrientedGraph& graph;
  std::vector<Turn> illegal;
  // Iterated image of each direction for the current period.
  std::vector<std::vector<Dir>> image;
  const PnpOptions& opts;
  PnpResult& result;
  // Eigenvector edge lengths and lambda^K - 1; empty when unavailable.
  std::vector<long double> length;
  long double growth = 0;

  long double path_length(const std::vector<Dir>& p, std::size_t n) const {
    long double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += length[p[i].edge()];
    return s;
  }

  bool legal_after(Dir last, Dir next) const {
    if (next == last.inverse()) return false;
    return !std::binary_search(illegal.begin(), illegal.end(), Turn(last.inverse(), next));
  }

  std::vector<Dir> continuations(Dir last) const {
    std::vector<Dir> out;
    for (Dir d : graph.directions_at(graph.terminus(last))) {
      if (legal_after(last, d)) out.push_back(d);
    }
    return out;
  }

  static bool prefix_compatible(const std::vector<Dir>& r, std::size_t from, const std::vector<Dir>& leg) {
    const std::size_t n = std::min(r.size() - from, leg.size());
    return std::equal(leg.begin(), leg.begin() + static_cast<std::ptrdiff_t>(n),
                      r.begin() + static_cast<std::ptrdiff_t>(from));
  }

  void append(std::vector<Dir>& leg, std::vector<Dir>& img, Dir d) const {
    leg.push_back(d);
    img.insert(img.end(), image[d.code()].begin(), image[d.code()].end());
  }

  // Returns true when the search should stop.
  bool step(std::vector<Dir>& a, std::vector<Dir>& ia, std::vector<Dir>& b, std::vector<Dir>& ib) {
    if (++result.states > opts.state_budget) {
      result.status = PnpResult::Status::budget_exhausted;
      return true;
    }
    if (ia.size() > opts.image_cap || ib.size() > opts.image_cap) return false;
    std::size_t c = 0;
    while (c < ia.size() && c < ib.size() && ia[c] == ib[c]) ++c;

    const int L = opts.max_length;
    auto branch = [&](std::vector<Dir>& leg, std::vector<Dir>& img) {
      if (static_cast<int>(leg.size()) >= L) return false;
      for (Dir d : continuations(leg.back())) {
        const std::size_t ls = leg.size(), is = img.size();
        append(leg, img, d);
        const bool stop = step(a, ia, b, ib);
        leg.resize(ls);
        img.resize(is);
        if (stop) return true;
      }
      return false;
    };

    if (c == ia.size() || c == ib.size()) {
      // One image is swallowed by the other; only growth can help.
      const bool grow_a = c == ia.size() && (c != ib.size() || a.size() <= b.size());
      return grow_a ? branch(a, ia) : branch(b, ib);
    }

    // Stable case: the remainders after the common prefix must reproduce the legs.
    if (!prefix_compatible(ia, c, a) || !prefix_compatible(ib, c, b)) return false;
    const std::size_t ra = ia.size() - c, rb = ib.size() - c;
    const bool a_done = ra == a.size(), b_done = rb == b.size();
    // Endpoints sit where the legs reach length |gamma| / (lambda^K - 1).
    long double target = 0;
    bool a_long = a_done, b_long = b_done;
    if (!length.empty()) {
      target = path_length(ia, c) / growth;
      const long double eps = 1e-9L * (1 + target);
      a_long = a_long || path_length(a, a.size()) + eps >= target;
      b_long = b_long || path_length(b, b.size()) + eps >= target;
    }
    if (a_long && b_long) {
      EdgePath rho{graph.terminus(a.back()), {}};
      for (auto it = a.rbegin(); it != a.rend(); ++it) rho.dirs.push_back(it->inverse());
      rho.dirs.insert(rho.dirs.end(), b.begin(), b.end());
      result.status = PnpResult::Status::found;
      result.path = rho;
      result.interior_endpoints = !(a_done && b_done);
      return true;
    }
    auto forced = [&](std::vector<Dir>& leg, std::vector<Dir>& img) {
      if (static_cast<int>(leg.size()) >= L) return false;
      const Dir d = img[c + leg.size()];
      if (!legal_after(leg.back(), d) || graph.origin(d) != graph.terminus(leg.back())) return false;
      const std::size_t ls = leg.size(), is = img.size();
      append(leg, img, d);
      const bool stop = step(a, ia, b, ib);
      leg.resize(ls);
      img.resize(is);
      return stop;
    };
    if (!a_long) return ra > a.size() ? forced(a, ia) : branch(a, ia);
    return rb > b.size() ? forced(b, ib) : branch(b, ib);
  }
};

}  // namespace

PnpResult pnp_bounded_search(const GraphMap& g, const PnpOptions& opts) {
  if (!g.is_self_map()) throw StructuralError("PNP search on a map that is not a self-map");
  if (!is_expanding(g)) throw DomainError("PNP search needs an expanding map");
  const TtCertificate cert = is_train_track(g);
  if (!cert.train_track) throw DomainError("PNP search needs a train track map");

  PnpResult result;
  result.bound_length = opts.max_length;
  result.bound_period = opts.max_period > 0 ? opts.max_period : direction_period(g);

  const OrientedGraph& graph = g.source();
  const std::vector<long double> length = eigen_lengths(g);
  GraphMap gk = g;
  for (long long k = 1; k <= result.bound_period; ++k) {
    if (k > 1) gk = compose(g, gk);
    std::size_t longest = 0;
    for (const auto& p : gk.edge_images()) longest = std::max(longest, p.length());
    if (longest > opts.image_cap) {
      for (long long j = k; j <= result.bound_period; ++j) result.skipped_periods.push_back(j);
      break;
    }
    PnpSearch search{graph, cert.illegal, {}, opts, result, length, 0};
    if (!length.empty()) {
      long double lk = 0;
      for (int e = 0; e < graph.edge_count(); ++e) lk += search.path_length(gk.edge_image(e).dirs, gk.edge_image(e).length());
      long double total = 0;
      for (long double l : length) total += l;
      search.growth = lk / total - 1;
    }
    for (Dir d : graph.all_directions()) {
      const EdgePath p = gk.image(d);
      search.image.push_back(p.dirs);
    }
    for (Turn t : cert.illegal) {
      std::vector<Dir> a{t.first()}, b{t.second()};
      std::vector<Dir> ia = search.image[t.first().code()], ib = search.image[t.second().code()];
      if (search.step(a, ia, b, ib)) {
        if (result.status == PnpResult::Status::found) result.period = k;
        return result;
      }
    }
  }
  return result;
}

FicReport fic_check(const GraphMap& g, const PnpOptions& opts) {
  FicReport r;
  const TtCertificate cert = is_train_track(g);
  r.train_track = cert.train_track;
  r.expanding = cert.expanding;
  if (!r.train_track) r.failures.push_back("not a train track map");

  const IntegerMatrix m = transition_matrix(g);
  r.irreducible = is_irreducible(m);
  r.pf = primitivity_exponent(m).has_value();
  if (!r.irreducible) {
    r.failures.push_back("transition matrix is reducible");
    const int n = m.size();
    std::vector<int> best;
    for (int s = 0; s < n; ++s) {
      std::vector<bool> seen(n, false);
      std::vector<int> todo{s};
      seen[s] = true;
      while (!todo.empty()) {
        const int i = todo.back();
        todo.pop_back();
        for (int j = 0; j < n; ++j) {
          if (m.at(i, j) != 0 && !seen[j]) {
            seen[j] = true;
            todo.push_back(j);
          }
        }
      }
      std::vector<int> set;
      for (int j = 0; j < n; ++j) {
        if (seen[j]) set.push_back(j);
      }
      if (static_cast<int>(set.size()) < n && (best.empty() || set.size() < best.size())) best = set;
    }
    r.invariant_edges = best;
  }
  if (!r.pf) r.failures.push_back("transition matrix is not Perron-Frobenius");

  const auto& graph = g.source();
  for (int v = 0; v < graph.vertex_count(); ++v) {
    const auto& ds = graph.directions_at(v);
    std::vector<int> parent(ds.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    auto pos = [&](Dir d) { return static_cast<int>(std::lower_bound(ds.begin(), ds.end(), d) - ds.begin()); };
    int parts = static_cast<int>(ds.size());
    for (Turn t : cert.closure.turns) {
      if (graph.origin(t.first()) != v) continue;
      const int x = find(pos(t.first())), y = find(pos(t.second()));
      if (x != y) {
        parent[x] = y;
        --parts;
      }
    }
    if (parts > 1) r.disconnected_vertices.push_back(v);
  }
  r.local_whitehead_connected = r.disconnected_vertices.empty();
  if (!r.local_whitehead_connected) r.failures.push_back("a local Whitehead graph is disconnected");

  if (r.train_track && r.expanding) {
    r.pnp = pnp_bounded_search(g, opts);
    r.pnp_clean = r.pnp->clean();
    if (r.pnp->status == PnpResult::Status::found) r.failures.push_back("periodic Nielsen path found");
    if (r.pnp->status == PnpResult::Status::budget_exhausted) r.failures.push_back("PNP search budget exhausted");
  } else {
    r.failures.push_back("PNP search not applicable (needs an expanding train track map)");
  }
  return r;
}

}  // namespace traintrack
