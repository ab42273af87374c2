#include "traintrack/folds.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace traintrack {

namespace {

void move_start(std::vector<EdgeSpec>& specs, Dir d, int w) {
  if (d.reversed()) {
    specs[d.edge()].to = w;
  } else {
    specs[d.edge()].from = w;
  }
}

// Edge image from the image of one of its directions.
EdgePath edge_image_from(const OrientedGraph& target, Dir d, const EdgePath& dir_image) {
  return d.reversed() ? reverse(target, dir_image) : dir_image;
}

std::string fresh_name(const OrientedGraph& g) {
  for (int k = 0;; ++k) {
    const std::string name = k == 0 ? "s" : "s" + std::to_string(k);
    if (!g.find_edge(name)) return name;
  }
}

EdgePath path_from(const OrientedGraph& g, int start, std::vector<Dir> dirs) {
  EdgePath p{start, std::move(dirs)};
  check_path(g, p);
  return p;
}

std::vector<Dir> slice(const std::vector<Dir>& v, std::size_t from, std::size_t to) {
  return std::vector<Dir>(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(to));
}

}  // namespace

std::string to_string(FoldMove::Kind k) {
  switch (k) {
    case FoldMove::Kind::proper_full:
      return "proper-full";
    case FoldMove::Kind::complete:
      return "complete";
    case FoldMove::Kind::partial:
      return "partial";
  }
  return "?";
}

FoldMove apply_fold(const OrientedGraph& g, Dir e1, Dir e0, FoldMove::Kind kind) {
  if (e1.edge() < 0 || e1.edge() >= g.edge_count() || e0.edge() < 0 || e0.edge() >= g.edge_count()) {
    throw StructuralError("fold names an unknown edge");
  }
  if (e1.edge() == e0.edge()) throw StructuralError("fold needs two distinct edges");
  if (g.origin(e1) != g.origin(e0)) throw StructuralError("folded directions do not share an initial vertex");

  const int n = g.vertex_count();
  const int v = g.origin(e0);
  const int t0 = g.terminus(e0);
  const int t1 = g.terminus(e1);
  std::vector<EdgeSpec> specs = g.edges();
  FoldMove out;
  out.kind = kind;
  out.e1 = e1;
  out.e0 = e0;

  switch (kind) {
    case FoldMove::Kind::proper_full: {
      move_start(specs, e1, t0);
      const auto order = normalized_vertex_order(n, specs);
      const OrientedGraph result(n, specs);
      std::vector<EdgePath> images;
      for (int e = 0; e < g.edge_count(); ++e) {
        if (e == e1.edge()) {
          images.push_back(edge_image_from(result, e1, path_from(result, order[v], {e0, e1})));
        } else {
          images.push_back(make_path(result, {Dir::forward(e)}));
        }
        out.edge_origin.push_back(e);
      }
      out.map = GraphMap(g, result, order, std::move(images));
      break;
    }
    case FoldMove::Kind::complete: {
      const int gone = e1.edge();
      auto new_index = [&](int e) { return e < gone ? e : e - 1; };
      std::vector<int> merged(n);
      for (int u = 0; u < n; ++u) {
        int x = u == t1 ? t0 : u;
        if (t1 != t0 && x > t1) --x;
        merged[u] = x;
      }
      const int n2 = t1 != t0 ? n - 1 : n;
      std::vector<EdgeSpec> kept;
      for (int e = 0; e < g.edge_count(); ++e) {
        if (e == gone) continue;
        EdgeSpec s = specs[e];
        s.from = merged[s.from];
        s.to = merged[s.to];
        kept.push_back(s);
        out.edge_origin.push_back(e);
      }
      const auto order = normalized_vertex_order(n2, kept);
      const OrientedGraph result(n2, kept);
      std::vector<int> vmap(n);
      for (int u = 0; u < n; ++u) vmap[u] = order[merged[u]];
      std::vector<EdgePath> images;
      for (int e = 0; e < g.edge_count(); ++e) {
        if (e == gone) {
          const Dir img = Dir::forward(new_index(e0.edge())).oriented(e0.reversed() != e1.reversed());
          images.push_back(make_path(result, {img}));
        } else {
          images.push_back(make_path(result, {Dir::forward(new_index(e))}));
        }
      }
      out.map = GraphMap(g, result, vmap, std::move(images));
      break;
    }
    case FoldMove::Kind::partial: {
      const int w = n;
      move_start(specs, e0, w);
      move_start(specs, e1, w);
      specs.push_back({fresh_name(g), v, w});
      const auto order = normalized_vertex_order(n + 1, specs);
      const OrientedGraph result(n + 1, specs);
      const Dir s = Dir::forward(g.edge_count());
      std::vector<EdgePath> images;
      for (int e = 0; e < g.edge_count(); ++e) {
        if (e == e0.edge()) {
          images.push_back(edge_image_from(result, e0, path_from(result, order[v], {s, e0})));
        } else if (e == e1.edge()) {
          images.push_back(edge_image_from(result, e1, path_from(result, order[v], {s, e1})));
        } else {
          images.push_back(make_path(result, {Dir::forward(e)}));
        }
        out.edge_origin.push_back(e);
      }
      out.edge_origin.push_back(-1);
      out.new_edge = g.edge_count();
      out.new_vertex = order[w];
      out.map = GraphMap(g, result, std::vector<int>(order.begin(), order.begin() + n), std::move(images));
      break;
    }
  }
  return out;
}

FoldStep fold_step(FoldMove move) {
  FoldStep s;
  s.map = move.map;
  s.fold = std::move(move);
  return s;
}

FoldStep relabel_step(const OrientedGraph& g, const Relabeling& sigma, const OrientedGraph& target) {
  FoldStep s;
  s.sigma = sigma;
  s.map = relabeling_map(g, sigma, target);
  return s;
}

int FoldSequence::fold_count() const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(), [](const FoldStep& s) { return s.is_fold(); }));
}

bool FoldSequence::is_clean() const {
  if (steps.empty() || steps.back().is_fold()) return false;
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    if (!steps[i].is_fold()) return false;
  }
  return true;
}

const Relabeling& FoldSequence::final_relabeling() const {
  if (!is_clean()) throw StructuralError("sequence is not clean");
  return steps.back().sigma;
}

std::vector<const FoldMove*> FoldSequence::folds() const {
  std::vector<const FoldMove*> out;
  for (const auto& s : steps) {
    if (s.fold) out.push_back(&*s.fold);
  }
  return out;
}

GraphMap FoldSequence::composed() const {
  if (steps.empty()) throw StructuralError("empty fold sequence");
  GraphMap out = steps.front().map;
  for (std::size_t i = 1; i < steps.size(); ++i) out = compose(steps[i].map, out);
  return out;
}

FoldSequence stallings_decompose(const GraphMap& g) {
  const OrientedGraph& target = g.target();
  OrientedGraph cur = g.source();
  GraphMap h = g;
  FoldSequence seq;

  while (true) {
    const auto dh = direction_map(h);
    std::optional<std::pair<Dir, Dir>> pair;
    bool self_fold = false;
    for (int c1 = 0; c1 < cur.direction_count() && !pair; ++c1) {
      const Dir d1 = Dir::from_code(c1);
      for (int c2 = c1 + 1; c2 < cur.direction_count(); ++c2) {
        const Dir d2 = Dir::from_code(c2);
        if (cur.origin(d1) != cur.origin(d2) || dh[c1] != dh[c2]) continue;
        if (d1.edge() == d2.edge()) {
          self_fold = true;
          continue;
        }
        pair = {d1, d2};
        break;
      }
    }
    if (!pair) {
      if (self_fold) throw DecompositionError("folding would identify an edge with itself", h);
      break;
    }
    const auto [d1, d2] = *pair;
    const EdgePath p1 = h.image(d1), p2 = h.image(d2);
    std::size_t m = 0;
    while (m < p1.length() && m < p2.length() && p1.dirs[m] == p2.dirs[m]) ++m;

    Dir e1 = d2, e0 = d1;
    FoldMove::Kind kind = FoldMove::Kind::partial;
    if (m == p1.length() && m == p2.length()) {
      if (cur.terminus(d1) == cur.terminus(d2)) {
        throw DecompositionError("two edges with common endpoints have the same image; not a homotopy equivalence",
                                 h);
      }
      kind = FoldMove::Kind::complete;
    } else if (m == p2.length()) {
      kind = FoldMove::Kind::proper_full;
      e1 = d1;
      e0 = d2;
    } else if (m == p1.length()) {
      kind = FoldMove::Kind::proper_full;
    }
    FoldMove move = apply_fold(cur, e1, e0, kind);
    const OrientedGraph& next = move.result();

    std::vector<int> vimg(next.vertex_count(), -1);
    for (int u = 0; u < cur.vertex_count(); ++u) {
      const int nu = move.map.vertex_image(u);
      if (vimg[nu] >= 0 && vimg[nu] != h.vertex_image(u)) {
        throw DecompositionError("folded vertices have different images", h);
      }
      vimg[nu] = h.vertex_image(u);
    }
    const std::vector<Dir>& prefix = p1.dirs;
    if (move.new_vertex >= 0) vimg[move.new_vertex] = target.terminus(prefix[m - 1]);

    const std::size_t cut = kind == FoldMove::Kind::proper_full ? h.image(e0).length() : m;
    std::vector<EdgePath> eimg;
    for (int e = 0; e < next.edge_count(); ++e) {
      const int o = move.edge_origin[e];
      if (o < 0) {
        eimg.push_back(path_from(target, h.vertex_image(cur.origin(d1)), slice(prefix, 0, m)));
        continue;
      }
      const bool shortened = kind != FoldMove::Kind::complete &&
                             (o == e1.edge() || (kind == FoldMove::Kind::partial && o == e0.edge()));
      if (!shortened) {
        eimg.push_back(h.edge_image(o));
        continue;
      }
      const Dir d = o == e1.edge() ? e1 : e0;
      const EdgePath full = h.image(d);
      const EdgePath rest = path_from(target, target.terminus(full.dirs[cut - 1]), slice(full.dirs, cut, full.length()));
      eimg.push_back(edge_image_from(target, d, rest));
    }
    GraphMap next_h(next, target, std::move(vimg), std::move(eimg));
    seq.steps.push_back(fold_step(std::move(move)));
    cur = next_h.source();
    h = std::move(next_h);
  }

  const auto sigma = as_relabeling(h);
  if (!sigma) throw DecompositionError("residual map is not a graph isomorphism", h);
  FoldStep last = relabel_step(cur, *sigma, target);
  if (!(last.map == h)) throw DecompositionError("residual isomorphism disagrees on vertices", h);
  seq.steps.push_back(std::move(last));
  if (!(seq.composed() == g)) throw std::logic_error("Stallings decomposition does not compose back to the map");
  return seq;
}

FoldSequence push_permutations(const FoldSequence& seq) {
  if (seq.steps.empty()) return seq;
  FoldSequence out;
  OrientedGraph cur = seq.source();
  OrientedGraph actual = seq.source();
  Relabeling pi = Relabeling::identity(cur.edge_count());
  for (const auto& step : seq.steps) {
    if (!step.is_fold()) {
      pi = step.sigma.after(pi);
      actual = step.target();
      continue;
    }
    const FoldMove& f = *step.fold;
    const Relabeling inv = pi.inverse();
    FoldMove moved = apply_fold(cur, inv(f.e1), inv(f.e0), f.kind);
    const GraphMap lhs = compose(f.map, relabeling_map(cur, pi, actual));
    std::optional<Relabeling> next_pi;
    for (const auto& cand : find_isomorphisms(moved.result(), f.result())) {
      if (compose(relabeling_map(moved.result(), cand, f.result()), moved.map) == lhs) {
        next_pi = cand;
        break;
      }
    }
    if (!next_pi) throw std::logic_error("could not conjugate a relabeling past a fold");
    cur = moved.result();
    actual = f.result();
    pi = *next_pi;
    out.steps.push_back(fold_step(std::move(moved)));
  }
  out.steps.push_back(relabel_step(cur, pi, seq.target()));
  if (!(out.composed() == seq.composed())) throw std::logic_error("pushing relabelings changed the composed map");
  return out;
}

namespace {

void require_clean_loop(const FoldSequence& seq) {
  if (!seq.is_clean()) throw StructuralError("rotation needs a clean fold sequence");
  if (!(seq.source() == seq.target())) throw StructuralError("rotation needs a self-map decomposition");
}

// Steps after fold j followed by folds before it: Gamma_{j+1} -> Gamma_j.
FoldSequence rest_of_loop(const FoldSequence& seq, int j) {
  FoldSequence rest;
  for (std::size_t i = j + 1; i < seq.steps.size(); ++i) rest.steps.push_back(seq.steps[i]);
  for (int i = 0; i < j; ++i) rest.steps.push_back(seq.steps[i]);
  return rest;
}

}  // namespace

FoldSequence rotate(const FoldSequence& seq, int j) {
  require_clean_loop(seq);
  const int n = seq.fold_count();
  if (j < 0 || j > n) throw StructuralError("rotation index out of range");
  if (j == 0) return seq;
  FoldSequence rotated;
  for (std::size_t i = j; i < seq.steps.size(); ++i) rotated.steps.push_back(seq.steps[i]);
  for (int i = 0; i < j; ++i) rotated.steps.push_back(seq.steps[i]);
  return push_permutations(rotated);
}

int subdivision_length(const FoldSequence& seq, int j) {
  require_clean_loop(seq);
  if (j < 0 || j >= seq.fold_count()) throw StructuralError("fold index out of range");
  const FoldMove& f = *seq.steps[j].fold;
  if (f.kind != FoldMove::Kind::proper_full) throw StructuralError("only proper full folds can be subdivided");
  return static_cast<int>(rest_of_loop(seq, j).composed().image(f.e0).length());
}

FoldSequence rotate_subdivided(const FoldSequence& seq, int j, int split) {
  const int q = subdivision_length(seq, j);
  if (split < 1 || split >= q) {
    throw StructuralError("invalid subdivision point: the folded segment maps over " + std::to_string(q) +
                          " edge(s) and has no interior vertex at position " + std::to_string(split));
  }
  const FoldMove& f = *seq.steps[j].fold;
  const GraphMap rest = rest_of_loop(seq, j).composed();
  const OrientedGraph& gj = f.source();
  const FoldMove part = apply_fold(gj, f.e1, f.e0, FoldMove::Kind::partial);
  const OrientedGraph& delta = part.result();
  const GraphMap& fp = part.map;

  const EdgePath q_path = rest.image(f.e0);
  const EdgePath q1 = path_from(gj, q_path.start, slice(q_path.dirs, 0, split));
  const EdgePath q2 = path_from(gj, path_end(gj, q1), slice(q_path.dirs, split, q_path.length()));
  auto push = [&](const EdgePath& p) { return tighten(delta, fp.image(p)); };

  std::vector<int> vimg(delta.vertex_count(), -1);
  for (int u = 0; u < gj.vertex_count(); ++u) {
    vimg[fp.vertex_image(u)] = fp.vertex_image(rest.vertex_image(f.map.vertex_image(u)));
  }
  vimg[part.new_vertex] = fp.vertex_image(path_end(gj, q1));

  std::vector<EdgePath> eimg;
  for (int e = 0; e < delta.edge_count(); ++e) {
    if (e == part.new_edge) {
      eimg.push_back(push(q1));
    } else if (e == f.e0.edge()) {
      eimg.push_back(edge_image_from(delta, f.e0, push(q2)));
    } else if (e == f.e1.edge()) {
      eimg.push_back(edge_image_from(delta, f.e1, push(concat(gj, q2, rest.image(f.e1)))));
    } else {
      eimg.push_back(push(rest.edge_image(e)));
    }
  }
  return stallings_decompose(GraphMap(delta, delta, std::move(vimg), std::move(eimg)));
}

FoldSequence concat(const FoldSequence& a, const FoldSequence& b) {
  if (!(a.target() == b.source())) throw StructuralError("fold sequences are not composable");
  FoldSequence out = a;
  out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
  return out;
}

FoldSequence compose_power(const FoldSequence& seq, int p) {
  if (p < 1) throw StructuralError("power must be positive");
  FoldSequence out = seq;
  for (int i = 1; i < p; ++i) out = concat(out, seq);
  return push_permutations(out);
}

std::string describe(const FoldSequence& seq) {
  std::ostringstream os;
  const int n = seq.fold_count();
  os << n << (n == 1 ? " fold" : " folds");
  bool first = true;
  for (const auto& s : seq.steps) {
    if (!s.is_fold()) continue;
    const auto& f = *s.fold;
    os << (first ? " (" : ", ");
    first = false;
    if (f.kind != FoldMove::Kind::proper_full) os << to_string(f.kind) << " ";
    os << f.source().dir_name(f.e1) << (f.kind == FoldMove::Kind::proper_full ? " over " : " with ")
       << f.source().dir_name(f.e0);
  }
  if (!first) os << ")";
  if (seq.is_clean()) os << ", then relabeling";
  return os.str();
}

}  // namespace traintrack
