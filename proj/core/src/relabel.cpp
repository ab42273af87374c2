#include "traintrack/relabel.hpp"

#include <numeric>
#include <sstream>

namespace traintrack {

Relabeling::Relabeling(std::vector<Dir> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (Dir d : image_) {
    if (d.edge() < 0 || d.edge() >= static_cast<int>(image_.size()) || seen[d.edge()]) {
      throw StructuralError("relabeling is not a signed permutation");
    }
    seen[d.edge()] = true;
  }
}

Relabeling Relabeling::identity(int edge_count) {
  std::vector<Dir> img;
  for (int e = 0; e < edge_count; ++e) img.push_back(Dir::forward(e));
  return Relabeling(std::move(img));
}

bool Relabeling::is_identity() const {
  for (int e = 0; e < size(); ++e) {
    if (image_[e] != Dir::forward(e)) return false;
  }
  return true;
}

Relabeling Relabeling::inverse() const {
  std::vector<Dir> inv(image_.size());
  for (int e = 0; e < size(); ++e) {
    const Dir d = image_[e];
    inv[d.edge()] = Dir::forward(e).oriented(d.reversed());
  }
  return Relabeling(std::move(inv));
}

Relabeling Relabeling::after(const Relabeling& other) const {
  if (other.size() != size()) throw StructuralError("relabeling size mismatch");
  std::vector<Dir> img;
  for (Dir d : other.image_) img.push_back((*this)(d));
  return Relabeling(std::move(img));
}

int Relabeling::order() const {
  Relabeling p = *this;
  int k = 1;
  while (!p.is_identity()) {
    p = after(p);
    ++k;
  }
  return k;
}

namespace {

std::vector<EdgeSpec> relabeled_specs(const OrientedGraph& g, const Relabeling& sigma) {
  if (sigma.size() != g.edge_count()) throw StructuralError("relabeling does not match the graph's edge count");
  std::vector<EdgeSpec> specs(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const Dir d = sigma(Dir::forward(e));
    const auto& src = g.edge(e);
    auto& out = specs[d.edge()];
    out.name = g.edge_name(d.edge());
    out.from = d.reversed() ? src.to : src.from;
    out.to = d.reversed() ? src.from : src.to;
  }
  return specs;
}

}  // namespace

OrientedGraph relabel(const OrientedGraph& g, const Relabeling& sigma) {
  return OrientedGraph(g.vertex_count(), relabeled_specs(g, sigma));
}

std::vector<int> relabel_vertices(const OrientedGraph& g, const Relabeling& sigma) {
  return normalized_vertex_order(g.vertex_count(), relabeled_specs(g, sigma));
}

GraphMap relabeling_map(const OrientedGraph& g, const Relabeling& sigma) {
  return relabeling_map(g, sigma, relabel(g, sigma));
}

GraphMap relabeling_map(const OrientedGraph& g, const Relabeling& sigma, const OrientedGraph& target) {
  if (!(relabel(g, sigma) == target)) throw StructuralError("relabeling does not carry the graph onto the target");
  std::vector<EdgePath> es;
  for (int e = 0; e < g.edge_count(); ++e) es.push_back(make_path(target, {sigma(Dir::forward(e))}));
  return GraphMap(g, target, relabel_vertices(g, sigma), std::move(es));
}

GraphMap relabel(const GraphMap& h, const Relabeling& sigma) {
  if (!h.is_self_map()) throw StructuralError("relabel: map is not a self-map");
  const OrientedGraph& g = h.source();
  const OrientedGraph target = relabel(g, sigma);
  const auto vmap = relabel_vertices(g, sigma);
  std::vector<int> vinv(vmap.size());
  for (int v = 0; v < static_cast<int>(vmap.size()); ++v) vinv[vmap[v]] = v;

  const Relabeling inv = sigma.inverse();
  std::vector<int> vs(g.vertex_count());
  for (int w = 0; w < g.vertex_count(); ++w) vs[w] = vmap[h.vertex_image(vinv[w])];
  std::vector<EdgePath> es;
  for (int e = 0; e < g.edge_count(); ++e) {
    const EdgePath img = h.image(inv(Dir::forward(e)));
    EdgePath out{vmap[img.start], {}};
    for (Dir d : img.dirs) out.dirs.push_back(sigma(d));
    es.push_back(std::move(out));
  }
  return GraphMap(target, target, std::move(vs), std::move(es));
}

std::vector<Relabeling> find_isomorphisms(const OrientedGraph& a, const OrientedGraph& b, std::size_t limit) {
  std::vector<Relabeling> out;
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return out;
  {
    auto va = a.valences(), vb = b.valences();
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    if (va != vb) return out;
  }
  const int n = a.edge_count();
  // Edge order that keeps each new edge adjacent to an already placed vertex.
  std::vector<int> order;
  {
    std::vector<bool> placed(n, false), reached(a.vertex_count(), false);
    while (static_cast<int>(order.size()) < n) {
      int pick = -1;
      for (int e = 0; e < n && pick < 0; ++e) {
        if (!placed[e] && (reached[a.edge(e).from] || reached[a.edge(e).to])) pick = e;
      }
      if (pick < 0) {
        for (int e = 0; e < n && pick < 0; ++e) {
          if (!placed[e]) pick = e;
        }
      }
      placed[pick] = true;
      reached[a.edge(pick).from] = reached[a.edge(pick).to] = true;
      order.push_back(pick);
    }
  }

  std::vector<int> vmap(a.vertex_count(), -1), vinv(b.vertex_count(), -1);
  std::vector<bool> used(n, false);
  std::vector<Dir> image(n);

  auto bind = [&](int va, int vb, std::vector<int>& undo) {
    if (vmap[va] == vb) return true;
    if (vmap[va] != -1 || vinv[vb] != -1) return false;
    if (a.valence(va) != b.valence(vb)) return false;
    vmap[va] = vb;
    vinv[vb] = va;
    undo.push_back(va);
    return true;
  };

  auto rec = [&](auto&& self, int depth) -> bool {
    if (depth == n) {
      out.emplace_back(image);
      return limit != 0 && out.size() >= limit;
    }
    const int e = order[depth];
    for (int c = 0; c < 2 * n; ++c) {
      const Dir d = Dir::from_code(c);
      if (used[d.edge()]) continue;
      std::vector<int> undo;
      if (bind(a.edge(e).from, b.origin(d), undo) && bind(a.edge(e).to, b.terminus(d), undo)) {
        used[d.edge()] = true;
        image[e] = d;
        if (self(self, depth + 1)) return true;
        used[d.edge()] = false;
      }
      for (int v : undo) {
        vinv[vmap[v]] = -1;
        vmap[v] = -1;
      }
    }
    return false;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Relabeling> as_relabeling(const GraphMap& g) {
  const int n = g.source().edge_count();
  if (g.target().edge_count() != n) return std::nullopt;
  std::vector<Dir> img;
  std::vector<bool> seen(n, false);
  for (int e = 0; e < n; ++e) {
    const EdgePath& p = g.edge_image(e);
    if (p.length() != 1 || seen[p.dirs[0].edge()]) return std::nullopt;
    seen[p.dirs[0].edge()] = true;
    img.push_back(p.dirs[0]);
  }
  Relabeling sigma(std::move(img));
  if (!(relabel(g.source(), sigma) == g.target())) return std::nullopt;
  return sigma;
}

std::optional<Relabeling> find_conjugating_relabeling(const GraphMap& a, const GraphMap& b) {
  for (const auto& tau : find_isomorphisms(a.source(), b.source())) {
    if (relabel(a, tau) == b) return tau;
  }
  return std::nullopt;
}

std::string relabeling_name(const OrientedGraph& g, const Relabeling& sigma) {
  std::ostringstream os;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (e) os << ", ";
    os << g.edge_name(e) << "->" << g.dir_name(sigma(Dir::forward(e)));
  }
  return os.str();
}

}  // namespace traintrack
