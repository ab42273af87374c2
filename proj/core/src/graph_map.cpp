#include "traintrack/graph_map.hpp"

#include <map>
#include <numeric>

namespace traintrack {

GraphMap::GraphMap(OrientedGraph source, OrientedGraph target, std::vector<int> vertex_image,
                   std::vector<EdgePath> edge_image)
    : source_(std::move(source)),
      target_(std::move(target)),
      vertex_image_(std::move(vertex_image)),
      edge_image_(std::move(edge_image)) {
  if (static_cast<int>(vertex_image_.size()) != source_.vertex_count()) {
    throw StructuralError("vertex assignment has wrong size");
  }
  if (static_cast<int>(edge_image_.size()) != source_.edge_count()) {
    throw StructuralError("edge assignment has wrong size");
  }
  for (int v : vertex_image_) {
    if (v < 0 || v >= target_.vertex_count()) throw StructuralError("vertex image is not a target vertex");
  }
  for (int e = 0; e < source_.edge_count(); ++e) {
    const EdgePath& p = edge_image_[e];
    if (p.empty()) throw StructuralError("edge " + source_.edge_name(e) + " has an empty image");
    check_path(target_, p);
    const auto& spec = source_.edge(e);
    if (p.start != vertex_image_[spec.from]) {
      throw StructuralError("image of edge " + source_.edge_name(e) + " does not start at the image of its origin");
    }
    if (path_end(target_, p) != vertex_image_[spec.to]) {
      throw StructuralError("image of edge " + source_.edge_name(e) + " does not end at the image of its terminus");
    }
  }
}

GraphMap GraphMap::identity(const OrientedGraph& g) {
  std::vector<int> vs(g.vertex_count());
  std::iota(vs.begin(), vs.end(), 0);
  std::vector<EdgePath> es;
  for (int e = 0; e < g.edge_count(); ++e) es.push_back(make_path(g, {Dir::forward(e)}));
  return GraphMap(g, g, std::move(vs), std::move(es));
}

EdgePath GraphMap::image(Dir d) const {
  const EdgePath& p = edge_image(d.edge());
  return d.reversed() ? reverse(target_, p) : p;
}

EdgePath GraphMap::image(const EdgePath& p) const {
  EdgePath out{vertex_image(p.start), {}};
  for (Dir d : p.dirs) {
    const EdgePath& img = edge_image(d.edge());
    if (d.reversed()) {
      for (auto it = img.dirs.rbegin(); it != img.dirs.rend(); ++it) out.dirs.push_back(it->inverse());
    } else {
      out.dirs.insert(out.dirs.end(), img.dirs.begin(), img.dirs.end());
    }
  }
  return out;
}

bool GraphMap::operator==(const GraphMap& other) const {
  return source_ == other.source_ && target_ == other.target_ && vertex_image_ == other.vertex_image_ &&
         edge_image_ == other.edge_image_;
}

GraphMap compose(const GraphMap& g, const GraphMap& f) {
  if (!(f.target() == g.source())) throw StructuralError("compose: target of f is not the source of g");
  std::vector<int> vs;
  for (int v : f.vertex_images()) vs.push_back(g.vertex_image(v));
  std::vector<EdgePath> es;
  for (const auto& p : f.edge_images()) {
    EdgePath img = tighten(g.target(), g.image(p));
    es.push_back(std::move(img));
  }
  return GraphMap(f.source(), g.target(), std::move(vs), std::move(es));
}

GraphMap power(const GraphMap& g, int k) {
  if (k < 1) throw StructuralError("power: exponent must be positive");
  if (!g.is_self_map()) throw StructuralError("power: not a self-map");
  GraphMap out = g;
  for (int i = 1; i < k; ++i) out = compose(g, out);
  return out;
}

std::vector<Dir> direction_map(const GraphMap& g) {
  std::vector<Dir> out;
  out.reserve(g.source().direction_count());
  for (Dir d : g.source().all_directions()) {
    const EdgePath& p = g.edge_image(d.edge());
    out.push_back(d.reversed() ? p.dirs.back().inverse() : p.dirs.front());
  }
  return out;
}

namespace {

// Cycle membership of a functional graph on direction codes.
std::vector<int> cycle_lengths(const std::vector<Dir>& dg) {
  const int n = static_cast<int>(dg.size());
  std::vector<int> len(n, 0);
  std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
  for (int s = 0; s < n; ++s) {
    if (state[s]) continue;
    std::vector<int> trail;
    int x = s;
    while (state[x] == 0) {
      state[x] = 1;
      trail.push_back(x);
      x = dg[x].code();
    }
    if (state[x] == 1) {
      auto it = std::find(trail.begin(), trail.end(), x);
      const int l = static_cast<int>(trail.end() - it);
      for (; it != trail.end(); ++it) len[*it] = l;
    }
    for (int t : trail) state[t] = 2;
  }
  return len;
}

}  // namespace

std::vector<Dir> periodic_directions(const GraphMap& g) {
  if (!g.is_self_map()) throw StructuralError("periodic_directions: not a self-map");
  const auto dg = direction_map(g);
  const auto len = cycle_lengths(dg);
  std::vector<Dir> out;
  for (int c = 0; c < static_cast<int>(dg.size()); ++c) {
    if (len[c] > 0) out.push_back(Dir::from_code(c));
  }
  return out;
}

long long direction_period(const GraphMap& g) {
  const auto len = cycle_lengths(direction_map(g));
  long long l = 1;
  for (int x : len) {
    if (x > 0) l = std::lcm(l, static_cast<long long>(x));
  }
  return l;
}

int collapse_time(const std::vector<Dir>& dg, Dir a, Dir b) {
  const int n = static_cast<int>(dg.size());
  const long long bound = static_cast<long long>(n) * n;
  for (long long k = 1; k <= bound; ++k) {
    a = dg[a.code()];
    b = dg[b.code()];
    if (a == b) return static_cast<int>(k);
  }
  return 0;
}

std::vector<std::vector<Dir>> gates(const GraphMap& g) {
  if (!g.is_self_map()) throw StructuralError("gates: not a self-map");
  const auto dg = direction_map(g);
  const auto& graph = g.source();
  std::vector<std::vector<Dir>> out;
  for (int v = 0; v < graph.vertex_count(); ++v) {
    std::vector<std::vector<Dir>> local;
    for (Dir d : graph.directions_at(v)) {
      bool placed = false;
      for (auto& gate : local) {
        if (collapse_time(dg, gate.front(), d) > 0) {
          gate.push_back(d);
          placed = true;
          break;
        }
      }
      if (!placed) local.push_back({d});
    }
    for (auto& gate : local) out.push_back(std::move(gate));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace traintrack
