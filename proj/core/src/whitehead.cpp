#include "traintrack/whitehead.hpp"

#include <numeric>
#include <sstream>

namespace traintrack {

namespace {

std::vector<std::vector<Dir>> components_of(const std::vector<Dir>& vertices, const std::vector<Turn>& edges) {
  std::vector<int> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto pos = [&](Dir d) {
    return static_cast<int>(std::lower_bound(vertices.begin(), vertices.end(), d) - vertices.begin());
  };
  for (Turn t : edges) {
    const int x = find(pos(t.first())), y = find(pos(t.second()));
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
  std::vector<std::vector<Dir>> out;
  std::vector<int> slot(vertices.size(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const int r = find(static_cast<int>(i));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(vertices[i]);
  }
  return out;
}

void check_vertex(const GraphMap& g, int v) {
  if (v < 0 || v >= g.source().vertex_count()) throw StructuralError("unknown vertex v" + std::to_string(v));
}

}  // namespace

std::vector<std::vector<Dir>> WhiteheadGraph::components() const { return components_of(vertices, edges); }

WhiteheadGraph local_whitehead(const GraphMap& g, int v) {
  check_vertex(g, v);
  WhiteheadGraph w;
  w.kind = WhiteheadGraph::Kind::local;
  w.vertex = v;
  w.vertices = g.source().directions_at(v);
  for (Turn t : taken_turn_closure(g).turns) {
    if (g.source().origin(t.first()) == v) w.edges.push_back(t);
  }
  return w;
}

WhiteheadGraph stable_whitehead(const GraphMap& g, int v) {
  check_vertex(g, v);
  const auto periodic = periodic_directions(g);
  auto is_periodic = [&](Dir d) { return std::binary_search(periodic.begin(), periodic.end(), d); };
  WhiteheadGraph local = local_whitehead(g, v);
  WhiteheadGraph w;
  w.kind = WhiteheadGraph::Kind::stable;
  w.vertex = v;
  for (Dir d : local.vertices) {
    if (is_periodic(d)) w.vertices.push_back(d);
  }
  for (Turn t : local.edges) {
    if (is_periodic(t.first()) && is_periodic(t.second())) w.edges.push_back(t);
  }
  return w;
}

std::vector<int> IdealWhiteheadGraph::sizes() const {
  std::vector<int> out;
  for (const auto& c : components) out.push_back(static_cast<int>(c.vertices.size()));
  return out;
}

Rational IdealWhiteheadGraph::rotationless_index() const {
  Rational sum = 0;
  for (const auto& c : components) sum += 1 - Rational(static_cast<long long>(c.vertices.size()), 2);
  return sum;
}

IdealWhiteheadGraph ideal_whitehead(const GraphMap& g, const PnpOptions& opts) {
  if (!is_train_track(g).train_track) throw DomainError("ideal Whitehead graph needs a train track map");
  IdealWhiteheadGraph iw;
  iw.pnp = pnp_bounded_search(g, opts);
  if (iw.pnp.status == PnpResult::Status::found) {
    throw DomainError("ideal Whitehead graph is undefined here: a periodic Nielsen path was found");
  }
  if (iw.pnp.status == PnpResult::Status::budget_exhausted) {
    throw DomainError("ideal Whitehead graph refused: the PNP search exhausted its budget");
  }
  for (int v = 0; v < g.source().vertex_count(); ++v) {
    const WhiteheadGraph sw = stable_whitehead(g, v);
    for (auto& comp : sw.components()) {
      if (comp.size() == 2) continue;
      IdealComponent ic;
      ic.vertex = v;
      ic.vertices = comp;
      for (Turn t : sw.edges) {
        if (std::binary_search(comp.begin(), comp.end(), t.first())) ic.edges.push_back(t);
      }
      iw.components.push_back(std::move(ic));
    }
  }
  return iw;
}

PrincipalVerdict is_principal(const GraphMap& g, const PnpOptions& opts, std::optional<int> rank) {
  PrincipalVerdict out;
  out.rank = rank ? *rank : graph_invariants(g.source()).rank;
  out.expected_index = Rational(3, 2) - out.rank;
  out.fic = fic_check(g, opts);
  if (!out.fic.passed()) {
    out.reasons = out.fic.failures;
    return out;
  }
  out.iw = ideal_whitehead(g, opts);
  out.index = out.iw->rotationless_index();
  const int wanted = 2 * out.rank - 3;
  const int count = static_cast<int>(out.iw->components.size());
  const bool triangles = std::all_of(out.iw->components.begin(), out.iw->components.end(),
                                     [](const IdealComponent& c) { return c.is_triangle(); });
  if (count != wanted) {
    out.reasons.push_back("ideal Whitehead graph has " + std::to_string(count) + " components, expected " +
                          std::to_string(wanted));
  }
  if (!triangles) out.reasons.push_back("ideal Whitehead graph has a component that is not a triangle");
  if (out.reasons.empty() && out.index != out.expected_index) {
    out.reasons.push_back("rotationless index does not equal 3/2 - r");
  }
  out.principal = out.reasons.empty();
  return out;
}

std::vector<Dir> LttStructure::red_vertices() const {
  std::vector<Dir> out;
  for (int c = 0; c < static_cast<int>(purple.size()); ++c) {
    if (!purple[c]) out.push_back(Dir::from_code(c));
  }
  return out;
}

std::vector<Turn> LttStructure::edges_at(Dir d) const {
  std::vector<Turn> out;
  for (const auto* list : {&purple_edges, &red_edges}) {
    for (Turn t : *list) {
      if (t.contains(d)) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

WhiteheadGraph LttStructure::purple_at(int v) const {
  WhiteheadGraph w;
  w.kind = WhiteheadGraph::Kind::stable;
  w.vertex = v;
  for (Dir d : graph.directions_at(v)) {
    if (purple[d.code()]) w.vertices.push_back(d);
  }
  for (Turn t : purple_edges) {
    if (graph.origin(t.first()) == v) w.edges.push_back(t);
  }
  return w;
}

std::vector<int> LttStructure::encode() const {
  std::vector<int> out;
  out.push_back(graph.vertex_count());
  out.push_back(graph.edge_count());
  for (const auto& e : graph.edges()) {
    out.push_back(e.from);
    out.push_back(e.to);
  }
  for (bool p : purple) out.push_back(p ? 1 : 0);
  out.push_back(static_cast<int>(purple_edges.size()));
  for (Turn t : purple_edges) {
    out.push_back(t.first().code());
    out.push_back(t.second().code());
  }
  out.push_back(static_cast<int>(red_edges.size()));
  for (Turn t : red_edges) {
    out.push_back(t.first().code());
    out.push_back(t.second().code());
  }
  return out;
}

LttStructure make_ltt(OrientedGraph graph, std::vector<bool> purple, std::vector<Turn> turns) {
  if (static_cast<int>(purple.size()) != graph.direction_count()) {
    throw StructuralError("color list does not match the directions of the graph");
  }
  LttStructure s;
  s.graph = std::move(graph);
  s.purple = std::move(purple);
  std::sort(turns.begin(), turns.end());
  turns.erase(std::unique(turns.begin(), turns.end()), turns.end());
  for (Turn t : turns) {
    if (t.degenerate()) throw StructuralError("degenerate turn in an ltt structure");
    if (t.second().edge() >= s.graph.edge_count()) throw StructuralError("turn uses an unknown edge");
    if (s.graph.origin(t.first()) != s.graph.origin(t.second())) {
      throw StructuralError("turn joins directions at different vertices");
    }
    if (s.purple[t.first().code()] && s.purple[t.second().code()]) {
      s.purple_edges.push_back(t);
    } else {
      s.red_edges.push_back(t);
    }
  }
  return s;
}

LttStructure ltt_structure(const GraphMap& g) {
  if (!is_train_track(g).train_track) throw DomainError("ltt structure needs a train track map");
  const auto periodic = periodic_directions(g);
  std::vector<bool> purple(g.source().direction_count(), false);
  for (Dir d : periodic) purple[d.code()] = true;
  return make_ltt(g.source(), std::move(purple), taken_turn_closure(g).turns);
}

LttStructure relabel(const LttStructure& s, const Relabeling& sigma) {
  std::vector<bool> purple(s.purple.size(), false);
  for (int c = 0; c < static_cast<int>(s.purple.size()); ++c) purple[sigma(Dir::from_code(c)).code()] = s.purple[c];
  std::vector<Turn> turns;
  for (const auto* list : {&s.purple_edges, &s.red_edges}) {
    for (Turn t : *list) turns.emplace_back(sigma(t.first()), sigma(t.second()));
  }
  return make_ltt(relabel(s.graph, sigma), std::move(purple), std::move(turns));
}

std::optional<Relabeling> ltt_isomorphic(const LttStructure& a, const LttStructure& b, IsoMode mode) {
  if (mode == IsoMode::exact) {
    if (a == b) return Relabeling::identity(a.graph.edge_count());
    return std::nullopt;
  }
  for (const auto& sigma : find_isomorphisms(a.graph, b.graph)) {
    if (relabel(a, sigma) == b) return sigma;
  }
  return std::nullopt;
}

LttCanonical ltt_canonical(const LttStructure& s) {
  const int n = s.graph.edge_count();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  LttCanonical best;
  bool have = false;
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<Dir> img;
      for (int e = 0; e < n; ++e) img.push_back(Dir::forward(perm[e]).oriented((mask >> e) & 1u));
      Relabeling sigma(std::move(img));
      auto code = relabel(s, sigma).encode();
      if (!have || code < best.code) {
        best.code = std::move(code);
        best.sigma = sigma;
        have = true;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

LonelyDirectionCheck lonely_direction(const LttStructure& s, int rank) {
  LonelyDirectionCheck out;
  const auto& g = s.graph;
  int four = -1;
  int fours = 0, threes = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.valence(v) == 4) {
      four = v;
      ++fours;
    } else if (g.valence(v) == 3) {
      ++threes;
    }
  }
  out.valences = fours == 1 && fours + threes == g.vertex_count() && g.vertex_count() == 2 * rank - 3;

  int triangles = 0;
  bool only_triangles = true;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto w = s.purple_at(v);
    for (const auto& comp : w.components()) {
      int edges = 0;
      for (Turn t : w.edges) edges += std::binary_search(comp.begin(), comp.end(), t.first());
      if (comp.size() == 3 && edges == 3) {
        ++triangles;
      } else {
        only_triangles = false;
      }
    }
  }
  out.triangles = only_triangles && triangles == 2 * rank - 3;

  const auto red = s.red_vertices();
  out.single_red_vertex = red.size() == 1 && four >= 0 && g.origin(red.front()) == four;
  out.single_red_edge = out.single_red_vertex && s.red_edges.size() == 1 && s.red_edges.front().contains(red.front());
  return out;
}

std::string ltt_to_dot(const LttStructure& s, const std::string& name) {
  const auto& g = s.graph;
  auto node = [&](Dir d) { return std::string("d") + std::to_string(d.code()); };
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n";
  os << "  node [shape=circle, style=filled, fontcolor=white];\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    os << "  subgraph cluster_v" << v << " {\n";
    os << "    label=\"v" << v << "\";\n";
    for (Dir d : g.directions_at(v)) {
      os << "    " << node(d) << " [label=\"" << g.dir_name(d) << "\", fillcolor=" << (s.purple[d.code()] ? "purple" : "red")
         << "];\n";
    }
    os << "  }\n";
  }
  for (Turn t : s.purple_edges) os << "  " << node(t.first()) << " -- " << node(t.second()) << " [color=purple];\n";
  for (Turn t : s.red_edges) os << "  " << node(t.first()) << " -- " << node(t.second()) << " [color=red];\n";
  for (int e = 0; e < g.edge_count(); ++e) {
    os << "  " << node(Dir::forward(e)) << " -- " << node(Dir::backward(e)) << " [color=black, penwidth=2, label=\""
       << g.edge_name(e) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace traintrack
