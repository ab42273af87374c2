#include "traintrack/graph.hpp"

#include <numeric>
#include <sstream>

namespace traintrack {

std::vector<int> normalized_vertex_order(int vertex_count, const std::vector<EdgeSpec>& edges) {
  if (vertex_count < 0) throw StructuralError("negative vertex count");
  std::vector<int> order(vertex_count, -1);
  int next = 0;
  auto visit = [&](int v) {
    if (v < 0 || v >= vertex_count) {
      throw StructuralError("edge endpoint " + std::to_string(v) + " is not a declared vertex");
    }
    if (order[v] < 0) order[v] = next++;
  };
  for (const auto& e : edges) {
    visit(e.from);
    visit(e.to);
  }
  for (auto& v : order) {
    if (v < 0) v = next++;
  }
  return order;
}

OrientedGraph::OrientedGraph(int vertex_count, std::vector<EdgeSpec> edges) {
  const auto order = normalized_vertex_order(vertex_count, edges);
  for (auto& e : edges) {
    e.from = order[e.from];
    e.to = order[e.to];
  }
  vertex_count_ = vertex_count;
  edges_ = std::move(edges);
  at_vertex_.assign(vertex_count_, {});
  for (int e = 0; e < edge_count(); ++e) {
    at_vertex_[edges_[e].from].push_back(Dir::forward(e));
    at_vertex_[edges_[e].to].push_back(Dir::backward(e));
  }
  for (auto& ds : at_vertex_) std::sort(ds.begin(), ds.end());
}

std::string OrientedGraph::dir_name(Dir d) const {
  return (d.reversed() ? "~" : "") + edge_name(d.edge());
}

std::string OrientedGraph::turn_name(Turn t) const {
  return "{" + dir_name(t.first()) + "," + dir_name(t.second()) + "}";
}

std::optional<int> OrientedGraph::find_edge(const std::string& name) const {
  for (int e = 0; e < edge_count(); ++e) {
    if (edges_[e].name == name) return e;
  }
  return std::nullopt;
}

int OrientedGraph::origin(Dir d) const {
  const auto& e = edge(d.edge());
  return d.reversed() ? e.to : e.from;
}

int OrientedGraph::terminus(Dir d) const {
  const auto& e = edge(d.edge());
  return d.reversed() ? e.from : e.to;
}

const std::vector<Dir>& OrientedGraph::directions_at(int v) const {
  return at_vertex_.at(v);
}

std::vector<Dir> OrientedGraph::all_directions() const {
  std::vector<Dir> out;
  out.reserve(direction_count());
  for (int c = 0; c < direction_count(); ++c) out.push_back(Dir::from_code(c));
  return out;
}

std::vector<int> OrientedGraph::valences() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count_; ++v) out.push_back(valence(v));
  return out;
}

bool OrientedGraph::connected() const { return graph_invariants(*this).connected; }

OrientedGraph OrientedGraph::with_names(const std::vector<std::string>& names) const {
  if (static_cast<int>(names.size()) != edge_count()) throw StructuralError("name list length mismatch");
  OrientedGraph out = *this;
  for (std::size_t i = 0; i < names.size(); ++i) out.edges_[i].name = names[i];
  return out;
}

bool operator==(const OrientedGraph& a, const OrientedGraph& b) {
  if (a.vertex_count_ != b.vertex_count_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    if (a.edges_[i].from != b.edges_[i].from || a.edges_[i].to != b.edges_[i].to) return false;
  }
  return true;
}

int path_end(const OrientedGraph& g, const EdgePath& p) {
  return p.dirs.empty() ? p.start : g.terminus(p.dirs.back());
}

void check_path(const OrientedGraph& g, const EdgePath& p) {
  if (p.start < 0 || p.start >= g.vertex_count()) throw StructuralError("path basepoint is not a vertex");
  int at = p.start;
  for (std::size_t i = 0; i < p.dirs.size(); ++i) {
    const Dir d = p.dirs[i];
    if (d.edge() < 0 || d.edge() >= g.edge_count()) throw StructuralError("path uses an unknown edge");
    if (g.origin(d) != at) {
      throw StructuralError("path is not endpoint-compatible at position " + std::to_string(i) + " (" +
                            g.dir_name(d) + ")");
    }
    at = g.terminus(d);
  }
}

EdgePath make_path(const OrientedGraph& g, std::vector<Dir> dirs) {
  if (dirs.empty()) throw StructuralError("make_path needs a basepoint for an empty path");
  EdgePath p{g.origin(dirs.front()), std::move(dirs)};
  check_path(g, p);
  return p;
}

EdgePath reverse(const OrientedGraph& g, const EdgePath& p) {
  EdgePath out{path_end(g, p), {}};
  out.dirs.reserve(p.dirs.size());
  for (auto it = p.dirs.rbegin(); it != p.dirs.rend(); ++it) out.dirs.push_back(it->inverse());
  return out;
}

EdgePath concat(const OrientedGraph& g, const EdgePath& a, const EdgePath& b) {
  if (path_end(g, a) != b.start) throw StructuralError("concatenation of non-adjacent paths");
  EdgePath out = a;
  out.dirs.insert(out.dirs.end(), b.dirs.begin(), b.dirs.end());
  return out;
}

EdgePath tighten(const OrientedGraph& g, const EdgePath& p) {
  check_path(g, p);
  EdgePath out{p.start, {}};
  out.dirs.reserve(p.dirs.size());
  for (Dir d : p.dirs) {
    if (!out.dirs.empty() && out.dirs.back() == d.inverse()) {
      out.dirs.pop_back();
    } else {
      out.dirs.push_back(d);
    }
  }
  return out;
}

bool is_tight(const EdgePath& p) {
  for (std::size_t i = 1; i < p.dirs.size(); ++i) {
    if (p.dirs[i] == p.dirs[i - 1].inverse()) return false;
  }
  return true;
}

std::vector<Turn> taken_turns(const EdgePath& p) {
  std::vector<Turn> out;
  for (std::size_t i = 1; i < p.dirs.size(); ++i) out.emplace_back(p.dirs[i - 1].inverse(), p.dirs[i]);
  return out;
}

std::string path_name(const OrientedGraph& g, const EdgePath& p) {
  if (p.dirs.empty()) return "<empty at v" + std::to_string(p.start) + ">";
  std::ostringstream os;
  for (std::size_t i = 0; i < p.dirs.size(); ++i) {
    if (i) os << ' ';
    os << g.dir_name(p.dirs[i]);
  }
  return os.str();
}

GraphInvariants graph_invariants(const OrientedGraph& g) {
  GraphInvariants inv;
  inv.valences = g.valences();
  std::sort(inv.valences.begin(), inv.valences.end(), std::greater<>());
  inv.euler_characteristic = g.euler_characteristic();

  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  inv.components = g.vertex_count();
  for (const auto& e : g.edges()) {
    int a = find(e.from), b = find(e.to);
    if (a != b) {
      parent[a] = b;
      --inv.components;
    }
  }
  inv.connected = inv.components <= 1;
  // b1 = |E| - |V| + #components, summed over components.
  inv.rank = g.edge_count() - g.vertex_count() + inv.components;
  return inv;
}

}  // namespace traintrack
