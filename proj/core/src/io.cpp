#include "traintrack/io.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace traintrack {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

struct Token {
  std::string text;
  int column = 0;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || s[0] == '~') return false;
  return s != "=" && s != "->" && s.find("->") == std::string::npos && s.find('=') == std::string::npos;
}

struct RawEdge {
  std::string name;
  int from, to;
  int line;
};

struct RawImage {
  std::vector<Token> tokens;
  int line;
  int arrow_column;
};

}  // namespace

MapDocument parse_map_document(std::string_view text) {
  enum class Section { none, graph, map } section = Section::none;
  std::vector<std::string> vertices;
  std::map<std::string, int> vertex_index;
  std::vector<RawEdge> edges;
  std::map<std::string, int> edge_index;
  std::map<int, RawImage> images;
  bool seen_vertices = false;
  int line_no = 0;
  int last_line = 1;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto tok = tokenize(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    last_line = line_no;
    const std::string& head = tok[0].text;
    if (head == "graph" || head == "map") {
      if (tok.size() > 1) throw ParseError(line_no, tok[1].column, "unexpected token after section name");
      const Section next = head == "graph" ? Section::graph : Section::map;
      if (next == Section::graph && section != Section::none) throw ParseError(line_no, tok[0].column, "graph section must come first");
      if (next == Section::map && section != Section::graph) throw ParseError(line_no, tok[0].column, "map section before graph section");
      section = next;
    } else if (section == Section::graph) {
      if (head == "vertices") {
        if (seen_vertices) throw ParseError(line_no, tok[0].column, "vertices declared twice");
        seen_vertices = true;
        for (std::size_t k = 1; k < tok.size(); ++k) {
          if (!valid_name(tok[k].text)) throw ParseError(line_no, tok[k].column, "invalid vertex name '" + tok[k].text + "'");
          if (!vertex_index.emplace(tok[k].text, static_cast<int>(vertices.size())).second) {
            throw ParseError(line_no, tok[k].column, "duplicate vertex '" + tok[k].text + "'");
          }
          vertices.push_back(tok[k].text);
        }
        if (vertices.empty()) throw ParseError(line_no, tok[0].column, "empty vertex list");
      } else if (head == "edge") {
        if (!seen_vertices) throw ParseError(line_no, tok[0].column, "edge before vertex list");
        if (tok.size() != 6 || tok[2].text != "=" || tok[4].text != "->") {
          const int col = tok.size() > 1 ? tok.back().column : tok[0].column;
          throw ParseError(line_no, col, "expected 'edge <name> = <vertex> -> <vertex>'");
        }
        if (!valid_name(tok[1].text)) throw ParseError(line_no, tok[1].column, "invalid edge name '" + tok[1].text + "'");
        if (edge_index.count(tok[1].text)) throw ParseError(line_no, tok[1].column, "duplicate edge '" + tok[1].text + "'");
        auto vertex = [&](const Token& t) {
          const auto it = vertex_index.find(t.text);
          if (it == vertex_index.end()) throw ParseError(line_no, t.column, "undeclared vertex '" + t.text + "'");
          return it->second;
        };
        edge_index[tok[1].text] = static_cast<int>(edges.size());
        edges.push_back({tok[1].text, vertex(tok[3]), vertex(tok[5]), line_no});
      } else {
        throw ParseError(line_no, tok[0].column, "expected 'vertices' or 'edge'");
      }
    } else if (section == Section::map) {
      const auto it = edge_index.find(head);
      if (it == edge_index.end()) throw ParseError(line_no, tok[0].column, "undeclared edge '" + head + "'");
      if (tok.size() < 2 || tok[1].text != "->") {
        throw ParseError(line_no, tok.size() > 1 ? tok[1].column : tok[0].column + static_cast<int>(head.size()),
                         "expected '->'");
      }
      if (tok.size() == 2) throw ParseError(line_no, tok[1].column, "empty image");
      if (images.count(it->second)) throw ParseError(line_no, tok[0].column, "image of '" + head + "' given twice");
      images[it->second] = {std::vector<Token>(tok.begin() + 2, tok.end()), line_no, tok[1].column};
    } else {
      throw ParseError(line_no, tok[0].column, "expected 'graph'");
    }
    if (end == text.size()) break;
  }
  if (section != Section::map) throw ParseError(last_line, 1, "missing map section");
  if (edges.empty()) throw ParseError(last_line, 1, "graph has no edges");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!images.count(static_cast<int>(e))) {
      throw ParseError(edges[e].line, 1, "no image given for edge '" + edges[e].name + "'");
    }
  }

  std::vector<EdgeSpec> specs;
  for (const auto& e : edges) specs.push_back({e.name, e.from, e.to});
  const std::vector<int> order = normalized_vertex_order(static_cast<int>(vertices.size()), specs);
  const OrientedGraph graph(static_cast<int>(vertices.size()), specs);
  std::vector<std::string> names(vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) names[order[v]] = vertices[v];

  std::vector<std::optional<int>> vimg(vertices.size());
  std::vector<EdgePath> paths(edges.size());
  for (auto& [e, img] : images) {
    std::vector<Dir> dirs;
    for (const auto& t : img.tokens) {
      const bool rev = t.text[0] == '~';
      const std::string name = rev ? t.text.substr(1) : t.text;
      const auto it = edge_index.find(name);
      if (it == edge_index.end()) throw ParseError(img.line, t.column, "undeclared edge '" + name + "'");
      const Dir d = Dir::forward(it->second).oriented(rev);
      if (!dirs.empty() && graph.terminus(dirs.back()) != graph.origin(d)) {
        throw ParseError(img.line, t.column, "path is not connected at '" + t.text + "'");
      }
      dirs.push_back(d);
    }
    auto fix = [&](int v, int image, const Token& at) {
      if (vimg[v] && *vimg[v] != image) {
        throw ParseError(img.line, at.column,
                         "endpoint mismatch: vertex " + names[v] + " already maps to " + names[*vimg[v]]);
      }
      vimg[v] = image;
    };
    fix(graph.origin(Dir::forward(e)), graph.origin(dirs.front()), img.tokens.front());
    fix(graph.terminus(Dir::forward(e)), graph.terminus(dirs.back()), img.tokens.back());
    paths[e] = EdgePath{graph.origin(dirs.front()), std::move(dirs)};
  }
  std::vector<int> vertex_image;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (!vimg[v]) throw ParseError(last_line, 1, "vertex " + names[v] + " has no edges");
    vertex_image.push_back(*vimg[v]);
  }
  return {names, GraphMap(graph, graph, std::move(vertex_image), std::move(paths))};
}

MapDocument read_map_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_map_document(buf.str());
}

std::string print_map_document(const MapDocument& doc) {
  const OrientedGraph& g = doc.map.source();
  std::ostringstream os;
  os << "graph\nvertices";
  for (const auto& v : doc.vertex_names) os << ' ' << v;
  os << '\n';
  for (const auto& e : g.edges()) {
    os << "edge " << e.name << " = " << doc.vertex_names.at(e.from) << " -> " << doc.vertex_names.at(e.to) << '\n';
  }
  os << "map\n";
  for (int e = 0; e < g.edge_count(); ++e) {
    os << g.edge_name(e) << " ->";
    for (Dir d : doc.map.edge_image(e).dirs) os << ' ' << g.dir_name(d);
    os << '\n';
  }
  return os.str();
}

std::string print_map_document(const GraphMap& g) {
  std::vector<std::string> names;
  for (int v = 0; v < g.source().vertex_count(); ++v) names.push_back("v" + std::to_string(v));
  return print_map_document(MapDocument{names, g});
}

}  // namespace traintrack
