#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "traintrack/graph_map.hpp"

namespace traintrack {

/// Malformed map document. line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  /// The message without the position prefix.
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

/// A self-map in text form:
///
///   graph
///   vertices Y Z X
///   edge a = Y -> Z
///   map
///   a -> ~b
///
/// '#' starts a comment. Path tokens are edge names, '~' reverses.
struct MapDocument {
  /// Indexed like map.source() vertices.
  std::vector<std::string> vertex_names;
  GraphMap map;
};

MapDocument parse_map_document(std::string_view text);
MapDocument read_map_document(const std::string& path);
std::string print_map_document(const MapDocument& doc);
/// Vertices named v0, v1, ...
std::string print_map_document(const GraphMap& g);

}  // namespace traintrack
