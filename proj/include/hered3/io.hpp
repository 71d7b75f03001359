#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hered3/coloring.hpp"
#include "hered3/graph.hpp"

namespace hered3 {

enum class GraphFormat : std::uint8_t { kAuto, kDimacs, kEdgeList };

// A parsed input. Vertex i of `graph` carries `labels[i]`: the 1-based index
// for DIMACS, the original token for edge lists.
struct GraphDocument {
  GraphFormat format = GraphFormat::kDimacs;
  Graph graph;
  std::vector<std::string> labels;
  PaletteMap palettes;  // full unless annotated
  bool has_palettes = false;
  std::vector<std::string> warnings;
};

// Throws InputError with a line number on malformed input or self-loops.
//
// DIMACS: "c" comments, one "p edge <n> <m>" line, "e <u> <v>" edges with
// 1-based indices, optional "l <v> <colors>" palette lines (e.g. "l 3 13").
// Edge list: one "<a> <b>" pair per line, arbitrary labels, "#" comments,
// a lone label declares an isolated vertex, "@palette <label> <colors>"
// annotates a palette.
GraphDocument parse_dimacs(std::string_view text);
GraphDocument parse_edge_list(std::string_view text);
// kAuto picks DIMACS when the first non-comment line starts with "p ".
GraphDocument parse_graph(std::string_view text, GraphFormat format = GraphFormat::kAuto);
// "-" reads standard input.
GraphDocument read_graph_file(const std::string& path, GraphFormat format = GraphFormat::kAuto);

GraphFormat parse_format_name(const std::string& name);

// Vertices are renumbered 1..n in id order.
std::string write_dimacs(const Graph& g);
// Uses labels when given (indexed by id), otherwise ids.
std::string write_edge_list(const Graph& g, const std::vector<std::string>* labels = nullptr);

// "v <index> <color>" per vertex, 1-based index in id order.
std::string write_witness(const Graph& g, const Coloring& coloring);

}  // namespace hered3
