#include "hered3/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace hered3 {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) fail(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  return v;
}

Palette parse_palette(std::string_view tok, std::size_t line) {
  Palette p;
  for (char c : tok) {
    if (c < '1' || c > '3') fail(line, "palette colors must be digits 1..3, got '" + std::string(tok) + "'");
    p = p.with(c - '0');
  }
  return p;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    f(lineno, line);
    if (end == text.size()) break;
    start = end + 1;
  }
}

void add_edge_checked(GraphDocument& doc, std::set<std::pair<VertexId, VertexId>>& seen, VertexId a, VertexId b,
                      std::size_t line) {
  if (a == b) fail(line, "self-loop on vertex " + doc.labels[index(a)]);
  const auto key = std::minmax(a, b);
  if (!seen.insert(key).second) {
    doc.warnings.push_back("line " + std::to_string(line) + ": duplicate edge " + doc.labels[index(a)] + " " +
                           doc.labels[index(b)] + " ignored");
    return;
  }
  doc.graph.add_edge(a, b);
}

}  // namespace

GraphDocument parse_dimacs(std::string_view text) {
  GraphDocument doc;
  doc.format = GraphFormat::kDimacs;
  bool header = false;
  std::uint64_t declared_edges = 0;
  std::set<std::pair<VertexId, VertexId>> seen;
  for_each_line(text, [&](std::size_t ln, std::string_view line) {
    const auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") return;
    if (tok[0] == "p") {
      if (header) fail(ln, "second problem line");
      if (tok.size() != 4 || (tok[1] != "edge" && tok[1] != "col")) fail(ln, "expected 'p edge <vertices> <edges>'");
      const std::uint64_t n = parse_uint(tok[2], ln);
      declared_edges = parse_uint(tok[3], ln);
      doc.graph = Graph(n);
      for (std::uint64_t i = 1; i <= n; ++i) doc.labels.push_back(std::to_string(i));
      doc.palettes.assign(n, Palette::full());
      header = true;
      return;
    }
    if (!header) fail(ln, "data before the problem line");
    auto vertex = [&](std::string_view t) {
      const std::uint64_t v = parse_uint(t, ln);
      if (v < 1 || v > doc.graph.vertex_count()) fail(ln, "vertex " + std::string(t) + " out of range");
      return vid(static_cast<std::uint32_t>(v - 1));
    };
    if (tok[0] == "e") {
      if (tok.size() != 3) fail(ln, "expected 'e <u> <v>'");
      add_edge_checked(doc, seen, vertex(tok[1]), vertex(tok[2]), ln);
    } else if (tok[0] == "l") {
      if (tok.size() != 3) fail(ln, "expected 'l <vertex> <colors>'");
      doc.palettes[index(vertex(tok[1]))] = parse_palette(tok[2], ln);
      doc.has_palettes = true;
    } else {
      fail(ln, "unknown line type '" + std::string(tok[0]) + "'");
    }
  });
  if (!header) throw InputError("missing 'p edge' problem line");
  if (declared_edges != seen.size()) {
    doc.warnings.push_back("problem line declares " + std::to_string(declared_edges) + " edges, found " +
                           std::to_string(seen.size()));
  }
  return doc;
}

GraphDocument parse_edge_list(std::string_view text) {
  GraphDocument doc;
  doc.format = GraphFormat::kEdgeList;
  std::map<std::string, VertexId, std::less<>> ids;
  std::set<std::pair<VertexId, VertexId>> seen;
  auto intern = [&](std::string_view label) {
    auto it = ids.find(label);
    if (it != ids.end()) return it->second;
    const VertexId v = doc.graph.add_vertex();
    ids.emplace(std::string(label), v);
    doc.labels.emplace_back(label);
    doc.palettes.push_back(Palette::full());
    return v;
  };
  for_each_line(text, [&](std::size_t ln, std::string_view line) {
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = split_ws(line);
    if (tok.empty()) return;
    if (tok[0] == "@palette") {
      if (tok.size() != 3) fail(ln, "expected '@palette <label> <colors>'");
      const VertexId v = intern(tok[1]);
      doc.palettes[index(v)] = parse_palette(tok[2], ln);
      doc.has_palettes = true;
      return;
    }
    if (tok.size() == 1) {
      intern(tok[0]);
      return;
    }
    if (tok.size() != 2) fail(ln, "expected '<u> <v>'");
    if (tok[0] == tok[1]) fail(ln, "self-loop on vertex " + std::string(tok[0]));
    const VertexId a = intern(tok[0]);
    const VertexId b = intern(tok[1]);
    add_edge_checked(doc, seen, a, b, ln);
  });
  return doc;
}

GraphDocument parse_graph(std::string_view text, GraphFormat format) {
  if (format == GraphFormat::kAuto) {
    std::optional<GraphFormat> seen;
    for_each_line(text, [&](std::size_t, std::string_view line) {
      const auto tok = split_ws(line);
      if (seen || tok.empty() || tok[0] == "c" || tok[0].front() == '#') return;
      seen = tok[0] == "p" ? GraphFormat::kDimacs : GraphFormat::kEdgeList;
    });
    format = seen.value_or(GraphFormat::kEdgeList);
  }
  return format == GraphFormat::kDimacs ? parse_dimacs(text) : parse_edge_list(text);
}

GraphDocument read_graph_file(const std::string& path, GraphFormat format) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    buf << in.rdbuf();
  }
  return parse_graph(buf.str(), format);
}

GraphFormat parse_format_name(const std::string& name) {
  if (name == "auto") return GraphFormat::kAuto;
  if (name == "dimacs" || name == "col") return GraphFormat::kDimacs;
  if (name == "edges" || name == "edge-list") return GraphFormat::kEdgeList;
  throw InputError("unknown format '" + name + "' (expected auto, dimacs or edges)");
}

std::string write_dimacs(const Graph& g) {
  std::vector<std::uint32_t> num(g.id_bound(), 0);
  std::uint32_t next = 1;
  for (VertexId v : g.vertices()) num[index(v)] = next++;
  std::ostringstream out;
  out << "p edge " << g.vertex_count() << " " << g.edge_count() << "\n";
  for (auto [a, b] : g.edges()) out << "e " << num[index(a)] << " " << num[index(b)] << "\n";
  return out.str();
}

std::string write_edge_list(const Graph& g, const std::vector<std::string>* labels) {
  auto name = [&](VertexId v) { return labels != nullptr ? (*labels)[index(v)] : std::to_string(index(v)); };
  std::ostringstream out;
  std::vector<bool> touched(g.id_bound(), false);
  for (auto [a, b] : g.edges()) {
    out << name(a) << " " << name(b) << "\n";
    touched[index(a)] = touched[index(b)] = true;
  }
  for (VertexId v : g.vertices()) {
    if (!touched[index(v)]) out << name(v) << "\n";
  }
  return out.str();
}

std::string write_witness(const Graph& g, const Coloring& coloring) {
  std::ostringstream out;
  std::uint32_t next = 1;
  for (VertexId v : g.vertices()) out << "v " << next++ << " " << color_of(coloring, v) << "\n";
  return out.str();
}

}  // namespace hered3
