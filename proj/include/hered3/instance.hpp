#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hered3/coloring.hpp"
#include "hered3/graph.hpp"
#include "hered3/palette.hpp"

namespace hered3 {

// Named event counters. Reduction rules and solver stages bump these so that
// tests can confirm which code paths ran.
struct Telemetry {
  std::map<std::string, std::uint64_t> counters;

  void bump(const std::string& key, std::uint64_t by = 1) { counters[key] += by; }
  std::uint64_t get(const std::string& key) const {
    auto it = counters.find(key);
    return it == counters.end() ? 0 : it->second;
  }
  void merge(const Telemetry& other) {
    for (const auto& [k, v] : other.counters) counters[k] += v;
  }
};

// Replay records. Each one turns a proper coloring of the instance after the
// step into a proper coloring of the instance before it.
struct ColoredRecord {
  VertexId v;
  Color color;
};
struct GreedyRecord {
  VertexId v;
  Palette palette;
  VertexSet neighbors;
};
struct DominatedRecord {
  VertexId v;
  VertexId by;
};
struct SolvedRecord {
  std::vector<std::pair<VertexId, Color>> assignment;
};
// A P4-free vertex set removed wholesale; recolored at replay time from the
// colors of its outside neighbors. The optional placeholder stood in for the
// set and is dropped from the coloring afterwards.
struct ExtensionRecord {
  VertexSet removed;
  std::vector<Palette> palettes;  // parallel to removed
  std::vector<std::pair<VertexId, VertexId>> inner_edges;
  std::vector<std::pair<VertexId, VertexId>> boundary_edges;  // (removed, outside)
  std::optional<VertexId> placeholder;
};
struct CollapseRecord {
  VertexId x_star;
  VertexId y_star;
  VertexSet xs;
  VertexSet ys;
};

using ReductionRecord =
    std::variant<ColoredRecord, GreedyRecord, DominatedRecord, SolvedRecord, ExtensionRecord, CollapseRecord>;

// A list-3-coloring instance. N0 vertices stay in the graph after they are
// colored; every other vertex is deleted as soon as its color is fixed.
struct ColorInstance {
  Graph graph;
  PaletteMap palettes;      // by vertex index
  std::vector<VertexId> n0; // cyclic order; empty outside the anchored pipelines
  IdBitset n0_mask;
  Coloring fixed;           // colors of colored N0 vertices
  std::vector<ReductionRecord> replay;

  static ColorInstance from_graph(const Graph& g);
  static ColorInstance from_graph(const Graph& g, const PaletteMap& palettes);

  Palette palette(VertexId v) const { return index(v) < palettes.size() ? palettes[index(v)] : Palette{}; }
  void set_palette(VertexId v, Palette p);
  bool in_n0(VertexId v) const { return n0_mask.test(index(v)); }
  bool is_colored(VertexId v) const { return color_of(fixed, v) != kNoColor; }
  VertexId add_vertex(Palette p);
  // Sum of palette sizes over live vertices.
  std::size_t palette_mass() const;
};

// Turns a coloring of the live vertices (colored N0 vertices may be omitted)
// into a coloring of every vertex the instance ever had, by undoing the
// replay log. Throws std::logic_error when a record cannot be undone.
Coloring replay_coloring(const ColorInstance& inst, Coloring live);

}  // namespace hered3
