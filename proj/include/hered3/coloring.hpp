#pragma once

#include <span>
#include <vector>

#include "hered3/graph.hpp"
#include "hered3/palette.hpp"

namespace hered3 {

// Per-vertex palette lookup indexed by vertex id.
using PaletteMap = std::vector<Palette>;
// Per-vertex color indexed by vertex id; kNoColor for absent entries.
using Coloring = std::vector<Color>;

inline Color color_of(const Coloring& c, VertexId v) {
  return index(v) < c.size() ? c[index(v)] : kNoColor;
}

inline void set_color(Coloring& c, VertexId v, Color col) {
  if (index(v) >= c.size()) c.resize(index(v) + 1, kNoColor);
  c[index(v)] = col;
}

// Every vertex of `within` is colored, adjacent vertices of `within` differ,
// and, when palettes are given, every color lies in its palette.
bool is_proper_coloring(const Graph& g, std::span<const VertexId> within, const Coloring& coloring,
                        const PaletteMap* palettes = nullptr);

inline bool is_proper_coloring(const Graph& g, const Coloring& coloring) {
  const VertexSet all = g.vertices();
  return is_proper_coloring(g, all, coloring);
}

}  // namespace hered3
