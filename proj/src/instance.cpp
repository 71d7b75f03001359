#include "hered3/instance.hpp"

#include <stdexcept>

#include "hered3/cograph.hpp"

namespace hered3 {

ColorInstance ColorInstance::from_graph(const Graph& g) {
  return from_graph(g, PaletteMap(g.id_bound(), Palette::full()));
}

ColorInstance ColorInstance::from_graph(const Graph& g, const PaletteMap& palettes) {
  ColorInstance inst;
  inst.graph = g;
  inst.palettes = palettes;
  inst.palettes.resize(g.id_bound(), Palette::full());
  inst.n0_mask = IdBitset(g.id_bound());
  inst.fixed.assign(g.id_bound(), kNoColor);
  return inst;
}

void ColorInstance::set_palette(VertexId v, Palette p) {
  if (index(v) >= palettes.size()) palettes.resize(index(v) + 1);
  palettes[index(v)] = p;
}

VertexId ColorInstance::add_vertex(Palette p) {
  const VertexId v = graph.add_vertex();
  set_palette(v, p);
  n0_mask.resize(graph.id_bound());
  return v;
}

std::size_t ColorInstance::palette_mass() const {
  std::size_t mass = 0;
  for (VertexId v : graph.vertices()) mass += static_cast<std::size_t>(palette(v).size());
  return mass;
}

namespace {

struct Replayer {
  Coloring& col;

  Color get(VertexId v) const { return color_of(col, v); }

  void operator()(const ColoredRecord& r) { set_color(col, r.v, r.color); }

  void operator()(const GreedyRecord& r) {
    Palette left = r.palette;
    for (VertexId w : r.neighbors) {
      const Color c = get(w);
      if (c == kNoColor) throw std::logic_error("replay: neighbor " + to_string(w) + " of a greedy vertex is uncolored");
      left = left.without(c);
    }
    if (left.empty()) throw std::logic_error("replay: no free color for greedy vertex " + to_string(r.v));
    set_color(col, r.v, left.smallest());
  }

  void operator()(const DominatedRecord& r) {
    const Color c = get(r.by);
    if (c == kNoColor) throw std::logic_error("replay: dominating vertex " + to_string(r.by) + " is uncolored");
    set_color(col, r.v, c);
  }

  void operator()(const SolvedRecord& r) {
    for (auto [v, c] : r.assignment) set_color(col, v, c);
  }

  void operator()(const ExtensionRecord& r) {
    Graph h(r.removed.size());
    auto local = [&](VertexId v) {
      return vid(static_cast<std::uint32_t>(std::lower_bound(r.removed.begin(), r.removed.end(), v) - r.removed.begin()));
    };
    PaletteMap pal(r.removed.size());
    for (std::size_t i = 0; i < r.removed.size(); ++i) pal[i] = r.palettes[i];
    for (auto [a, b] : r.inner_edges) h.add_edge(local(a), local(b));
    for (auto [s, o] : r.boundary_edges) {
      const Color c = get(o);
      if (c == kNoColor) throw std::logic_error("replay: boundary vertex " + to_string(o) + " is uncolored");
      pal[index(local(s))] = pal[index(local(s))].without(c);
    }
    const VertexSet all = h.vertices();
    auto sol = list3color(h, all, pal);
    if (!sol) throw std::logic_error("replay: removed P4-free region does not extend");
    for (std::size_t i = 0; i < r.removed.size(); ++i) set_color(col, r.removed[i], (*sol)[i]);
    if (r.placeholder) set_color(col, *r.placeholder, kNoColor);
  }

  void operator()(const CollapseRecord& r) {
    const Color cx = get(r.x_star);
    const Color cy = get(r.y_star);
    if (cx == kNoColor || cy == kNoColor) throw std::logic_error("replay: collapsed vertex is uncolored");
    for (VertexId v : r.xs) set_color(col, v, cx);
    for (VertexId v : r.ys) set_color(col, v, cy);
    set_color(col, r.x_star, kNoColor);
    set_color(col, r.y_star, kNoColor);
  }
};

}  // namespace

Coloring replay_coloring(const ColorInstance& inst, Coloring live) {
  for (std::size_t i = 0; i < inst.fixed.size(); ++i) {
    if (inst.fixed[i] != kNoColor && color_of(live, vid(static_cast<std::uint32_t>(i))) == kNoColor) {
      set_color(live, vid(static_cast<std::uint32_t>(i)), inst.fixed[i]);
    }
  }
  Replayer r{live};
  for (auto it = inst.replay.rbegin(); it != inst.replay.rend(); ++it) std::visit(r, *it);
  return live;
}

}  // namespace hered3
