#include <algorithm>

#include "hered3/solver.hpp"

namespace hered3 {

namespace {

struct Dsatur {
  const Graph& g;
  std::vector<VertexId> order;  // vertices of `within`
  std::vector<int> local;       // id -> position, -1 outside
  std::vector<Palette> left;    // remaining colors per position
  Coloring col;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;

  bool run(std::size_t remaining) {
    if (remaining == 0) return true;
    if (++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    // Fewest remaining colors, then highest degree, then smallest id.
    int best = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (color_of(col, order[i]) != kNoColor) continue;
      if (best < 0) {
        best = static_cast<int>(i);
        continue;
      }
      const auto b = static_cast<std::size_t>(best);
      if (left[i].size() < left[b].size() ||
          (left[i].size() == left[b].size() && g.degree(order[i]) > g.degree(order[b]))) {
        best = static_cast<int>(i);
      }
    }
    const auto b = static_cast<std::size_t>(best);
    const VertexId v = order[b];
    for (Color c : left[b].colors()) {
      std::vector<std::size_t> touched;
      bool dead = false;
      for (VertexId w : g.neighbors(v)) {
        const int lw = index(w) < local.size() ? local[index(w)] : -1;
        if (lw < 0 || color_of(col, w) != kNoColor) continue;
        const auto p = static_cast<std::size_t>(lw);
        if (left[p].contains(c)) {
          left[p] = left[p].without(c);
          touched.push_back(p);
          dead = dead || left[p].empty();
        }
      }
      set_color(col, v, c);
      if (!dead && run(remaining - 1)) return true;
      set_color(col, v, kNoColor);
      for (std::size_t p : touched) left[p] = left[p].with(c);
      if (out_of_budget) return false;
    }
    return false;
  }
};

}  // namespace

std::optional<Coloring> exact_list_coloring(const Graph& g, std::span<const VertexId> within, const PaletteMap& palettes,
                                            std::uint64_t node_budget, bool* exhausted) {
  PaletteMap pal = palettes;
  if (pal.size() < g.id_bound()) pal.resize(g.id_bound(), Palette::full());
  Dsatur d{g, {within.begin(), within.end()}, std::vector<int>(g.id_bound(), -1), {}, {}, node_budget};
  for (std::size_t i = 0; i < d.order.size(); ++i) {
    d.local[index(d.order[i])] = static_cast<int>(i);
    d.left.push_back(pal[index(d.order[i])]);
  }
  const bool ok = std::none_of(d.left.begin(), d.left.end(), [](Palette p) { return p.empty(); }) && d.run(d.order.size());
  if (exhausted != nullptr) *exhausted = d.out_of_budget;
  if (!ok) return std::nullopt;
  if (!is_proper_coloring(g, within, d.col, &pal)) throw std::logic_error("exact_list_coloring: invalid result");
  return d.col;
}

}  // namespace hered3
