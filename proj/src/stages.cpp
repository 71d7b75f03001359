#include <algorithm>
#include <bit>
#include <map>

#include "hered3/cograph.hpp"
#include "hered3/patterns.hpp"
#include "hered3/pipeline.hpp"
#include "hered3/twosat.hpp"

namespace hered3 {

namespace {

std::uint16_t bit(int i) { return static_cast<std::uint16_t>(1U << i); }

// Position i with mask == {i, i+2}, or -1.
int pair_start(std::uint16_t mask, int k) {
  for (int i = 0; i < k; ++i) {
    if (mask == (bit(i) | bit((i + 2) % k))) return i;
  }
  return -1;
}

bool shape_ok(std::uint16_t mask, int k) { return std::popcount(mask) == 1 || pair_start(mask, k) >= 0; }

int position_in(const std::vector<VertexId>& order, VertexId v) {
  auto it = std::find(order.begin(), order.end(), v);
  return it == order.end() ? -1 : static_cast<int>(it - order.begin());
}

// Sorted by |N2| descending, ties by id.
VertexSet by_n2_size(const Graph& g, const StructureView& view, VertexSet s) {
  std::vector<std::pair<std::size_t, VertexId>> keyed;
  for (VertexId v : s) keyed.emplace_back(view.n2_of(g, v).size(), v);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) {
    return l.first != r.first ? l.first > r.first : l.second < r.second;
  });
  VertexSet out;
  for (auto& [n, v] : keyed) out.push_back(v);
  return out;
}

VertexSet neighbors_in(const Graph& g, VertexId v, const VertexSet& s) { return set_intersection(g.neighbors(v), s); }

bool sees_any(const Graph& g, VertexId v, const VertexSet& s) {
  return std::any_of(s.begin(), s.end(), [&](VertexId w) { return g.adjacent(v, w); });
}

// Wraps a contract violation from a reduction into a stage diagnostic.
template <typename F>
auto as_stage(const char* stage, F&& f) {
  try {
    return f();
  } catch (const ContractViolation& e) {
    throw StageError(stage, e.what());
  } catch (const std::invalid_argument& e) {
    throw StageError(stage, e.what());
  }
}

}  // namespace

VertexSet StructureView::n2_of(const Graph& g, VertexId x) const {
  VertexSet out;
  for (VertexId w : g.neighbors(x)) {
    if (in_n2(w)) out.push_back(w);
  }
  return out;
}

std::vector<int> StructureView::components_of(const Graph& g, VertexId x) const {
  std::vector<int> out;
  for (VertexId w : g.neighbors(x)) {
    if (in_n2(w)) out.push_back(component_of[index(w)]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StructureView stage_structure_check(const ColorInstance& inst, const StageContext& ctx) {
  const Graph& g = inst.graph;
  StructureView view;
  view.n0 = inst.n0;
  const int k = static_cast<int>(view.n0.size());
  view.n0_pos.assign(g.id_bound(), -1);
  view.n0_mask.assign(g.id_bound(), 0);
  view.component_of.assign(g.id_bound(), -1);
  for (int i = 0; i < k; ++i) {
    const VertexId v = view.n0[static_cast<std::size_t>(i)];
    if (!g.has_vertex(v)) throw StageError("structure", "N0 vertex " + to_string(v) + " is gone");
    view.n0_pos[index(v)] = i;
  }
  for (int i = 0; i < k; ++i) {
    for (VertexId w : g.neighbors(view.n0[static_cast<std::size_t>(i)])) {
      if (view.n0_pos[index(w)] < 0) view.n0_mask[index(w)] |= bit(i);
    }
  }
  for (VertexId v : g.vertices()) {
    if (view.n0_pos[index(v)] >= 0) continue;
    if (view.n0_mask[index(v)] != 0) {
      if (!shape_ok(view.n0_mask[index(v)], k)) {
        throw StageError("structure", "N1 vertex " + to_string(v) + " sees N0 in an unexpected pattern");
      }
      view.n1.push_back(v);
    } else {
      view.n2.push_back(v);
    }
  }
  view.components = connected_components(g, view.n2);
  for (std::size_t c = 0; c < view.components.size(); ++c) {
    const VertexSet& comp = view.components[c];
    for (VertexId v : comp) view.component_of[index(v)] = static_cast<int>(c);
    if (!is_cograph(g, comp)) throw StageError("structure", "top component containing " + to_string(comp.front()) + " has an induced P4");
    view.relevant.push_back(std::any_of(comp.begin(), comp.end(), [&](VertexId v) { return inst.palette(v).size() == 3; }));
  }
  for (VertexId x : view.n1) {
    for (VertexId w : g.neighbors(x)) {
      if (view.in_n2(w) && view.relevant[static_cast<std::size_t>(view.component_of[index(w)])]) {
        view.relevant_vertices.push_back(x);
        break;
      }
    }
  }
  if (ctx.paranoid) {
    // No induced P4 with three vertices in N2: around each N1 vertex the
    // union of its top components plus itself stays P4-free.
    for (VertexId x : view.n1) {
      VertexSet s{x};
      for (int c : view.components_of(g, x)) s = set_union(s, view.components[static_cast<std::size_t>(c)]);
      if (!is_cograph(g, s)) throw StageError("structure", "induced P4 with three vertices in N2 next to " + to_string(x));
    }
    ctx.bump("structure.paranoid_checks");
  }
  ctx.bump("stage.structure");
  return view;
}

VertexSet dominating_pair(const Graph& g, const VertexSet& component) {
  if (component.empty()) return {};
  IdBitset mask(g.id_bound());
  for (VertexId v : component) mask.set(index(v));
  const std::size_t words = (g.id_bound() + 63) / 64;
  auto covers = [&](std::initializer_list<VertexId> picks) {
    const auto mw = mask.words();
    for (std::size_t i = 0; i < words; ++i) {
      std::uint64_t covered = 0;
      for (VertexId p : picks) {
        const auto row = g.neighbor_bits(p).words();
        covered |= i < row.size() ? row[i] : 0;
        if (index(p) / 64 == i) covered |= std::uint64_t{1} << (index(p) % 64);
      }
      if ((mw[i] & ~covered) != 0) return false;
    }
    return true;
  };
  for (VertexId v : component) {
    if (covers({v})) return {v};
  }
  for (std::size_t i = 0; i < component.size(); ++i) {
    for (std::size_t j = i + 1; j < component.size(); ++j) {
      if (covers({component[i], component[j]})) return {component[i], component[j]};
    }
  }
  return {};
}

void verify_pending(const StructureView& view, const std::vector<PendingCheck>& checks) {
  for (const PendingCheck& c : checks) {
    const int pa = index(c.a) < view.n0_pos.size() ? view.n0_pos[index(c.a)] : -1;
    const int pb = index(c.b) < view.n0_pos.size() ? view.n0_pos[index(c.b)] : -1;
    if (pa < 0 || pb < 0) continue;
    if (!c.pair) {
      for (VertexId x : view.relevant_vertices) {
        if (view.mask(x) == bit(pa)) throw StageError("Ri", "branching left a relevant vertex seeing only " + to_string(c.a));
      }
    } else {
      bool sa = false;
      bool sb = false;
      for (VertexId x : view.relevant_vertices) {
        sa = sa || (view.mask(x) & bit(pa)) != 0;
        sb = sb || (view.mask(x) & bit(pb)) != 0;
      }
      if (sa && sb) throw StageError("Si", "branching left both groups around " + to_string(c.a) + " and " + to_string(c.b));
    }
  }
}

std::optional<std::vector<Branch>> stage_eliminate_Ri(const Branch& parent, const StructureView& view,
                                                      const std::vector<VertexId>& original_n0,
                                                      const StageContext& ctx) {
  const Graph& g = parent.inst.graph;
  const int k = static_cast<int>(view.n0.size());
  for (int i = 0; i < k; ++i) {
    VertexSet ri;
    for (VertexId x : view.relevant_vertices) {
      if (view.mask(x) == bit(i)) ri.push_back(x);
    }
    if (ri.empty()) continue;
    ri = by_n2_size(g, view, ri);
    for (std::size_t j = 1; j < ri.size(); ++j) {
      const VertexSet prev = view.n2_of(g, ri[j - 1]);
      const VertexSet cur = view.n2_of(g, ri[j]);
      if (!std::includes(prev.begin(), prev.end(), cur.begin(), cur.end())) {
        throw StageError("Ri", "N2 neighborhoods of " + to_string(ri[j - 1]) + " and " + to_string(ri[j]) +
                                   " are not nested");
      }
    }
    const VertexId vi = view.n0[static_cast<std::size_t>(i)];
    const int p = position_in(original_n0, vi);
    if ((parent.ri_done >> p) & 1U) throw StageError("Ri", "group around " + to_string(vi) + " branched twice");
    const VertexId z = ri.front();
    std::vector<Branch> out;
    for (Color c : parent.inst.palette(z).colors()) {
      Branch child{parent.inst, {PendingCheck{vi, vi, false}}, static_cast<std::uint8_t>(parent.ri_done | (1U << p)),
                   parent.si_done};
      color_vertex(child.inst, z, c);
      out.push_back(std::move(child));
    }
    if (out.size() > 2) throw StageError("Ri", "more than two branches");
    ctx.bump("stage.ri.branch");
    return out;
  }
  return std::nullopt;
}

std::optional<std::vector<Branch>> stage_eliminate_Si_pairs(const Branch& parent, const StructureView& view,
                                                            const std::vector<VertexId>& original_n0,
                                                            const StageContext& ctx) {
  const ColorInstance& inst = parent.inst;
  const Graph& g = inst.graph;
  const int k = static_cast<int>(view.n0.size());
  for (int i = 0; i < k; ++i) {
    const int j = (i + 3) % k;
    VertexSet si;
    VertexSet sj;
    for (VertexId x : view.relevant_vertices) {
      if (view.mask(x) & bit(i)) si.push_back(x);
      if (view.mask(x) & bit(j)) sj.push_back(x);
    }
    if (si.empty() || sj.empty()) continue;

    const Palette pi = inst.palette(si.front());
    const Palette pj = inst.palette(sj.front());
    for (VertexId x : si) {
      if (inst.palette(x) != pi) throw StageError("Si", "palettes differ inside one group");
    }
    for (VertexId x : sj) {
      if (inst.palette(x) != pj) throw StageError("Si", "palettes differ inside one group");
    }
    if (pi.size() != 2 || pj.size() != 2) throw StageError("Si", "relevant palette without two colors");
    // The designated color is the one both palettes share; for equal palettes
    // take the smaller color.
    Color designated = kNoColor;
    if (pi != pj) {
      const Palette common = pi & pj;
      if (common.size() != 1) throw StageError("Si", "palettes share no color");
      designated = common.smallest();
    } else {
      designated = pi.smallest();
    }

    // Pairs that are neither nested nor adjacent are both partial neighbors
    // of one shared top component.
    for (VertexId x : si) {
      const VertexSet nx = view.n2_of(g, x);
      for (VertexId y : sj) {
        const VertexSet ny = view.n2_of(g, y);
        const bool nested = std::includes(nx.begin(), nx.end(), ny.begin(), ny.end()) ||
                            std::includes(ny.begin(), ny.end(), nx.begin(), nx.end());
        if (nested || g.adjacent(x, y)) continue;
        const auto cx = view.components_of(g, x);
        const auto cy = view.components_of(g, y);
        if (cx.size() != 1 || cx != cy) throw StageError("Si", "crossing pair without a shared top component");
        const std::size_t size = view.components[static_cast<std::size_t>(cx.front())].size();
        if (nx.size() == size || ny.size() == size) throw StageError("Si", "crossing pair with a full neighbor");
      }
    }

    const VertexId vi = view.n0[static_cast<std::size_t>(i)];
    const VertexId vj = view.n0[static_cast<std::size_t>(j)];
    const int p = position_in(original_n0, vi);
    if ((parent.si_done >> p) & 1U) throw StageError("Si", "pair at " + to_string(vi) + " branched twice");

    const VertexSet z = by_n2_size(g, view, set_union(si, sj));
    auto other = [&](VertexId v) { return inst.palette(v).without(designated).smallest(); };
    auto make = [&]() {
      return Branch{inst, {PendingCheck{vi, vj, true}}, parent.ri_done, static_cast<std::uint8_t>(parent.si_done | (1U << p))};
    };
    auto try_color = [](Branch& b, VertexId v, Color c) {
      if (!b.inst.graph.has_vertex(v) || !b.inst.palette(v).contains(c)) return false;
      color_vertex(b.inst, v, c);
      return true;
    };

    std::vector<Branch> out;
    std::size_t skipped = 0;
    {
      Branch a = make();
      bool ok = true;
      for (VertexId v : z) ok = ok && try_color(a, v, other(v));
      if (ok) {
        out.push_back(std::move(a));
      } else {
        ++skipped;
      }
    }
    for (std::size_t jdx = 0; jdx < z.size(); ++jdx) {
      Branch b = make();
      bool ok = true;
      for (std::size_t t = 0; t < jdx; ++t) ok = ok && try_color(b, z[t], other(z[t]));
      ok = ok && try_color(b, z[jdx], designated);
      if (!ok) {
        ++skipped;
        continue;
      }
      const VertexSet nz = view.n2_of(g, z[jdx]);
      std::vector<int> partial;
      for (int c : view.components_of(g, z[jdx])) {
        const VertexSet& comp = view.components[static_cast<std::size_t>(c)];
        if (set_intersection(nz, comp).size() < comp.size()) partial.push_back(c);
      }
      if (partial.empty()) {
        out.push_back(std::move(b));
        continue;
      }
      if (partial.size() > 1 || view.components_of(g, z[jdx]).size() > 1) {
        throw StageError("Si", "partial neighbor " + to_string(z[jdx]) + " touches several top components");
      }
      const VertexSet dom = dominating_pair(g, view.components[static_cast<std::size_t>(partial.front())]);
      if (dom.empty()) throw StageError("Si", "top component without a dominating pair");
      const std::vector<Color> first = dom.size() >= 1 ? inst.palette(dom[0]).colors() : std::vector<Color>{};
      const std::vector<Color> second = dom.size() == 2 ? inst.palette(dom[1]).colors() : std::vector<Color>{kNoColor};
      for (Color c1 : first) {
        for (Color c2 : second) {
          Branch d = b;
          bool fine = try_color(d, dom[0], c1);
          if (dom.size() == 2) fine = fine && try_color(d, dom[1], c2);
          if (fine) {
            out.push_back(std::move(d));
          } else {
            ++skipped;
          }
        }
      }
    }
    if (out.size() + skipped > 1 + 9 * z.size()) throw StageError("Si", "branch count above 1 + 9m");
    ctx.bump("stage.si.branch");
    if (ctx.telemetry != nullptr) ctx.telemetry->bump("stage.si.children", out.size());
    return out;
  }
  return std::nullopt;
}

Palette normalize_rotation(ColorInstance& inst, const StructureView& view) {
  const VertexSet& r = view.relevant_vertices;
  if (r.empty()) return {};
  const int k = static_cast<int>(view.n0.size());
  const std::uint16_t mask = view.mask(r.front());
  const int i = pair_start(mask, k);
  if (i < 0) throw StageError("rotation", "relevant vertex " + to_string(r.front()) + " sees a single N0 vertex");
  const Palette p = inst.palette(r.front());
  for (VertexId x : r) {
    if (view.mask(x) != mask) throw StageError("rotation", "relevant vertices see different N0 pairs");
    if (inst.palette(x) != p || p.size() != 2) throw StageError("rotation", "relevant palettes differ");
  }
  std::rotate(inst.n0.begin(), inst.n0.begin() + i, inst.n0.end());
  return p;
}

StageOutcome stage_relevant_edges(ColorInstance& inst, const StructureView& view, const StageContext& ctx) {
  const Graph& g = inst.graph;
  for (const VertexSet& comp : connected_components(g, view.relevant_vertices)) {
    if (comp.size() < 2) continue;
    auto sides = bipartition(g, comp);
    if (!sides) {
      ctx.bump("stage.rel.reject");
      return StageOutcome::kRejected;
    }
    const VertexSet& xs = sides->first;
    const VertexSet& ys = sides->second;
    for (VertexId x : xs) {
      for (VertexId y : ys) {
        if (!g.adjacent(x, y)) throw StageError("rel", "relevant component is not complete bipartite");
      }
    }
    const VertexSet xp = view.n2_of(g, xs.front());
    const VertexSet yp = view.n2_of(g, ys.front());
    for (VertexId x : xs) {
      if (view.n2_of(g, x) != xp) throw StageError("rel", "one side sees different N2 sets");
    }
    for (VertexId y : ys) {
      if (view.n2_of(g, y) != yp) throw StageError("rel", "one side sees different N2 sets");
    }
    if (!set_intersection(xp, yp).empty()) throw StageError("rel", "adjacent relevant vertices share an N2 neighbor");
    const VertexSet region = set_union(xp, yp);
    const VertexSet closed = set_union(set_union(xs, ys), region);
    for (VertexId s : region) {
      for (VertexId w : g.neighbors(s)) {
        if (!set_contains(closed, w)) throw StageError("rel", "N2 side has a neighbor outside the block");
      }
    }
    const Palette pr = inst.palette(xs.front());
    const Color a = pr.smallest();
    const Color b = pr.largest();
    auto extends = [&](Color cx, Color cy) {
      PaletteMap pal = inst.palettes;
      for (VertexId s : region) {
        Palette p = inst.palette(s);
        if (sees_any(g, s, xs)) p = p.without(cx);
        if (sees_any(g, s, ys)) p = p.without(cy);
        pal[index(s)] = p;
      }
      return as_stage("rel", [&] { return list3color(g, region, pal).has_value(); });
    };
    const bool first = extends(a, b);
    const bool second = extends(b, a);
    if (!first && !second) {
      ctx.bump("stage.rel.reject");
      return StageOutcome::kRejected;
    }
    if (first && second) {
      delete_extension(inst, region);
      ctx.bump("stage.rel.delete");
      return StageOutcome::kChanged;
    }
    const Color cx = first ? a : b;
    const Color cy = first ? b : a;
    for (VertexId x : xs) color_vertex(inst, x, cx);
    for (VertexId y : ys) {
      if (!inst.palette(y).contains(cy)) return StageOutcome::kRejected;
      color_vertex(inst, y, cy);
    }
    ctx.bump("stage.rel.forced");
    return StageOutcome::kChanged;
  }
  return StageOutcome::kUnchanged;
}

StageOutcome stage_equivalence_cuts(ColorInstance& inst, const StructureView& view, const StageContext& ctx) {
  const Graph& g = inst.graph;
  const VertexSet& r = view.relevant_vertices;
  if (!is_independent(g, r)) throw StageError("equiv", "relevant vertices are not independent");
  std::map<std::vector<int>, VertexSet> classes;
  for (VertexId x : r) classes[view.components_of(g, x)].push_back(x);
  for (auto it = classes.begin(); it != classes.end(); ++it) {
    for (auto jt = std::next(it); jt != classes.end(); ++jt) {
      std::vector<int> both;
      std::set_intersection(it->first.begin(), it->first.end(), jt->first.begin(), jt->first.end(),
                            std::back_inserter(both));
      if (!both.empty()) throw StageError("equiv", "top-component sets overlap without being equal");
    }
  }
  // Process classes in order of their smallest member.
  std::vector<std::pair<VertexId, const std::pair<const std::vector<int>, VertexSet>*>> order;
  for (const auto& entry : classes) order.emplace_back(entry.second.front(), &entry);
  std::sort(order.begin(), order.end(), [](const auto& l, const auto& rr) { return l.first < rr.first; });
  for (const auto& [first, entry] : order) {
    const auto& [key, rx] = *entry;
    if (key.size() < 2) continue;
    VertexSet c;
    for (int idx : key) {
      if (view.relevant[static_cast<std::size_t>(idx)]) c = set_union(c, view.components[static_cast<std::size_t>(idx)]);
    }
    const Color t = third_color(inst.palette(rx.front()));
    if (c.size() == 1) {
      if (!inst.palette(c.front()).contains(t)) throw StageError("equiv", "lone relevant vertex lacks the free color");
      color_vertex(inst, c.front(), t);
      ctx.bump("stage.equiv.single");
      return StageOutcome::kChanged;
    }
    const Verdict v = as_stage("equiv", [&] { return cut_reduction(inst, rx, c, {ctx.telemetry, false}); });
    ctx.bump("stage.equiv.cut");
    return v.status == Status::kRejected ? StageOutcome::kRejected : StageOutcome::kChanged;
  }
  return StageOutcome::kUnchanged;
}

StageOutcome stage_n2x_cases(ColorInstance& inst, const StructureView& view, const StageContext& ctx,
                             std::vector<WForm>& wforms) {
  Graph& g = inst.graph;
  const VertexSet& r = view.relevant_vertices;
  for (std::size_t k = 0; k < view.components.size(); ++k) {
    if (!view.relevant[k]) continue;
    const VertexSet& c = view.components[k];
    VertexSet rc;
    for (VertexId x : r) {
      const auto comps = view.components_of(g, x);
      if (std::find(comps.begin(), comps.end(), static_cast<int>(k)) == comps.end()) continue;
      if (comps.size() != 1) throw StageError("n2x", "relevant vertex " + to_string(x) + " sees several top components");
      rc.push_back(x);
    }
    if (rc.empty()) throw StageError("n2x", "relevant component without relevant neighbors");
    const VertexId x = by_n2_size(g, view, rc).front();
    const VertexSet n2x = view.n2_of(g, x);
    const Palette pr = inst.palette(x);
    const Color a = pr.smallest();
    const Color b = pr.largest();
    const Color t = third_color(pr);
    auto cut = [&](const char* key) {
      ctx.bump(key);
      const Verdict v = as_stage("n2x", [&] { return cut_reduction(inst, rc, c, {ctx.telemetry, false}); });
      return v.status == Status::kRejected ? StageOutcome::kRejected : StageOutcome::kChanged;
    };

    if (connected_components(g, n2x).size() >= 2) {
      if (ctx.paranoid) {
        for (VertexId y : set_union(rc, c)) {
          if (y == x || g.adjacent(x, y)) continue;
          for (VertexId w : n2x) {
            if (!g.adjacent(y, w)) throw StageError("n2x", "vertex misses part of a disconnected N2(x)");
          }
        }
      }
      return cut("stage.n2x.disconnected");
    }

    if (n2x.size() >= 3) {
      ctx.bump("stage.n2x.connected3");
      auto sides = bipartition(g, n2x);
      if (!sides) return StageOutcome::kRejected;
      bool merged = false;
      for (const VertexSet* side : {&sides->first, &sides->second}) {
        const VertexSet& other = side == &sides->first ? sides->second : sides->first;
        for (VertexId y : *side) {
          for (VertexId z : other) {
            if (!g.adjacent(y, z)) throw StageError("n2x", "connected N2(x) is not complete bipartite");
          }
        }
        for (std::size_t i = 1; i < side->size(); ++i) {
          const VertexId keep = side->front();
          const VertexId drop = (*side)[i];
          if (g.neighbors(keep) != g.neighbors(drop) || inst.palette(keep) != inst.palette(drop)) {
            throw StageError("n2x", "twins in N2(x) differ");
          }
          delete_dominated(inst, drop, keep);
          merged = true;
        }
      }
      if (!merged) throw StageError("n2x", "nothing to merge in a connected N2(x)");
      return StageOutcome::kChanged;
    }

    if (n2x.size() == 1) {
      const VertexId y = n2x.front();
      if (c.size() == 1) {
        if (!inst.palette(y).contains(t)) throw StageError("n2x", "lone relevant vertex lacks the free color");
        color_vertex(inst, y, t);
        ctx.bump("stage.n2x.single_vertex");
        return StageOutcome::kChanged;
      }
      return cut("stage.n2x.single_vertex_cut");
    }

    if (n2x.size() != 2) throw StageError("n2x", "relevant vertex without N2 neighbors");
    VertexId u = n2x[0];
    VertexId v = n2x[1];
    if (g.degree(v) > g.degree(u)) std::swap(u, v);
    const VertexSet block = set_union(rc, c);
    for (VertexId o : block) {
      if (o != u && !g.adjacent(u, o)) throw StageError("n2x", "edge endpoint misses a vertex of R_x ∪ C");
    }

    VertexSet common = set_intersection(common_neighbors(g, u, v), c);
    if (!common.empty()) {
      const VertexId y = common.front();
      const VertexSet ny = g.neighbors(y);
      const VertexSet nx = g.neighbors(x);
      if (g.adjacent(x, y) || !std::includes(nx.begin(), nx.end(), ny.begin(), ny.end()) ||
          !inst.palette(x).subset_of(inst.palette(y))) {
        throw StageError("n2x", "common neighbor of the N2(x) edge is not dominated");
      }
      delete_dominated(inst, y, x);
      ctx.bump("stage.n2x.edge.common");
      return StageOutcome::kChanged;
    }

    const VertexSet rest = set_difference(c, VertexSet{u});
    for (const VertexSet& d : connected_components(g, rest)) {
      if (d.size() < 2) continue;
      for (VertexId w : d) {
        if (!set_intersection(g.neighbors(w), rc).empty()) throw StageError("n2x", "pendant part touches R_x");
      }
      Palette feasible;
      for (Color col : inst.palette(u).colors()) {
        PaletteMap pal = inst.palettes;
        for (VertexId w : d) pal[index(w)] = inst.palette(w).without(col);
        if (as_stage("n2x", [&] { return list3color(g, d, pal).has_value(); })) feasible = feasible.with(col);
      }
      inst.set_palette(u, feasible);
      delete_extension(inst, d);
      ctx.bump("stage.n2x.edge.pendant");
      return StageOutcome::kChanged;
    }

    const VertexSet allowed = set_union(rc, VertexSet{u});
    for (VertexId w : rest) {
      const VertexSet nw = g.neighbors(w);
      if (!std::includes(allowed.begin(), allowed.end(), nw.begin(), nw.end())) {
        throw StageError("n2x", "star leaf " + to_string(w) + " has a neighbor outside R_x and the center");
      }
      if (neighbors_in(g, w, rc).size() >= 2) {
        as_stage("n2x", [&] { return neighborhood_collapse(inst, w, {ctx.telemetry, ctx.paranoid}); });
        ctx.bump("stage.n2x.edge.collapse");
        return StageOutcome::kChanged;
      }
    }
    for (VertexId w : rest) {
      if (neighbors_in(g, w, rc).size() != 1) throw StageError("n2x", "star leaf without an R_x neighbor");
    }
    if (inst.palette(u).size() != 3) throw StageError("n2x", "star center lost a color inside a relevant component");
    for (VertexId w : rest) {
      if (inst.palette(w) == pr) {
        color_vertex(inst, u, t);
        ctx.bump("stage.n2x.edge.forced");
        return StageOutcome::kChanged;
      }
    }
    WForm wf;
    wf.component = c;
    wf.u = u;
    wf.rx = rc;
    const Palette p1 = Palette::of(a, t);
    const Palette p2 = Palette::of(b, t);
    for (VertexId w : rest) {
      if (inst.palette(w) == p1) {
        wf.w1.push_back(w);
      } else if (inst.palette(w) == p2) {
        wf.w2.push_back(w);
      } else {
        throw StageError("n2x", "star leaf " + to_string(w) + " has palette " + inst.palette(w).to_string());
      }
    }
    for (VertexId y : rc) {
      if (sees_any(g, y, wf.w1)) {
        wf.x1.push_back(y);
      } else if (sees_any(g, y, wf.w2)) {
        wf.x2.push_back(y);
      } else {
        wf.x0.push_back(y);
      }
    }
    ctx.bump("stage.n2x.wform");
    wforms.push_back(std::move(wf));
  }
  return StageOutcome::kUnchanged;
}

std::optional<Coloring> final_assembly(const ColorInstance& inst, const StructureView& view,
                                       const std::vector<WForm>& wforms, const StageContext& ctx) {
  const Graph& g = inst.graph;
  VertexSet inside;
  for (const WForm& wf : wforms) inside = set_union(inside, wf.component);
  for (std::size_t k = 0; k < view.components.size(); ++k) {
    if (view.relevant[k] && !std::includes(inside.begin(), inside.end(), view.components[k].begin(),
                                           view.components[k].end())) {
      throw StageError("assembly", "relevant component without a final shape");
    }
  }
  VertexSet region;
  for (VertexId v : g.vertices()) {
    if (inst.is_colored(v) || set_contains(inside, v)) continue;
    if (inst.palette(v).size() != 2) {
      throw StageError("assembly", "vertex " + to_string(v) + " outside relevant components has palette " +
                                       inst.palette(v).to_string());
    }
    region.push_back(v);
  }
  TwoSatFormula f;
  ColorVarMap vars;
  as_stage("assembly", [&] {
    encode_two_palette_subgraph(g, inst.palettes, region, f, vars);
    for (const WForm& wf : wforms) {
      for (auto [l1, l2] : encode_rx_constraints(wf.x1, wf.x2, wf.x0, vars)) f.add_clause(l1, l2);
    }
    return 0;
  });
  ctx.bump("stage.assembly");
  auto model = solve(f);
  if (!model) {
    ctx.bump("stage.assembly.unsat");
    return std::nullopt;
  }
  Coloring live;
  vars.decode(*model, live);
  for (VertexId v : g.vertices()) {
    if (inst.is_colored(v)) set_color(live, v, color_of(inst.fixed, v));
  }
  for (const WForm& wf : wforms) {
    PaletteMap pal = inst.palettes;
    for (VertexId s : wf.component) {
      Palette p = inst.palette(s);
      for (VertexId w : g.neighbors(s)) {
        if (!set_contains(wf.component, w)) p = p.without(color_of(live, w));
      }
      pal[index(s)] = p;
    }
    auto col = as_stage("assembly", [&] { return list3color(g, wf.component, pal); });
    if (!col) throw StageError("assembly", "2-SAT model does not extend into a relevant component");
    for (VertexId s : wf.component) set_color(live, s, color_of(*col, s));
  }
  return live;
}

}  // namespace hered3
