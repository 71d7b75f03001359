#include "hered3/reductions.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

#include "hered3/cograph.hpp"
#include "hered3/patterns.hpp"
#include "hered3/twosat.hpp"

namespace hered3 {

std::string to_string(BasicRule r) {
  switch (r) {
    case BasicRule::kSingleton: return "singleton";
    case BasicRule::kEmptyPalette: return "empty_palette";
    case BasicRule::kLowDegree: return "low_degree";
    case BasicRule::kDiamond: return "diamond";
    case BasicRule::kDomination: return "domination";
    case BasicRule::kTwoPaletteComponent: return "two_palette_component";
    case BasicRule::kCographComponent: return "cograph_component";
  }
  return "unknown";
}

void color_vertex(ColorInstance& inst, VertexId v, Color c) {
  if (!inst.graph.has_vertex(v)) throw ContractViolation("color_vertex: vertex " + to_string(v) + " is gone");
  if (!inst.palette(v).contains(c)) {
    throw ContractViolation("color_vertex: color " + std::to_string(c) + " not in palette of " + to_string(v));
  }
  inst.replay.emplace_back(ColoredRecord{v, c});
  for (VertexId w : inst.graph.neighbors(v)) inst.set_palette(w, inst.palette(w).without(c));
  if (inst.in_n0(v)) {
    set_color(inst.fixed, v, c);
    inst.set_palette(v, Palette::only(c));
  } else {
    inst.graph.remove_vertex(v);
  }
}

void delete_dominated(ColorInstance& inst, VertexId y, VertexId by) {
  if (inst.in_n0(y)) throw ContractViolation("delete_dominated: N0 vertex " + to_string(y));
  inst.replay.emplace_back(DominatedRecord{y, by});
  inst.graph.remove_vertex(y);
}

void delete_extension(ColorInstance& inst, const VertexSet& s, std::optional<VertexId> placeholder) {
  ExtensionRecord rec;
  rec.removed = s;
  rec.placeholder = placeholder;
  for (VertexId v : s) {
    if (inst.in_n0(v)) throw ContractViolation("delete_extension: N0 vertex " + to_string(v));
    rec.palettes.push_back(inst.palette(v));
    for (VertexId w : inst.graph.neighbors(v)) {
      if (set_contains(s, w)) {
        if (v < w) rec.inner_edges.emplace_back(v, w);
      } else {
        rec.boundary_edges.emplace_back(v, w);
      }
    }
  }
  inst.replay.emplace_back(std::move(rec));
  for (VertexId v : s) inst.graph.remove_vertex(v);
}

namespace {

constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

using Potential = std::tuple<std::size_t, std::size_t, std::size_t>;

Potential potential(const ColorInstance& inst) {
  std::size_t uncolored = 0;
  std::size_t mass = 0;
  for (VertexId v : inst.graph.vertices()) {
    if (!inst.is_colored(v)) ++uncolored;
    mass += static_cast<std::size_t>(inst.palette(v).size());
  }
  return {inst.graph.vertex_count(), uncolored, mass};
}

struct RuleResult {
  std::size_t applied = 0;
  bool rejected = false;
  std::string reason;
};

RuleResult rule_singleton(ColorInstance& inst, std::size_t limit) {
  RuleResult r;
  VertexSet cand;
  for (VertexId v : inst.graph.vertices()) {
    if (!inst.is_colored(v) && inst.palette(v).size() == 1) cand.push_back(v);
  }
  for (VertexId v : cand) {
    if (r.applied >= limit) break;
    if (!inst.graph.has_vertex(v) || inst.is_colored(v) || inst.palette(v).size() != 1) continue;
    color_vertex(inst, v, inst.palette(v).smallest());
    ++r.applied;
  }
  return r;
}

RuleResult rule_empty(const ColorInstance& inst) {
  RuleResult r;
  for (VertexId v : inst.graph.vertices()) {
    if (inst.palette(v).empty()) {
      r.rejected = true;
      r.reason = "empty palette at vertex " + to_string(v);
      return r;
    }
  }
  return r;
}

RuleResult rule_low_degree(ColorInstance& inst, std::size_t limit) {
  RuleResult r;
  VertexSet cand;
  for (VertexId v : inst.graph.vertices()) {
    if (!inst.in_n0(v) && static_cast<std::size_t>(inst.palette(v).size()) > inst.graph.degree(v)) {
      cand.push_back(v);
    }
  }
  for (VertexId v : cand) {
    if (r.applied >= limit) break;
    if (!inst.graph.has_vertex(v)) continue;
    inst.replay.emplace_back(GreedyRecord{v, inst.palette(v), inst.graph.neighbors(v)});
    inst.graph.remove_vertex(v);
    ++r.applied;
  }
  return r;
}

RuleResult rule_diamond(ColorInstance& inst, std::size_t limit) {
  RuleResult r;
  const Graph& g = inst.graph;
  std::set<std::pair<VertexId, VertexId>> seen;
  std::vector<std::pair<VertexId, VertexId>> matches;
  const std::size_t words = (g.id_bound() + 63) / 64;
  std::vector<std::uint64_t> common(words);
  VertexSet w;
  for (auto [a, b] : g.edges()) {
    const auto ra = g.neighbor_bits(a).words();
    const auto rb = g.neighbor_bits(b).words();
    w.clear();
    for (std::size_t i = 0; i < words; ++i) {
      std::uint64_t bits = (i < ra.size() ? ra[i] : 0) & (i < rb.size() ? rb[i] : 0);
      while (bits != 0) {
        w.push_back(vid(static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)))));
        bits &= bits - 1;
      }
    }
    if (w.size() < 2) continue;
    bool mixed = false;
    for (VertexId y : w) mixed = mixed || inst.palette(y) != inst.palette(w.front());
    if (!mixed) continue;
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (inst.palette(w[i]) == inst.palette(w[j]) || g.adjacent(w[i], w[j])) continue;
        if (seen.emplace(w[i], w[j]).second) matches.emplace_back(w[i], w[j]);
      }
    }
    if (limit != kUnlimited && !matches.empty()) break;
  }
  std::sort(matches.begin(), matches.end());
  for (auto [y, z] : matches) {
    if (r.applied >= limit) break;
    const Palette py = inst.palette(y);
    const Palette pz = inst.palette(z);
    if (py == pz) continue;
    inst.set_palette(y, py & pz);
    inst.set_palette(z, py & pz);
    ++r.applied;
  }
  return r;
}

RuleResult rule_domination(ColorInstance& inst, std::size_t limit) {
  RuleResult r;
  const Graph& g = inst.graph;
  const std::size_t words = (g.id_bound() + 63) / 64;
  std::vector<std::uint64_t> cand(words);
  std::vector<std::pair<VertexId, VertexId>> matches;
  for (VertexId y : g.vertices()) {
    if (inst.in_n0(y)) continue;
    const auto live = g.vertex_bits().words();
    for (std::size_t i = 0; i < words; ++i) cand[i] = i < live.size() ? live[i] : 0;
    for (VertexId w : g.neighbors(y)) {
      const auto rw = g.neighbor_bits(w).words();
      for (std::size_t i = 0; i < words; ++i) cand[i] &= i < rw.size() ? rw[i] : 0;
    }
    const auto ry = g.neighbor_bits(y).words();
    for (std::size_t i = 0; i < words; ++i) cand[i] &= ~(i < ry.size() ? ry[i] : 0);
    cand[index(y) / 64] &= ~(std::uint64_t{1} << (index(y) % 64));
    const Palette py = inst.palette(y);
    bool found = false;
    for (std::size_t i = 0; i < words && !found; ++i) {
      std::uint64_t bits = cand[i];
      while (bits != 0) {
        const VertexId z = vid(static_cast<std::uint32_t>(i * 64 + static_cast<std::size_t>(__builtin_ctzll(bits))));
        bits &= bits - 1;
        if (inst.palette(z).subset_of(py)) {
          matches.emplace_back(y, z);
          found = true;
          break;
        }
      }
    }
    if (limit != kUnlimited && !matches.empty()) break;
  }
  for (auto [y, z] : matches) {
    if (r.applied >= limit) break;
    if (!g.has_vertex(y) || !g.has_vertex(z)) continue;
    delete_dominated(inst, y, z);
    ++r.applied;
  }
  return r;
}

RuleResult rule_two_palette(ColorInstance& inst, std::size_t limit) {
  RuleResult r;
  for (const VertexSet& comp : connected_components(inst.graph)) {
    if (r.applied >= limit) break;
    bool small = true;
    for (VertexId v : comp) small = small && inst.palette(v).size() <= 2;
    if (!small) continue;
    VertexSet free;
    for (VertexId v : comp) {
      if (!inst.is_colored(v)) free.push_back(v);
    }
    auto [f, vars] = encode_two_palette_subgraph(inst.graph, inst.palettes, free);
    auto model = solve(f);
    if (!model) {
      r.rejected = true;
      r.reason = "2-SAT unsatisfiable on a component with at most two colors per vertex";
      return r;
    }
    Coloring col;
    vars.decode(*model, col);
    SolvedRecord rec;
    for (VertexId v : comp) {
      const Color c = inst.is_colored(v) ? color_of(inst.fixed, v) : color_of(col, v);
      rec.assignment.emplace_back(v, c);
    }
    inst.replay.emplace_back(std::move(rec));
    for (VertexId v : comp) inst.graph.remove_vertex(v);
    ++r.applied;
  }
  return r;
}

RuleResult rule_cograph(ColorInstance& inst, std::size_t limit) {
  RuleResult r;
  for (const VertexSet& comp : connected_components(inst.graph)) {
    if (r.applied >= limit) break;
    if (!is_cograph(inst.graph, comp)) continue;
    auto col = list3color(inst.graph, comp, inst.palettes);
    if (!col) {
      r.rejected = true;
      r.reason = "P4-free component is not list-colorable";
      return r;
    }
    SolvedRecord rec;
    for (VertexId v : comp) rec.assignment.emplace_back(v, color_of(*col, v));
    inst.replay.emplace_back(std::move(rec));
    for (VertexId v : comp) inst.graph.remove_vertex(v);
    ++r.applied;
  }
  return r;
}

// Runs the rules in priority order; the first one that fires decides the
// step.
SingleStep step(ColorInstance& inst, std::size_t limit, const ReductionOptions& opts) {
  SingleStep out;
  auto finish = [&](BasicRule rule, RuleResult res) {
    if (res.applied == 0 && !res.rejected) return false;
    out.rule = rule;
    if (opts.telemetry != nullptr) opts.telemetry->bump("rule." + to_string(rule), res.applied);
    if (res.rejected) {
      out.verdict = {Status::kRejected, res.reason};
    } else if (inst.graph.vertex_count() == 0) {
      out.verdict = {Status::kSolved, {}};
    }
    return true;
  };
  if (finish(BasicRule::kSingleton, rule_singleton(inst, limit))) return out;
  if (auto e = rule_empty(inst); e.rejected) {
    out.rule = BasicRule::kEmptyPalette;
    out.verdict = {Status::kRejected, e.reason};
    return out;
  }
  if (finish(BasicRule::kLowDegree, rule_low_degree(inst, limit))) return out;
  if (finish(BasicRule::kDiamond, rule_diamond(inst, limit))) return out;
  if (finish(BasicRule::kDomination, rule_domination(inst, limit))) return out;
  if (finish(BasicRule::kTwoPaletteComponent, rule_two_palette(inst, limit))) return out;
  if (finish(BasicRule::kCographComponent, rule_cograph(inst, limit))) return out;
  if (inst.graph.vertex_count() == 0) out.verdict = {Status::kSolved, {}};
  return out;
}

}  // namespace

SingleStep apply_single_step(ColorInstance& inst, const ReductionOptions& opts) {
  const Potential before = potential(inst);
  SingleStep s = step(inst, 1, opts);
  if (opts.check_progress && s.rule && s.verdict.status != Status::kRejected && !(potential(inst) < before)) {
    throw std::logic_error("basic rule " + to_string(*s.rule) + " did not make progress");
  }
  return s;
}

Verdict basic_fixpoint(ColorInstance& inst, const ReductionOptions& opts) {
  if (opts.telemetry != nullptr) opts.telemetry->bump("fixpoint.calls");
  while (true) {
    if (inst.graph.vertex_count() == 0) return {Status::kSolved, {}};
    const Potential before = opts.check_progress ? potential(inst) : Potential{};
    SingleStep s = step(inst, kUnlimited, opts);
    if (!s.rule) return s.verdict;
    if (s.verdict.status != Status::kContinue) return s.verdict;
    if (opts.check_progress && !(potential(inst) < before)) {
      throw std::logic_error("basic rule " + to_string(*s.rule) + " did not make progress");
    }
  }
}

Verdict cut_reduction(ColorInstance& inst, const VertexSet& x, const VertexSet& c, const ReductionOptions& opts) {
  const Graph& g = inst.graph;
  auto fail = [](const std::string& why) { throw ContractViolation("cut_reduction: " + why); };
  if (c.size() < 2) fail("C needs at least two vertices");
  if (x.empty()) fail("X is empty");
  if (!set_intersection(x, c).empty()) fail("X and C overlap");
  for (VertexId v : set_union(x, c)) {
    if (!g.has_vertex(v)) fail("unknown vertex " + to_string(v));
    if (inst.in_n0(v)) fail("N0 vertex " + to_string(v) + " in X or C");
  }
  if (!is_independent(g, x)) fail("X is not independent");
  const Palette px = inst.palette(x.front());
  if (px.size() != 2) fail("X palette must have two colors");
  for (VertexId v : x) {
    if (inst.palette(v) != px) fail("X palettes differ");
  }
  const VertexSet seen = set_intersection(g.neighbors(x.front()), c);
  for (VertexId v : x) {
    if (set_intersection(g.neighbors(v), c) != seen) fail("X vertices see different parts of C");
  }
  for (VertexId v : c) {
    for (VertexId w : g.neighbors(v)) {
      if (!set_contains(c, w) && !set_contains(x, w)) fail("C has a neighbor outside X");
    }
  }
  const VertexSet cx = set_union(c, x);
  auto rec = recognize(g, cx);
  if (std::holds_alternative<PatternWitness>(rec)) fail("G[C ∪ X] contains an induced P4");
  const Cotree& tree = std::get<Cotree>(rec);

  const Color p = px.smallest();
  const Color q = px.largest();
  auto feasible = [&](auto&& color_of_x) {
    PaletteMap pal = inst.palettes;
    pal.resize(g.id_bound());
    for (std::size_t i = 0; i < x.size(); ++i) pal[index(x[i])] = Palette::only(color_of_x(i));
    return list3color(tree, pal).has_value();
  };
  if (opts.telemetry != nullptr) opts.telemetry->bump("cut_reduction.calls");

  if (x.size() >= 2 && feasible([&](std::size_t i) { return i == 0 ? p : q; })) {
    delete_extension(inst, c);
    if (opts.telemetry != nullptr) opts.telemetry->bump("cut_reduction.mixed");
    return {};
  }
  const bool all_p = feasible([&](std::size_t) { return p; });
  const bool all_q = feasible([&](std::size_t) { return q; });
  if (all_p && all_q) {
    const VertexId z = inst.add_vertex(px);
    delete_extension(inst, c, z);
    for (VertexId v : x) inst.graph.add_edge(z, v);
    if (opts.telemetry != nullptr) opts.telemetry->bump("cut_reduction.placeholder");
    return {};
  }
  if (!all_p && !all_q) {
    if (opts.telemetry != nullptr) opts.telemetry->bump("cut_reduction.reject");
    return {Status::kRejected, "cut reduction: no coloring of the cut extends"};
  }
  delete_extension(inst, c);
  for (VertexId v : x) color_vertex(inst, v, all_p ? p : q);
  if (opts.telemetry != nullptr) opts.telemetry->bump("cut_reduction.forced");
  return {};
}

CollapseResult neighborhood_collapse(ColorInstance& inst, VertexId v, const CollapseOptions& opts) {
  Graph& g = inst.graph;
  auto fail = [](const std::string& why) { throw ContractViolation("neighborhood_collapse: " + why); };
  if (!g.has_vertex(v)) fail("unknown vertex");
  const VertexSet nb = g.neighbors(v);
  if (nb.size() < 2 || !is_connected(g, nb)) fail("N(v) must be connected with at least two vertices");
  auto sides = bipartition(g, nb);
  if (!sides) fail("N(v) is not bipartite");
  const VertexSet xs = sides->first;
  const VertexSet ys = sides->second;
  if (xs.empty() || ys.empty()) fail("empty side");
  for (const VertexSet* side : {&xs, &ys}) {
    for (VertexId w : *side) {
      if (inst.palette(w) != inst.palette(side->front())) fail("non-uniform palette on one side");
      if (inst.in_n0(w)) fail("N0 vertex in the neighborhood");
    }
  }

  bool before_free = false;
  if (opts.check_2p4) before_free = !find_induced_2p4(g).has_value();

  const Palette pxs = inst.palette(xs.front());
  const Palette pys = inst.palette(ys.front());
  VertexSet out_x;
  VertexSet out_y;
  for (VertexId a : xs) out_x = set_union(out_x, g.neighbors(a));
  for (VertexId b : ys) out_y = set_union(out_y, g.neighbors(b));
  out_x = set_difference(out_x, ys);
  out_y = set_difference(out_y, xs);

  const VertexId xstar = inst.add_vertex(pxs);
  const VertexId ystar = inst.add_vertex(pys);
  inst.replay.emplace_back(CollapseRecord{xstar, ystar, xs, ys});
  g.add_edge(xstar, ystar);
  for (VertexId w : out_x) g.add_edge(xstar, w);
  for (VertexId w : out_y) g.add_edge(ystar, w);
  for (VertexId w : xs) g.remove_vertex(w);
  for (VertexId w : ys) g.remove_vertex(w);

  if (opts.telemetry != nullptr) opts.telemetry->bump("collapse.calls");
  if (opts.check_2p4) {
    if (opts.telemetry != nullptr) opts.telemetry->bump("collapse.2p4_checks");
    if (before_free && find_induced_2p4(g)) {
      if (opts.telemetry != nullptr) opts.telemetry->bump("collapse.2p4_violations");
    }
  }
  return {xstar, ystar};
}

}  // namespace hered3
