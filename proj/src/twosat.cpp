#include "hered3/twosat.hpp"

#include <algorithm>
#include <sstream>

namespace hered3 {

void TwoSatFormula::add_clause(Literal a, Literal b) {
  if (a.var < 0 || a.var >= vars_ || b.var < 0 || b.var >= vars_) {
    throw ContractViolation("2-SAT clause refers to an unknown variable");
  }
  clauses_.emplace_back(a, b);
}

bool satisfies(const TwoSatFormula& f, const std::vector<bool>& assignment) {
  if (assignment.size() != static_cast<std::size_t>(f.variable_count())) return false;
  auto value = [&](Literal l) { return assignment[static_cast<std::size_t>(l.var)] == l.positive; };
  return std::all_of(f.clauses().begin(), f.clauses().end(),
                     [&](const auto& c) { return value(c.first) || value(c.second); });
}

namespace {

int node(Literal l) { return 2 * l.var + (l.positive ? 0 : 1); }

}  // namespace

std::optional<std::vector<bool>> solve(const TwoSatFormula& f) {
  const int n = 2 * f.variable_count();
  // Implication graph in CSR form.
  std::vector<int> start(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [a, b] : f.clauses()) {
    ++start[static_cast<std::size_t>(node(!a)) + 1];
    ++start[static_cast<std::size_t>(node(!b)) + 1];
  }
  for (int i = 0; i < n; ++i) start[static_cast<std::size_t>(i) + 1] += start[static_cast<std::size_t>(i)];
  std::vector<int> edges(static_cast<std::size_t>(start.back()));
  {
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (const auto& [a, b] : f.clauses()) {
      edges[static_cast<std::size_t>(fill[static_cast<std::size_t>(node(!a))]++)] = node(b);
      edges[static_cast<std::size_t>(fill[static_cast<std::size_t>(node(!b))]++)] = node(a);
    }
  }

  // Iterative Tarjan. Components are numbered in reverse topological order.
  std::vector<int> order(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<int> stack;
  std::vector<std::pair<int, int>> call;  // (node, next edge offset)
  int counter = 0;
  int comps = 0;
  for (int root = 0; root < n; ++root) {
    if (order[static_cast<std::size_t>(root)] >= 0) continue;
    call.emplace_back(root, start[static_cast<std::size_t>(root)]);
    order[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    while (!call.empty()) {
      auto& [v, e] = call.back();
      const auto uv = static_cast<std::size_t>(v);
      if (e < start[uv + 1]) {
        const int w = edges[static_cast<std::size_t>(e++)];
        const auto uw = static_cast<std::size_t>(w);
        if (order[uw] < 0) {
          order[uw] = low[uw] = counter++;
          stack.push_back(w);
          call.emplace_back(w, start[uw]);
        } else if (comp[uw] < 0) {
          low[uv] = std::min(low[uv], order[uw]);
        }
        continue;
      }
      if (low[uv] == order[uv]) {
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          comp[static_cast<std::size_t>(w)] = comps;
          if (w == v) break;
        }
        ++comps;
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) {
        const auto up = static_cast<std::size_t>(call.back().first);
        low[up] = std::min(low[up], low[static_cast<std::size_t>(finished)]);
      }
    }
  }

  std::vector<bool> assignment(static_cast<std::size_t>(f.variable_count()));
  for (int v = 0; v < f.variable_count(); ++v) {
    const int t = comp[static_cast<std::size_t>(2 * v)];
    const int fl = comp[static_cast<std::size_t>(2 * v + 1)];
    if (t == fl) return std::nullopt;
    assignment[static_cast<std::size_t>(v)] = t < fl;
  }
  if (!satisfies(f, assignment)) throw std::logic_error("2-SAT model failed verification");
  return assignment;
}

std::string to_dimacs(const TwoSatFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.variable_count() << ' ' << f.clauses().size() << '\n';
  auto lit = [](Literal l) { return l.positive ? l.var + 1 : -(l.var + 1); };
  for (const auto& [a, b] : f.clauses()) out << lit(a) << ' ' << lit(b) << " 0\n";
  return out.str();
}

int ColorVarMap::ensure(VertexId v, Palette p, TwoSatFormula& f) {
  if (p.size() != 2) {
    throw ContractViolation("vertex " + to_string(v) + " has palette " + p.to_string() + ", expected two colors");
  }
  if (index(v) >= var_of_.size()) var_of_.resize(index(v) + 1, -1);
  int& slot = var_of_[index(v)];
  if (slot >= 0) {
    if (entries_[static_cast<std::size_t>(slot)].second != p) {
      throw ContractViolation("vertex " + to_string(v) + " remapped with a different palette");
    }
    return slot;
  }
  slot = f.add_variable();
  if (static_cast<std::size_t>(slot) != entries_.size()) {
    throw ContractViolation("ColorVarMap shared with a formula that has foreign variables");
  }
  entries_.emplace_back(v, p);
  return slot;
}

std::optional<int> ColorVarMap::variable(VertexId v) const {
  if (index(v) >= var_of_.size() || var_of_[index(v)] < 0) return std::nullopt;
  return var_of_[index(v)];
}

Literal ColorVarMap::literal(VertexId v, Color c) const {
  const auto var = variable(v);
  if (!var) throw ContractViolation("vertex " + to_string(v) + " has no 2-SAT variable");
  const Palette p = entries_[static_cast<std::size_t>(*var)].second;
  if (!p.contains(c)) throw ContractViolation("color outside the palette of vertex " + to_string(v));
  return {*var, c == p.smallest()};
}

Color ColorVarMap::color(int var, bool value) const {
  const Palette p = entries_.at(static_cast<std::size_t>(var)).second;
  return value ? p.smallest() : p.largest();
}

void ColorVarMap::decode(const std::vector<bool>& assignment, Coloring& out) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    set_color(out, entries_[i].first, color(static_cast<int>(i), assignment[i]));
  }
}

void encode_two_palette_subgraph(const Graph& g, const PaletteMap& palettes, std::span<const VertexId> s,
                                 TwoSatFormula& f, ColorVarMap& vars) {
  IdBitset mask(g.id_bound());
  for (VertexId v : s) {
    const Palette p = index(v) < palettes.size() ? palettes[index(v)] : Palette{};
    vars.ensure(v, p, f);
    mask.set(index(v));
  }
  for (VertexId u : s) {
    for (VertexId w : g.neighbors(u)) {
      if (w <= u || !mask.test(index(w))) continue;
      const Palette common = palettes[index(u)] & palettes[index(w)];
      for (Color c : common.colors()) f.add_clause(!vars.literal(u, c), !vars.literal(w, c));
    }
  }
}

std::pair<TwoSatFormula, ColorVarMap> encode_two_palette_subgraph(const Graph& g, const PaletteMap& palettes,
                                                                  std::span<const VertexId> s) {
  TwoSatFormula f;
  ColorVarMap vars;
  encode_two_palette_subgraph(g, palettes, s, f, vars);
  return {std::move(f), std::move(vars)};
}

std::vector<std::pair<Literal, Literal>> encode_rx_constraints(const VertexSet& x1, const VertexSet& x2,
                                                               const VertexSet& x0, const ColorVarMap& vars) {
  if (!set_intersection(x1, x2).empty() || !set_intersection(x1, x0).empty() ||
      !set_intersection(x2, x0).empty()) {
    throw ContractViolation("encode_rx_constraints: X0, X1, X2 must be pairwise disjoint");
  }
  auto var = [&](VertexId v) {
    const auto x = vars.variable(v);
    if (!x) throw ContractViolation("encode_rx_constraints: vertex " + to_string(v) + " is not mapped");
    return *x;
  };
  const VertexSet all = set_union(set_union(x0, x1), x2);
  std::vector<std::pair<Literal, Literal>> out;
  // first(x) -> first(r)
  for (VertexId x : x1) {
    for (VertexId r : all) {
      if (r != x) out.emplace_back(neg(var(x)), pos(var(r)));
    }
  }
  // second(x) -> second(r)
  for (VertexId x : x2) {
    for (VertexId r : all) {
      if (r != x) out.emplace_back(pos(var(x)), neg(var(r)));
    }
  }
  for (const VertexSet* side : {&x1, &x2}) {
    for (std::size_t i = 0; i + 1 < side->size(); ++i) {
      const int a = var((*side)[i]);
      const int b = var((*side)[i + 1]);
      out.emplace_back(neg(a), pos(b));
      out.emplace_back(pos(a), neg(b));
    }
  }
  return out;
}

}  // namespace hered3
