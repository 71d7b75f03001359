#include "hered3/cograph.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>

#include "hered3/patterns.hpp"

namespace hered3 {

std::vector<Palette> ColorSetFamily::members() const {
  std::vector<Palette> out;
  for (unsigned s = 0; s < 8; ++s) {
    if (((bits_ >> s) & 1U) != 0) out.push_back(Palette::from_bits(s));
  }
  return out;
}

namespace {

// Complement components of G[s], ordered by smallest member, each sorted.
std::vector<VertexSet> co_components(const Graph& g, const VertexSet& s) {
  std::vector<VertexSet> out;
  std::vector<VertexId> remaining = s;
  std::vector<VertexId> queue;
  std::vector<VertexId> keep;
  while (!remaining.empty()) {
    VertexSet comp{remaining.front()};
    queue.assign(1, remaining.front());
    remaining.erase(remaining.begin());
    while (!queue.empty() && !remaining.empty()) {
      const VertexId v = queue.back();
      queue.pop_back();
      keep.clear();
      for (VertexId w : remaining) {
        if (g.adjacent(v, w)) {
          keep.push_back(w);
        } else {
          comp.push_back(w);
          queue.push_back(w);
        }
      }
      remaining.swap(keep);
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Splits s into the parts of the top level of its cotree. Returns the node
// kind and the parts; an empty part list means s is a prime (connected and
// co-connected) set with at least two vertices.
std::pair<Cotree::Kind, std::vector<VertexSet>> split(const Graph& g, const VertexSet& s) {
  if (s.size() == 1) return {Cotree::Kind::kLeaf, {}};
  auto comps = connected_components(g, s);
  if (comps.size() > 1) return {Cotree::Kind::kUnion, std::move(comps)};
  auto cocomps = co_components(g, s);
  if (cocomps.size() > 1) return {Cotree::Kind::kJoin, std::move(cocomps)};
  return {Cotree::Kind::kLeaf, {}};
}

// Returns the offending prime set, or nullopt when G[s] is a cograph.
std::optional<VertexSet> find_prime(const Graph& g, const VertexSet& s) {
  std::vector<VertexSet> work{s};
  while (!work.empty()) {
    VertexSet cur = std::move(work.back());
    work.pop_back();
    if (cur.size() <= 1) continue;
    auto [kind, parts] = split(g, cur);
    if (parts.empty()) return cur;
    for (auto& p : parts) work.push_back(std::move(p));
  }
  return std::nullopt;
}

}  // namespace

class CotreeBuilder {
 public:
  explicit CotreeBuilder(const Graph& g) : g_(g) {}

  // Returns the prime set on failure.
  std::optional<VertexSet> build(const VertexSet& s, Cotree& out) {
    out.nodes_.clear();
    out.root_ = -1;
    if (s.empty()) return std::nullopt;
    std::optional<VertexSet> failure;
    out.root_ = build_node(s, out, failure);
    if (failure) {
      out.nodes_.clear();
      out.root_ = -1;
    }
    return failure;
  }

 private:
  int build_node(const VertexSet& s, Cotree& out, std::optional<VertexSet>& failure) {
    if (failure) return -1;
    const int id = static_cast<int>(out.nodes_.size());
    out.nodes_.emplace_back();
    if (s.size() == 1) {
      out.nodes_[static_cast<std::size_t>(id)].kind = Cotree::Kind::kLeaf;
      out.nodes_[static_cast<std::size_t>(id)].vertex = s.front();
      return id;
    }
    auto [kind, parts] = split(g_, s);
    if (parts.empty()) {
      failure = s;
      return -1;
    }
    out.nodes_[static_cast<std::size_t>(id)].kind = kind;
    std::vector<int> children;
    children.reserve(parts.size());
    for (const auto& p : parts) {
      children.push_back(build_node(p, out, failure));
      if (failure) return -1;
    }
    out.nodes_[static_cast<std::size_t>(id)].children = std::move(children);
    return id;
  }

  const Graph& g_;
};

VertexSet Cotree::leaves() const { return root_ < 0 ? VertexSet{} : leaves(root_); }

VertexSet Cotree::leaves(int node) const {
  VertexSet out;
  std::vector<int> stack{node};
  while (!stack.empty()) {
    const Node& n = nodes_.at(static_cast<std::size_t>(stack.back()));
    stack.pop_back();
    if (n.kind == Kind::kLeaf) {
      out.push_back(n.vertex);
    } else {
      for (int c : n.children) stack.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Cotree::adjacent(VertexId u, VertexId v) const {
  if (root_ < 0 || u == v) return false;
  // Walk down from the root while both leaves stay under one child.
  int cur = root_;
  while (true) {
    const Node& n = nodes_.at(static_cast<std::size_t>(cur));
    if (n.kind == Kind::kLeaf) return false;
    int next = -1;
    for (int c : n.children) {
      const VertexSet l = leaves(c);
      const bool hu = set_contains(l, u);
      const bool hv = set_contains(l, v);
      if (hu && hv) {
        next = c;
        break;
      }
      if (hu || hv) {
        next = -2;
        break;
      }
    }
    if (next == -2) return n.kind == Kind::kJoin;
    if (next == -1) return false;
    cur = next;
  }
}

int Cotree::clique_number() const {
  if (root_ < 0) return 0;
  std::function<int(int)> rec = [&](int i) -> int {
    const Node& n = nodes_.at(static_cast<std::size_t>(i));
    if (n.kind == Kind::kLeaf) return 1;
    int acc = 0;
    for (int c : n.children) acc = n.kind == Kind::kJoin ? acc + rec(c) : std::max(acc, rec(c));
    return acc;
  };
  return rec(root_);
}

bool is_cograph(const Graph& g, std::span<const VertexId> within) {
  VertexSet s(within.begin(), within.end());
  std::sort(s.begin(), s.end());
  return !find_prime(g, s).has_value();
}

bool is_cograph(const Graph& g) { return is_cograph(g, g.vertices()); }

std::variant<Cotree, PatternWitness> recognize(const Graph& g, std::span<const VertexId> within) {
  VertexSet s(within.begin(), within.end());
  std::sort(s.begin(), s.end());
  Cotree t;
  CotreeBuilder builder(g);
  if (auto prime = builder.build(s, t)) {
    auto w = find_induced_p4(g, *prime);
    if (!w) throw std::logic_error("recognize: prime set without an induced P4");
    return *w;
  }
  return t;
}

std::variant<Cotree, PatternWitness> recognize(const Graph& g) { return recognize(g, g.vertices()); }

namespace {

constexpr std::uint8_t kNoCert = 0xFF;

struct FoldStep {
  // For each member S of the accumulated family: the accumulated subset
  // before this child and the subset used by the child.
  std::array<std::uint8_t, 8> prev{};
  std::array<std::uint8_t, 8> child{};
};

struct DpTables {
  std::vector<std::uint8_t> family;            // per node
  std::vector<std::vector<FoldStep>> steps;    // per node, one per child after the first
};

void run_dp(const Cotree& t, const PaletteMap& palettes, DpTables& dp) {
  dp.family.assign(t.node_count(), 0);
  dp.steps.assign(t.node_count(), {});
  // Children always have larger indices than their parent.
  for (int i = static_cast<int>(t.node_count()) - 1; i >= 0; --i) {
    const auto& n = t.node(i);
    const auto ui = static_cast<std::size_t>(i);
    if (n.kind == Cotree::Kind::kLeaf) {
      if (index(n.vertex) >= palettes.size()) {
        throw InputError("list3color: no palette for vertex " + to_string(n.vertex));
      }
      ColorSetFamily f;
      for (Color c : palettes[index(n.vertex)].colors()) f.insert(Palette::only(c));
      dp.family[ui] = f.bits();
      continue;
    }
    std::uint8_t acc = dp.family[static_cast<std::size_t>(n.children.front())];
    for (std::size_t k = 1; k < n.children.size(); ++k) {
      const std::uint8_t fc = dp.family[static_cast<std::size_t>(n.children[k])];
      FoldStep step;
      step.prev.fill(kNoCert);
      step.child.fill(kNoCert);
      std::uint8_t next = 0;
      for (unsigned a = 0; a < 8; ++a) {
        if (((acc >> a) & 1U) == 0) continue;
        for (unsigned b = 0; b < 8; ++b) {
          if (((fc >> b) & 1U) == 0) continue;
          if (n.kind == Cotree::Kind::kJoin && (a & b) != 0) continue;
          const unsigned s = a | b;
          if (((next >> s) & 1U) == 0) {
            next = static_cast<std::uint8_t>(next | (1U << s));
            step.prev[s] = static_cast<std::uint8_t>(a);
            step.child[s] = static_cast<std::uint8_t>(b);
          }
        }
      }
      acc = next;
      dp.steps[ui].push_back(step);
    }
    dp.family[ui] = acc;
  }
}

}  // namespace

ColorSetFamily feasible_color_sets(const Cotree& t, const PaletteMap& palettes) {
  if (t.empty()) return ColorSetFamily(1);  // only the empty set
  DpTables dp;
  run_dp(t, palettes, dp);
  return ColorSetFamily(dp.family[static_cast<std::size_t>(t.root())]);
}

std::optional<Coloring> list3color(const Cotree& t, const PaletteMap& palettes) {
  if (t.empty()) return Coloring{};
  DpTables dp;
  run_dp(t, palettes, dp);
  const std::uint8_t root_family = dp.family[static_cast<std::size_t>(t.root())];
  if (root_family == 0) return std::nullopt;

  std::uint32_t bound = 0;
  for (std::size_t i = 0; i < t.node_count(); ++i) {
    const auto& n = t.node(static_cast<int>(i));
    if (n.kind == Cotree::Kind::kLeaf) bound = std::max(bound, index(n.vertex) + 1);
  }
  Coloring out(bound, kNoColor);

  std::vector<std::pair<int, unsigned>> stack{{t.root(), static_cast<unsigned>(std::countr_zero(root_family))}};
  while (!stack.empty()) {
    auto [node, target] = stack.back();
    stack.pop_back();
    const auto& n = t.node(node);
    if (n.kind == Cotree::Kind::kLeaf) {
      out[index(n.vertex)] = Palette::from_bits(target).smallest();
      continue;
    }
    const auto& steps = dp.steps[static_cast<std::size_t>(node)];
    unsigned cur = target;
    for (std::size_t k = n.children.size() - 1; k >= 1; --k) {
      const FoldStep& step = steps[k - 1];
      stack.emplace_back(n.children[k], step.child[cur]);
      cur = step.prev[cur];
    }
    stack.emplace_back(n.children.front(), cur);
  }
  return out;
}

std::optional<Coloring> list3color(const Graph& g, std::span<const VertexId> within,
                                   const PaletteMap& palettes) {
  auto rec = recognize(g, within);
  if (std::holds_alternative<PatternWitness>(rec)) {
    throw std::invalid_argument("list3color: vertex set is not P4-free");
  }
  auto col = list3color(std::get<Cotree>(rec), palettes);
  if (col && !is_proper_coloring(g, within, *col, &palettes)) {
    throw std::logic_error("list3color: witness failed verification");
  }
  return col;
}

bool is_proper_coloring(const Graph& g, std::span<const VertexId> within, const Coloring& coloring,
                        const PaletteMap* palettes) {
  IdBitset mask(g.id_bound());
  for (VertexId v : within) mask.set(index(v));
  for (VertexId v : within) {
    const Color c = color_of(coloring, v);
    if (c < 1 || c > 3) return false;
    if (palettes != nullptr) {
      if (index(v) >= palettes->size() || !(*palettes)[index(v)].contains(c)) return false;
    }
    for (VertexId w : g.neighbors(v)) {
      if (mask.test(index(w)) && color_of(coloring, w) == c) return false;
    }
  }
  return true;
}

}  // namespace hered3
