#include "hered3/graph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>

namespace hered3 {

bool IdBitset::is_subset_of(const IdBitset& other) const {
  const auto a = words();
  const auto b = other.words();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::uint64_t bw = i < b.size() ? b[i] : 0;
    if ((a[i] & ~bw) != 0) return false;
  }
  return true;
}

bool IdBitset::intersects(const IdBitset& other) const {
  const auto a = words();
  const auto b = other.words();
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if ((a[i] & b[i]) != 0) return true;
  }
  return false;
}

std::size_t IdBitset::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

Graph::Graph(std::size_t n) {
  grow_rows(n);
  for (std::size_t i = 0; i < n; ++i) add_vertex();
}

void Graph::grow_rows(std::size_t bits) {
  if (bits <= live_bits_.capacity() && !rows_.empty()) return;
  const std::size_t target = std::max<std::size_t>(64, std::max(bits, live_bits_.capacity() * 2));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (alive_[i]) rows_[i].resize(target);
  }
  live_bits_.resize(target);
}

VertexId Graph::add_vertex() {
  const auto id = static_cast<std::uint32_t>(alive_.size());
  if (id + 1 > live_bits_.capacity()) grow_rows(id + 1);
  alive_.push_back(true);
  adj_.emplace_back();
  rows_.emplace_back(live_bits_.capacity());
  live_bits_.set(id);
  ++vertex_count_;
  return vid(id);
}

void Graph::require_vertex(VertexId v) const {
  if (!has_vertex(v)) throw InputError("unknown vertex id " + to_string(v));
}

void Graph::add_edge(VertexId u, VertexId v) {
  require_vertex(u);
  require_vertex(v);
  if (u == v) throw InputError("self-loop on vertex " + to_string(u));
  if (rows_[index(u)].test(index(v))) return;
  rows_[index(u)].set(index(v));
  rows_[index(v)].set(index(u));
  auto& au = adj_[index(u)];
  au.insert(std::lower_bound(au.begin(), au.end(), v), v);
  auto& av = adj_[index(v)];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edge_count_;
}

void Graph::remove_edge(VertexId u, VertexId v) {
  if (!adjacent(u, v)) return;
  rows_[index(u)].reset(index(v));
  rows_[index(v)].reset(index(u));
  auto& au = adj_[index(u)];
  au.erase(std::lower_bound(au.begin(), au.end(), v));
  auto& av = adj_[index(v)];
  av.erase(std::lower_bound(av.begin(), av.end(), u));
  --edge_count_;
}

void Graph::remove_vertex(VertexId v) {
  require_vertex(v);
  for (VertexId w : adj_[index(v)]) {
    rows_[index(w)].reset(index(v));
    auto& aw = adj_[index(w)];
    aw.erase(std::lower_bound(aw.begin(), aw.end(), v));
  }
  edge_count_ -= adj_[index(v)].size();
  adj_[index(v)].clear();
  adj_[index(v)].shrink_to_fit();
  rows_[index(v)] = IdBitset();
  alive_[index(v)] = false;
  live_bits_.reset(index(v));
  --vertex_count_;
}

VertexSet Graph::vertices() const {
  VertexSet out;
  out.reserve(vertex_count_);
  for (std::uint32_t i = 0; i < alive_.size(); ++i) {
    if (alive_[i]) out.push_back(vid(i));
  }
  return out;
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(edge_count_);
  for (std::uint32_t i = 0; i < alive_.size(); ++i) {
    if (!alive_[i]) continue;
    for (VertexId w : adj_[i]) {
      if (index(w) > i) out.emplace_back(vid(i), w);
    }
  }
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.vertices() == b.vertices() && a.edges() == b.edges();
}

Graph induced_subgraph(const Graph& g, std::span<const VertexId> s) {
  IdBitset keep(g.id_bound());
  for (VertexId v : s) {
    if (!g.has_vertex(v)) throw InputError("induced_subgraph: unknown vertex id " + to_string(v));
    keep.set(index(v));
  }
  Graph h = g;
  for (VertexId v : g.vertices()) {
    if (!keep.test(index(v))) h.remove_vertex(v);
  }
  return h;
}

Graph twin_reduced(const Graph& g, bool true_twins) {
  Graph h = g;
  const std::size_t words = (g.id_bound() + 63) / 64;
  for (bool changed = true; changed;) {
    changed = false;
    for (int closed = 0; closed <= (true_twins ? 1 : 0); ++closed) {
      std::map<std::vector<std::uint64_t>, VertexId> seen;
      VertexSet drop;
      for (VertexId v : h.vertices()) {
        const auto row = h.neighbor_bits(v).words();
        std::vector<std::uint64_t> key(row.begin(), row.end());
        key.resize(words, 0);
        if (closed != 0) key[index(v) / 64] |= std::uint64_t{1} << (index(v) % 64);
        if (!seen.emplace(std::move(key), v).second) drop.push_back(v);
      }
      for (VertexId v : drop) h.remove_vertex(v);
      changed = changed || !drop.empty();
    }
  }
  return h;
}

namespace {

std::vector<VertexSet> components_masked(const Graph& g, const VertexSet& order,
                                         const IdBitset& mask) {
  std::vector<VertexSet> out;
  IdBitset seen(g.id_bound());
  std::vector<VertexId> stack;
  for (VertexId s : order) {
    if (seen.test(index(s))) continue;
    VertexSet comp;
    seen.set(index(s));
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (VertexId w : g.neighbors(v)) {
        if (mask.test(index(w)) && !seen.test(index(w))) {
          seen.set(index(w));
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

std::vector<VertexSet> connected_components(const Graph& g) {
  return components_masked(g, g.vertices(), g.vertex_bits());
}

std::vector<VertexSet> connected_components(const Graph& g, std::span<const VertexId> within) {
  IdBitset mask(g.id_bound());
  VertexSet order(within.begin(), within.end());
  std::sort(order.begin(), order.end());
  for (VertexId v : order) mask.set(index(v));
  return components_masked(g, order, mask);
}

std::optional<std::pair<VertexSet, VertexSet>> bipartition(const Graph& g,
                                                           std::span<const VertexId> within) {
  VertexSet order(within.begin(), within.end());
  std::sort(order.begin(), order.end());
  IdBitset mask(g.id_bound());
  for (VertexId v : order) mask.set(index(v));
  std::vector<std::int8_t> side(g.id_bound(), -1);
  VertexSet first;
  VertexSet second;
  std::deque<VertexId> queue;
  for (VertexId s : order) {
    if (side[index(s)] >= 0) continue;
    side[index(s)] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      (side[index(v)] == 0 ? first : second).push_back(v);
      for (VertexId w : g.neighbors(v)) {
        if (!mask.test(index(w))) continue;
        if (side[index(w)] < 0) {
          side[index(w)] = static_cast<std::int8_t>(1 - side[index(v)]);
          queue.push_back(w);
        } else if (side[index(w)] == side[index(v)]) {
          return std::nullopt;
        }
      }
    }
  }
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  return std::make_pair(std::move(first), std::move(second));
}

std::optional<std::pair<VertexSet, VertexSet>> bipartition(const Graph& g) {
  const VertexSet all = g.vertices();
  return bipartition(g, all);
}

VertexSet common_neighbors(const Graph& g, VertexId u, VertexId v) {
  const auto& a = g.neighbors(u);
  const auto& b = g.neighbors(v);
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_independent(const Graph& g, std::span<const VertexId> s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (g.adjacent(s[i], s[j])) return false;
    }
  }
  return true;
}

bool is_connected(const Graph& g, std::span<const VertexId> s) {
  return s.empty() || connected_components(g, s).size() == 1;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const VertexSet& s, VertexId v) {
  return std::binary_search(s.begin(), s.end(), v);
}

VertexSet make_set(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Graph make_cycle(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_edge(vid(static_cast<std::uint32_t>(i)), vid(static_cast<std::uint32_t>((i + 1) % n)));
  }
  return g;
}

Graph make_path(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    g.add_edge(vid(static_cast<std::uint32_t>(i)), vid(static_cast<std::uint32_t>(i + 1)));
  }
  return g;
}

Graph make_complete(std::size_t n) {
  Graph g(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) g.add_edge(vid(i), vid(j));
  }
  return g;
}

// Result vertex i corresponds to the i-th smallest live vertex of g.
Graph make_complement(const Graph& g) {
  const VertexSet vs = g.vertices();
  Graph h(vs.size());
  for (std::uint32_t i = 0; i < vs.size(); ++i) {
    for (std::uint32_t j = i + 1; j < vs.size(); ++j) {
      if (!g.adjacent(vs[i], vs[j])) h.add_edge(vid(i), vid(j));
    }
  }
  return h;
}

Graph make_petersen() {
  Graph g(10);
  for (std::uint32_t i = 0; i < 5; ++i) {
    g.add_edge(vid(i), vid((i + 1) % 5));
    g.add_edge(vid(i), vid(i + 5));
    g.add_edge(vid(5 + i), vid(5 + (i + 2) % 5));
  }
  return g;
}

// Vertices of b are shifted by a.vertex_count(); both inputs are compacted.
Graph disjoint_union(const Graph& a, const Graph& b) {
  const VertexSet va = a.vertices();
  const VertexSet vb = b.vertices();
  Graph h(va.size() + vb.size());
  auto pos = [](const VertexSet& vs, VertexId v) {
    return static_cast<std::uint32_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  };
  for (auto [u, v] : a.edges()) h.add_edge(vid(pos(va, u)), vid(pos(va, v)));
  const auto shift = static_cast<std::uint32_t>(va.size());
  for (auto [u, v] : b.edges()) h.add_edge(vid(shift + pos(vb, u)), vid(shift + pos(vb, v)));
  return h;
}

std::string to_string(VertexId v) { return std::to_string(index(v)); }

}  // namespace hered3
