#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hered3 {

// Stable vertex token. Ids are handed out in increasing order and never
// recycled, so replay logs and witness maps stay unambiguous after deletion.
enum class VertexId : std::uint32_t {};

constexpr std::uint32_t index(VertexId v) { return static_cast<std::uint32_t>(v); }
constexpr VertexId vid(std::uint32_t i) { return static_cast<VertexId>(i); }

// Sorted ascending, duplicate-free.
using VertexSet = std::vector<VertexId>;

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller broke an operation's documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Fixed-width bitset over the id space, used for O(1) adjacency tests and
// word-parallel neighborhood algebra.
class IdBitset {
 public:
  IdBitset() = default;
  explicit IdBitset(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void resize(std::size_t bits) { words_.resize((bits + 63) / 64, 0); }
  std::size_t capacity() const { return words_.size() * 64; }

  bool test(std::uint32_t i) const {
    const std::size_t w = i / 64;
    return w < words_.size() && ((words_[w] >> (i % 64)) & 1U) != 0;
  }
  void set(std::uint32_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  void reset(std::uint32_t i) {
    if (i / 64 < words_.size()) words_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  bool is_subset_of(const IdBitset& other) const;
  bool intersects(const IdBitset& other) const;
  std::size_t count() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        f(vid(static_cast<std::uint32_t>(w * 64 + b)));
        bits &= bits - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Simple undirected graph. Vertices are physically removed on deletion; the
// id counter only moves forward.
class Graph {
 public:
  Graph() = default;
  // Vertices 0..n-1, no edges.
  explicit Graph(std::size_t n);

  VertexId add_vertex();
  void add_edge(VertexId u, VertexId v);
  void remove_edge(VertexId u, VertexId v);
  void remove_vertex(VertexId v);

  bool has_vertex(VertexId v) const {
    return index(v) < alive_.size() && alive_[index(v)];
  }
  bool adjacent(VertexId u, VertexId v) const {
    return has_vertex(u) && rows_[index(u)].test(index(v));
  }
  // Sorted ascending.
  const std::vector<VertexId>& neighbors(VertexId v) const { return adj_.at(index(v)); }
  const IdBitset& neighbor_bits(VertexId v) const { return rows_.at(index(v)); }
  std::size_t degree(VertexId v) const { return adj_.at(index(v)).size(); }

  // Sorted ascending list of live vertices.
  VertexSet vertices() const;
  const IdBitset& vertex_bits() const { return live_bits_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edge_count_; }
  // Strict upper bound on every id ever issued by this graph.
  std::uint32_t id_bound() const { return static_cast<std::uint32_t>(alive_.size()); }

  std::vector<std::pair<VertexId, VertexId>> edges() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void require_vertex(VertexId v) const;
  void grow_rows(std::size_t bits);

  std::vector<bool> alive_;
  std::vector<std::vector<VertexId>> adj_;
  std::vector<IdBitset> rows_;
  IdBitset live_bits_;
  std::size_t vertex_count_ = 0;
  std::size_t edge_count_ = 0;
};

Graph induced_subgraph(const Graph& g, std::span<const VertexId> s);
// Induced subgraph keeping the smallest id of every class of false twins
// (equal open neighborhoods) and, when `true_twins` is set, of true twins
// (equal closed neighborhoods), repeated until none are left. A pattern
// without such twins occurs in g iff it occurs in the result.
Graph twin_reduced(const Graph& g, bool true_twins);

// Components ordered by smallest contained id; each component sorted.
std::vector<VertexSet> connected_components(const Graph& g);
std::vector<VertexSet> connected_components(const Graph& g, std::span<const VertexId> within);

// Two independent sets covering g, side containing the smallest id first.
// Each connected component is oriented so that its smallest vertex lands on
// the first side.
std::optional<std::pair<VertexSet, VertexSet>> bipartition(const Graph& g);
std::optional<std::pair<VertexSet, VertexSet>> bipartition(const Graph& g,
                                                           std::span<const VertexId> within);

VertexSet common_neighbors(const Graph& g, VertexId u, VertexId v);

bool is_independent(const Graph& g, std::span<const VertexId> s);
bool is_connected(const Graph& g, std::span<const VertexId> s);

// Sorted-set helpers.
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool set_contains(const VertexSet& s, VertexId v);
VertexSet make_set(std::vector<VertexId> v);

// Common fixed graphs. Vertex i of the result is id i.
Graph make_cycle(std::size_t n);
Graph make_path(std::size_t n);
Graph make_complete(std::size_t n);
Graph make_complement(const Graph& g);
Graph make_petersen();
Graph disjoint_union(const Graph& a, const Graph& b);

std::string to_string(VertexId v);

}  // namespace hered3
