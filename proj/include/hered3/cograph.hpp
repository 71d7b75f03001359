#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "hered3/coloring.hpp"
#include "hered3/graph.hpp"
#include "hered3/palette.hpp"

namespace hered3 {

struct PatternWitness;

// Modular-decomposition tree of a P4-free graph. Two vertices are adjacent
// iff their lowest common ancestor is a Join node. Canonical: no Union child
// of a Union node, no Join child of a Join node; children ordered by their
// smallest leaf id.
class Cotree {
 public:
  enum class Kind : std::uint8_t { kLeaf, kUnion, kJoin };

  struct Node {
    Kind kind = Kind::kLeaf;
    VertexId vertex{};            // leaves only
    std::vector<int> children;    // internal nodes only
  };

  bool empty() const { return nodes_.empty(); }
  int root() const { return root_; }
  const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
  std::size_t node_count() const { return nodes_.size(); }

  VertexSet leaves() const;
  VertexSet leaves(int node) const;
  // Adjacency implied by the tree (LCA is a Join).
  bool adjacent(VertexId u, VertexId v) const;
  // Largest clique size of the represented graph.
  int clique_number() const;

 private:
  friend class CotreeBuilder;
  std::vector<Node> nodes_;
  int root_ = -1;
};

// A set of subsets of {1,2,3}; bit s is set when subset s (as a palette
// bitmask) is a member.
class ColorSetFamily {
 public:
  constexpr ColorSetFamily() = default;
  constexpr explicit ColorSetFamily(std::uint8_t bits) : bits_(bits) {}
  constexpr bool contains(Palette s) const { return ((bits_ >> s.bits()) & 1U) != 0; }
  constexpr void insert(Palette s) { bits_ = static_cast<std::uint8_t>(bits_ | (1U << s.bits())); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  std::vector<Palette> members() const;
  friend constexpr bool operator==(ColorSetFamily a, ColorSetFamily b) = default;

 private:
  std::uint8_t bits_ = 0;
};

bool is_cograph(const Graph& g);
bool is_cograph(const Graph& g, std::span<const VertexId> within);

// Cotree when the graph is P4-free, otherwise a P4 witness.
std::variant<Cotree, PatternWitness> recognize(const Graph& g);
std::variant<Cotree, PatternWitness> recognize(const Graph& g, std::span<const VertexId> within);

ColorSetFamily feasible_color_sets(const Cotree& t, const PaletteMap& palettes);

// A proper coloring of the cotree's leaves respecting the palettes, or
// nullopt. The returned vector is indexed by vertex id.
std::optional<Coloring> list3color(const Cotree& t, const PaletteMap& palettes);

// Recognizes G[within], colors it and re-verifies the result against the
// graph. Throws std::invalid_argument when G[within] contains an induced P4.
std::optional<Coloring> list3color(const Graph& g, std::span<const VertexId> within,
                                   const PaletteMap& palettes);

}  // namespace hered3
