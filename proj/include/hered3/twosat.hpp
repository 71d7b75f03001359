#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hered3/coloring.hpp"
#include "hered3/graph.hpp"

namespace hered3 {

struct Literal {
  int var = 0;
  bool positive = true;

  Literal operator!() const { return {var, !positive}; }
  friend bool operator==(Literal, Literal) = default;
};

inline Literal pos(int v) { return {v, true}; }
inline Literal neg(int v) { return {v, false}; }

class TwoSatFormula {
 public:
  TwoSatFormula() = default;
  explicit TwoSatFormula(int variables) : vars_(variables) {}

  int variable_count() const { return vars_; }
  int add_variable() { return vars_++; }
  // Throws ContractViolation on an out-of-range variable.
  void add_clause(Literal a, Literal b);
  void add_implication(Literal a, Literal b) { add_clause(!a, b); }
  const std::vector<std::pair<Literal, Literal>>& clauses() const { return clauses_; }

 private:
  int vars_ = 0;
  std::vector<std::pair<Literal, Literal>> clauses_;
};

bool satisfies(const TwoSatFormula& f, const std::vector<bool>& assignment);

// Satisfying assignment via implication-graph SCCs, verified before return.
std::optional<std::vector<bool>> solve(const TwoSatFormula& f);

// DIMACS CNF text, variables numbered from 1.
std::string to_dimacs(const TwoSatFormula& f);

// One variable per two-color vertex; the variable is true iff the vertex
// takes the smaller color of its palette.
class ColorVarMap {
 public:
  // Returns the vertex's variable, allocating it in `f` on first use.
  // Throws ContractViolation when the palette does not have exactly two colors
  // or differs from the palette the vertex was first mapped with.
  int ensure(VertexId v, Palette p, TwoSatFormula& f);
  std::optional<int> variable(VertexId v) const;
  const std::vector<std::pair<VertexId, Palette>>& entries() const { return entries_; }

  // Literal meaning "v takes color c"; c must be in v's palette.
  Literal literal(VertexId v, Color c) const;
  Color color(int var, bool value) const;

  // Writes the color of every mapped vertex.
  void decode(const std::vector<bool>& assignment, Coloring& out) const;

 private:
  std::vector<int> var_of_;                           // by vertex index, -1 when unmapped
  std::vector<std::pair<VertexId, Palette>> entries_;  // by variable
};

// Appends clauses forbidding equal colors across every edge of G[s].
// Throws ContractViolation when some vertex of s has a palette of size other
// than two.
void encode_two_palette_subgraph(const Graph& g, const PaletteMap& palettes, std::span<const VertexId> s,
                                 TwoSatFormula& f, ColorVarMap& vars);

std::pair<TwoSatFormula, ColorVarMap> encode_two_palette_subgraph(const Graph& g, const PaletteMap& palettes,
                                                                  std::span<const VertexId> s);

// Clauses for the colorings of an equivalence class R = X0 ∪ X1 ∪ X2 whose
// vertices share one two-color palette; "first" means the smaller color:
//   a vertex of X1 taking the first color forces all of R to it,
//   a vertex of X2 taking the second color forces all of R to it,
//   X1 is monochromatic and X2 is monochromatic.
// All vertices must already be mapped in `vars`. Overlapping sets throw
// ContractViolation.
std::vector<std::pair<Literal, Literal>> encode_rx_constraints(const VertexSet& x1, const VertexSet& x2,
                                                               const VertexSet& x0, const ColorVarMap& vars);

}  // namespace hered3
