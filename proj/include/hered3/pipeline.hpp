#pragma once

// Stage-level building blocks of the C7-anchored pipeline. The solver chains
// them; they are public so tests can drive each stage on crafted instances.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hered3/instance.hpp"
#include "hered3/reductions.hpp"

namespace hered3 {

// A structural claim the algorithm relies on did not hold. Carries the stage
// name so diagnostics stay distinct.
class StageError : public std::logic_error {
 public:
  StageError(std::string stage, const std::string& what)
      : std::logic_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct StageContext {
  Telemetry* telemetry = nullptr;
  // Enables the expensive structural assertions and 2P4 checks on collapses.
  bool paranoid = false;

  void bump(const std::string& key) const {
    if (telemetry != nullptr) telemetry->bump(key);
  }
};

// N0 / N1 / N2 split of an instance together with its top components.
struct StructureView {
  std::vector<VertexId> n0;
  std::vector<int> n0_pos;            // by id; -1 outside N0
  std::vector<std::uint16_t> n0_mask; // by id; bit i set when adjacent to n0[i]
  VertexSet n1;
  VertexSet n2;
  std::vector<VertexSet> components;  // connected components of G[N2]
  std::vector<int> component_of;      // by id; -1 outside N2
  std::vector<bool> relevant;         // per component: holds a full-palette vertex
  VertexSet relevant_vertices;        // N1 vertices adjacent to a relevant component

  bool in_n2(VertexId v) const { return index(v) < component_of.size() && component_of[index(v)] >= 0; }
  std::uint16_t mask(VertexId v) const { return index(v) < n0_mask.size() ? n0_mask[index(v)] : 0; }
  VertexSet n2_of(const Graph& g, VertexId x) const;
  // Indices of the top components containing a neighbor of x.
  std::vector<int> components_of(const Graph& g, VertexId x) const;
  bool is_relevant_vertex(VertexId v) const { return set_contains(relevant_vertices, v); }
};

// Builds the view and checks the shape of N1 (each N1 vertex sees one N0
// vertex or two at distance two) and that top components are P4-free.
StructureView stage_structure_check(const ColorInstance& inst, const StageContext& ctx);

// Smallest dominating set of a P4-free component: one vertex when possible,
// otherwise the first dominating pair in id order.
VertexSet dominating_pair(const Graph& g, const VertexSet& component);

// Assertion carried by a branch into its child: after the child's fixpoint,
// no relevant vertex sees only N0 vertex `a` (a == b), or one of the groups
// around `a` and `b` is empty.
struct PendingCheck {
  VertexId a;
  VertexId b;
  bool pair = false;
};

struct Branch {
  ColorInstance inst;
  std::vector<PendingCheck> checks;
  std::uint8_t ri_done = 0;  // by position in the original N0 order
  std::uint8_t si_done = 0;
};

// Throws StageError when a pending check fails on the child's view.
void verify_pending(const StructureView& view, const std::vector<PendingCheck>& checks);

// Relevant vertices seeing a single N0 vertex v_i: branch on the two colors of
// the one with the largest N2-neighborhood. Returns nullopt when every such
// group is empty. `original_n0` fixes the positions used in `parent`'s masks.
std::optional<std::vector<Branch>> stage_eliminate_Ri(const Branch& parent, const StructureView& view,
                                                      const std::vector<VertexId>& original_n0,
                                                      const StageContext& ctx);

// Relevant vertices around v_i and v_{i+3}: branch so that one group empties.
std::optional<std::vector<Branch>> stage_eliminate_Si_pairs(const Branch& parent, const StructureView& view,
                                                            const std::vector<VertexId>& original_n0,
                                                            const StageContext& ctx);

// Rotates inst.n0 so that relevant vertices see positions 0 and 2, and checks
// that they all do and share one two-color palette. Returns that palette.
Palette normalize_rotation(ColorInstance& inst, const StructureView& view);

enum class StageOutcome : std::uint8_t { kUnchanged, kChanged, kRejected };

// Edges among relevant vertices.
StageOutcome stage_relevant_edges(ColorInstance& inst, const StructureView& view, const StageContext& ctx);

// Relevant vertices adjacent to several top components.
StageOutcome stage_equivalence_cuts(ColorInstance& inst, const StructureView& view, const StageContext& ctx);

// A relevant component in its final shape: star centered at u whose leaves
// all carry {a,t} (w1) or {b,t} (w2), where {a,b} is the relevant palette.
struct WForm {
  VertexSet component;
  VertexId u;
  VertexSet rx;
  VertexSet w1;
  VertexSet w2;
  VertexSet x1;
  VertexSet x2;
  VertexSet x0;
};

// Case analysis on N2(x) for each relevant component. Returns kUnchanged only
// when every relevant component is in W-form; those are appended to `wforms`.
StageOutcome stage_n2x_cases(ColorInstance& inst, const StructureView& view, const StageContext& ctx,
                             std::vector<WForm>& wforms);

// 2-SAT over everything outside the relevant components plus the W-form
// clauses, then cograph coloring of each component. Returns the coloring of
// the live vertices, or nullopt when the conjunction is unsatisfiable.
std::optional<Coloring> final_assembly(const ColorInstance& inst, const StructureView& view,
                                       const std::vector<WForm>& wforms, const StageContext& ctx);

}  // namespace hered3
