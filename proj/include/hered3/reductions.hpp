#pragma once

#include <optional>
#include <string>

#include "hered3/instance.hpp"

namespace hered3 {

enum class Status : std::uint8_t { kContinue, kRejected, kSolved };

struct Verdict {
  Status status = Status::kContinue;
  std::string reason;  // set on rejection
};

// Basic rules in priority order.
enum class BasicRule : std::uint8_t {
  kSingleton,
  kEmptyPalette,
  kLowDegree,
  kDiamond,
  kDomination,
  kTwoPaletteComponent,
  kCographComponent,
};

std::string to_string(BasicRule r);

struct ReductionOptions {
  Telemetry* telemetry = nullptr;
  // Check the (vertices, palette mass) potential after every application.
  bool check_progress = false;
};

// Applies the basic rules until none fires. Each pass takes the
// highest-priority rule with a match and applies it to every match that is
// still valid, in ascending id order.
Verdict basic_fixpoint(ColorInstance& inst, const ReductionOptions& opts = {});

struct SingleStep {
  std::optional<BasicRule> rule;  // absent when no rule applies
  Verdict verdict;
};

// Applies exactly one application of the highest-priority applicable rule.
SingleStep apply_single_step(ColorInstance& inst, const ReductionOptions& opts = {});

// Colors v, strips the color from its neighbors' palettes and deletes v
// unless it is in N0.
void color_vertex(ColorInstance& inst, VertexId v, Color c);

// Deletes y, recording that it copies the color of `by` at replay time.
void delete_dominated(ColorInstance& inst, VertexId y, VertexId by);

// Removes a P4-free vertex set whose colorability is guaranteed for every
// coloring of the rest that the caller leaves possible.
void delete_extension(ColorInstance& inst, const VertexSet& s, std::optional<VertexId> placeholder = {});

// Replaces the P4-free region C behind the independent cut X by whatever the
// feasible colorings of X require: nothing, a two-color placeholder adjacent
// to all of X, or a forced coloring of X. Preconditions: |C| >= 2, X
// independent with one shared two-color palette, every X vertex sees the same
// part of C, G[C ∪ X] is P4-free and N(C) \ C ⊆ X. Violations throw
// ContractViolation.
Verdict cut_reduction(ColorInstance& inst, const VertexSet& x, const VertexSet& c,
                      const ReductionOptions& opts = {});

struct CollapseResult {
  VertexId x_star;
  VertexId y_star;
};

struct CollapseOptions {
  Telemetry* telemetry = nullptr;
  // Run the 2P4 detector before and after and count violations under
  // "collapse.2p4_violations".
  bool check_2p4 = false;
};

// Replaces the two sides of v's connected bipartite neighborhood by one fresh
// vertex each. Violated preconditions throw ContractViolation.
CollapseResult neighborhood_collapse(ColorInstance& inst, VertexId v, const CollapseOptions& opts = {});

}  // namespace hered3
