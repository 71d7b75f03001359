#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "hered3/coloring.hpp"
#include "hered3/graph.hpp"
#include "hered3/instance.hpp"
#include "hered3/patterns.hpp"

namespace hered3 {

// The input is outside the supported class; `witness` is an induced C5 or 2P4.
class ClassViolation : public std::runtime_error {
 public:
  explicit ClassViolation(PatternWitness w)
      : std::runtime_error("graph is not (2P4, C5)-free: found induced " + to_string(w.kind)),
        witness_(std::move(w)) {}
  const PatternWitness& witness() const { return witness_; }

 private:
  PatternWitness witness_;
};

struct SolveOptions {
  // Produce a coloring for colorable inputs.
  bool witness = true;
  // Skip the class check. Results on inputs outside the class are undefined.
  bool assume_class = false;
  // Explore every root coloring and branch instead of stopping at the first
  // success. Slower; used to exercise every stage.
  bool exhaustive = false;
  // Structural self-checks after every stage and 2P4 checks on collapses.
  bool paranoid = false;
  // Search-node budget of the exact colorer used for witnesses of components
  // without an induced C7 or C9. When exceeded the component is reported
  // colorable without a witness.
  std::uint64_t exact_budget = 2'000'000;
  // Worker threads for the root colorings of one component; 0 reads
  // HERED3_THREADS and falls back to 1.
  unsigned threads = 0;
};

struct SolveStats {
  std::size_t components = 0;
  std::uint64_t n0_colorings = 0;  // root colorings of the anchor cycles
  std::uint64_t branches = 0;      // search nodes processed
  std::uint64_t rejected = 0;
  std::uint64_t solved = 0;
  std::uint64_t reductions = 0;    // applications of basic rules
  double millis = 0.0;
  Telemetry telemetry;
};

struct SolveReport {
  bool colorable = false;
  // Present when colorable, requested, and available.
  std::optional<Coloring> witness;
  // For non-colorable inputs found by the preflight: a K4, an odd wheel or a
  // co-C7.
  std::optional<PatternWitness> obstruction;
  SolveStats stats;
};

// Decides 3-colorability of a (2P4, C5)-free graph. Throws ClassViolation
// when the class check fails, and StageError when an internal structural
// claim does not hold on this input (a bug, never a silent wrong answer).
SolveReport solve(const Graph& g, const SolveOptions& opts = {});

// Reads HERED3_THREADS when `requested` is 0.
unsigned resolve_threads(unsigned requested);

// Exact list coloring by DSATUR-ordered backtracking. Sets *exhausted and
// returns nullopt when the node budget runs out.
std::optional<Coloring> exact_list_coloring(const Graph& g, std::span<const VertexId> within, const PaletteMap& palettes,
                                            std::uint64_t node_budget, bool* exhausted = nullptr);

}  // namespace hered3
