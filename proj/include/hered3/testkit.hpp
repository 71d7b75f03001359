#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hered3/coloring.hpp"
#include "hered3/graph.hpp"
#include "hered3/instance.hpp"
#include "hered3/solver.hpp"

namespace hered3::testkit {

// Reference list-3-coloring by plain backtracking in id order with forward
// checking. Shares nothing with the solver beyond Graph and Palette.
std::optional<Coloring> oracle_list3color(const Graph& g, const PaletteMap& palettes);
std::optional<Coloring> oracle_3color(const Graph& g);

// Number of proper 3-colorings (colors 1..3, not up to symmetry), optionally
// restricted to palettes.
std::uint64_t count_proper_3colorings(const Graph& g);
std::uint64_t count_list_3colorings(const Graph& g, const PaletteMap& palettes);

// Counter-based seed derivation: the i-th case of a run never depends on how
// many cases ran before it or on which thread.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

enum class GeneratorKind : std::uint8_t { kErdosRenyi, kC7Gadget, kC9Gadget, kCographComposite, kNamed };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kErdosRenyi;
  std::size_t n = 10;
  double p = 0.25;
  std::string name;  // kNamed only
  std::uint64_t seed = 1;
};

// kErdosRenyi: G(n, p).
// kC7Gadget / kC9Gadget: an induced C7 (C9) on ids 0..6 (0..8) grown one
//   vertex at a time, keeping only vertices that leave the graph
//   (2P4, C5)-free and free of K4 and odd wheels; the C9 variant also stays
//   C7-free. The result may have fewer than n vertices when growth stalls.
//   C7 gadgets mix uniform growth, growth biased towards the shapes the
//   later stages handle, and a fixed catalog of stage-reaching graphs.
std::size_t c7_template_count();
Graph c7_template(std::size_t i);
// kCographComposite: the C7 on ids 0..6 with every cycle vertex expanded into
//   a module; modules at positions 0 and 2 are triangle-free cographs, the
//   others independent sets. Always (2P4, C5)-free and 3-colorable.
// kNamed: k4, c5, c7, c9, co-c7, petersen, 2p4, p4, k3, empty.
Graph generate(const GeneratorSpec& spec);
Graph named_graph(const std::string& name);

GeneratorKind parse_generator_kind(const std::string& s);
std::string to_string(GeneratorKind k);

struct FuzzOptions {
  std::uint64_t budget = 1000;  // cases to generate
  std::uint64_t seed = 1;
  std::size_t min_n = 8;
  std::size_t max_n = 16;
  std::vector<double> probabilities{0.15, 0.25, 0.4};
  GeneratorKind kind = GeneratorKind::kErdosRenyi;
  unsigned threads = 1;
  SolveOptions solve;
};

struct Mismatch {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  Graph graph;
  bool expected = false;
  bool got = false;
  std::string detail;
};

struct FuzzReport {
  std::uint64_t generated = 0;
  std::uint64_t in_class = 0;     // cases that passed the class filter
  std::uint64_t colorable = 0;    // among in-class cases, per the oracle
  std::uint64_t witness_checks = 0;
  std::uint64_t witness_failures = 0;
  std::uint64_t errors = 0;       // solver threw on an in-class case
  std::vector<Mismatch> mismatches;  // decision, witness or error, by index
  Telemetry telemetry;
};

// Generates `budget` cases, drops those outside the class, and compares the
// solver with the oracle on the rest. Deterministic for a given seed,
// independent of the thread count.
FuzzReport differential_fuzz(const FuzzOptions& opts);

}  // namespace hered3::testkit
