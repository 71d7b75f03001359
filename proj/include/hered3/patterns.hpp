#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hered3/graph.hpp"

namespace hered3 {

enum class PatternKind : std::uint8_t {
  kP4,
  kTwoP4,
  kC5,
  kC7,
  kC9,
  kK4,
  kCoC7,
  // A hub vertex followed by an odd induced cycle (length >= 5) in its
  // neighborhood. Reported by the neighborhood bipartiteness check when the
  // obstruction is not a triangle.
  kOddWheel,
};

std::string to_string(PatternKind k);

struct PatternWitness {
  PatternKind kind = PatternKind::kP4;
  // Template order: path order for P4; first path then second path for 2P4;
  // cyclic order for cycles; label order 0..6 for the complement of C7
  // (i ~ j iff j - i is 2, 3, 4 or 5 mod 7); hub first for wheels and K4.
  std::vector<VertexId> vertices;

  friend bool operator==(const PatternWitness&, const PatternWitness&) = default;
};

// True when the listed vertices induce exactly the claimed template.
bool verify_witness(const Graph& g, const PatternWitness& w);

std::optional<PatternWitness> find_induced_p4(const Graph& g);
std::optional<PatternWitness> find_induced_p4(const Graph& g, std::span<const VertexId> within);
std::optional<PatternWitness> find_induced_2p4(const Graph& g);
// Only 5, 7 and 9 are accepted; anything else throws InputError.
std::optional<PatternWitness> find_induced_cycle(const Graph& g, int length);
std::optional<PatternWitness> find_k4_or_odd_neighborhood(const Graph& g);
std::optional<PatternWitness> find_co_c7(const Graph& g);
// Absent iff g is (2P4, C5)-free.
std::optional<PatternWitness> check_class(const Graph& g);

// Induced cycle search for arbitrary length >= 4 (testing and cross-checks).
std::optional<PatternWitness> find_induced_cycle_any_length(const Graph& g, int length);

}  // namespace hered3
