#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace hered3 {

// Colors are 1, 2 and 3. Zero means "uncolored" wherever a color slot is used.
using Color = int;
inline constexpr Color kNoColor = 0;

// Allowed-color list of a vertex, a subset of {1,2,3} stored as a bitmask.
class Palette {
 public:
  constexpr Palette() = default;
  static constexpr Palette full() { return Palette(0b111U); }
  static constexpr Palette only(Color c) { return Palette(1U << (c - 1)); }
  static constexpr Palette from_bits(unsigned bits) { return Palette(bits); }
  static constexpr Palette of(Color a, Color b) { return only(a) | only(b); }

  constexpr bool contains(Color c) const { return c >= 1 && c <= 3 && ((bits_ >> (c - 1)) & 1U) != 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }

  constexpr Palette without(Color c) const {
    return Palette(bits_ & ~(1U << (c - 1)));
  }
  constexpr Palette with(Color c) const { return Palette(bits_ | (1U << (c - 1))); }
  constexpr bool subset_of(Palette o) const { return (bits_ & ~o.bits_) == 0; }

  // Smallest / largest allowed color; kNoColor when empty.
  constexpr Color smallest() const { return bits_ == 0 ? kNoColor : std::countr_zero(bits_) + 1; }
  constexpr Color largest() const { return bits_ == 0 ? kNoColor : 8 - std::countl_zero(bits_); }

  std::vector<Color> colors() const {
    std::vector<Color> out;
    for (Color c = 1; c <= 3; ++c) {
      if (contains(c)) out.push_back(c);
    }
    return out;
  }

  friend constexpr Palette operator&(Palette a, Palette b) { return Palette(static_cast<unsigned>(a.bits_ & b.bits_)); }
  friend constexpr Palette operator|(Palette a, Palette b) { return Palette(static_cast<unsigned>(a.bits_ | b.bits_)); }
  friend constexpr bool operator==(Palette a, Palette b) = default;

  std::string to_string() const {
    std::string s = "{";
    for (Color c : colors()) {
      if (s.size() > 1) s += ",";
      s += std::to_string(c);
    }
    return s + "}";
  }

 private:
  constexpr explicit Palette(unsigned bits) : bits_(static_cast<std::uint8_t>(bits & 0b111U)) {}
  std::uint8_t bits_ = 0;
};

// The color outside a two-color palette.
constexpr Color third_color(Palette two) { return Palette::from_bits(~static_cast<unsigned>(two.bits())).smallest(); }

}  // namespace hered3
