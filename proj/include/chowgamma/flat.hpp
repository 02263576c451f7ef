#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace chowgamma {

using Mask = std::uint64_t;

inline constexpr int kMaxGround = 64;

constexpr Mask bit(int e) { return Mask{1} << e; }
constexpr Mask low_bits(int n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }
constexpr int popcount(Mask m) { return std::popcount(m); }
constexpr int lowest(Mask m) { return std::countr_zero(m); }

template <class Fn>
void for_each_element(Mask m, Fn&& fn) {
  while (m) {
    fn(std::countr_zero(m));
    m &= m - 1;
  }
}

std::vector<int> elements_of(Mask m);

// Packs the bits of `m` that sit inside `keep` into consecutive low positions.
Mask squeeze(Mask m, Mask keep);
// Inverse of squeeze: spreads low bits of `m` onto the positions of `keep`.
Mask expand(Mask m, Mask keep);

/// A set of ground elements. Flats of a lattice are values of this type.
struct Flat {
  Mask bits = 0;

  constexpr Flat() = default;
  constexpr explicit Flat(Mask b) : bits(b) {}

  constexpr int size() const { return popcount(bits); }
  constexpr bool empty() const { return bits == 0; }
  constexpr bool contains(int e) const { return (bits >> e) & 1u; }
  constexpr bool subset_of(Flat o) const { return (bits & ~o.bits) == 0; }
  constexpr bool strict_subset_of(Flat o) const { return subset_of(o) && bits != o.bits; }
  constexpr bool meets(Flat o) const { return (bits & o.bits) != 0; }

  friend constexpr Flat operator|(Flat a, Flat b) { return Flat{a.bits | b.bits}; }
  friend constexpr Flat operator&(Flat a, Flat b) { return Flat{a.bits & b.bits}; }
  friend constexpr Flat operator-(Flat a, Flat b) { return Flat{a.bits & ~b.bits}; }
  friend constexpr auto operator<=>(Flat, Flat) = default;
};

Flat make_flat(std::initializer_list<int> elements);

/// "{0,2,3}" with 0-based element indices.
std::string to_string(Flat f);
std::string to_string(const std::vector<Flat>& fs);

struct FlatHash {
  std::size_t operator()(Flat f) const noexcept {
    Mask x = f.bits * 0x9E3779B97F4A7C15ULL;
    return static_cast<std::size_t>(x ^ (x >> 29));
  }
};

}  // namespace chowgamma
