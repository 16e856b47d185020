#pragma once

// Shared helpers for the test binaries: named automorphisms, a seeded sampler
// of small automorphisms, and independent oracles that evaluate codes straight
// from their tables.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "stabaut/block_codes.hpp"
#include "stabaut/generators.hpp"
#include "stabaut/permutation.hpp"
#include "stabaut/shift_core.hpp"

namespace support {

using namespace stabaut;

inline Automorphism flip() {
  return positional_letter_permutation(2, {Permutation::from_cycles(2, {{0, 1}})});
}

/// Flip at even positions, identity at odd ones.
inline Automorphism flip_on_even() {
  return positional_letter_permutation(2, {Permutation::from_cycles(2, {{0, 1}}), Permutation(2)});
}

inline Permutation random_permutation(std::size_t degree, std::mt19937_64& rng) {
  std::vector<Permutation::Point> images(degree);
  std::iota(images.begin(), images.end(), Permutation::Point{0});
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

inline Permutation random_even_permutation(std::size_t degree, std::mt19937_64& rng) {
  Permutation p = random_permutation(degree, rng);
  if (!p.is_even()) p = Permutation::from_cycles(degree, {{0, 1}}) * p;
  return p;
}

/// A random automorphism of the full n-shift with radius <= 1 and period
/// <= max_period (1 or 2), always carrying its inverse.
inline Automorphism sample_automorphism(std::size_t n, std::mt19937_64& rng,
                                        std::size_t max_period = 2) {
  const std::size_t kind = max_period >= 2 ? rng() % 3 : 0;
  const std::int64_t j = static_cast<std::int64_t>(rng() % 3) - 1;
  switch (kind) {
    case 0:
      return compose(shift_power(n, j), positional_letter_permutation(n, {random_permutation(n, rng)}));
    case 1:
      return compose(shift_power(n, j),
                     positional_letter_permutation(
                         n, {random_permutation(n, rng), random_permutation(n, rng)}));
    default:
      return symbol_permutation(SimpleGraphPerm(n, 2, random_permutation(n * n, rng)));
  }
}

/// Window index of x_{z-r..z+r}, leftmost significant, computed directly.
inline std::uint64_t window_index(const PeriodicPoint& x, std::int64_t z, std::size_t r,
                                  std::size_t n) {
  std::uint64_t idx = 0;
  for (std::int64_t p = z - static_cast<std::int64_t>(r); p <= z + static_cast<std::int64_t>(r); ++p)
    idx = idx * n + x.at(p);
  return idx;
}

/// f(x) on one period of length lcm(P, k), straight from the tables.
inline Word oracle_apply(const StabilizedCode& f, const PeriodicPoint& x) {
  const std::size_t L = std::lcm(x.period(), f.period());
  const auto tables = f.tables();
  Word out(L);
  for (std::size_t z = 0; z < L; ++z) {
    out[z] = tables[z % f.period()][window_index(x, static_cast<std::int64_t>(z), f.radius(),
                                                 f.alphabet_size())];
  }
  return out;
}

/// Composition applied pointwise: f(g(x)).
inline Word oracle_apply_twice(const StabilizedCode& f, const StabilizedCode& g,
                               const PeriodicPoint& x) {
  return oracle_apply(f, PeriodicPoint(oracle_apply(g, x)));
}

/// Agreement on every periodic point of period <= max_period, compared over a
/// common length.
inline bool agree_on_periodic_points(const StabilizedCode& f, const StabilizedCode& g,
                                     std::size_t max_period) {
  const std::size_t n = f.alphabet_size();
  for (std::size_t P = 1; P <= max_period; ++P) {
    const std::uint64_t count = checked_pow(n, P);
    for (std::uint64_t i = 0; i < count; ++i) {
      const PeriodicPoint x(power_alphabet_block(n, P, i));
      const std::size_t L = std::lcm(std::lcm(P, f.period()), g.period());
      const PeriodicPoint xl = x.unrolled(L);
      if (oracle_apply(f, xl) != oracle_apply(g, xl)) return false;
    }
  }
  return true;
}

}  // namespace support
