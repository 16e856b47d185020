#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "stabaut/block_codes.hpp"

namespace stabaut {

/// Distinct prime divisors with multiplicity, by trial division.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// Coordinates of a multiplier prod p_i^e_i over the primes of n.
class ExponentVector {
 public:
  ExponentVector() = default;
  ExponentVector(std::vector<std::uint64_t> primes, std::vector<std::int64_t> exponents);
  /// The zero vector over the primes of n.
  static ExponentVector zero(std::uint64_t n);

  const std::vector<std::uint64_t>& primes() const { return primes_; }
  const std::vector<std::int64_t>& exponents() const { return exponents_; }
  bool is_zero() const;
  std::string to_string() const;

  ExponentVector operator+(const ExponentVector& other) const;
  ExponentVector operator*(std::int64_t scalar) const;
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<std::uint64_t> primes_;
  std::vector<std::int64_t> exponents_;
};

/// Largest number of distinct state sets tracked while counting rays.
inline constexpr std::size_t kMaxRayFrontier = std::size_t{1} << 20;

struct RayCount {
  std::size_t level = 0;  // m = forward radius + inverse radius
  std::uint64_t count = 0;
};

/// Number of distinct outputs on (-r, m] over all right-extensions on (0, m+r]
/// of the constant tail on (-inf, 0]. Works for any period; output classes are
/// taken from absolute positions. Counted exactly by subset construction, not
/// by enumerating the q^(m+r) extensions.
RayCount ray_image_count(const Automorphism& aut, Letter tail_letter);

/// The multiplier N / n^m as an exponent vector over the primes of n.
/// Checked against a second tail letter.
ExponentVector dimension_multiplier(const Automorphism& aut);

bool is_inert(const Automorphism& aut);

struct DimGroupDescriptor {
  std::size_t rank = 0;
  std::vector<std::uint64_t> generators;
};

DimGroupDescriptor stabilized_dim_group(std::uint64_t n);

}  // namespace stabaut
