#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stabaut/shift_core.hpp"

namespace stabaut {

/// A bijection of {0, ..., degree-1}. Products compose right to left:
/// (a * b)(x) = a(b(x)). Text forms use 1-based cycle notation.
class Permutation {
 public:
  using Point = std::uint32_t;

  Permutation() = default;
  /// The identity of the given degree.
  explicit Permutation(std::size_t degree);
  /// Validates that images is a bijection.
  explicit Permutation(std::vector<Point> images);

  /// 0-based cycles.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);
  /// 1-based cycle notation such as "(1 2 3)(4 5)"; "()" or "" is the identity.
  static Permutation parse(std::size_t degree, std::string_view text);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  Permutation inverse() const;
  Permutation pow(std::int64_t e) const;
  bool is_identity() const;

  /// Non-trivial cycles, each starting at its least point, sorted by that point.
  std::vector<std::vector<Point>> cycles() const;
  /// Lengths of the non-trivial cycles in decreasing order.
  std::vector<std::size_t> cycle_type() const;
  std::vector<Point> support() const;
  BigInt order() const;
  bool is_even() const;
  /// degree minus number of cycles: the least number of transpositions.
  std::size_t transposition_count() const;

  std::string to_string() const;

  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};

/// b^-1 a b.
Permutation conjugate(const Permutation& a, const Permutation& b);

}  // namespace stabaut
