#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace stabaut {

using Letter = std::uint16_t;
using Word = std::vector<Letter>;
using BigInt = boost::multiprecision::cpp_int;

/// Largest alphabet a Letter can index.
inline constexpr std::size_t kMaxAlphabet = 65535;

/// n^e, throwing BudgetExceeded when the result does not fit in 64 bits.
std::uint64_t checked_pow(std::uint64_t n, std::size_t e);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// Non-negative remainder of a modulo m (m > 0).
inline std::size_t floor_mod(std::int64_t a, std::size_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  const std::int64_t r = a % mm;
  return static_cast<std::size_t>(r < 0 ? r + mm : r);
}

/// Floor of a / b for b > 0.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

/// Letters 0..size-1.
class Alphabet {
 public:
  explicit Alphabet(std::size_t size);

  std::size_t size() const { return size_; }
  bool contains(std::uint64_t letter) const { return letter < size_; }
  /// Throws InvalidArgument naming the first letter out of range.
  void validate(std::span<const Letter> word) const;

 private:
  std::size_t size_;
};

/// Leftmost-significant index of a block in A^k, where k = block.size().
std::uint64_t power_alphabet_index(std::size_t n, std::span<const Letter> block);

/// Inverse of power_alphabet_index for blocks of length k.
Word power_alphabet_block(std::size_t n, std::size_t k, std::uint64_t index);

struct Edge {
  std::size_t source;
  std::size_t target;
  std::size_t multiplicity;  // 0-based copy index among parallel edges
};

/// A shift of finite type presented by a non-negative integer matrix.
/// Letters of the shift are edges, numbered in (source, target, copy) order.
class SftMatrix {
 public:
  explicit SftMatrix(std::vector<std::vector<std::uint64_t>> entries);
  static SftMatrix full_shift(std::size_t n);

  std::size_t dim() const { return entries_.size(); }
  std::uint64_t entry(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const std::vector<std::vector<std::uint64_t>>& entries() const { return entries_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  bool is_full_shift() const { return entries_.size() == 1; }

  /// True when edge f may follow edge e in a path.
  bool follows(Letter e, Letter f) const {
    return edges_[e].target == edges_[f].source;
  }
  bool admissible(std::span<const Letter> word) const;

 private:
  std::vector<std::vector<std::uint64_t>> entries_;
  std::vector<Edge> edges_;
};

/// All admissible words of length L in lexicographic order of edge labels.
std::vector<Word> language_words(const SftMatrix& sft, std::size_t length);

/// trace(A^k), the number of points of period k.
BigInt count_periodic(const SftMatrix& sft, std::size_t k);

/// Number of orbits of least period exactly p in the full n-shift.
BigInt count_least_period_orbits(std::size_t n, std::size_t p);

/// The Moebius function.
int moebius(std::uint64_t n);

/// A periodic sequence x with x_i = block[(i + phase) mod P].
class PeriodicPoint {
 public:
  explicit PeriodicPoint(Word block, std::size_t phase = 0);

  const Word& block() const { return block_; }
  std::size_t phase() const { return phase_; }
  std::size_t period() const { return block_.size(); }
  Letter at(std::int64_t i) const {
    return block_[floor_mod(i + static_cast<std::int64_t>(phase_), block_.size())];
  }

  /// Least period, lexicographically least rotation, adjusted phase.
  PeriodicPoint canonical() const;
  /// Same point written with a block of length L (a multiple of the period).
  PeriodicPoint unrolled(std::size_t length) const;

  std::string to_string() const;

  friend bool operator==(const PeriodicPoint& a, const PeriodicPoint& b);

 private:
  Word block_;
  std::size_t phase_;
};

/// All points of period dividing k in the full n-shift, as blocks of length k
/// with phase 0, in lexicographic order.
std::vector<PeriodicPoint> periodic_points(std::size_t n, std::size_t k);

}  // namespace stabaut
