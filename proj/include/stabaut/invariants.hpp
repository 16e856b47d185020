#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stabaut {

/// Number of distinct prime divisors; n >= 2.
std::size_t omega(std::uint64_t n);

/// All k >= 1 such that a is a perfect k-th power, ascending; a >= 2.
std::vector<std::uint64_t> roots_set(std::uint64_t a);

enum class Outcome { Distinguishable, Isomorphic, Inconclusive };
std::string to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  /// Short tag of the criterion applied: "abelianization-rank",
  /// "rational-conjugacy" or "root-set".
  std::string criterion;
  /// Human-readable evidence, e.g. "omega 1 vs 2".
  std::string detail;
  /// For isomorphic outcomes: (j, k) with m^j = n^k.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> exponents;

  /// "distinguishable (omega 1 vs 2)" and the like.
  std::string summary() const;
};

/// Compares the stabilized automorphism groups of the full m- and n-shifts.
Verdict distinguish_stabilized(std::uint64_t m, std::uint64_t n);

/// Compares the classical automorphism groups by their root sets; never
/// returns Isomorphic.
Verdict distinguish_classical(std::uint64_t m, std::uint64_t n);

/// A 2x2 matrix (a b; c d) over Z/4, stored row-major.
using Mat4 = std::array<std::uint8_t, 4>;

struct Sl2Z4Report {
  std::size_t group_order = 0;
  std::size_t commutator_order = 0;
  std::vector<std::pair<Mat4, bool>> quoted_members;  // matrix, lies in the commutator subgroup
  std::size_t unipotent_image_order = 0;              // of (1 1; 0 1) in the quotient
  std::size_t abelianization_order = 0;
  /// Order of the quotient's coinvariants under conjugation by diag(-1, 1).
  std::size_t coinvariants_order = 0;
  /// Inputs taken as given rather than computed.
  std::string external_step;
  std::string quoted_final_answer;
};

Sl2Z4Report sl2_z4_report();
std::string mat4_to_string(const Mat4& m);

}  // namespace stabaut
