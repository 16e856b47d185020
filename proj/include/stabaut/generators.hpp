#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "stabaut/block_codes.hpp"
#include "stabaut/permutation.hpp"

namespace stabaut {

/// A permutation of the n^m blocks of length m (indexed by power_alphabet_index),
/// acting on aligned blocks [jm, (j+1)m).
struct SimpleGraphPerm {
  std::size_t n = 0;
  std::size_t m = 0;
  Permutation perm;

  SimpleGraphPerm() = default;
  SimpleGraphPerm(std::size_t n, std::size_t m, Permutation perm);

  static SimpleGraphPerm identity(std::size_t n, std::size_t m);
  /// Exchanges the two blocks with indices a and b.
  static SimpleGraphPerm transposition(std::size_t n, std::size_t m, std::uint64_t a,
                                       std::uint64_t b);
  Word apply(const Word& block) const;

  friend bool operator==(const SimpleGraphPerm&, const SimpleGraphPerm&) = default;
};

SimpleGraphPerm operator*(const SimpleGraphPerm& a, const SimpleGraphPerm& b);

/// sigma^j: radius |j|, period 1.
Automorphism shift_power(std::size_t n, std::int64_t j);

/// The period-k code applying perms[z mod k] to the letter at z.
Automorphism positional_letter_permutation(std::size_t n, const std::vector<Permutation>& perms);

/// The 0-block code of period m acting by perm on aligned m-blocks (radius m-1).
Automorphism symbol_permutation(const SimpleGraphPerm& perm);

/// Recognises a code that acts by a permutation on its aligned period-blocks.
std::optional<SimpleGraphPerm> as_block_permutation(const StabilizedCode& code);

struct CommutatorWitness {
  Automorphism phi0;            // tau on the even blocks only
  StabilizedCode tau_tilde;     // tau on every block
  StabilizedCode commutator;    // phi0 sigma phi0^-1 sigma^-1 (sigma the block shift)
  bool verified = false;
};

/// tau a transposition of two distinct blocks of length b (b = tau.m); the
/// identity is checked in the centraliser of sigma^(2b).
CommutatorWitness swap_commutator_witness(const SimpleGraphPerm& tau);
/// Convenience for a transposition of two letters.
CommutatorWitness swap_commutator_witness(std::size_t n, Letter a, Letter b);
/// Over an SFT whose letters are edges: tau exchanges two parallel edges;
/// equality is checked on admissible windows only.
CommutatorWitness swap_commutator_witness(const SftMatrix& sft, Letter e, Letter f);

/// The m-th root at block level: (phi0(a_1), a_2, ..., a_{m-1}, a_0) on
/// m-tuples of k-blocks. Its m-th power is checked against phi0 inflated m times.
SimpleGraphPerm mth_root_block(const SimpleGraphPerm& phi0, std::size_t m);

/// phi0 must act by a permutation on aligned period-blocks. The m-fold
/// composite of the result is checked against phi0 before returning.
Automorphism mth_root_of(const Automorphism& phi0, std::size_t m);

struct InflateReport {
  SimpleGraphPerm result;
  std::vector<std::size_t> cycle_type;
  std::size_t transpositions = 0;
  bool even = true;
};

/// The diagonal action on t-tuples of m-blocks.
InflateReport inflate(const SimpleGraphPerm& perm, std::size_t t);

/// The same map read on blocks of length block_length (a multiple of the
/// period; 0 means the period) as letters of an n^block_length alphabet.
Automorphism recode_to_power(const Automorphism& phi, std::size_t block_length = 0);
StabilizedCode recode_to_power(const StabilizedCode& code, std::size_t block_length = 0);

}  // namespace stabaut
