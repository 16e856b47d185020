#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "stabaut/errors.hpp"
#include "support.hpp"

using namespace stabaut;
using support::flip;
using support::flip_on_even;

TEST_CASE("evaluate and construction checks") {
  const StabilizedCode id = StabilizedCode::identity(3);
  CHECK(id.evaluate(0, Word{2}) == 2);
  const StabilizedCode s = shift_power(2, 1).forward();
  CHECK(s.evaluate(0, Word{0, 1, 1}) == 1);
  CHECK(s.evaluate(0, Word{1, 1, 0}) == 0);
  const StabilizedCode fe = flip_on_even().forward();
  CHECK(fe.evaluate(1, Word{0}) == 0);
  CHECK(fe.evaluate(0, Word{0}) == 1);
  CHECK(fe.evaluate(-1, Word{0}) == 0);
  CHECK_THROWS_AS(s.evaluate(0, Word{0, 1}), InvalidArgument);
  CHECK_THROWS_AS(StabilizedCode(2, 1, 0, std::vector<std::vector<Letter>>{{0, 2}}), InvalidArgument);
  CHECK_THROWS_AS(StabilizedCode(2, 1, 0, std::vector<std::vector<Letter>>{{0, 1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(StabilizedCode(2, 2, 0, std::vector<std::vector<Letter>>{{0, 1}}), InvalidArgument);
}

TEST_CASE("apply to periodic points") {
  const PeriodicPoint zero(Word{0});
  CHECK(apply_to_periodic(flip().forward(), zero) == PeriodicPoint(Word{1}));
  CHECK(apply_to_periodic(shift_power(2, 1).forward(), PeriodicPoint(Word{0, 1})) ==
        PeriodicPoint(Word{1, 0}));
  // The shift moves x_1 to position 0: block 01 becomes phase 1 of 01.
  CHECK(apply_to_periodic(shift_power(2, 1).forward(), PeriodicPoint(Word{0, 1})) ==
        PeriodicPoint(Word{0, 1}, 1));
  CHECK(apply_to_periodic(flip_on_even().forward(), zero) == PeriodicPoint(Word{1, 0}));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Automorphism f = support::sample_automorphism(2 + trial % 2, rng);
    const std::size_t n = f.alphabet_size();
    for (std::size_t P = 1; P <= 4; ++P) {
      for (std::uint64_t i = 0; i < checked_pow(n, P); ++i) {
        const PeriodicPoint x(power_alphabet_block(n, P, i));
        const PeriodicPoint y = apply_to_periodic(f.forward(), x);
        const PeriodicPoint expected(support::oracle_apply(f.forward(), x));
        CHECK(y == expected);
      }
    }
  }
}

TEST_CASE("refine keeps the map") {
  const StabilizedCode id = StabilizedCode::identity(2);
  CHECK(equals(refine(id, 2, 1), id));
  const StabilizedCode s = shift_power(2, 1).forward();
  const StabilizedCode s22 = refine(s, 2, 2);
  CHECK(s22.period() == 2);
  CHECK(s22.radius() == 2);
  CHECK(equals(s22, s));
  CHECK(refine(s22, 2, 2) == s22);
  const StabilizedCode fe4 = refine(flip_on_even().forward(), 4, 1);
  for (std::uint64_t w = 0; w < 8; ++w) {
    const Word win = power_alphabet_block(2, 3, w);
    CHECK(fe4.lookup(0, w) == 1 - win[1]);
    CHECK(fe4.lookup(2, w) == 1 - win[1]);
    CHECK(fe4.lookup(1, w) == win[1]);
    CHECK(fe4.lookup(3, w) == win[1]);
  }
  CHECK_THROWS_AS(refine(flip_on_even().forward(), 3, 0), InvalidArgument);
  CHECK_THROWS_AS(refine(s, 1, 0), InvalidArgument);
}

TEST_CASE("compose") {
  CHECK(is_identity(compose(flip().forward(), flip().forward())));
  const StabilizedCode s = shift_power(2, 1).forward();
  const StabilizedCode ss = compose(s, s);
  CHECK(ss.radius() == 2);
  CHECK(ss == shift_power(2, 2).forward());
  // flip-on-even after the shift flips the odd inputs: at even z the output is
  // 1 - x_{z+1}, at odd z it is x_{z+1}.
  const StabilizedCode c = compose(flip_on_even().forward(), s);
  CHECK(c.period() == 2);
  for (std::uint64_t w = 0; w < 8; ++w) {
    const Word win = power_alphabet_block(2, 3, w);
    CHECK(c.lookup(0, w) == 1 - win[2]);
    CHECK(c.lookup(1, w) == win[2]);
  }
  CHECK_THROWS_AS(compose(s, StabilizedCode::identity(3)), InvalidArgument);

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const Automorphism f = support::sample_automorphism(n, rng);
    const Automorphism g = support::sample_automorphism(n, rng);
    const Automorphism h = support::sample_automorphism(n, rng);
    const StabilizedCode fg = compose(f.forward(), g.forward());
    CHECK(fg.period() == std::lcm(f.period(), g.period()));
    CHECK(fg.radius() == f.radius() + g.radius());
    for (std::size_t P = 1; P <= 4; ++P)
      for (std::uint64_t i = 0; i < checked_pow(n, P); ++i) {
        const PeriodicPoint x = PeriodicPoint(power_alphabet_block(n, P, i)).unrolled(4 * P);
        CHECK(PeriodicPoint(support::oracle_apply(fg, x)) ==
              PeriodicPoint(support::oracle_apply_twice(f.forward(), g.forward(), x)));
      }
    CHECK(equals(compose(compose(f.forward(), g.forward()), h.forward()),
                 compose(f.forward(), compose(g.forward(), h.forward()))));
    CHECK(is_identity(compose(f.forward(), f.inverse_code())));
    const Automorphism fg_aut = compose(f, g);
    CHECK(equals(fg_aut.inverse(), compose(g.inverse(), f.inverse())));
  }
}

TEST_CASE("equals") {
  const StabilizedCode s = shift_power(2, 1).forward();
  CHECK(equals(s, refine(s, 3, 1)));
  CHECK_FALSE(equals(flip().forward(), StabilizedCode::identity(2)));
  CHECK(equals(compose(s, shift_power(2, -1).forward()), StabilizedCode::identity(2)));
  CHECK_FALSE(equals(flip_on_even().forward(), flip().forward()));

  // Restricted to the golden-mean SFT: edges 0:(0->0), 1:(0->1), 2:(1->0).
  // These codes differ only on the inadmissible window "1 1".
  const SftMatrix golden({{1, 1}, {1, 0}});
  const StabilizedCode f = StabilizedCode::from_rule(
      3, 1, 1, [](std::size_t, std::span<const Letter> w) { return w[1]; });
  const StabilizedCode g = StabilizedCode::from_rule(
      3, 1, 1, [](std::size_t, std::span<const Letter> w) {
        return (w[0] == 1 && w[1] == 1) ? Letter{2} : w[1];
      });
  CHECK_FALSE(equals(f, g));
  CHECK(equals_on(golden, f, g));
}

TEST_CASE("commutation with shift powers") {
  CHECK(commutes_with_shift_power(shift_power(2, 1).forward(), 1));
  CHECK_FALSE(commutes_with_shift_power(flip_on_even().forward(), 1));
  CHECK(commutes_with_shift_power(flip_on_even().forward(), 2));
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const Automorphism f = support::sample_automorphism(2, rng);
    CHECK(commutes_with_shift_power(f.forward(), f.period()));
  }
  // Conjugation by the shift rotates the tables.
  const StabilizedCode fe = flip_on_even().forward();
  const StabilizedCode conj = conjugate_by_shift(fe, 1);
  CHECK(conj.lookup(0, 0) == fe.lookup(1, 0));
  CHECK(conj.lookup(1, 0) == fe.lookup(0, 0));
  const StabilizedCode s = shift_power(2, 1).forward();
  const StabilizedCode direct =
      compose(compose(s, fe), shift_power(2, -1).forward());
  CHECK(equals(conj, direct));
}

TEST_CASE("inverse pairs and inverse search") {
  CHECK(verify_inverse_pair(flip().forward(), flip().forward()));
  CHECK(verify_inverse_pair(shift_power(2, 1).forward(), shift_power(2, -1).forward()));
  CHECK_FALSE(verify_inverse_pair(shift_power(2, 1).forward(), flip().forward()));
  const auto inv = find_inverse(shift_power(2, 1).forward(), 2);
  REQUIRE(inv.has_value());
  CHECK(equals(*inv, shift_power(2, -1).forward()));
  // The "sum of neighbours" map is not injective.
  const StabilizedCode sum = StabilizedCode::from_rule(
      2, 1, 1, [](std::size_t, std::span<const Letter> w) { return Letter(w[0] ^ w[2]); });
  CHECK_FALSE(find_inverse(sum, 2).has_value());
  CHECK_THROWS_AS(Automorphism::checked(shift_power(2, 1).forward(), flip().forward()),
                  InvalidArgument);
  CHECK(minimal_radius(refine(flip().forward(), 1, 3)) == 0);
  CHECK(reduce_radius(refine(shift_power(2, 1).forward(), 1, 3)) == shift_power(2, 1).forward());
}

namespace {

/// Brute-force census oracle: codes of the shape that are injective on all
/// periodic points of period <= 8. At these sizes that already singles out
/// the invertible codes.
std::size_t census_oracle(std::size_t n, std::size_t r, std::size_t k) {
  const std::uint64_t size = checked_pow(n, 2 * r + 1);
  const std::uint64_t total = checked_pow(n, size * k);
  std::size_t count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Word digits = power_alphabet_block(n, size * k, idx);
    std::vector<std::vector<Letter>> tables(k);
    for (std::size_t c = 0; c < k; ++c)
      tables[c].assign(digits.begin() + c * size, digits.begin() + (c + 1) * size);
    const StabilizedCode f(n, k, r, tables);
    bool injective = true;
    for (std::size_t P = k; P <= 8 && injective; P += k) {
      std::set<Word> images;
      for (std::uint64_t i = 0; i < checked_pow(n, P); ++i) {
        const PeriodicPoint x(power_alphabet_block(n, P, i));
        injective = images.insert(support::oracle_apply(f, x.unrolled(P))).second;
        if (!injective) break;
      }
    }
    if (injective) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("enumerate small automorphism sets") {
  const auto e201 = enumerate_automorphisms(2, 0, 1);
  REQUIRE(e201.size() == 2);
  CHECK(is_identity(e201[0].forward()));
  CHECK(equals(e201[1].forward(), flip().forward()));
  CHECK(enumerate_automorphisms(2, 0, 2).size() == 4);
  const auto e211 = enumerate_automorphisms(2, 1, 1);
  CHECK(e211.size() == 6);
  CHECK(census_oracle(2, 1, 1) == 6);
  CHECK(census_oracle(2, 0, 2) == 4);
  // Each of sigma^j . flip^e appears.
  for (std::int64_t j = -1; j <= 1; ++j)
    for (int e = 0; e < 2; ++e) {
      const StabilizedCode target =
          e ? compose(shift_power(2, j).forward(), flip().forward()) : shift_power(2, j).forward();
      const bool found = std::any_of(e211.begin(), e211.end(),
                                     [&](const Automorphism& a) { return equals(a.forward(), target); });
      CHECK(found);
    }
  for (const auto& a : e211) CHECK(verify_inverse_pair(a.forward(), a.inverse_code()));
  CHECK_THROWS_AS(enumerate_automorphisms(3, 1, 1, {std::nullopt, 1000}), BudgetExceeded);
}

TEST_CASE("periodic point action is faithful on the census") {
  const auto e211 = enumerate_automorphisms(2, 1, 1);
  for (std::size_t i = 0; i < e211.size(); ++i)
    for (std::size_t j = 0; j < e211.size(); ++j) {
      if (i == j) continue;
      bool differ = false;
      for (const auto& x : periodic_points(2, 3)) {
        differ = differ || !(apply_to_periodic(e211[i].forward(), x) ==
                             apply_to_periodic(e211[j].forward(), x));
      }
      CHECK((differ || equals(e211[i].forward(), e211[j].forward())));
    }
}

TEST_CASE("no stabilized element outside the shift powers is central") {
  for (std::size_t m : {1, 2}) {
    const auto all = enumerate_automorphisms(2, 0, 2 * m);
    const bool witness = std::any_of(all.begin(), all.end(), [&](const Automorphism& a) {
      return !commutes_with_shift_power(a.forward(), m);
    });
    CHECK(witness);
  }
}
