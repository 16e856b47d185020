#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "stabaut/dimension_rep.hpp"
#include "stabaut/errors.hpp"
#include "stabaut/invariants.hpp"

using namespace stabaut;
using boost::multiprecision::cpp_int;

namespace {

std::size_t brute_omega(std::uint64_t n) {
  std::size_t count = 0;
  for (std::uint64_t p = 2; p <= n; ++p) {
    bool prime = true;
    for (std::uint64_t q = 2; q * q <= p && prime; ++q) prime = p % q != 0;
    if (prime && n % p == 0) ++count;
  }
  return count;
}

/// k is in the root set iff some b satisfies b^k = a; found by scanning b.
std::vector<std::uint64_t> brute_roots(std::uint64_t a) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 1; k <= 64; ++k) {
    for (std::uint64_t b = 1;; ++b) {
      cpp_int p = 1;
      for (std::uint64_t i = 0; i < k; ++i) p *= b;
      if (p == a) out.push_back(k);
      if (p >= a) break;
    }
  }
  return out;
}

cpp_int big_pow(std::uint64_t base, std::uint64_t e) {
  cpp_int p = 1;
  for (std::uint64_t i = 0; i < e; ++i) p *= base;
  return p;
}

/// Z/4 matrices as 4-tuples, independent of the library's helpers.
Mat4 mul4(const Mat4& x, const Mat4& y) {
  return {static_cast<std::uint8_t>((x[0] * y[0] + x[1] * y[2]) % 4),
          static_cast<std::uint8_t>((x[0] * y[1] + x[1] * y[3]) % 4),
          static_cast<std::uint8_t>((x[2] * y[0] + x[3] * y[2]) % 4),
          static_cast<std::uint8_t>((x[2] * y[1] + x[3] * y[3]) % 4)};
}

}  // namespace

TEST_CASE("omega") {
  CHECK(omega(2) == 1);
  CHECK(omega(6) == 2);
  CHECK(omega(12) == 2);
  CHECK(omega(30) == 3);
  for (std::uint64_t n = 2; n <= 500; ++n) CHECK(omega(n) == brute_omega(n));
  CHECK_THROWS_AS(omega(1), InvalidArgument);
}

TEST_CASE("root sets") {
  CHECK(roots_set(9) == std::vector<std::uint64_t>{1, 2});
  CHECK(roots_set(27) == std::vector<std::uint64_t>{1, 3});
  CHECK(roots_set(2) == std::vector<std::uint64_t>{1});
  CHECK(roots_set(64) == std::vector<std::uint64_t>{1, 2, 3, 6});
  CHECK(roots_set(1ULL << 60) == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60});
  for (std::uint64_t a = 2; a <= 3000; ++a) CHECK(roots_set(a) == brute_roots(a));
  CHECK_THROWS_AS(roots_set(1), InvalidArgument);
}

TEST_CASE("stabilized verdicts") {
  const Verdict v24 = distinguish_stabilized(2, 4);
  CHECK(v24.outcome == Outcome::Isomorphic);
  REQUIRE(v24.exponents.has_value());
  CHECK(big_pow(2, v24.exponents->first) == big_pow(4, v24.exponents->second));
  CHECK(v24.criterion == "rational-conjugacy");

  const Verdict v26 = distinguish_stabilized(2, 6);
  CHECK(v26.outcome == Outcome::Distinguishable);
  CHECK(v26.summary() == "distinguishable (omega 1 vs 2)");
  CHECK(v26.criterion == "abelianization-rank");

  CHECK(distinguish_stabilized(6, 12).outcome == Outcome::Inconclusive);
  CHECK(distinguish_stabilized(8, 32).outcome == Outcome::Isomorphic);
  CHECK(distinguish_stabilized(3, 3).outcome == Outcome::Isomorphic);

  for (std::uint64_t m = 2; m <= 100; ++m)
    for (std::uint64_t n = 2; n <= 100; ++n) {
      const Verdict a = distinguish_stabilized(m, n);
      const Verdict b = distinguish_stabilized(n, m);
      CHECK(a.outcome == b.outcome);
      CHECK((a.outcome == Outcome::Distinguishable) == (omega(m) != omega(n)));
      if (a.outcome == Outcome::Isomorphic) {
        REQUIRE(a.exponents.has_value());
        CHECK(big_pow(m, a.exponents->first) == big_pow(n, a.exponents->second));
      } else {
        // Oracle: no m^j = n^k with small exponents.
        bool power_related = false;
        for (std::uint64_t j = 1; j <= 7 && !power_related; ++j)
          for (std::uint64_t k = 1; k <= 7 && !power_related; ++k)
            power_related = big_pow(m, j) == big_pow(n, k);
        CHECK_FALSE(power_related);
      }
    }
  CHECK_THROWS_AS(distinguish_stabilized(1, 4), InvalidArgument);
}

TEST_CASE("classical verdicts") {
  CHECK(distinguish_classical(9, 27).outcome == Outcome::Distinguishable);
  CHECK(distinguish_classical(9, 27).criterion == "root-set");
  CHECK(distinguish_classical(2, 4).outcome == Outcome::Distinguishable);
  CHECK(distinguish_classical(2, 3).outcome == Outcome::Inconclusive);
  for (std::uint64_t m = 2; m <= 60; ++m)
    for (std::uint64_t n = 2; n <= 60; ++n)
      CHECK(distinguish_classical(m, n).outcome != Outcome::Isomorphic);
}

TEST_CASE("rank of the abelianization matches omega") {
  for (std::uint64_t n = 2; n <= 100; ++n) CHECK(stabilized_dim_group(n).rank == omega(n));
}

TEST_CASE("SL2 over Z/4") {
  // Oracle: enumerate determinant-one matrices and close the commutators.
  std::vector<Mat4> group;
  for (int i = 0; i < 256; ++i) {
    const Mat4 x{static_cast<std::uint8_t>(i & 3), static_cast<std::uint8_t>(i >> 2 & 3),
                 static_cast<std::uint8_t>(i >> 4 & 3), static_cast<std::uint8_t>(i >> 6 & 3)};
    if ((x[0] * x[3] + 4 * 4 - x[1] * x[2]) % 4 == 1) group.push_back(x);
  }
  auto inverse = [&](const Mat4& x) {
    for (const auto& y : group)
      if (mul4(x, y) == Mat4{1, 0, 0, 1}) return y;
    return x;
  };
  std::set<Mat4> derived{Mat4{1, 0, 0, 1}};
  for (const auto& g : group)
    for (const auto& h : group) derived.insert(mul4(mul4(inverse(g), inverse(h)), mul4(g, h)));
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Mat4> current(derived.begin(), derived.end());
    for (const auto& a : current)
      for (const auto& b : current) grew |= derived.insert(mul4(a, b)).second;
  }

  const Sl2Z4Report r = sl2_z4_report();
  CHECK(r.group_order == group.size());
  CHECK(r.group_order == 48);
  CHECK(r.commutator_order == derived.size());
  CHECK(r.commutator_order == 12);
  REQUIRE(r.quoted_members.size() == 2);
  CHECK(r.quoted_members[0].first == Mat4{2, 3, 3, 1});
  CHECK(r.quoted_members[1].first == Mat4{3, 1, 3, 0});
  for (const auto& [m, inside] : r.quoted_members) {
    CHECK(inside);
    CHECK(derived.count(m) == 1);
  }
  // Neither U nor U^2 lies in the commutator subgroup, so U has order 4 there.
  const Mat4 u{1, 1, 0, 1};
  CHECK(derived.count(u) == 0);
  CHECK(derived.count(mul4(u, u)) == 0);
  CHECK(r.unipotent_image_order == 4);
  CHECK(r.abelianization_order == 4);
  // diag(-1, 1) inverts U, so the coinvariants of Z/4 are Z/2.
  CHECK(r.coinvariants_order == 2);
  CHECK_FALSE(r.external_step.empty());
  CHECK_FALSE(r.quoted_final_answer.empty());
  CHECK(mat4_to_string(Mat4{2, 3, 3, 1}) == "(2 3; 3 1)");
}
