#include "stabaut/invariants.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "stabaut/dimension_rep.hpp"
#include "stabaut/errors.hpp"
#include "stabaut/shift_core.hpp"

namespace stabaut {

std::size_t omega(std::uint64_t n) {
  if (n < 2) throw InvalidArgument("omega needs n >= 2");
  return factorize(n).size();
}

namespace {

/// Exact test of a == b^k without overflow.
bool is_power_of(std::uint64_t a, std::uint64_t b, std::uint64_t k) {
  BigInt p = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    p *= b;
    if (p > a) return false;
  }
  return p == a;
}

std::string set_to_string(const std::vector<std::uint64_t>& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
  os << "}";
  return os.str();
}

}  // namespace

std::vector<std::uint64_t> roots_set(std::uint64_t a) {
  if (a < 2) throw InvalidArgument("roots_set needs a >= 2");
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 1; k < 64 && (std::uint64_t{1} << k) <= a; ++k) {
    // Binary search for the integer k-th root.
    std::uint64_t lo = 1;
    std::uint64_t hi = a;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo + 1) / 2;
      BigInt p = 1;
      bool over = false;
      for (std::uint64_t i = 0; i < k && !over; ++i) {
        p *= mid;
        over = p > a;
      }
      if (over) {
        hi = mid - 1;
      } else {
        lo = mid;
      }
    }
    if (is_power_of(a, lo, k)) out.push_back(k);
  }
  return out;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Distinguishable: return "distinguishable";
    case Outcome::Isomorphic: return "isomorphic";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string Verdict::summary() const { return to_string(outcome) + " (" + detail + ")"; }

Verdict distinguish_stabilized(std::uint64_t m, std::uint64_t n) {
  if (m < 2 || n < 2) throw InvalidArgument("alphabet sizes must be at least 2");
  const auto fm = factorize(m);
  const auto fn = factorize(n);
  Verdict v;
  if (fm.size() != fn.size()) {
    v.outcome = Outcome::Distinguishable;
    v.criterion = "abelianization-rank";
    v.detail = "omega " + std::to_string(fm.size()) + " vs " + std::to_string(fn.size());
    return v;
  }
  // m^j = n^k iff both have the same primes and proportional exponents.
  bool proportional = true;
  std::uint64_t j = 0;
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < fm.size() && proportional; ++i) {
    if (fm[i].first != fn[i].first) {
      proportional = false;
      break;
    }
    const std::uint64_t a = fm[i].second;
    const std::uint64_t b = fn[i].second;
    const std::uint64_t g = std::gcd(a, b);
    if (i == 0) {
      j = b / g;
      k = a / g;
    } else if (a * j != b * k) {
      proportional = false;
    }
  }
  v.criterion = "rational-conjugacy";
  if (proportional) {
    v.outcome = Outcome::Isomorphic;
    v.exponents = std::make_pair(j, k);
    v.detail = std::to_string(m) + "^" + std::to_string(j) + " = " + std::to_string(n) + "^" +
               std::to_string(k);
  } else {
    v.outcome = Outcome::Inconclusive;
    v.detail = "omega " + std::to_string(fm.size()) + " on both sides and no powers agree";
  }
  return v;
}

Verdict distinguish_classical(std::uint64_t m, std::uint64_t n) {
  if (m < 2 || n < 2) throw InvalidArgument("alphabet sizes must be at least 2");
  const auto rm = roots_set(m);
  const auto rn = roots_set(n);
  Verdict v;
  v.criterion = "root-set";
  v.detail = "rts " + set_to_string(rm) + " vs " + set_to_string(rn);
  v.outcome = rm != rn ? Outcome::Distinguishable : Outcome::Inconclusive;
  return v;
}

// ---------------------------------------------------------------------------
// SL2(Z/4)

namespace {

Mat4 mul(const Mat4& x, const Mat4& y) {
  return Mat4{static_cast<std::uint8_t>((x[0] * y[0] + x[1] * y[2]) % 4),
              static_cast<std::uint8_t>((x[0] * y[1] + x[1] * y[3]) % 4),
              static_cast<std::uint8_t>((x[2] * y[0] + x[3] * y[2]) % 4),
              static_cast<std::uint8_t>((x[2] * y[1] + x[3] * y[3]) % 4)};
}

int det(const Mat4& x) { return ((x[0] * x[3] - x[1] * x[2]) % 4 + 4) % 4; }

Mat4 inv(const Mat4& x) {
  // For det 1 the inverse is the adjugate; for det 3 (= -1) it is -adjugate.
  const int d = det(x);
  Mat4 adj{x[3], static_cast<std::uint8_t>((4 - x[1]) % 4), static_cast<std::uint8_t>((4 - x[2]) % 4),
           x[0]};
  if (d == 1) return adj;
  if (d == 3) {
    for (auto& e : adj) e = static_cast<std::uint8_t>((4 - e) % 4);
    return adj;
  }
  throw InvalidArgument("matrix is not invertible over Z/4");
}

/// Subgroup generated by gens (closure under multiplication; finite group).
std::set<Mat4> closure(const std::vector<Mat4>& gens) {
  std::set<Mat4> out{Mat4{1, 0, 0, 1}};
  std::vector<Mat4> queue{Mat4{1, 0, 0, 1}};
  while (!queue.empty()) {
    const Mat4 x = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      const Mat4 y = mul(x, g);
      if (out.insert(y).second) queue.push_back(y);
    }
  }
  return out;
}

}  // namespace

std::string mat4_to_string(const Mat4& m) {
  return "(" + std::to_string(m[0]) + " " + std::to_string(m[1]) + "; " + std::to_string(m[2]) +
         " " + std::to_string(m[3]) + ")";
}

Sl2Z4Report sl2_z4_report() {
  std::vector<Mat4> group;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const Mat4 x{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                       static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)};
          if (det(x) == 1) group.push_back(x);
        }
  std::vector<Mat4> commutators;
  for (const auto& g : group)
    for (const auto& h : group) commutators.push_back(mul(mul(inv(g), inv(h)), mul(g, h)));
  std::sort(commutators.begin(), commutators.end());
  commutators.erase(std::unique(commutators.begin(), commutators.end()), commutators.end());
  const std::set<Mat4> derived = closure(commutators);

  Sl2Z4Report r;
  r.group_order = group.size();
  r.commutator_order = derived.size();
  for (const Mat4& q : {Mat4{2, 3, 3, 1}, Mat4{3, 1, 3, 0}}) {
    r.quoted_members.emplace_back(q, derived.count(q) > 0);
  }
  r.abelianization_order = group.size() / derived.size();

  // Order of U = (1 1; 0 1) modulo the commutator subgroup.
  const Mat4 u{1, 1, 0, 1};
  Mat4 power = u;
  std::size_t order = 1;
  while (!derived.count(power)) {
    power = mul(power, u);
    ++order;
  }
  r.unipotent_image_order = order;

  // Coinvariants: divide the quotient by the classes of g^-1 (t g t^-1).
  const Mat4 t{3, 0, 0, 1};
  std::vector<Mat4> relators(derived.begin(), derived.end());
  for (const auto& g : group) relators.push_back(mul(inv(g), mul(mul(t, g), inv(t))));
  r.coinvariants_order = group.size() / closure(relators).size();

  r.external_step = "abelianization of SL2(Z[1/3]) is Z/4 (external input, not recomputed)";
  r.quoted_final_answer = "Z + Z/2 + Z + Z/2 (quoted, not recomputed)";
  return r;
}

}  // namespace stabaut
