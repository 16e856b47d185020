#include "stabaut/dimension_rep.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "stabaut/errors.hpp"

namespace stabaut {

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

ExponentVector::ExponentVector(std::vector<std::uint64_t> primes,
                               std::vector<std::int64_t> exponents)
    : primes_(std::move(primes)), exponents_(std::move(exponents)) {
  if (primes_.size() != exponents_.size()) {
    throw InvalidArgument("exponent vector length does not match its prime list");
  }
}

ExponentVector ExponentVector::zero(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  for (auto [p, e] : factorize(n)) primes.push_back(p);
  std::vector<std::int64_t> zeros(primes.size(), 0);
  return ExponentVector(std::move(primes), std::move(zeros));
}

bool ExponentVector::is_zero() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](auto e) { return e == 0; });
}

std::string ExponentVector::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < exponents_.size(); ++i) os << (i ? ", " : "") << exponents_[i];
  os << ") over primes {";
  for (std::size_t i = 0; i < primes_.size(); ++i) os << (i ? ", " : "") << primes_[i];
  os << "}";
  return os.str();
}

ExponentVector ExponentVector::operator+(const ExponentVector& other) const {
  if (primes_ != other.primes_) throw InvalidArgument("exponent vectors over different primes");
  std::vector<std::int64_t> sum(exponents_.size());
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = exponents_[i] + other.exponents_[i];
  return ExponentVector(primes_, std::move(sum));
}

ExponentVector ExponentVector::operator*(std::int64_t scalar) const {
  std::vector<std::int64_t> out(exponents_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = exponents_[i] * scalar;
  return ExponentVector(primes_, std::move(out));
}

RayCount ray_image_count(const Automorphism& aut, Letter tail_letter) {
  const StabilizedCode& f = aut.forward();
  const std::size_t q = f.alphabet_size();
  if (q < 2) throw InvalidArgument("ray counting needs at least two letters");
  if (tail_letter >= q) throw InvalidArgument("tail letter outside the alphabet");
  const std::size_t r = f.radius();
  const std::size_t m = f.radius() + aut.inverse_radius();
  // A state is the last 2r inputs; reading input a at position z + r emits the
  // output at z. Distinct output words are counted by tracking, for each
  // output prefix, the set of states it can end in (subset construction);
  // prefixes with equal state sets have equally many continuations.
  const std::uint64_t states = checked_pow(q, 2 * r);
  if (states > (std::uint64_t{1} << 31)) throw BudgetExceeded("ray state space too large");
  std::uint64_t start = 0;
  for (std::size_t i = 0; i < 2 * r; ++i) start = start * q + tail_letter;
  using StateSet = std::vector<std::uint32_t>;
  std::map<StateSet, std::uint64_t> frontier{{StateSet{static_cast<std::uint32_t>(start)}, 1}};
  std::vector<StateSet> by_output(q);
  for (std::size_t t = 0; t < m + r; ++t) {
    const auto z = static_cast<std::int64_t>(t) - static_cast<std::int64_t>(r) + 1;
    const std::size_t cls = floor_mod(z, f.period());
    std::map<StateSet, std::uint64_t> next;
    for (const auto& [set, count] : frontier) {
      for (auto& v : by_output) v.clear();
      for (std::uint32_t s : set) {
        for (std::size_t a = 0; a < q; ++a) {
          const std::uint64_t window = static_cast<std::uint64_t>(s) * q + a;
          by_output[f.lookup(cls, window)].push_back(static_cast<std::uint32_t>(window % states));
        }
      }
      for (auto& v : by_output) {
        if (v.empty()) continue;
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        next[v] += count;
      }
    }
    if (next.size() > kMaxRayFrontier) throw BudgetExceeded("ray frontier exceeds its budget");
    frontier = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& [set, count] : frontier) total += count;
  return RayCount{m, total};
}

namespace {

ExponentVector multiplier_from_count(std::uint64_t q, const RayCount& rc) {
  std::uint64_t rest = rc.count;
  std::vector<std::uint64_t> primes;
  std::vector<std::int64_t> exps;
  for (auto [p, e] : factorize(q)) {
    std::int64_t v = 0;
    while (rest % p == 0) {
      rest /= p;
      ++v;
    }
    primes.push_back(p);
    exps.push_back(v - static_cast<std::int64_t>(rc.level) * e);
  }
  if (rest != 1) {
    throw MultiplierNotSupported("ray count " + std::to_string(rc.count) +
                                 " has a prime factor not dividing " + std::to_string(q));
  }
  return ExponentVector(std::move(primes), std::move(exps));
}

}  // namespace

ExponentVector dimension_multiplier(const Automorphism& aut) {
  const std::size_t q = aut.alphabet_size();
  const ExponentVector first = multiplier_from_count(q, ray_image_count(aut, 0));
  const ExponentVector second =
      multiplier_from_count(q, ray_image_count(aut, static_cast<Letter>(q - 1)));
  if (!(first == second)) {
    throw Error("ray multiplier depends on the tail letter: " + first.to_string() + " vs " +
                second.to_string());
  }
  return first;
}

bool is_inert(const Automorphism& aut) { return dimension_multiplier(aut).is_zero(); }

DimGroupDescriptor stabilized_dim_group(std::uint64_t n) {
  if (n < 2) throw InvalidArgument("stabilized dimension group needs n >= 2");
  DimGroupDescriptor d;
  for (auto [p, e] : factorize(n)) d.generators.push_back(p);
  d.rank = d.generators.size();
  return d;
}

}  // namespace stabaut
